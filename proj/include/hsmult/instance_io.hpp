#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hsmult/parser.hpp"
#include "hsmult/reduction.hpp"

namespace hsmult {

/// An expression with the position where it started in the input.
struct Located {
    std::string text;
    std::size_t line = 1, column = 1;
    friend bool operator==(const Located& a, const Located& b) { return a.text == b.text; }
};

struct InstanceOptions {
    std::optional<std::size_t> max_terms, max_iterations, modp_threshold;
    std::optional<long> max_degree, search_bound, trunc_degree;
    std::optional<ModpMode> modp;
    friend bool operator==(const InstanceOptions&, const InstanceOptions&) = default;
};

/// Instance as written in a file: names and expression strings, validated
/// for shape but not yet parsed into polynomials.
struct InstanceFile {
    unsigned long characteristic = 0;
    std::vector<std::string> variables;
    OrderKind order = OrderKind::GradedLex;
    std::vector<std::string> precedence; // most significant first; empty = variable order
    std::vector<Located> quotient_ideal;
    std::vector<Located> ideal;
    std::size_t dim = 0;
    InstanceOptions options;
    friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

inline OrderKind parse_order_kind(const std::string& s) {
    if (s == "glex" || s == "deglex") return OrderKind::GradedLex;
    if (s == "grevlex" || s == "degrevlex") return OrderKind::GradedRevLex;
    if (s == "lex") return OrderKind::Lex;
    throw ValidationError("unknown order '" + s + "' (expected glex, grevlex or lex)");
}

inline ModpMode parse_modp_mode(const std::string& s) {
    if (s == "on") return ModpMode::On;
    if (s == "off") return ModpMode::Off;
    if (s == "auto") return ModpMode::Auto;
    throw ValidationError("unknown modp mode '" + s + "' (expected on, off or auto)");
}

namespace detail {

inline bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline std::string trim(std::string_view s, std::size_t* lead = nullptr) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    if (lead) *lead = b;
    return std::string(s.substr(b, e - b));
}

/// Splits at commas outside parentheses.
inline std::vector<Located> split_list(std::string_view s, std::size_t line, std::size_t column) {
    std::vector<Located> out;
    int depth = 0;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        std::size_t lead = 0;
        std::string item = trim(s.substr(start, end - start), &lead);
        if (item.empty()) throw ParseError("empty list item", line, column + start);
        out.push_back({item, line, column + start + lead});
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ',' && depth == 0) {
            flush(i);
            start = i + 1;
        }
    }
    if (!trim(s).empty()) flush(s.size());
    return out;
}

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line, col = 1;
        else ++col;
    }
    return {line, col};
}

template <class T>
T parse_number(const std::string& v, std::size_t line, std::size_t col) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        if constexpr (std::is_unsigned_v<T>)
            if (x < 0) throw ParseError("expected a non-negative integer, got '" + v + "'", line, col);
        return static_cast<T>(x);
    } catch (const std::logic_error&) {
        throw ParseError("expected an integer, got '" + v + "'", line, col);
    }
}

inline void check_file(const InstanceFile& f) {
    if (f.variables.empty()) throw ValidationError("no variables declared");
    for (std::size_t i = 0; i < f.variables.size(); ++i) {
        const std::string& v = f.variables[i];
        if (!is_identifier(v)) throw ValidationError("'" + v + "' is not a valid variable name");
        if (v.rfind("t_", 0) == 0) throw ValidationError("variable names starting with t_ are reserved for parameters");
        for (std::size_t j = 0; j < i; ++j)
            if (f.variables[j] == v) throw ValidationError("variable '" + v + "' declared twice");
    }
    if (f.characteristic != 0) {
        if (f.characteristic > 2147483647UL || !Zp::is_prime(static_cast<std::uint32_t>(f.characteristic)))
            throw ValidationError("characteristic " + std::to_string(f.characteristic) + " is not a prime below 2^31");
    }
    if (!f.precedence.empty()) {
        auto sorted = f.precedence, vars = f.variables;
        std::sort(sorted.begin(), sorted.end());
        std::sort(vars.begin(), vars.end());
        if (sorted != vars) throw ValidationError("precedence must list every variable exactly once");
    }
    if (f.dim > f.variables.size())
        throw ValidationError("dim " + std::to_string(f.dim) + " exceeds the number of variables (" +
                              std::to_string(f.variables.size()) + ")");
    if (f.ideal.empty() && f.dim > 0) throw ValidationError("no ideal generators");
    if (f.ideal.size() < f.dim) throw ValidationError("fewer ideal generators than dim");
    if (f.dim == 0 && f.quotient_ideal.empty()) throw ValidationError("dim 0 needs quotient generators");
}

inline InstanceFile parse_json_instance(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("malformed JSON: " + std::string(e.what()), line, col);
    }
    if (!j.is_object()) throw ParseError("instance must be a JSON object", 1, 1);
    auto locate = [&](const std::string& expr) {
        std::string quoted = nlohmann::json(expr).dump();
        std::size_t at = text.find(quoted);
        auto [line, col] = line_col(text, at == std::string_view::npos ? 0 : at + 1);
        return Located{expr, line, col};
    };
    InstanceFile f;
    try {
        for (auto& [key, val] : j.items()) {
            if (key == "characteristic") f.characteristic = val.get<unsigned long>();
            else if (key == "variables") f.variables = val.get<std::vector<std::string>>();
            else if (key == "order") f.order = parse_order_kind(val.get<std::string>());
            else if (key == "precedence") f.precedence = val.get<std::vector<std::string>>();
            else if (key == "quotient_ideal")
                for (auto& e : val) f.quotient_ideal.push_back(locate(e.get<std::string>()));
            else if (key == "ideal")
                for (auto& e : val) f.ideal.push_back(locate(e.get<std::string>()));
            else if (key == "dim") f.dim = val.get<std::size_t>();
            else if (key == "options") {
                for (auto& [ok, ov] : val.items()) {
                    if (ok == "max_terms") f.options.max_terms = ov.get<std::size_t>();
                    else if (ok == "max_iterations") f.options.max_iterations = ov.get<std::size_t>();
                    else if (ok == "modp_threshold") f.options.modp_threshold = ov.get<std::size_t>();
                    else if (ok == "max_degree") f.options.max_degree = ov.get<long>();
                    else if (ok == "search_bound") f.options.search_bound = ov.get<long>();
                    else if (ok == "trunc_degree") f.options.trunc_degree = ov.get<long>();
                    else if (ok == "modp") f.options.modp = parse_modp_mode(ov.get<std::string>());
                    else throw ValidationError("unknown option '" + ok + "'");
                }
            } else if (key == "name" || key == "comment") {
                continue;
            } else {
                throw ValidationError("unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("wrong value type: ") + e.what(), 1, 1);
    }
    return f;
}

inline InstanceFile parse_text_instance(std::string_view text) {
    InstanceFile f;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    // logical lines: a line starting with whitespace continues the previous one
    struct Entry {
        std::string key, value;
        std::size_t line, column;
    };
    std::vector<Entry> entries;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string body = raw.substr(0, raw.find('#'));
        if (trim(body).empty()) continue;
        if (std::isspace(static_cast<unsigned char>(body[0])) && !entries.empty()) {
            entries.back().value += " " + trim(body);
            continue;
        }
        std::size_t colon = body.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno, 1);
        std::size_t lead = 0;
        std::string value = trim(std::string_view(body).substr(colon + 1), &lead);
        entries.push_back({trim(body.substr(0, colon)), value, lineno, colon + 2 + lead});
    }
    for (auto& e : entries) {
        const std::string& k = e.key;
        auto num_u = [&] { return parse_number<std::size_t>(e.value, e.line, e.column); };
        auto num_l = [&] { return parse_number<long>(e.value, e.line, e.column); };
        auto names = [&] {
            std::vector<std::string> out;
            for (auto& it : split_list(e.value, e.line, e.column)) out.push_back(it.text);
            return out;
        };
        try {
            if (k == "characteristic" || k == "char") f.characteristic = parse_number<unsigned long>(e.value, e.line, e.column);
            else if (k == "variables" || k == "vars") f.variables = names();
            else if (k == "order") f.order = parse_order_kind(e.value);
            else if (k == "precedence") f.precedence = names();
            else if (k == "quotient_ideal" || k == "quotient") f.quotient_ideal = split_list(e.value, e.line, e.column);
            else if (k == "ideal") f.ideal = split_list(e.value, e.line, e.column);
            else if (k == "dim") f.dim = num_u();
            else if (k == "max_terms") f.options.max_terms = num_u();
            else if (k == "max_iterations") f.options.max_iterations = num_u();
            else if (k == "modp_threshold") f.options.modp_threshold = num_u();
            else if (k == "max_degree") f.options.max_degree = num_l();
            else if (k == "search_bound") f.options.search_bound = num_l();
            else if (k == "trunc_degree") f.options.trunc_degree = num_l();
            else if (k == "modp") f.options.modp = parse_modp_mode(e.value);
            else if (k == "name") continue;
            else throw ParseError("unknown key '" + k + "'", e.line, 1);
        } catch (const ValidationError& err) {
            throw ParseError(err.what(), e.line, e.column);
        }
    }
    return f;
}

} // namespace detail

/// Reads an instance in JSON (first non-blank character '{') or in the
/// "key: value" text form, and checks its shape.
inline InstanceFile parse_instance(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    InstanceFile f = (i < text.size() && text[i] == '{') ? detail::parse_json_instance(text)
                                                          : detail::parse_text_instance(text);
    detail::check_file(f);
    return f;
}

/// Canonical JSON form; parse_instance(print_instance(f)) == f.
inline std::string print_instance(const InstanceFile& f) {
    nlohmann::ordered_json j;
    j["characteristic"] = f.characteristic;
    j["variables"] = f.variables;
    j["order"] = to_string(f.order);
    if (!f.precedence.empty()) j["precedence"] = f.precedence;
    auto texts = [](const std::vector<Located>& v) {
        std::vector<std::string> out;
        for (auto& l : v) out.push_back(l.text);
        return out;
    };
    j["quotient_ideal"] = texts(f.quotient_ideal);
    j["ideal"] = texts(f.ideal);
    j["dim"] = f.dim;
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    const auto& op = f.options;
    if (op.max_terms) o["max_terms"] = *op.max_terms;
    if (op.max_degree) o["max_degree"] = *op.max_degree;
    if (op.max_iterations) o["max_iterations"] = *op.max_iterations;
    if (op.modp) o["modp"] = to_string(*op.modp);
    if (op.modp_threshold) o["modp_threshold"] = *op.modp_threshold;
    if (op.search_bound) o["search_bound"] = *op.search_bound;
    if (op.trunc_degree) o["trunc_degree"] = *op.trunc_degree;
    if (!o.empty()) j["options"] = o;
    return j.dump(2) + "\n";
}

inline MonomialOrder make_order(const InstanceFile& f) {
    if (f.precedence.empty()) return MonomialOrder(f.order, f.variables.size());
    std::vector<std::size_t> prec;
    for (auto& name : f.precedence)
        prec.push_back(static_cast<std::size_t>(std::find(f.variables.begin(), f.variables.end(), name) - f.variables.begin()));
    return MonomialOrder(f.order, prec);
}

/// Parses the expressions. For characteristic p the caller must have a
/// Zp::Scope(p) active.
template <class K>
ProblemInstance<K> build_instance(const InstanceFile& f) {
    detail::check_file(f);
    if constexpr (std::is_same_v<K, Zp>) {
        if (Zp::modulus() != f.characteristic) throw ValidationError("active prime field does not match the instance");
    } else if (f.characteristic != 0) {
        throw ValidationError("instance has positive characteristic");
    }
    ProblemInstance<K> inst;
    inst.variables = f.variables;
    inst.order = make_order(f);
    inst.dim = f.dim;
    auto parse_all = [&](const std::vector<Located>& v) {
        std::vector<Series<K>> out;
        for (auto& l : v) {
            ExprContext<K> ctx{f.variables, inst.order, {}, l.line, l.column};
            out.push_back(parse_series<K>(l.text, ctx));
        }
        return out;
    };
    inst.quotient = parse_all(f.quotient_ideal);
    inst.ideal = parse_all(f.ideal);
    const auto& op = f.options;
    if (op.max_terms) inst.caps.max_terms = *op.max_terms;
    if (op.max_degree) inst.caps.max_degree = *op.max_degree;
    if (op.max_iterations) inst.caps.max_iterations = *op.max_iterations;
    if (op.trunc_degree) inst.caps.initial_trunc_degree = *op.trunc_degree;
    if (op.modp) inst.solver.modp = *op.modp;
    if (op.modp_threshold) inst.solver.modp_threshold = *op.modp_threshold;
    if (op.search_bound) inst.search_bound = *op.search_bound;
    inst.validate();
    return inst;
}

/// Parses a single expression in the instance's variables (for `member`).
template <class K>
Series<K> parse_expression(const InstanceFile& f, const std::string& text) {
    ExprContext<K> ctx{f.variables, make_order(f), {}, 1, 1};
    return parse_series<K>(text, ctx);
}

// --- report pieces -------------------------------------------------------

template <class K>
nlohmann::ordered_json dual_element_json(const DualElement<K>& eta, std::span<const std::string> params = {}) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto& [e, c] : eta.terms()) arr.push_back({e.entries(), scalar_to_string(c, params)});
    return arr;
}

template <class K>
nlohmann::ordered_json dual_basis_json(const DualBasisState<K>& st, std::span<const std::string> vars,
                                       std::span<const std::string> params = {}) {
    nlohmann::ordered_json j;
    j["length"] = st.length();
    j["t1_size"] = st.t1.size();
    j["accepted"] = st.xis.size();
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (auto& b : st.basis()) basis.push_back(dual_element_json(b, params));
    j["basis"] = basis;
    nlohmann::ordered_json xis = nlohmann::ordered_json::array();
    for (auto& x : st.xis) xis.push_back(x.to_string(vars, params));
    j["xi"] = xis;
    return j;
}

template <class D>
nlohmann::ordered_json matrix_json(const ExactMatrix<D>& m, std::span<const std::string> params = {}) {
    nlohmann::ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (auto& e : m.row(i)) {
            if constexpr (is_param_poly<D>::value) row.push_back(e.to_string(params));
            else row.push_back(e.to_string());
        }
        grid.push_back(row);
    }
    j["entries"] = grid;
    return j;
}

template <class K>
nlohmann::ordered_json certificate_json(const MultiplicityResult<K>& r) {
    nlohmann::ordered_json j;
    j["e"] = r.e;
    j["parameters"] = r.param_names;
    nlohmann::ordered_json pl = nlohmann::ordered_json::array();
    for (auto& p : r.polylist()) pl.push_back(p.to_string(r.param_names));
    j["polylist"] = pl;
    nlohmann::ordered_json ml = nlohmann::ordered_json::array();
    for (auto& m : r.matlist()) ml.push_back(matrix_json(m, r.param_names));
    j["matlist"] = ml;
    return j;
}

template <class K>
nlohmann::ordered_json reduction_json(const ReductionCertificate<K>& c, std::span<const std::string> vars) {
    nlohmann::ordered_json j;
    j["mode"] = to_string(c.mode);
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < c.rows; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < c.cols; ++k) row.push_back(c.a[i * c.cols + k].to_string());
        a.push_back(row);
    }
    j["a"] = a;
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (auto& g : c.generators) gens.push_back(g.to_string(vars));
    j["generators"] = gens;
    return j;
}

inline nlohmann::ordered_json stats_json(const EngineStats& s) {
    nlohmann::ordered_json j;
    j["steps"] = s.steps;
    j["accepted"] = s.accepted;
    j["rejected"] = s.rejected;
    j["max_matrix"] = {s.max_rows, s.max_cols};
    j["direct_solves"] = s.solver.direct_solves;
    j["modp_solves"] = s.solver.modp_solves;
    j["modp_rejections"] = s.solver.modp_rejections;
    j["modp_confirmed"] = s.solver.modp_confirmed;
    j["modp_retries"] = s.solver.retries;
    j["modp_fallbacks"] = s.solver.fallbacks;
    return j;
}

} // namespace hsmult
