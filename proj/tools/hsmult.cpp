// hsmult: multiplicities, reductions and integral closure membership via
// inverse systems.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hsmult/hsmult.hpp"
#include "hsmult/selftest.hpp"

using namespace hsmult;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string command, file, expr;
    std::string order;
    std::string modp;
    std::optional<std::size_t> modp_threshold, max_terms;
    std::optional<long> max_degree, search_bound, trunc_degree;
    bool no_timing = false;
    bool json = false;
};

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
        dynamic_cast<const RingMismatch*>(&e))
        return 2;
    if (dynamic_cast<const CapExceeded*>(&e) || dynamic_cast<const NotZeroDimensional*>(&e)) return 3;
    if (dynamic_cast<const SearchExhausted*>(&e)) return 4;
    if (dynamic_cast<const InternalInconsistency*>(&e) || dynamic_cast<const UnexpectedNullity*>(&e)) return 5;
    return 1;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
    if (dynamic_cast<const RingMismatch*>(&e)) return "RingMismatch";
    if (dynamic_cast<const CapExceeded*>(&e)) return "CapExceeded";
    if (dynamic_cast<const NotZeroDimensional*>(&e)) return "NotZeroDimensional";
    if (dynamic_cast<const SearchExhausted*>(&e)) return "SearchExhausted";
    if (dynamic_cast<const InternalInconsistency*>(&e)) return "InternalInconsistency";
    if (dynamic_cast<const UnexpectedNullity*>(&e)) return "UnexpectedNullity";
    return "Error";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void apply_flags(InstanceFile& f, const Options& o) {
    if (!o.order.empty()) f.order = parse_order_kind(o.order);
    if (!o.modp.empty()) f.options.modp = parse_modp_mode(o.modp);
    if (o.modp_threshold) f.options.modp_threshold = o.modp_threshold;
    if (o.max_terms) f.options.max_terms = o.max_terms;
    if (o.max_degree) f.options.max_degree = o.max_degree;
    if (o.search_bound) f.options.search_bound = o.search_bound;
    if (o.trunc_degree) f.options.trunc_degree = o.trunc_degree;
}

template <class K>
std::vector<Series<K>> all_generators(const ProblemInstance<K>& inst) {
    std::vector<Series<K>> F = inst.ideal;
    F.insert(F.end(), inst.quotient.begin(), inst.quotient.end());
    return F;
}

template <class K>
Json run(const Options& o, const InstanceFile& file, std::vector<std::string>& lines) {
    ProblemInstance<K> inst = build_instance<K>(file);
    const auto& vars = inst.variables;
    Json res;
    if (o.command == "dual" || o.command == "length") {
        auto st = compute_dual_basis(all_generators(inst), inst.order, inst.caps, inst.solver);
        lines.push_back("length " + std::to_string(st.length()) + " (" + std::to_string(st.t1.size()) + " + " +
                        std::to_string(st.xis.size()) + ")");
        if (o.command == "dual") {
            for (auto& b : st.basis()) lines.push_back("  " + b.to_string(vars));
            res = dual_basis_json(st, vars);
        } else {
            res["length"] = st.length();
            res["t1_size"] = st.t1.size();
            res["accepted"] = st.xis.size();
        }
        res["stats"] = stats_json(st.stats);
    } else if (o.command == "mult" || o.command == "reduce") {
        auto r = multiplicity(inst);
        lines.push_back("e = " + std::to_string(r.e) + " (" + std::to_string(r.dual.t1.size()) + " + " +
                        std::to_string(r.dual.xis.size()) + ")");
        for (auto& x : r.dual.xis) lines.push_back("  xi: " + x.to_string(vars, r.param_names));
        for (auto& p : r.polylist()) lines.push_back("  polylist: " + p.to_string(r.param_names));
        lines.push_back("  matlist: " + std::to_string(r.matlist().size()) + " matrices");
        res = certificate_json(r);
        res["t1_size"] = r.dual.t1.size();
        nlohmann::ordered_json xis = nlohmann::ordered_json::array();
        for (auto& x : r.dual.xis) xis.push_back(x.to_string(vars, r.param_names));
        res["xi"] = xis;
        if (o.command == "reduce") {
            auto c = find_reduction(inst, r, inst.search_bound);
            bool ok = verify_reduction_by_length(inst, std::span<const K>(c.a), r.e);
            if (!ok) throw InternalInconsistency("certified reduction failed the length check");
            std::string a;
            for (auto& v : c.a) a += (a.empty() ? "" : " ") + v.to_string();
            lines.push_back("reduction a = [" + a + "], length verified");
            for (auto& g : c.generators) lines.push_back("  " + g.to_string(vars));
            res["reduction"] = reduction_json(c, vars);
            res["reduction"]["length_verified"] = ok;
        }
        res["stats"] = stats_json(r.dual.stats);
    } else if (o.command == "member") {
        if (o.expr.empty()) throw ValidationError("member needs an expression argument");
        Series<K> h = parse_expression<K>(file, o.expr);
        auto m = is_in_integral_closure(inst, h, nullptr);
        lines.push_back(std::string(m.member ? "true" : "false") + ": e(J) = " + std::to_string(m.e_ideal) +
                        ", e(J + <h>) = " + std::to_string(m.e_extended));
        res["member"] = m.member;
        res["e_ideal"] = m.e_ideal;
        res["e_extended"] = m.e_extended;
        if (m.ideal_run) res["split_ideal"] = {m.ideal_run->dual.t1.size(), m.ideal_run->dual.xis.size()};
        if (m.extended_run) res["split_extended"] = {m.extended_run->dual.t1.size(), m.extended_run->dual.xis.size()};
    }
    return res;
}

Json run_selftest_command(const Options& o, std::vector<std::string>& lines, bool& ok) {
    Json res;
    Json suites = Json::array();
    ok = true;
    for (auto& s : run_selftest()) {
        ok = ok && s.passed();
        lines.push_back(std::string(s.passed() ? "PASS " : "FAIL ") + s.name + " (" + std::to_string(s.cases) + " cases)");
        for (auto& m : s.messages) lines.push_back("  " + m);
        suites.push_back({{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"messages", s.messages}});
    }
    if (!o.file.empty()) {
        InstanceFile f = parse_instance(read_file(o.file));
        apply_flags(f, o);
        if (f.characteristic == 0) {
            auto inst = build_instance<Rational>(f);
            std::vector<SparsePoly<Rational>> polys;
            for (auto& g : all_generators(inst)) {
                if (!g.is_polynomial()) throw ValidationError("selftest cross-check needs polynomial generators");
                polys.push_back(g.polynomial());
            }
            std::size_t a = compute_dual_basis(polys, inst.order, inst.caps, inst.solver).length();
            std::size_t b = vector_space_length(polys, inst.caps.max_degree);
            bool same = a == b;
            ok = ok && same;
            lines.push_back(std::string(same ? "PASS " : "FAIL ") + "instance length " + std::to_string(a) +
                            " vs vector_space_length " + std::to_string(b));
            suites.push_back({{"name", "instance length cross-check"}, {"cases", 1}, {"failures", same ? 0 : 1}});
        }
    }
    res["suites"] = suites;
    res["passed"] = ok;
    return res;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hilbert-Samuel multiplicity via inverse systems"};
    Options o;
    app.add_option("command", o.command, "dual | length | mult | reduce | member | selftest")
        ->required()
        ->check(CLI::IsMember({"dual", "length", "mult", "reduce", "member", "selftest"}));
    app.add_option("file", o.file, "instance file (JSON or key: value text)");
    app.add_option("expr", o.expr, "element to test (member)");
    app.add_option("--order", o.order, "glex | grevlex | lex");
    app.add_option("--modp", o.modp, "on | off | auto");
    app.add_option("--modp-threshold", o.modp_threshold, "column count above which auto mode goes mod p");
    app.add_option("--max-terms", o.max_terms, "staircase size cap");
    app.add_option("--max-degree", o.max_degree, "dual term degree cap");
    app.add_option("--search-bound", o.search_bound, "largest coefficient size tried by reduce");
    app.add_option("--trunc-degree", o.trunc_degree, "first truncation degree for series generators");
    app.add_flag("--no-timing", o.no_timing, "omit timing from the report");
    app.add_flag("--json", o.json, "print the JSON report");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    auto start = std::chrono::steady_clock::now();
    Json report;
    report["schema"] = "hsmult-report/1";
    report["command"] = o.command;
    if (!o.file.empty()) report["file"] = o.file;
    if (!o.expr.empty()) report["expr"] = o.expr;
    std::vector<std::string> lines;
    int code = 0;
    try {
        if (o.command == "selftest") {
            bool ok = true;
            report["result"] = run_selftest_command(o, lines, ok);
            if (!ok) code = 1;
        } else {
            if (o.file.empty()) throw ValidationError(o.command + " needs an instance file");
            InstanceFile f = parse_instance(read_file(o.file));
            apply_flags(f, o);
            report["characteristic"] = f.characteristic;
            report["order"] = to_string(f.order);
            if (f.characteristic == 0) {
                report["result"] = run<Rational>(o, f, lines);
            } else {
                Zp::Scope scope(static_cast<std::uint32_t>(f.characteristic));
                report["result"] = run<Zp>(o, f, lines);
            }
        }
    } catch (const std::exception& e) {
        code = exit_code_for(e);
        Json err;
        err["schema"] = "hsmult-report/1";
        err["command"] = o.command;
        err["error"]["kind"] = error_kind(e);
        err["error"]["message"] = e.what();
        if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
            err["error"]["line"] = pe->line();
            err["error"]["column"] = pe->column();
        }
        err["exit_code"] = code;
        std::cerr << err.dump(2) << "\n";
        return code;
    }
    if (!o.no_timing)
        report["timing_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.json) std::cout << report.dump(2) << "\n";
    else
        for (auto& l : lines) std::cout << l << "\n";
    return code;
}
