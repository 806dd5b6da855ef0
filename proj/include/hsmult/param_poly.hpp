#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsmult/errors.hpp"
#include "hsmult/scalar.hpp"

namespace hsmult {

/// Polynomial in the parameters t_0, t_1, ... over an exact base field.
///
/// Monomials are exponent vectors with trailing zeros trimmed, so the ring is
/// context free: 0 and 1 need no variable count, and comparing trimmed vectors
/// lexicographically is the lex order with t_0 most significant. Terms are
/// kept in descending lex order.
template <class B>
class ParamPoly {
public:
    using Mono = std::vector<int>;
    using Terms = std::map<Mono, B, std::greater<>>;

    ParamPoly() = default;
    ParamPoly(const B& c) {
        if (!c.is_zero()) terms_.emplace(Mono{}, c);
    }
    ParamPoly(long c) : ParamPoly(B(c)) {}
    ParamPoly(int c) : ParamPoly(B(c)) {}

    static ParamPoly var(std::size_t i, int power = 1) {
        ParamPoly p;
        Mono m(i + 1, 0);
        m[i] = power;
        trim(m);
        p.terms_.emplace(std::move(m), B(1));
        return p;
    }

    static ParamPoly monomial(Mono m, const B& c) {
        ParamPoly p;
        trim(m);
        if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    B constant_value() const {
        auto it = terms_.find(Mono{});
        return it == terms_.end() ? B() : it->second;
    }
    /// Coefficient of the constant monomial (the value at t = 0).
    B constant_term() const { return constant_value(); }
    bool is_one() const { return is_constant() && !is_zero() && terms_.begin()->second.is_one(); }

    const Mono& leading_mono() const { return terms_.begin()->first; }
    const B& leading_coeff() const { return terms_.begin()->second; }

    /// One more than the largest variable index that occurs.
    std::size_t var_bound() const {
        std::size_t n = 0;
        for (auto& [m, c] : terms_) n = std::max(n, m.size());
        return n;
    }

    int degree_in(std::size_t v) const {
        int d = 0;
        for (auto& [m, c] : terms_)
            if (v < m.size()) d = std::max(d, m[v]);
        return d;
    }

    long total_degree() const {
        long d = 0;
        for (auto& [m, c] : terms_) {
            long s = 0;
            for (int e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    /// Coefficients as a polynomial in t_v: power -> coefficient (free of t_v).
    std::map<int, ParamPoly> coefficients_in(std::size_t v) const {
        std::map<int, ParamPoly> out;
        for (auto& [m, c] : terms_) {
            int k = v < m.size() ? m[v] : 0;
            Mono rest = m;
            if (v < rest.size()) rest[v] = 0;
            trim(rest);
            out[k].add_term(std::move(rest), c);
        }
        return out;
    }

    ParamPoly coefficient_in(std::size_t v, int power) const {
        ParamPoly out;
        for (auto& [m, c] : terms_) {
            int k = v < m.size() ? m[v] : 0;
            if (k != power) continue;
            Mono rest = m;
            if (v < rest.size()) rest[v] = 0;
            trim(rest);
            out.add_term(std::move(rest), c);
        }
        return out;
    }

    ParamPoly times_var_power(std::size_t v, int k) const {
        if (k == 0) return *this;
        ParamPoly out;
        for (auto& [m, c] : terms_) {
            Mono n = m;
            if (n.size() <= v) n.resize(v + 1, 0);
            n[v] += k;
            out.terms_.emplace(std::move(n), c);
        }
        return out;
    }

    void add_term(Mono m, const B& c) {
        if (c.is_zero()) return;
        trim(m);
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ParamPoly& operator+=(const ParamPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    ParamPoly& operator-=(const ParamPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
    ParamPoly operator-() const {
        ParamPoly r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (b.is_constant()) return a.scaled(b.constant_value());
        if (a.is_constant()) return b.scaled(a.constant_value());
        ParamPoly r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

    ParamPoly scaled(const B& s) const {
        if (s.is_zero()) return {};
        ParamPoly r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

    /// Value at a point; every occurring parameter must be covered.
    B evaluate(std::span<const B> point) const {
        B acc;
        for (auto& [m, c] : terms_) {
            if (m.size() > point.size())
                throw ValidationError("assignment does not cover parameter t" + std::to_string(m.size() - 1));
            B t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int k = 0; k < m[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    /// Maps coefficients into another base (e.g. Q -> F_p); returns nullopt if `f` fails.
    template <class C, class F>
    std::optional<ParamPoly<C>> map_coefficients(F&& f) const {
        ParamPoly<C> out;
        for (auto& [m, c] : terms_) {
            std::optional<C> v = f(c);
            if (!v) return std::nullopt;
            out.add_term(m, *v);
        }
        return out;
    }

    /// Canonical string; `names[i]` names t_i (falls back to "t<i>").
    std::string to_string(std::span<const std::string> names = {}) const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [m, c] : terms_) {
            std::string cs = c.to_string();
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs.erase(0, 1);
            if (first) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += i < names.size() ? names[i] : "t" + std::to_string(i);
                if (m[i] > 1) mono += "^" + std::to_string(m[i]);
            }
            if (mono.empty()) s += cs;
            else if (cs == "1") s += mono;
            else s += (cs.find('/') != std::string::npos ? "(" + cs + ")" : cs) + "*" + mono;
        }
        return s;
    }

    static Mono mono_mul(const Mono& a, const Mono& b) {
        Mono r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
        return r;
    }

    static bool mono_divides(const Mono& a, const Mono& b) {
        if (a.size() > b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    }

    static Mono mono_div(const Mono& b, const Mono& a) {
        Mono r = b;
        for (std::size_t i = 0; i < a.size(); ++i) r[i] -= a[i];
        trim(r);
        return r;
    }

    static void trim(Mono& m) {
        while (!m.empty() && m.back() == 0) m.pop_back();
    }

private:
    Terms terms_;
};

/// Normalization unit of a sequence of base coefficients whose first entry's
/// sign (for Q) or value (for F_p) decides the associate. Dividing by the
/// returned unit yields a primitive integer sequence with positive leading
/// entry over Q, or a monic one over F_p.
inline Rational normalizing_unit(std::span<const Rational> coeffs) {
    mpz_class g = 0, l = 1;
    int sign = 0;
    for (auto& c : coeffs) {
        if (c.is_zero()) continue;
        if (sign == 0) sign = c.sign();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    }
    if (sign == 0) return Rational(1);
    return Rational(sign < 0 ? mpz_class(-g) : g, l);
}

inline Zp normalizing_unit(std::span<const Zp> coeffs) {
    for (auto& c : coeffs)
        if (!c.is_zero()) return c;
    return Zp(1);
}

template <class B>
B normalizing_unit(const ParamPoly<B>& p) {
    std::vector<B> cs;
    cs.reserve(p.terms().size());
    for (auto& [m, c] : p.terms()) cs.push_back(c);
    return normalizing_unit(std::span<const B>(cs));
}

/// Unit-normal associate: primitive in Z[t] with positive leading coefficient
/// over Q, monic over F_p.
template <class B>
ParamPoly<B> normalized(const ParamPoly<B>& p) {
    if (p.is_zero()) return p;
    return p.scaled(normalizing_unit(p).inv());
}

/// a / b if b divides a exactly, else nullopt.
template <class B>
std::optional<ParamPoly<B>> exact_quotient(const ParamPoly<B>& a, const ParamPoly<B>& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (b.is_constant()) return a.scaled(b.constant_value().inv());
    using P = ParamPoly<B>;
    P q, r = a;
    const auto& lb = b.leading_mono();
    const B lcb_inv = b.leading_coeff().inv();
    while (!r.is_zero()) {
        const auto& lr = r.leading_mono();
        if (!P::mono_divides(lb, lr)) return std::nullopt;
        P t = P::monomial(P::mono_div(lr, lb), r.leading_coeff() * lcb_inv);
        q += t;
        r -= t * b;
    }
    return q;
}

template <class B>
ParamPoly<B> exact_div(const ParamPoly<B>& a, const ParamPoly<B>& b) {
    auto q = exact_quotient(a, b);
    if (!q) throw InternalInconsistency("inexact polynomial division " + a.to_string() + " / " + b.to_string());
    return *q;
}

namespace detail {

template <class B>
ParamPoly<B> pseudo_remainder(ParamPoly<B> r, const ParamPoly<B>& b, std::size_t v) {
    const int db = b.degree_in(v);
    const ParamPoly<B> lcb = b.coefficient_in(v, db);
    while (!r.is_zero()) {
        int dr = r.degree_in(v);
        if (dr < db) break;
        ParamPoly<B> lcr = r.coefficient_in(v, dr);
        r = normalized(lcb * r - (lcr * b).times_var_power(v, dr - db));
    }
    return r;
}

} // namespace detail

template <class B>
ParamPoly<B> gcd(const ParamPoly<B>& a, const ParamPoly<B>& b);

/// Gcd of the coefficients of p viewed as a polynomial in t_v.
template <class B>
ParamPoly<B> content_in(const ParamPoly<B>& p, std::size_t v) {
    ParamPoly<B> g;
    for (auto& [k, c] : p.coefficients_in(v)) {
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

/// Greatest common divisor, unit-normalized (primitive PRS, recursive in the
/// highest occurring parameter).
template <class B>
ParamPoly<B> gcd(const ParamPoly<B>& a, const ParamPoly<B>& b) {
    if (a.is_zero()) return normalized(b);
    if (b.is_zero()) return normalized(a);
    if (a.is_constant() || b.is_constant()) return ParamPoly<B>(1);
    if (a == b) return normalized(a);

    const std::size_t v = std::max(a.var_bound(), b.var_bound()) - 1;
    ParamPoly<B> ca = content_in(a, v), cb = content_in(b, v);
    ParamPoly<B> g = gcd(ca, cb);
    ParamPoly<B> pa = exact_div(a, ca), pb = exact_div(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

    ParamPoly<B> h;
    while (true) {
        if (pb.is_zero()) { h = pa; break; }
        if (pb.degree_in(v) == 0) { h = ParamPoly<B>(1); break; }
        ParamPoly<B> r = detail::pseudo_remainder(pa, pb, v);
        pa = std::move(pb);
        pb = r.is_zero() ? r : normalized(exact_div(r, content_in(r, v)));
    }
    if (!h.is_constant()) h = exact_div(h, content_in(h, v));
    return normalized(g * h);
}

} // namespace hsmult
