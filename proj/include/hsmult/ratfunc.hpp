#pragma once

#include <span>
#include <string>
#include <vector>

#include "hsmult/param_poly.hpp"

namespace hsmult {

/// Element of K(t): a reduced fraction num/den of parameter polynomials.
///
/// Canonical form: gcd(num, den) = 1; over Q both are in Z[t] with joint
/// integer content 1 and den has a positive leading coefficient; over F_p den
/// is monic. Equal values therefore have identical representations.
template <class B>
class RatFunc {
public:
    using Base = B;
    using Poly = ParamPoly<B>;

    RatFunc() : den_(1) {}
    RatFunc(const B& c) : num_(c), den_(1) { canonicalize_units(); }
    RatFunc(long c) : RatFunc(B(c)) {}
    RatFunc(int c) : RatFunc(B(c)) {}
    RatFunc(const Poly& p) : num_(p), den_(1) { canonicalize_units(); }
    RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) {
        if (den_.is_zero()) throw std::domain_error("zero denominator in rational function");
        reduce();
    }

    static RatFunc param(std::size_t i) { return RatFunc(Poly::var(i)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    B constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("division by zero rational function");
        return RatFunc(den_, num_, Reduced{});
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
        // cross-cancel before multiplying to keep intermediate sizes small
        Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        return RatFunc(exact_div(a.num_, g1) * exact_div(b.num_, g2),
                       exact_div(a.den_, g2) * exact_div(b.den_, g1));
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
    RatFunc operator-() const { return RatFunc(-num_, den_, Reduced{}); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Value at a parameter point; throws DenominatorVanishes if den(point) = 0.
    B evaluate(std::span<const B> point) const {
        B d = den_.evaluate(point);
        if (d.is_zero()) throw DenominatorVanishes("denominator " + den_.to_string() + " vanishes at the point");
        return num_.evaluate(point) / d;
    }

    std::string to_string(std::span<const std::string> names = {}) const {
        if (den_.is_one()) return num_.to_string(names);
        std::string n = num_.to_string(names), d = den_.to_string(names);
        if (num_.terms().size() > 1) n = "(" + n + ")";
        if (den_.terms().size() > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
        return n + "/" + d;
    }

    static constexpr bool is_exact_field = true;
    static unsigned long characteristic() { return B::characteristic(); }

private:
    struct Reduced {};
    RatFunc(Poly n, Poly d, Reduced) : num_(std::move(n)), den_(std::move(d)) { canonicalize_units(); }

    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        if (!den_.is_constant()) {
            Poly g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        canonicalize_units();
    }

    /// Fixes the unit: joint coefficient sequence of den then num is normalized,
    /// which makes den's leading coefficient positive (Q) or 1 (F_p).
    void canonicalize_units() {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        std::vector<B> cs;
        for (auto& [m, c] : den_.terms()) cs.push_back(c);
        for (auto& [m, c] : num_.terms()) cs.push_back(c);
        B u = joint_unit(cs);
        if (!u.is_one()) {
            B ui = u.inv();
            num_ = num_.scaled(ui);
            den_ = den_.scaled(ui);
        }
    }

    static B joint_unit(const std::vector<B>& cs) {
        if constexpr (std::is_same_v<B, Zp>) {
            return cs.front();  // den's leading coefficient
        } else {
            return normalizing_unit(std::span<const B>(cs));
        }
    }

    Poly num_;
    Poly den_;
};

} // namespace hsmult
