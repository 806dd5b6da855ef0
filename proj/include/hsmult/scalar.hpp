#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "hsmult/errors.hpp"

namespace hsmult {

/// Exact rational number (GMP backed), always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(v) {}
    explicit Rational(const mpz_class& z) : q_(z) {}
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::domain_error("zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p" or "p/q" with optional sign.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(mpz_class(s));
        return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    }

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& value() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational inv() const {
        if (is_zero()) throw std::domain_error("division by zero");
        return Rational(mpq_class(1) / q_);
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

    std::string to_string() const { return q_.get_str(); }

    static constexpr bool is_exact_field = true;
    static unsigned long characteristic() { return 0; }

private:
    mpq_class q_;
};

/// Element of the prime field F_p.
///
/// The modulus is a per-thread setting installed with Zp::Scope, the way a
/// computation session fixes its coefficient field once.
class Zp {
public:
    class Scope {
    public:
        explicit Scope(std::uint32_t p) : saved_(modulus_ref()) {
            if (!is_prime(p)) throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
            modulus_ref() = p;
        }
        ~Scope() { modulus_ref() = saved_; }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

    private:
        std::uint32_t saved_;
    };

    Zp() = default;
    Zp(long v) : v_(reduce(v)) {}
    Zp(int v) : v_(reduce(v)) {}

    static std::uint32_t modulus() {
        auto p = modulus_ref();
        if (p == 0) throw std::logic_error("Zp used without an active modulus (install a Zp::Scope)");
        return p;
    }
    static unsigned long characteristic() { return modulus(); }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    std::uint32_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Zp inv() const {
        if (v_ == 0) throw std::domain_error("division by zero in F_p");
        return from_raw(pow_mod(v_, modulus() - 2, modulus()));
    }

    Zp& operator+=(const Zp& o) {
        std::uint64_t s = std::uint64_t(v_) + o.v_;
        if (s >= modulus()) s -= modulus();
        v_ = static_cast<std::uint32_t>(s);
        return *this;
    }
    Zp& operator-=(const Zp& o) {
        std::uint64_t s = std::uint64_t(v_) + modulus() - o.v_;
        if (s >= modulus()) s -= modulus();
        v_ = static_cast<std::uint32_t>(s);
        return *this;
    }
    Zp& operator*=(const Zp& o) {
        v_ = static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % modulus());
        return *this;
    }
    Zp& operator/=(const Zp& o) { return *this *= o.inv(); }
    friend Zp operator+(Zp a, const Zp& b) { return a += b; }
    friend Zp operator-(Zp a, const Zp& b) { return a -= b; }
    friend Zp operator*(Zp a, const Zp& b) { return a *= b; }
    friend Zp operator/(Zp a, const Zp& b) { return a /= b; }
    Zp operator-() const { return Zp() - *this; }

    friend bool operator==(const Zp& a, const Zp& b) { return a.v_ == b.v_; }
    friend bool operator<(const Zp& a, const Zp& b) { return a.v_ < b.v_; }

    std::string to_string() const { return std::to_string(v_); }

    static Zp from_raw(std::uint64_t v) {
        Zp z;
        z.v_ = static_cast<std::uint32_t>(v);
        return z;
    }

    static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1 % m;
        b %= m;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>((unsigned __int128)r * b % m);
            b = static_cast<std::uint64_t>((unsigned __int128)b * b % m);
            e >>= 1;
        }
        return r;
    }

    static constexpr bool is_exact_field = true;

private:
    static std::uint32_t& modulus_ref() {
        thread_local std::uint32_t p = 0;
        return p;
    }
    static std::uint32_t reduce(long v) {
        long p = static_cast<long>(modulus());
        long r = v % p;
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t v_ = 0;
};

} // namespace hsmult
