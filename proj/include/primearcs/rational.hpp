#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace primearcs {

/// Exact rational number, always in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n);  // NOLINT: implicit from integers is intended
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpz_class& n);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class q);

    /// Accepts "n", "n/d" or a decimal such as "0.25", "-3.5e-2", "1e-14".
    /// Decimals are converted exactly (1e-14 is 1/10^14).
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    /// Always "num/den", including integers ("3/1") and zero ("0/1").
    std::string str() const;
    double to_double() const { return q_.get_d(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }

    /// Largest integer <= value.
    mpz_class floor() const;
    /// Fractional part in [0, 1).
    Rational frac() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int r = cmp(a.q_, b.q_);
        return r < 0 ? std::strong_ordering::less
             : r > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class q_;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Exact sum by pairwise (tree) reduction. Much cheaper than a running
/// sum when the terms have many distinct denominators.
Rational sum(std::span<const Rational> terms);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace primearcs
