#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "errors.hpp"

namespace oddanom
{

// Exact rational number, always in lowest terms with positive denominator.
class Rational
{
public:
    Rational() = default;
    Rational(long n) : m_value(n) {} // NOLINT(google-explicit-constructor)
    Rational(int n) : m_value(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : m_value(num, den)
    {
        if (den == 0) {
            throw domain_error("rational with zero denominator");
        }
        m_value.canonicalize();
    }
    explicit Rational(const mpz_class &n) : m_value(n) {}
    Rational(const mpz_class &num, const mpz_class &den) : m_value(num, den)
    {
        if (den == 0) {
            throw domain_error("rational with zero denominator");
        }
        m_value.canonicalize();
    }
    explicit Rational(mpq_class v) : m_value(std::move(v)) { m_value.canonicalize(); }

    // Parses "p" or "p/q".
    static Rational parse(const std::string &s)
    {
        mpq_class v;
        if (v.set_str(s, 10) != 0 || v.get_den() == 0) {
            throw domain_error("cannot parse rational '" + s + "'");
        }
        v.canonicalize();
        return Rational(std::move(v));
    }

    [[nodiscard]] mpz_class numerator() const { return m_value.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return m_value.get_den(); }
    [[nodiscard]] const mpq_class &raw() const noexcept { return m_value; }

    [[nodiscard]] bool is_zero() const { return sgn(m_value) == 0; }
    [[nodiscard]] bool is_one() const { return m_value == 1; }
    [[nodiscard]] bool is_integer() const { return m_value.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(m_value); }
    [[nodiscard]] double to_double() const { return m_value.get_d(); }

    [[nodiscard]] std::string str() const { return m_value.get_str(); }

    Rational &operator+=(const Rational &o) { m_value += o.m_value; return *this; }
    Rational &operator-=(const Rational &o) { m_value -= o.m_value; return *this; }
    Rational &operator*=(const Rational &o) { m_value *= o.m_value; return *this; }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero()) {
            throw not_invertible_error("division by zero rational");
        }
        m_value /= o.m_value;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.m_value)); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.m_value == b.m_value; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.m_value, b.m_value);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    [[nodiscard]] Rational inverse() const
    {
        if (is_zero()) {
            throw not_invertible_error("inverse of zero rational");
        }
        return Rational(mpq_class(1) / m_value);
    }

    // Exact power with signed exponent.
    [[nodiscard]] Rational pow(long e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), m_value.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), m_value.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    static Rational two_pow(long e) { return Rational(2).pow(e); }

    // 2-adic valuation; zero has no valuation.
    [[nodiscard]] long two_adic_valuation() const
    {
        if (is_zero()) {
            throw domain_error("2-adic valuation of zero");
        }
        const auto num = m_value.get_num();
        const auto den = m_value.get_den();
        return static_cast<long>(mpz_scan1(num.get_mpz_t(), 0)) - static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
    }

    static Rational factorial(unsigned long n)
    {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), n);
        return Rational(f);
    }

    static Rational binomial(long n, long k)
    {
        if (k < 0 || n < 0 || k > n) {
            return Rational(0);
        }
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return Rational(b);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

private:
    mpq_class m_value;
};

} // namespace oddanom
