#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graded_poly.hpp"
#include "rational.hpp"

namespace oddanom
{

// Coefficient-ring hooks used by Series. Rational and GradedPoly provide them.
inline Rational coeff_one_like(const Rational &) { return Rational(1); }
inline Rational coeff_zero_like(const Rational &) { return Rational(0); }
inline bool coeff_is_zero(const Rational &c) { return c.is_zero(); }

inline Rational coeff_exp(const Rational &c)
{
    if (!c.is_zero()) {
        throw domain_error("exp of a series needs zero constant term, got " + c.str());
    }
    return Rational(1);
}

inline Rational coeff_log(const Rational &c)
{
    if (!c.is_one()) {
        throw domain_error("log of a series needs constant term 1, got " + c.str());
    }
    return Rational(0);
}

inline Rational coeff_inverse(const Rational &c)
{
    if (c.is_zero()) {
        throw not_invertible_error("series with zero constant term");
    }
    return c.inverse();
}

inline GradedPoly coeff_one_like(const GradedPoly &c) { return c.one_like(); }
inline GradedPoly coeff_zero_like(const GradedPoly &c) { return c.zero_like(); }
inline bool coeff_is_zero(const GradedPoly &c) { return c.is_zero(); }
inline GradedPoly coeff_exp(const GradedPoly &c) { return exp_nilpotent(c); }
inline GradedPoly coeff_log(const GradedPoly &c) { return log_unipotent(c); }
inline GradedPoly coeff_inverse(const GradedPoly &c) { return inverse(c); }

// Truncated series in h = q^{1/2}: coefficient k multiplies q^{k/2}, k = 0..order.
template <typename C>
class Series
{
public:
    Series() = default;

    // Zero series; `zero` fixes the coefficient ring (context, truncation).
    Series(C zero, int order) : m_order(order), m_coeffs(static_cast<std::size_t>(check_order(order)) + 1, zero) {}

    Series(std::vector<C> coeffs, int order) : m_order(check_order(order)), m_coeffs(std::move(coeffs))
    {
        if (m_coeffs.empty()) {
            throw configuration_error("series needs at least a constant coefficient");
        }
        m_coeffs.resize(static_cast<std::size_t>(order) + 1, coeff_zero_like(m_coeffs.front()));
    }

    static Series constant(const C &c, int order)
    {
        Series s(coeff_zero_like(c), order);
        s.m_coeffs[0] = c;
        return s;
    }

    // c * q^{k/2}
    static Series monomial(const C &c, int k, int order)
    {
        Series s(coeff_zero_like(c), order);
        if (k < 0) {
            throw configuration_error("negative q exponent");
        }
        if (k <= order) {
            s.m_coeffs[static_cast<std::size_t>(k)] = c;
        }
        return s;
    }

    [[nodiscard]] int order() const noexcept { return m_order; }
    [[nodiscard]] const std::vector<C> &coefficients() const noexcept { return m_coeffs; }

    // Coefficient of q^{k/2}; zero beyond the truncation.
    [[nodiscard]] C operator[](int k) const
    {
        if (k < 0 || k > m_order) {
            return coeff_zero_like(m_coeffs.front());
        }
        return m_coeffs[static_cast<std::size_t>(k)];
    }

    void set(int k, C c)
    {
        if (k < 0 || k > m_order) {
            throw configuration_error("q exponent outside truncation");
        }
        m_coeffs[static_cast<std::size_t>(k)] = std::move(c);
    }

    [[nodiscard]] Series zero_like() const { return Series(coeff_zero_like(m_coeffs.front()), m_order); }
    [[nodiscard]] Series one_like() const { return constant(coeff_one_like(m_coeffs.front()), m_order); }

    [[nodiscard]] bool is_zero() const
    {
        for (const auto &c : m_coeffs) {
            if (!coeff_is_zero(c)) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] Series truncate(int order) const
    {
        if (order > m_order) {
            throw configuration_error("cannot extend a truncated series");
        }
        return Series(std::vector<C>(m_coeffs.begin(), m_coeffs.begin() + order + 1), order);
    }

    // Applies f to every coefficient.
    template <typename F>
    [[nodiscard]] auto map(F &&f) const -> Series<std::invoke_result_t<F, const C &>>
    {
        using D = std::invoke_result_t<F, const C &>;
        std::vector<D> out;
        out.reserve(m_coeffs.size());
        for (const auto &c : m_coeffs) {
            out.push_back(f(c));
        }
        return Series<D>(std::move(out), m_order);
    }

    // Multiplies by q^{k/2}.
    [[nodiscard]] Series shift(int k) const
    {
        Series out = zero_like();
        for (int i = 0; i + k <= m_order; ++i) {
            if (i + k >= 0) {
                out.m_coeffs[static_cast<std::size_t>(i + k)] = m_coeffs[static_cast<std::size_t>(i)];
            }
        }
        return out;
    }

    // Replaces q^{1/2} by q (the series in q^{1/2} becomes one in q, i.e. h -> h^2).
    [[nodiscard]] Series stretch() const
    {
        Series out = zero_like();
        for (int i = 0; 2 * i <= m_order; ++i) {
            out.m_coeffs[static_cast<std::size_t>(2 * i)] = m_coeffs[static_cast<std::size_t>(i)];
        }
        return out;
    }

    Series &operator+=(const Series &o)
    {
        check_compatible(o);
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            m_coeffs[i] += o.m_coeffs[i];
        }
        return *this;
    }

    Series &operator-=(const Series &o)
    {
        check_compatible(o);
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            m_coeffs[i] -= o.m_coeffs[i];
        }
        return *this;
    }

    Series &operator*=(const Rational &s)
    {
        for (auto &c : m_coeffs) {
            c *= s;
        }
        return *this;
    }

    friend Series operator+(Series a, const Series &b) { return a += b; }
    friend Series operator-(Series a, const Series &b) { return a -= b; }
    friend Series operator-(Series a) { return a *= Rational(-1); }
    friend Series operator*(Series a, const Rational &s) { return a *= s; }
    friend Series operator*(const Rational &s, Series a) { return a *= s; }

    // Coefficientwise multiplication by a constant of the coefficient ring.
    [[nodiscard]] Series scale(const C &c) const
    {
        Series out = *this;
        for (auto &x : out.m_coeffs) {
            x = x * c;
        }
        return out;
    }

    friend Series operator*(const Series &a, const Series &b)
    {
        a.check_compatible(b);
        Series out = a.zero_like();
        for (int i = 0; i <= a.m_order; ++i) {
            const C &ai = a.m_coeffs[static_cast<std::size_t>(i)];
            if (coeff_is_zero(ai)) {
                continue;
            }
            for (int j = 0; i + j <= a.m_order; ++j) {
                const C &bj = b.m_coeffs[static_cast<std::size_t>(j)];
                if (!coeff_is_zero(bj)) {
                    out.m_coeffs[static_cast<std::size_t>(i + j)] += ai * bj;
                }
            }
        }
        return out;
    }

    Series &operator*=(const Series &o) { return *this = *this * o; }

    friend bool operator==(const Series &a, const Series &b)
    {
        return a.m_order == b.m_order && a.m_coeffs == b.m_coeffs;
    }

    [[nodiscard]] Series pow(unsigned e) const
    {
        Series out = one_like();
        Series base = *this;
        while (e > 0) {
            if (e & 1U) {
                out *= base;
            }
            e >>= 1U;
            if (e > 0) {
                base *= base;
            }
        }
        return out;
    }

    [[nodiscard]] Series inverse() const
    {
        Series out = zero_like();
        const C g0 = coeff_inverse(m_coeffs[0]);
        out.m_coeffs[0] = g0;
        for (int k = 1; k <= m_order; ++k) {
            C acc = coeff_zero_like(g0);
            for (int j = 1; j <= k; ++j) {
                acc += m_coeffs[static_cast<std::size_t>(j)] * out.m_coeffs[static_cast<std::size_t>(k - j)];
            }
            out.m_coeffs[static_cast<std::size_t>(k)] = -(acc * g0);
        }
        return out;
    }

    // exp via k f_k = sum_j j a_j f_{k-j}; the constant term must be nilpotent.
    [[nodiscard]] Series exp() const
    {
        Series out = zero_like();
        out.m_coeffs[0] = coeff_exp(m_coeffs[0]);
        for (int k = 1; k <= m_order; ++k) {
            C acc = coeff_zero_like(out.m_coeffs[0]);
            for (int j = 1; j <= k; ++j) {
                const C &aj = m_coeffs[static_cast<std::size_t>(j)];
                if (!coeff_is_zero(aj)) {
                    acc += aj * out.m_coeffs[static_cast<std::size_t>(k - j)] * Rational(j);
                }
            }
            out.m_coeffs[static_cast<std::size_t>(k)] = acc * Rational(1, k);
        }
        return out;
    }

    // Inverse of exp; the constant term must be unipotent.
    [[nodiscard]] Series log() const
    {
        Series out = zero_like();
        out.m_coeffs[0] = coeff_log(m_coeffs[0]);
        const C f0inv = coeff_inverse(m_coeffs[0]);
        for (int k = 1; k <= m_order; ++k) {
            C acc = m_coeffs[static_cast<std::size_t>(k)] * Rational(k);
            for (int j = 1; j < k; ++j) {
                acc -= out.m_coeffs[static_cast<std::size_t>(j)] * m_coeffs[static_cast<std::size_t>(k - j)]
                       * Rational(j);
            }
            out.m_coeffs[static_cast<std::size_t>(k)] = acc * f0inv * Rational(1, k);
        }
        return out;
    }

    void check_compatible(const Series &o) const
    {
        if (m_order != o.m_order) {
            throw context_error("series with different q truncations (" + std::to_string(m_order) + " vs "
                                + std::to_string(o.m_order) + ")");
        }
    }

private:
    static int check_order(int order)
    {
        if (order < 0) {
            throw configuration_error("negative q truncation");
        }
        return order;
    }

    int m_order = 0;
    std::vector<C> m_coeffs{C{}};
};

using ScalarSeries = Series<Rational>;
using QSeries = Series<GradedPoly>;

// Embeds a scalar series into a polynomial-coefficient series.
inline QSeries lift(const ScalarSeries &s, const ContextPtr &ctx, int max_degree)
{
    return s.map([&](const Rational &c) { return GradedPoly::constant(ctx, max_degree, c); });
}

// Extracts a series whose coefficients are all pure numbers.
inline ScalarSeries to_scalar(const QSeries &s)
{
    return s.map([](const GradedPoly &p) {
        auto c = p.as_scalar();
        if (!c) {
            throw domain_error("coefficient is not a number: " + p.str());
        }
        return *c;
    });
}

} // namespace oddanom
