#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace oddanom
{

// A named commuting indeterminate. `degree` is the cohomological degree; degree 0
// is reserved for symbolic rank parameters. Generators flagged `linear` span a
// square-zero ideal: any monomial containing two of them (or one squared) is 0.
// That is how transgressed odd classes, which only ever enter linearly, are kept.
struct Generator {
    std::string name;
    int degree = 0;
    bool linear = false;

    friend bool operator==(const Generator &, const Generator &) = default;
};

class GeneratorContext
{
public:
    explicit GeneratorContext(std::vector<Generator> gens) : m_gens(std::move(gens))
    {
        std::sort(m_gens.begin(), m_gens.end(),
                  [](const Generator &a, const Generator &b) { return a.name < b.name; });
        for (std::size_t i = 0; i < m_gens.size(); ++i) {
            const auto &g = m_gens[i];
            if (g.degree < 0 || g.degree % 2 != 0) {
                throw configuration_error("generator '" + g.name + "' must have non-negative even degree");
            }
            if (!m_index.emplace(g.name, i).second) {
                throw configuration_error("duplicate generator name '" + g.name + "'");
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return m_gens.size(); }
    [[nodiscard]] const Generator &operator[](std::size_t i) const { return m_gens.at(i); }
    [[nodiscard]] const std::vector<Generator> &generators() const noexcept { return m_gens; }

    [[nodiscard]] std::optional<std::size_t> find(const std::string &name) const
    {
        auto it = m_index.find(name);
        if (it == m_index.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] std::size_t index(const std::string &name) const
    {
        auto i = find(name);
        if (!i) {
            throw context_error("unknown generator '" + name + "'");
        }
        return *i;
    }

    friend bool operator==(const GeneratorContext &a, const GeneratorContext &b) { return a.m_gens == b.m_gens; }

private:
    std::vector<Generator> m_gens;
    std::unordered_map<std::string, std::size_t> m_index;
};

using ContextPtr = std::shared_ptr<const GeneratorContext>;

inline ContextPtr make_context(std::vector<Generator> gens)
{
    return std::make_shared<const GeneratorContext>(std::move(gens));
}

inline bool same_context(const ContextPtr &a, const ContextPtr &b)
{
    return a == b || (a && b && *a == *b);
}

// Exponent vector indexed like the owning context, with its total degree cached.
struct Monomial {
    std::vector<std::uint16_t> exps;
    int degree = 0;

    friend bool operator==(const Monomial &a, const Monomial &b) { return a.exps == b.exps; }
};

// Graded order: total degree first, then lexicographic on generator names with a
// higher power of an earlier name sorting first.
struct MonomialLess {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        if (a.degree != b.degree) {
            return a.degree < b.degree;
        }
        return std::lexicographical_compare(a.exps.begin(), a.exps.end(), b.exps.begin(), b.exps.end(),
                                            [](std::uint16_t x, std::uint16_t y) { return x > y; });
    }
};

// Polynomial over Rational in the generators of a context, truncated at total
// cohomological degree `max_degree`.
class GradedPoly
{
public:
    using term_map = std::map<Monomial, Rational, MonomialLess>;

    GradedPoly() = default;
    GradedPoly(ContextPtr ctx, int max_degree) : m_ctx(std::move(ctx)), m_max_degree(max_degree)
    {
        if (!m_ctx) {
            throw context_error("polynomial without generator context");
        }
        if (max_degree < 0) {
            throw configuration_error("negative truncation degree");
        }
    }

    static GradedPoly constant(ContextPtr ctx, int max_degree, const Rational &c)
    {
        GradedPoly p(std::move(ctx), max_degree);
        p.add_term(p.unit_monomial(), c);
        return p;
    }

    static GradedPoly generator(ContextPtr ctx, int max_degree, const std::string &name, unsigned power = 1)
    {
        GradedPoly p(std::move(ctx), max_degree);
        Monomial m = p.unit_monomial();
        const auto i = p.m_ctx->index(name);
        m.exps[i] = static_cast<std::uint16_t>(power);
        m.degree = static_cast<int>(power) * (*p.m_ctx)[i].degree;
        p.add_term(std::move(m), Rational(1));
        return p;
    }

    // Same context and truncation, no terms.
    [[nodiscard]] GradedPoly zero_like() const { return GradedPoly(m_ctx, m_max_degree); }
    [[nodiscard]] GradedPoly one_like() const { return constant(m_ctx, m_max_degree, Rational(1)); }
    [[nodiscard]] GradedPoly constant_like(const Rational &c) const { return constant(m_ctx, m_max_degree, c); }

    [[nodiscard]] const ContextPtr &context() const noexcept { return m_ctx; }
    [[nodiscard]] int max_degree() const noexcept { return m_max_degree; }
    [[nodiscard]] const term_map &terms() const noexcept { return m_terms; }
    [[nodiscard]] bool is_zero() const noexcept { return m_terms.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return m_terms.size(); }

    [[nodiscard]] Monomial unit_monomial() const
    {
        return Monomial{std::vector<std::uint16_t>(m_ctx->size(), 0), 0};
    }

    // Adds c*m, dropping it when it falls outside the truncated quotient ring.
    void add_term(Monomial m, const Rational &c)
    {
        if (c.is_zero() || !admissible(m)) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                m_terms.erase(it);
            }
        }
    }

    [[nodiscard]] bool admissible(const Monomial &m) const
    {
        if (m.degree > m_max_degree) {
            return false;
        }
        int linear = 0;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if ((*m_ctx)[i].linear) {
                linear += m.exps[i];
            }
        }
        return linear <= 1;
    }

    [[nodiscard]] Rational coefficient(const Monomial &m) const
    {
        auto it = m_terms.find(m);
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    // Homogeneous component of degree exactly d.
    [[nodiscard]] GradedPoly slice(int d) const
    {
        GradedPoly out = zero_like();
        for (const auto &[m, c] : m_terms) {
            if (m.degree == d) {
                out.m_terms.emplace(m, c);
            }
        }
        return out;
    }

    [[nodiscard]] GradedPoly truncate(int max_degree) const
    {
        GradedPoly out(m_ctx, max_degree);
        for (const auto &[m, c] : m_terms) {
            if (m.degree <= max_degree) {
                out.m_terms.emplace(m, c);
            }
        }
        return out;
    }

    // Number, if the polynomial is a pure constant (no generators at all).
    [[nodiscard]] std::optional<Rational> as_scalar() const
    {
        if (m_terms.empty()) {
            return Rational(0);
        }
        if (m_terms.size() == 1 && is_unit(m_terms.begin()->first)) {
            return m_terms.begin()->second;
        }
        return std::nullopt;
    }

    // Degree-0 part, which may still involve degree-0 parameters.
    [[nodiscard]] GradedPoly degree_zero_part() const { return slice(0); }

    [[nodiscard]] Rational scalar_part() const
    {
        auto it = m_terms.find(unit_monomial());
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    GradedPoly &operator+=(const GradedPoly &o)
    {
        check_compatible(o);
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, c);
        }
        return *this;
    }

    GradedPoly &operator-=(const GradedPoly &o)
    {
        check_compatible(o);
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, -c);
        }
        return *this;
    }

    GradedPoly &operator*=(const Rational &s)
    {
        if (s.is_zero()) {
            m_terms.clear();
            return *this;
        }
        for (auto &[m, c] : m_terms) {
            c *= s;
        }
        return *this;
    }

    GradedPoly &operator/=(const Rational &s) { return *this *= s.inverse(); }

    friend GradedPoly operator+(GradedPoly a, const GradedPoly &b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly &b) { return a -= b; }
    friend GradedPoly operator-(GradedPoly a)
    {
        for (auto &[m, c] : a.m_terms) {
            c = -c;
        }
        return a;
    }
    friend GradedPoly operator*(GradedPoly a, const Rational &s) { return a *= s; }
    friend GradedPoly operator*(const Rational &s, GradedPoly a) { return a *= s; }
    friend GradedPoly operator/(GradedPoly a, const Rational &s) { return a /= s; }

    friend GradedPoly operator*(const GradedPoly &a, const GradedPoly &b)
    {
        a.check_compatible(b);
        GradedPoly out = a.zero_like();
        const std::size_t n = a.m_ctx->size();
        Monomial m{std::vector<std::uint16_t>(n, 0), 0};
        for (const auto &[ma, ca] : a.m_terms) {
            for (const auto &[mb, cb] : b.m_terms) {
                // Terms are degree-sorted, so the rest of b only gets worse.
                if (ma.degree + mb.degree > a.m_max_degree) {
                    break;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    m.exps[i] = static_cast<std::uint16_t>(ma.exps[i] + mb.exps[i]);
                }
                m.degree = ma.degree + mb.degree;
                out.add_term(m, ca * cb);
            }
        }
        return out;
    }

    GradedPoly &operator*=(const GradedPoly &o) { return *this = *this * o; }

    friend bool operator==(const GradedPoly &a, const GradedPoly &b)
    {
        return same_context(a.m_ctx, b.m_ctx) && a.m_max_degree == b.m_max_degree && a.m_terms == b.m_terms;
    }

    [[nodiscard]] GradedPoly pow(unsigned e) const
    {
        GradedPoly out = one_like();
        for (unsigned i = 0; i < e; ++i) {
            out *= *this;
        }
        return out;
    }

    // Evaluates at the given generator values; generators not listed are 0.
    template <typename T>
    [[nodiscard]] T evaluate(const std::map<std::string, T> &values, T zero, T one) const
    {
        std::vector<T> vals(m_ctx->size(), zero);
        for (const auto &[name, v] : values) {
            if (auto i = m_ctx->find(name)) {
                vals[*i] = v;
            }
        }
        T acc = zero;
        for (const auto &[m, c] : m_terms) {
            T term = one;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                for (unsigned k = 0; k < m.exps[i]; ++k) {
                    term = term * vals[i];
                }
            }
            acc = acc + term * convert<T>(c);
        }
        return acc;
    }

    // Replaces generator `name` by the polynomial `value` (same context).
    [[nodiscard]] GradedPoly substitute(const std::string &name, const GradedPoly &value) const
    {
        check_compatible(value);
        const auto gi = m_ctx->index(name);
        GradedPoly out = zero_like();
        std::vector<GradedPoly> powers{one_like()};
        for (const auto &[m, c] : m_terms) {
            while (powers.size() <= m.exps[gi]) {
                powers.push_back(powers.back() * value);
            }
            Monomial rest = m;
            rest.exps[gi] = 0;
            rest.degree = m.degree - m.exps[gi] * (*m_ctx)[gi].degree;
            GradedPoly t = zero_like();
            t.add_term(rest, c);
            out += t * powers[m.exps[gi]];
        }
        return out;
    }

    // Groups terms by the exponent-vector with generator `name` removed; the
    // value lists the coefficient of each power of `name`.
    [[nodiscard]] std::map<Monomial, std::map<int, Rational>, MonomialLess> collect(const std::string &name) const
    {
        const auto gi = m_ctx->index(name);
        std::map<Monomial, std::map<int, Rational>, MonomialLess> out;
        for (const auto &[m, c] : m_terms) {
            Monomial rest = m;
            const int e = m.exps[gi];
            rest.exps[gi] = 0;
            rest.degree = m.degree - e * (*m_ctx)[gi].degree;
            out[rest][e] = c;
        }
        return out;
    }

    // Canonical text: terms in monomial order, "c*g1^2*g2", exact fractions.
    [[nodiscard]] std::string str() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::string s;
        bool first = true;
        for (const auto &[m, c] : m_terms) {
            const bool neg = c.sign() < 0;
            const Rational a = neg ? -c : c;
            if (first) {
                s += neg ? "-" : "";
            } else {
                s += neg ? " - " : " + ";
            }
            first = false;
            const std::string mono = monomial_str(m);
            if (mono.empty()) {
                s += a.str();
            } else if (a.is_one()) {
                s += mono;
            } else {
                s += a.str() + "*" + mono;
            }
        }
        return s;
    }

    [[nodiscard]] std::string monomial_str(const Monomial &m) const
    {
        std::string s;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) {
                continue;
            }
            if (!s.empty()) {
                s += "*";
            }
            s += (*m_ctx)[i].name;
            if (m.exps[i] > 1) {
                s += "^" + std::to_string(m.exps[i]);
            }
        }
        return s;
    }

    void check_compatible(const GradedPoly &o) const
    {
        if (!same_context(m_ctx, o.m_ctx)) {
            throw context_error("polynomials over different generator contexts");
        }
        if (m_max_degree != o.m_max_degree) {
            throw context_error("polynomials with different truncation degrees (" + std::to_string(m_max_degree)
                                + " vs " + std::to_string(o.m_max_degree) + ")");
        }
    }

private:
    static bool is_unit(const Monomial &m)
    {
        return std::all_of(m.exps.begin(), m.exps.end(), [](std::uint16_t e) { return e == 0; });
    }

    template <typename T>
    static T convert(const Rational &c)
    {
        if constexpr (std::is_same_v<T, Rational>) {
            return c;
        } else {
            return T(c.to_double());
        }
    }

    ContextPtr m_ctx;
    int m_max_degree = 0;
    term_map m_terms;
};

// exp of an element with vanishing degree-0 part; nilpotent by truncation.
inline GradedPoly exp_nilpotent(const GradedPoly &a)
{
    if (!a.slice(0).is_zero()) {
        throw domain_error("exp needs an argument with zero degree-0 part");
    }
    GradedPoly out = a.one_like();
    GradedPoly term = a.one_like();
    for (int k = 1; !term.is_zero(); ++k) {
        term = term * a / Rational(k);
        out += term;
    }
    return out;
}

// 1/a, for a whose degree-0 part is a nonzero number.
inline GradedPoly inverse(const GradedPoly &a)
{
    const GradedPoly a0 = a.slice(0);
    const auto c = a0.as_scalar();
    if (!c || c->is_zero()) {
        throw not_invertible_error("degree-0 part is not a nonzero number: " + a0.str());
    }
    const Rational ci = c->inverse();
    const GradedPoly n = (a - a0) * ci;
    GradedPoly out = a.one_like();
    GradedPoly term = a.one_like();
    while (!(term = -(term * n)).is_zero()) {
        out += term;
    }
    return out * ci;
}

// log of an element whose degree-0 part is exactly 1.
inline GradedPoly log_unipotent(const GradedPoly &a)
{
    const GradedPoly a0 = a.slice(0);
    const auto c = a0.as_scalar();
    if (!c || !c->is_one()) {
        throw domain_error("log needs degree-0 part equal to 1, got " + a0.str());
    }
    const GradedPoly n = a - a0;
    GradedPoly out = a.zero_like();
    GradedPoly power = a.one_like();
    for (int k = 1;; ++k) {
        power = power * n;
        if (power.is_zero()) {
            break;
        }
        out += power * Rational(k % 2 == 1 ? 1 : -1, k);
    }
    return out;
}

} // namespace oddanom
