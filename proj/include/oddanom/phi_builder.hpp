#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "graded_poly.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "theta_q.hpp"

namespace oddanom
{

// Power of two 2^{constant + half_n * N/2}, kept outside the ring so N can stay symbolic.
struct AffinePow2 {
    long constant = 0;
    long half_n = 0;

    friend AffinePow2 operator+(AffinePow2 a, AffinePow2 b) { return {a.constant + b.constant, a.half_n + b.half_n}; }
    friend AffinePow2 operator-(AffinePow2 a, AffinePow2 b) { return {a.constant - b.constant, a.half_n - b.half_n}; }
    friend bool operator==(const AffinePow2 &, const AffinePow2 &) = default;

    // "2^{N/2+2}" style text.
    [[nodiscard]] std::string str() const
    {
        std::string e;
        if (half_n != 0) {
            e = (half_n == 1 ? std::string() : half_n == -1 ? std::string("-") : std::to_string(half_n) + "*") + "N/2";
        }
        if (constant != 0 || e.empty()) {
            if (!e.empty()) {
                e += constant > 0 ? "+" : "";
            }
            e += std::to_string(constant);
        }
        return "2^(" + e + ")";
    }

    // Value for a concrete even N.
    [[nodiscard]] Rational value(long n) const
    {
        if (n % 2 != 0) {
            throw configuration_error("rank N must be even");
        }
        return Rational::two_pow(constant + half_n * (n / 2));
    }
};

// 2^{half_n * N/2} * poly.
struct Pow2Poly {
    long half_n = 0;
    GradedPoly poly;
};

// Sums need equal powers of two unless one side vanishes.
inline Pow2Poly operator+(const Pow2Poly &a, const Pow2Poly &b)
{
    if (a.poly.is_zero()) {
        return b;
    }
    if (b.poly.is_zero()) {
        return a;
    }
    if (a.half_n != b.half_n) {
        throw context_error("adding classes with different powers of 2^{N/2}");
    }
    return {a.half_n, a.poly + b.poly};
}

inline Pow2Poly operator*(const Rational &s, const Pow2Poly &a) { return {a.half_n, a.poly * s}; }

inline Pow2Poly operator*(const Pow2Poly &a, const Pow2Poly &b) { return {a.half_n + b.half_n, a.poly * b.poly}; }

// How the E side enters:
//   none  no E at all
//   odd   transgressed odd classes; E power sums span a square-zero ideal and
//         the first one vanishes (the vanishing third Chern class condition)
//   even  honest multiplicative Chern-root model, every power sum kept
enum class EModel { none, odd, even };

inline std::string_view emodel_name(EModel m)
{
    switch (m) {
    case EModel::none:
        return "none";
    case EModel::odd:
        return "odd";
    case EModel::even:
        return "even";
    }
    return "?";
}

inline EModel parse_emodel(std::string_view s)
{
    for (auto m : {EModel::none, EModel::odd, EModel::even}) {
        if (emodel_name(m) == s) {
            return m;
        }
    }
    throw configuration_error("unknown E model '" + std::string(s) + "'");
}

// Generators: N (rank, degree 0), t_k = sum_j z_j^{2k}, e_k = sum_a w_a^{2k}
// (degree 4k, k <= r) and v2 = (pi u)^2 when twisted.
class ClassRing
{
public:
    ClassRing(int r, EModel model, bool twisted) : m_r(r), m_model(model), m_twisted(twisted)
    {
        if (r < 1) {
            throw configuration_error("r must be at least 1");
        }
        std::vector<Generator> gens{{"N", 0, false}};
        for (int k = 1; k <= r; ++k) {
            gens.push_back({"t" + std::to_string(k), 4 * k, false});
        }
        for (int k = first_e(); model != EModel::none && k <= r; ++k) {
            gens.push_back({"e" + std::to_string(k), 4 * k, model == EModel::odd});
        }
        if (twisted) {
            gens.push_back({"v2", 4, false});
        }
        m_ctx = make_context(std::move(gens));
    }

    [[nodiscard]] int r() const noexcept { return m_r; }
    [[nodiscard]] int top_degree() const noexcept { return 4 * m_r; }
    [[nodiscard]] EModel model() const noexcept { return m_model; }
    [[nodiscard]] bool twisted() const noexcept { return m_twisted; }
    [[nodiscard]] const ContextPtr &context() const noexcept { return m_ctx; }
    [[nodiscard]] int first_e() const noexcept { return m_model == EModel::odd ? 2 : 1; }
    [[nodiscard]] bool has(const std::string &name) const { return m_ctx->find(name).has_value(); }

    [[nodiscard]] GradedPoly zero() const { return GradedPoly(m_ctx, top_degree()); }
    [[nodiscard]] GradedPoly constant(const Rational &c) const { return GradedPoly::constant(m_ctx, top_degree(), c); }
    [[nodiscard]] GradedPoly gen(const std::string &name, unsigned power = 1) const
    {
        return GradedPoly::generator(m_ctx, top_degree(), name, power);
    }

    // sum_k c_k * g_k for g in {t, e}; c_k is the z^{2k} coefficient of a root series.
    [[nodiscard]] GradedPoly power_sum(char family, const std::vector<Rational> &c) const
    {
        GradedPoly out = zero();
        const int k0 = family == 'e' ? first_e() : 1;
        for (int k = k0; k < static_cast<int>(c.size()) && k <= m_r; ++k) {
            const std::string name = std::string(1, family) + std::to_string(k);
            if (has(name)) {
                out += gen(name) * c[static_cast<std::size_t>(k)];
            }
        }
        return out;
    }

    // sum_k c_k v2^k for the single twisting root.
    [[nodiscard]] GradedPoly xi_sum(const std::vector<Rational> &c) const
    {
        GradedPoly out = zero();
        for (int k = 1; k < static_cast<int>(c.size()) && k <= m_r; ++k) {
            out += gen("v2", static_cast<unsigned>(k)) * c[static_cast<std::size_t>(k)];
        }
        return out;
    }

    // Terms carrying exactly one E generator (the odd classes).
    [[nodiscard]] GradedPoly odd_part(const GradedPoly &p) const
    {
        GradedPoly out = zero();
        for (const auto &[m, c] : p.terms()) {
            int e = 0;
            for (std::size_t i = 0; i < m.exps.size(); ++i) {
                if ((*m_ctx)[i].name[0] == 'e') {
                    e += m.exps[i];
                }
            }
            if (e == 1) {
                out.add_term(m, c);
            }
        }
        return out;
    }

private:
    int m_r;
    EModel m_model;
    bool m_twisted;
    ContextPtr m_ctx;
};

// z^{2k} coefficients, k = 0..n, of a scalar root function given by its block.
inline std::vector<Rational> q0_root_coeffs(BlockKind kind, int n)
{
    std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
        out[static_cast<std::size_t>(k)] = block_coefficient(kind, k, 0)[0];
    }
    return out;
}

enum class PhiKind { L, W, W_prime };

inline std::string_view phi_kind_name(PhiKind k)
{
    switch (k) {
    case PhiKind::L:
        return "phi_L";
    case PhiKind::W:
        return "phi_W";
    case PhiKind::W_prime:
        return "phi_W_prime";
    }
    return "?";
}

inline PhiKind parse_phi_kind(std::string_view s)
{
    for (auto k : {PhiKind::L, PhiKind::W, PhiKind::W_prime}) {
        if (phi_kind_name(k) == s) {
            return k;
        }
    }
    throw configuration_error("unknown phi kind '" + std::string(s) + "'");
}

struct GeometrySpec {
    int r = 1;
    EModel e_model = EModel::odd;
    bool twisted = false;
    std::optional<int> q_order; // half-units; default 2*ceil(r/2) + 4

    [[nodiscard]] int resolved_q_order() const
    {
        const int K = q_order.value_or(2 * ((r + 1) / 2) + 4);
        if (K < 0) {
            throw configuration_error("negative q order");
        }
        return K;
    }
};

struct PhiSeries {
    PhiKind kind = PhiKind::W;
    bool twisted = false;
    EModel e_model = EModel::odd;
    AffinePow2 prefactor; // multiplies `series`
    QSeries series;
};

struct PhiBlocks {
    BlockKind theta_block; // shared by TM and E roots
    std::vector<BlockKind> xi_blocks;
};

inline PhiBlocks phi_blocks(PhiKind kind)
{
    switch (kind) {
    case PhiKind::L:
        return {BlockKind::b1, {BlockKind::inv_sq_b1, BlockKind::b2, BlockKind::b3}};
    case PhiKind::W:
        return {BlockKind::b2, {BlockKind::inv_sq_b2, BlockKind::b1, BlockKind::b3}};
    case PhiKind::W_prime:
        return {BlockKind::b3, {BlockKind::inv_sq_b3, BlockKind::b1, BlockKind::b2}};
    }
    throw configuration_error("unknown phi kind");
}

// Series in q^{1/2} whose q^{k/2} coefficient is sum_m c_m(k) g_m for a block.
inline QSeries block_over_roots(const ClassRing &ring, BlockKind kind, char family, int K)
{
    const int n = ring.r();
    std::vector<ScalarSeries> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) + 1);
    coeffs.emplace_back(Rational(0), K);
    for (int m = 1; m <= n; ++m) {
        coeffs.push_back(block_coefficient(kind, m, K));
    }
    QSeries out(ring.zero(), K);
    for (int k = 0; k <= K; ++k) {
        std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
        for (int m = 1; m <= n; ++m) {
            c[static_cast<std::size_t>(m)] = coeffs[static_cast<std::size_t>(m)][k];
        }
        out.set(k, family == 'v' ? ring.xi_sum(c) : ring.power_sum(family, c));
    }
    return out;
}

// Logarithm of the full theta-quotient product.
inline QSeries phi_log(const ClassRing &ring, PhiKind kind, int K)
{
    const PhiBlocks b = phi_blocks(kind);
    QSeries log = block_over_roots(ring, BlockKind::witten, 't', K) + block_over_roots(ring, b.theta_block, 't', K);
    if (ring.model() != EModel::none) {
        log += block_over_roots(ring, b.theta_block, 'e', K);
    }
    if (ring.twisted()) {
        for (BlockKind x : b.xi_blocks) {
            log += block_over_roots(ring, x, 'v', K);
        }
    }
    return log;
}

inline PhiSeries build_phi(const ClassRing &ring, PhiKind kind, int K)
{
    QSeries s = phi_log(ring, kind, K).exp();
    if (ring.model() == EModel::odd) {
        s = s.map([&](const GradedPoly &p) { return ring.odd_part(p); });
    }
    AffinePow2 pre;
    if (kind == PhiKind::L) {
        pre.constant = 2L * ring.r() - 1;
        pre.half_n = ring.model() == EModel::none ? 0 : 1;
    }
    return {kind, ring.twisted(), ring.model(), pre, std::move(s)};
}

inline PhiSeries build_phi(const GeometrySpec &spec, PhiKind kind)
{
    return build_phi(ClassRing(spec.r, spec.e_model, spec.twisted), kind, spec.resolved_q_order());
}

// Degree-4r component of every coefficient.
inline QSeries top_slice(const QSeries &s, int top_degree)
{
    return s.map([&](const GradedPoly &p) { return p.slice(top_degree); });
}

inline QSeries top_slice(const PhiSeries &phi)
{
    const int D = phi.series[0].max_degree();
    return top_slice(phi.series, D);
}

} // namespace oddanom
