#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "graded_poly.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace oddanom
{

enum class ThetaFlavor { theta, theta1, theta2, theta3 };

inline std::string_view flavor_name(ThetaFlavor f)
{
    switch (f) {
    case ThetaFlavor::theta:
        return "theta";
    case ThetaFlavor::theta1:
        return "theta1";
    case ThetaFlavor::theta2:
        return "theta2";
    case ThetaFlavor::theta3:
        return "theta3";
    }
    return "?";
}

inline ThetaFlavor parse_flavor(std::string_view s)
{
    for (auto f : {ThetaFlavor::theta, ThetaFlavor::theta1, ThetaFlavor::theta2, ThetaFlavor::theta3}) {
        if (flavor_name(f) == s) {
            return f;
        }
    }
    throw configuration_error("unknown theta flavor '" + std::string(s) + "'");
}

// A theta constant as q^{eighths/8} * series, the series being in q^{1/2}.
struct ThetaConstant {
    ScalarSeries series;
    int q_eighths = 0;
};

namespace detail
{
// prod_{j>=1} (1 + s q^{j - offset/2})^power, with h = q^{1/2}; offset is 0 or 1.
inline ScalarSeries product_factor(int K, int offset, int sign, int power)
{
    ScalarSeries out = ScalarSeries::constant(Rational(1), K);
    for (int j = 1;; ++j) {
        const int k = 2 * j - offset;
        if (k > K) {
            break;
        }
        ScalarSeries f = ScalarSeries::constant(Rational(1), K);
        f.set(k, Rational(sign));
        out *= power >= 0 ? f.pow(static_cast<unsigned>(power)) : f.inverse().pow(static_cast<unsigned>(-power));
    }
    return out;
}
} // namespace detail

// theta_f(0, tau) through q^{K/2}. For the derivative variant of `theta` the
// result is theta'(0, tau) / (2 pi) in the same q^{1/8}-shifted form.
inline ThetaConstant theta_nullwert(ThetaFlavor f, int K, bool derivative = false)
{
    if (K < 0) {
        throw configuration_error("negative q order");
    }
    using detail::product_factor;
    const ScalarSeries euler = product_factor(K, 0, -1, 1);
    switch (f) {
    case ThetaFlavor::theta:
        if (derivative) {
            return {product_factor(K, 0, -1, 3) * Rational(1), 1};
        }
        return {ScalarSeries(Rational(0), K), 1};
    case ThetaFlavor::theta1:
        return {euler * product_factor(K, 0, 1, 2) * Rational(2), 1};
    case ThetaFlavor::theta2:
        return {euler * product_factor(K, 1, -1, 2), 0};
    case ThetaFlavor::theta3:
        return {euler * product_factor(K, 1, 1, 2), 0};
    }
    throw configuration_error("unknown theta flavor");
}

// Fourth power, which always lands on an integral power of q^{1/2}.
inline ScalarSeries theta_fourth(ThetaFlavor f, int K)
{
    const ThetaConstant t = theta_nullwert(f, K);
    return t.series.pow(4).shift(t.q_eighths);
}

enum class ModGroup { gamma_0_2, gamma_upper_0_2 };

inline std::string_view group_name(ModGroup g)
{
    return g == ModGroup::gamma_0_2 ? "Gamma_0(2)" : "Gamma^0(2)";
}

struct ModForm {
    std::string name;
    ScalarSeries series;
    int weight = 0;
    ModGroup group = ModGroup::gamma_0_2;
};

enum class DeltaEps { delta1, eps1, delta2, eps2 };

inline std::string_view delta_eps_name(DeltaEps w)
{
    switch (w) {
    case DeltaEps::delta1:
        return "delta1";
    case DeltaEps::eps1:
        return "eps1";
    case DeltaEps::delta2:
        return "delta2";
    case DeltaEps::eps2:
        return "eps2";
    }
    return "?";
}

inline DeltaEps parse_delta_eps(std::string_view s)
{
    for (auto w : {DeltaEps::delta1, DeltaEps::eps1, DeltaEps::delta2, DeltaEps::eps2}) {
        if (delta_eps_name(w) == s) {
            return w;
        }
    }
    throw configuration_error("unknown modular form '" + std::string(s) + "'");
}

inline ModForm delta_eps(DeltaEps which, int K)
{
    const ScalarSeries t1 = theta_fourth(ThetaFlavor::theta1, K);
    const ScalarSeries t2 = theta_fourth(ThetaFlavor::theta2, K);
    const ScalarSeries t3 = theta_fourth(ThetaFlavor::theta3, K);
    const std::string name(delta_eps_name(which));
    switch (which) {
    case DeltaEps::delta1:
        return {name, (t2 + t3) * Rational(1, 8), 2, ModGroup::gamma_0_2};
    case DeltaEps::eps1:
        return {name, t2 * t3 * Rational(1, 16), 4, ModGroup::gamma_0_2};
    case DeltaEps::delta2:
        return {name, (t1 + t3) * Rational(-1, 8), 2, ModGroup::gamma_upper_0_2};
    case DeltaEps::eps2:
        return {name, t1 * t3 * Rational(1, 16), 4, ModGroup::gamma_upper_0_2};
    }
    throw configuration_error("unknown modular form");
}

// Logarithms of the normalized theta quotients, in z = pi * x:
//   witten     log(x theta'(0)/theta(x))
//   bj         log(theta_j(x)/theta_j(0))
//   inv_sq_bj  log(theta_j(0)^2/theta_j(x)^2) = -2 bj
enum class BlockKind { witten, b1, b2, b3, inv_sq_b1, inv_sq_b2, inv_sq_b3 };

inline constexpr std::array<BlockKind, 7> all_block_kinds{BlockKind::witten,    BlockKind::b1,        BlockKind::b2,
                                                          BlockKind::b3,        BlockKind::inv_sq_b1, BlockKind::inv_sq_b2,
                                                          BlockKind::inv_sq_b3};

inline std::string_view block_name(BlockKind k)
{
    switch (k) {
    case BlockKind::witten:
        return "witten";
    case BlockKind::b1:
        return "b1";
    case BlockKind::b2:
        return "b2";
    case BlockKind::b3:
        return "b3";
    case BlockKind::inv_sq_b1:
        return "inv_sq_b1";
    case BlockKind::inv_sq_b2:
        return "inv_sq_b2";
    case BlockKind::inv_sq_b3:
        return "inv_sq_b3";
    }
    return "?";
}

inline BlockKind parse_block(std::string_view s)
{
    for (auto k : all_block_kinds) {
        if (block_name(k) == s) {
            return k;
        }
    }
    throw configuration_error("unknown log block '" + std::string(s) + "'");
}

// Single generator z of degree 2; blocks only use even powers of it.
inline ContextPtr z_context()
{
    static const ContextPtr ctx = make_context({{"z", 2, false}});
    return ctx;
}

namespace detail
{
// Coefficients of z^{2k}, k = 0..n, of log(z/sin z) and log(cos z).
inline std::vector<Rational> log_sinc_coeffs(int n, bool cosine)
{
    const ContextPtr ctx = z_context();
    const int D = 4 * n;
    GradedPoly f(ctx, D);
    Monomial m = f.unit_monomial();
    for (int k = 0; k <= n; ++k) {
        m.exps[0] = static_cast<std::uint16_t>(2 * k);
        m.degree = 4 * k;
        const Rational c = Rational(k % 2 == 0 ? 1 : -1) / Rational::factorial(cosine ? 2 * k : 2 * k + 1);
        f.add_term(m, c);
    }
    GradedPoly l = log_unipotent(f);
    if (!cosine) {
        l = -l;
    }
    std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        m.exps[0] = static_cast<std::uint16_t>(2 * k);
        m.degree = 4 * k;
        out[static_cast<std::size_t>(k)] = l.coefficient(m);
    }
    return out;
}
} // namespace detail

// Coefficient of z^{2k} in the named block, as a series in q^{1/2}.
inline ScalarSeries block_coefficient(BlockKind kind, int k, int K)
{
    if (k < 1) {
        return ScalarSeries(Rational(0), K);
    }
    Rational scale(1);
    switch (kind) {
    case BlockKind::inv_sq_b1:
        scale = Rational(-2);
        kind = BlockKind::b1;
        break;
    case BlockKind::inv_sq_b2:
        scale = Rational(-2);
        kind = BlockKind::b2;
        break;
    case BlockKind::inv_sq_b3:
        scale = Rational(-2);
        kind = BlockKind::b3;
        break;
    default:
        break;
    }
    ScalarSeries out(Rational(0), K);
    if (kind == BlockKind::witten || kind == BlockKind::b1) {
        out.set(0, detail::log_sinc_coeffs(k, kind == BlockKind::b1)[static_cast<std::size_t>(k)]);
    }
    // (cos 2mz - 1) contributes (-1)^k (2m)^{2k} / (2k)! at z^{2k}.
    const Rational base = Rational(k % 2 == 0 ? 1 : -1) / Rational::factorial(2 * k);
    for (int m = 1; m <= K; ++m) {
        const Rational cm = base * Rational(2 * m).pow(2 * k) * Rational(2, m);
        const bool odd_m = m % 2 == 1;
        if (kind == BlockKind::witten || kind == BlockKind::b1) {
            // q^{jm} = h^{2jm}
            const Rational c = kind == BlockKind::witten || odd_m ? cm : -cm;
            for (int j = 1; 2 * j * m <= K; ++j) {
                out.set(2 * j * m, out[2 * j * m] + c);
            }
        } else {
            // h^{(2j-1)m}
            const Rational c = kind == BlockKind::b2 ? -cm : (odd_m ? cm : -cm);
            for (int j = 1; (2 * j - 1) * m <= K; ++j) {
                const int e = (2 * j - 1) * m;
                out.set(e, out[e] + c);
            }
        }
    }
    return out * scale;
}

// The block as a series over Q[z] truncated at degree D.
inline QSeries log_block(BlockKind kind, int K, int D)
{
    if (K < 0 || D < 0) {
        throw configuration_error("negative truncation");
    }
    const ContextPtr ctx = z_context();
    QSeries out(GradedPoly(ctx, D), K);
    for (int k = 1; 4 * k <= D; ++k) {
        const ScalarSeries c = block_coefficient(kind, k, K);
        const GradedPoly zk = GradedPoly::generator(ctx, D, "z", static_cast<unsigned>(2 * k));
        out += lift(c, ctx, D).scale(zk);
    }
    return out;
}

} // namespace oddanom
