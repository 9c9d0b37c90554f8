#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "phi_builder.hpp"
#include "series.hpp"
#include "theta_q.hpp"

namespace oddanom
{

using cplx = std::complex<double>;

struct ThetaEval {
    cplx value;
    double error_bound = 0.0; // estimated absolute truncation error
    int factors = 0;          // product factors used
};

namespace detail
{
inline constexpr double pi = std::numbers::pi;
inline const cplx I{0.0, 1.0};

inline void check_tau(cplx tau)
{
    if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
        throw domain_error("theta functions need Im(tau) > 0");
    }
}

inline cplx finite_or_throw(cplx z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw precision_error("theta evaluation overflowed");
    }
    return z;
}

// prod_{j>=1} (1 - q^j)(1 + s e q^{j-o/2})(1 + s e^{-1} q^{j-o/2}), together with
// d/dv of its logarithm.
struct ProductResult {
    cplx value{1.0, 0.0};
    cplx dlog{0.0, 0.0};
    double tail = 0.0;
    int factors = 0;
};

inline ProductResult jacobi_product(cplx v, cplx tau, int offset, double sign, double tol, int cap)
{
    const cplx q = std::exp(2.0 * pi * I * tau);
    const cplx hq = std::exp(pi * I * tau);
    const cplx e = std::exp(2.0 * pi * I * v);
    const cplx ei = 1.0 / e;
    ProductResult out;
    cplx qj = q;                               // q^j
    cplx qs = offset == 1 ? hq : q;            // q^{j - offset/2}
    for (int j = 1; j <= cap; ++j) {
        const cplx a = sign * e * qs;
        const cplx b = sign * ei * qs;
        out.value *= (1.0 - qj) * (1.0 + a) * (1.0 + b);
        out.dlog += 2.0 * pi * I * (a / (1.0 + a) - b / (1.0 + b));
        out.factors = j;
        const double dev = std::abs(qj) + std::abs(a) + std::abs(b);
        if (dev < tol) {
            out.tail = dev / (1.0 - std::abs(q));
            finite_or_throw(out.value);
            return out;
        }
        qj *= q;
        qs *= q;
    }
    throw precision_error("theta product did not converge within the factor cap");
}
} // namespace detail

// theta_f(v, tau) from the product formulas, truncated once every remaining
// factor is within tol of 1.
inline ThetaEval theta_eval(ThetaFlavor f, cplx v, cplx tau, double tol = 1e-17, int cap = 200000)
{
    using namespace detail;
    check_tau(tau);
    const cplx q8 = std::exp(pi * I * tau / 4.0);
    ProductResult p;
    cplx pre{1.0, 0.0};
    switch (f) {
    case ThetaFlavor::theta:
        p = jacobi_product(v, tau, 0, -1.0, tol, cap);
        pre = 2.0 * q8 * std::sin(pi * v);
        break;
    case ThetaFlavor::theta1:
        p = jacobi_product(v, tau, 0, 1.0, tol, cap);
        pre = 2.0 * q8 * std::cos(pi * v);
        break;
    case ThetaFlavor::theta2:
        p = jacobi_product(v, tau, 1, -1.0, tol, cap);
        break;
    case ThetaFlavor::theta3:
        p = jacobi_product(v, tau, 1, 1.0, tol, cap);
        break;
    }
    const cplx value = finite_or_throw(pre * p.value);
    return {value, std::abs(value) * p.tail * 2.0, p.factors};
}

// d theta(v, tau) / dv.
inline ThetaEval theta_prime_eval(cplx v, cplx tau, double tol = 1e-17, int cap = 200000)
{
    using namespace detail;
    check_tau(tau);
    const cplx q8 = std::exp(pi * I * tau / 4.0);
    const ProductResult p = jacobi_product(v, tau, 0, -1.0, tol, cap);
    const cplx value = finite_or_throw(2.0 * q8 * p.value * (pi * std::cos(pi * v) + std::sin(pi * v) * p.dlog));
    return {value, std::abs(value) * p.tail * 2.0, p.factors};
}

inline cplx theta_value(ThetaFlavor f, cplx v, cplx tau) { return theta_eval(f, v, tau).value; }

inline cplx delta_eps_eval(DeltaEps which, cplx tau)
{
    const cplx t1 = std::pow(theta_value(ThetaFlavor::theta1, 0.0, tau), 4);
    const cplx t2 = std::pow(theta_value(ThetaFlavor::theta2, 0.0, tau), 4);
    const cplx t3 = std::pow(theta_value(ThetaFlavor::theta3, 0.0, tau), 4);
    switch (which) {
    case DeltaEps::delta1:
        return (t2 + t3) / 8.0;
    case DeltaEps::eps1:
        return t2 * t3 / 16.0;
    case DeltaEps::delta2:
        return -(t1 + t3) / 8.0;
    case DeltaEps::eps2:
        return t1 * t3 / 16.0;
    }
    throw configuration_error("unknown modular form");
}

struct LawCheck {
    std::string law;
    cplx v;
    cplx tau;
    cplx lhs;
    cplx rhs;
    double residual = 0.0; // |lhs - rhs| / max(1, |lhs|, |rhs|)
    bool pass = false;
};

inline const std::vector<std::string> &law_ids()
{
    static const std::vector<std::string> ids{
        "jacobi",   "theta-T",   "theta-S",   "theta1-T",      "theta1-S",      "theta2-T", "theta2-S",
        "theta3-T", "theta3-S",  "theta-prime-T", "theta-prime-S", "delta-S", "eps-S"};
    return ids;
}

// Evaluates both sides of a transformation law at (v, tau). The square root
// (tau/i)^{1/2} is the principal branch.
inline LawCheck check_transformation(const std::string &law, cplx v, cplx tau, double tol = 1e-9)
{
    using namespace detail;
    check_tau(tau);
    const cplx s = -1.0 / tau;
    const cplx t1 = tau + 1.0;
    const cplx root = std::sqrt(tau / I);
    const cplx gauss = std::exp(pi * I * tau * v * v);
    const cplx eighth = std::exp(pi * I / 4.0);
    const auto th = [](ThetaFlavor f, cplx x, cplx t) { return theta_value(f, x, t); };
    LawCheck c{law, v, tau, {}, {}, 0.0, false};
    using F = ThetaFlavor;
    if (law == "jacobi") {
        c.lhs = theta_prime_eval(0.0, tau).value;
        c.rhs = pi * th(F::theta1, 0.0, tau) * th(F::theta2, 0.0, tau) * th(F::theta3, 0.0, tau);
    } else if (law == "theta-T") {
        c.lhs = th(F::theta, v, t1);
        c.rhs = eighth * th(F::theta, v, tau);
    } else if (law == "theta-S") {
        c.lhs = th(F::theta, v, s);
        c.rhs = root / I * gauss * th(F::theta, tau * v, tau);
    } else if (law == "theta1-T") {
        c.lhs = th(F::theta1, v, t1);
        c.rhs = eighth * th(F::theta1, v, tau);
    } else if (law == "theta1-S") {
        c.lhs = th(F::theta1, v, s);
        c.rhs = root * gauss * th(F::theta2, tau * v, tau);
    } else if (law == "theta2-T") {
        c.lhs = th(F::theta2, v, t1);
        c.rhs = th(F::theta3, v, tau);
    } else if (law == "theta2-S") {
        c.lhs = th(F::theta2, v, s);
        c.rhs = root * gauss * th(F::theta1, tau * v, tau);
    } else if (law == "theta3-T") {
        c.lhs = th(F::theta3, v, t1);
        c.rhs = th(F::theta2, v, tau);
    } else if (law == "theta3-S") {
        c.lhs = th(F::theta3, v, s);
        c.rhs = root * gauss * th(F::theta3, tau * v, tau);
    } else if (law == "theta-prime-T") {
        c.lhs = theta_prime_eval(v, t1).value;
        c.rhs = eighth * theta_prime_eval(v, tau).value;
    } else if (law == "theta-prime-S") {
        c.lhs = theta_prime_eval(0.0, s).value;
        c.rhs = root / I * tau * theta_prime_eval(0.0, tau).value;
    } else if (law == "delta-S") {
        c.lhs = delta_eps_eval(DeltaEps::delta2, s);
        c.rhs = tau * tau * delta_eps_eval(DeltaEps::delta1, tau);
    } else if (law == "eps-S") {
        c.lhs = delta_eps_eval(DeltaEps::eps2, s);
        c.rhs = std::pow(tau, 4) * delta_eps_eval(DeltaEps::eps1, tau);
    } else {
        throw configuration_error("unknown transformation law '" + law + "'");
    }
    c.residual = std::abs(c.lhs - c.rhs) / std::max({1.0, std::abs(c.lhs), std::abs(c.rhs)});
    c.pass = c.residual < tol;
    return c;
}

struct SamplePoint {
    cplx v;
    cplx tau;
};

// {|v| <= 0.5} x {1.5i, 0.3 + 1.1i, -0.4 + 0.9i}.
inline std::vector<SamplePoint> default_grid()
{
    const std::vector<cplx> taus{{0.0, 1.5}, {0.3, 1.1}, {-0.4, 0.9}};
    const std::vector<cplx> vs{{0.0, 0.0},  {0.2, 0.1},   {-0.3, 0.2}, {0.5, 0.0},
                               {0.1, -0.4}, {0.35, 0.35}, {-0.25, -0.1}};
    std::vector<SamplePoint> out;
    for (cplx t : taus) {
        for (cplx v : vs) {
            out.push_back({v, t});
        }
    }
    return out;
}

struct GridReport {
    std::string law;
    double max_residual = 0.0;
    int samples = 0;
    bool pass = false;
};

inline GridReport check_law_on_grid(const std::string &law, const std::vector<SamplePoint> &grid, double tol = 1e-9)
{
    GridReport g{law, 0.0, 0, true};
    for (const auto &p : grid) {
        const LawCheck c = check_transformation(law, p.v, p.tau, tol);
        g.max_residual = std::max(g.max_residual, c.residual);
        g.pass = g.pass && c.pass;
        ++g.samples;
    }
    return g;
}

// Concrete Chern roots (in units of v, so the ring variable is pi * v).
struct RootSample {
    std::vector<cplx> tangent; // r roots
    std::vector<cplx> e;       // N/2 roots with sum of squares zero
    std::vector<cplx> xi;      // 0 or 1 root
};

// Deterministic small roots; the E roots come in pairs (a, i a).
inline RootSample sample_roots(int r, int n_rank, bool twisted, double scale = 0.05)
{
    if (n_rank % 4 != 0) {
        throw configuration_error("numeric S-relation samples need N divisible by 4");
    }
    RootSample s;
    for (int j = 0; j < r; ++j) {
        s.tangent.emplace_back(scale * (1.0 + 0.37 * j), scale * (0.21 - 0.13 * j));
    }
    for (int a = 0; a < n_rank / 4; ++a) {
        const cplx w(scale * (0.8 + 0.29 * a), scale * (0.17 + 0.11 * a));
        s.e.push_back(w);
        s.e.push_back(detail::I * w);
    }
    if (twisted) {
        s.xi.emplace_back(scale * 0.63, scale * -0.27);
    }
    return s;
}

namespace detail
{
inline ThetaFlavor flavor_of(BlockKind b)
{
    switch (b) {
    case BlockKind::b1:
    case BlockKind::inv_sq_b1:
        return ThetaFlavor::theta1;
    case BlockKind::b2:
    case BlockKind::inv_sq_b2:
        return ThetaFlavor::theta2;
    default:
        return ThetaFlavor::theta3;
    }
}

// Numerical value of exp(block) at root x.
inline cplx block_ratio(BlockKind b, cplx x, cplx tau)
{
    if (b == BlockKind::witten) {
        if (x == 0.0) {
            return 1.0;
        }
        return x * theta_prime_eval(0.0, tau).value / theta_value(ThetaFlavor::theta, x, tau);
    }
    const ThetaFlavor f = flavor_of(b);
    const cplx ratio = theta_value(f, x, tau) / theta_value(f, 0.0, tau);
    const bool inv = b == BlockKind::inv_sq_b1 || b == BlockKind::inv_sq_b2 || b == BlockKind::inv_sq_b3;
    return inv ? 1.0 / (ratio * ratio) : ratio;
}
} // namespace detail

// Scalar theta-quotient product at the given roots. The odd model keeps the E
// side linear: exp(T side) * sum_a log(theta_j(w_a)/theta_j(0)).
inline cplx phi_numeric(PhiKind kind, EModel model, const RootSample &roots, cplx tau)
{
    const PhiBlocks b = phi_blocks(kind);
    cplx prod = 1.0;
    for (cplx x : roots.tangent) {
        prod *= detail::block_ratio(BlockKind::witten, x, tau) * detail::block_ratio(b.theta_block, x, tau);
    }
    for (cplx u : roots.xi) {
        for (BlockKind k : b.xi_blocks) {
            prod *= detail::block_ratio(k, u, tau);
        }
    }
    if (model == EModel::even) {
        for (cplx w : roots.e) {
            prod *= detail::block_ratio(b.theta_block, w, tau);
        }
    } else if (model == EModel::odd) {
        cplx sum = 0.0;
        for (cplx w : roots.e) {
            sum += std::log(detail::block_ratio(b.theta_block, w, tau));
        }
        prod *= sum;
    }
    return prod;
}

// Coefficient of lambda^n of f(lambda) from samples on |lambda| = rho.
template <class F> cplx lambda_coefficient(const F &f, int n, int samples = 64, double rho = 1.0)
{
    cplx acc = 0.0;
    for (int k = 0; k < samples; ++k) {
        const cplx w = std::polar(1.0, 2.0 * detail::pi * k / samples);
        acc += f(rho * w) * std::pow(w, -n);
    }
    return acc / (static_cast<double>(samples) * std::pow(rho, n));
}

inline RootSample scale_roots(const RootSample &s, cplx lambda)
{
    RootSample out = s;
    for (auto *v : {&out.tangent, &out.e, &out.xi}) {
        for (cplx &x : *v) {
            x *= lambda;
        }
    }
    return out;
}

struct SRelationCheck {
    cplx lhs; // top component of phi_W at -1/tau
    cplx rhs; // tau^{2r} times top component of the bare phi_L product at tau
    double residual = 0.0;
    bool pass = false;
};

// Phi_W(-1/tau) top part = tau^{2r} (Phi_L / 2^{2r-1+N/2})(tau) top part. The
// top part is the lambda^{2r} coefficient under roots -> lambda * roots.
inline SRelationCheck check_phi_s_relation(int r, EModel model, const RootSample &roots, cplx tau, double tol = 1e-6)
{
    detail::check_tau(tau);
    if (model == EModel::odd && roots.e.empty()) {
        throw configuration_error("the odd model needs at least one E root");
    }
    const int n = 2 * r;
    const cplx s = -1.0 / tau;
    SRelationCheck c;
    c.lhs = lambda_coefficient([&](cplx l) { return phi_numeric(PhiKind::W, model, scale_roots(roots, l), s); }, n);
    c.rhs = std::pow(tau, n) *
            lambda_coefficient([&](cplx l) { return phi_numeric(PhiKind::L, model, scale_roots(roots, l), tau); }, n);
    // Relative to the natural size max|root|^{2r} of a degree-2r coefficient, so
    // that identically vanishing top parts do not divide noise by noise.
    double root_max = 0.0;
    for (const auto *v : {&roots.tangent, &roots.e, &roots.xi}) {
        for (cplx x : *v) {
            root_max = std::max(root_max, std::abs(x));
        }
    }
    const double size = std::max({std::abs(c.lhs), std::abs(c.rhs), std::pow(root_max, n), 1e-300});
    c.residual = std::abs(c.lhs - c.rhs) / size;
    if (!std::isfinite(c.residual)) {
        throw precision_error("S-relation extraction is ill-conditioned; use smaller roots");
    }
    c.pass = c.residual < tol;
    return c;
}

// Symbolic q-series evaluated at h = q^{1/2}.
inline cplx eval_series(const ScalarSeries &s, cplx h)
{
    cplx acc = 0.0;
    for (int k = s.order(); k >= 0; --k) {
        acc = acc * h + s[k].to_double();
    }
    return acc;
}

struct AgreementReport {
    double max_residual = 0.0;
    int samples = 0;
};

// Compares theta-q's exact expansions (log blocks, theta constants and the
// delta/eps forms) with the product evaluations for real |z| <= 0.3, |q| <= 0.4.
inline AgreementReport symbolic_numeric_agreement(int K = 64, int z_terms = 64)
{
    using namespace detail;
    const std::vector<cplx> taus{{0.1, 0.15}, {-0.3, 0.2}, {0.0, 0.5}};
    const std::vector<double> zs{-0.3, -0.1, 0.05, 0.2, 0.3};
    AgreementReport rep;
    const auto note = [&](cplx a, cplx b) {
        rep.max_residual = std::max(rep.max_residual, std::abs(a - b) / std::max(1.0, std::abs(b)));
        ++rep.samples;
    };
    for (BlockKind b : {BlockKind::witten, BlockKind::b1, BlockKind::b2, BlockKind::b3}) {
        std::vector<ScalarSeries> coeffs;
        for (int k = 1; k <= z_terms; ++k) {
            coeffs.push_back(block_coefficient(b, k, K));
        }
        for (cplx tau : taus) {
            const cplx h = std::exp(pi * I * tau);
            std::vector<cplx> ck;
            for (const auto &c : coeffs) {
                ck.push_back(eval_series(c, h));
            }
            for (double z : zs) {
                cplx log = 0.0;
                for (int k = z_terms; k >= 1; --k) {
                    log += ck[static_cast<std::size_t>(k - 1)] * std::pow(z, 2 * k);
                }
                note(std::exp(log), block_ratio(b, z / pi, tau));
            }
        }
    }
    for (cplx tau : taus) {
        const cplx h = std::exp(pi * I * tau);
        for (DeltaEps w : {DeltaEps::delta1, DeltaEps::eps1, DeltaEps::delta2, DeltaEps::eps2}) {
            note(eval_series(delta_eps(w, K).series, h), delta_eps_eval(w, tau));
        }
        for (ThetaFlavor f : {ThetaFlavor::theta1, ThetaFlavor::theta2, ThetaFlavor::theta3}) {
            const ThetaConstant t = theta_nullwert(f, K);
            note(eval_series(t.series, h) * std::exp(pi * I * tau * (t.q_eighths / 4.0)), theta_value(f, 0.0, tau));
        }
        const ThetaConstant d = theta_nullwert(ThetaFlavor::theta, K, true);
        note(2.0 * pi * eval_series(d.series, h) * std::exp(pi * I * tau / 4.0), theta_prime_eval(0.0, tau).value);
    }
    return rep;
}

} // namespace oddanom
