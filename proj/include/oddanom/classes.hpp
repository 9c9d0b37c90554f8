#pragma once

#include <vector>

#include "graded_poly.hpp"
#include "phi_builder.hpp"
#include "rational.hpp"
#include "theta_q.hpp"

namespace oddanom
{

// z^{2k} coefficients (k = 0..n) of a * cos(f z).
inline std::vector<Rational> cos_coeffs(int n, const Rational &a, long f)
{
    std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        out[static_cast<std::size_t>(k)] =
            a * Rational(k % 2 == 0 ? 1 : -1) * Rational(f).pow(2 * k) / Rational::factorial(2 * k);
    }
    return out;
}

// Characteristic classes as polynomials in the power sums of a ClassRing. The
// E-side classes are the odd (E-linear) ones; ranks and powers of two that
// depend on N are tracked by the callers.
struct NamedClasses {
    GradedPoly a_hat;        // prod z/sin z
    GradedPoly l_hat;        // 2^{2r-1} prod z/tan z
    GradedPoly ch_e;         // odd ch(E): sum_a 2 cos 2w_a, linear part
    GradedPoly ch_delta;     // odd ch(Delta(E)) / 2^{N/2}: sum_a log cos w_a
    GradedPoly ch_t;         // ch(T_C M), rank 4r - 1
    GradedPoly ch_lambda2_e; // odd ch(Lambda^2 E)
    GradedPoly cosh_half_c;  // cos(u); 1 when untwisted
    GradedPoly inv_cosh2;    // 1/cos^2(u); 1 when untwisted
    GradedPoly ch_xi;        // ch(xi_C), rank 2; 0 when untwisted
};

inline NamedClasses named_classes(const ClassRing &ring)
{
    const int n = ring.r();
    NamedClasses c{ring.zero(), ring.zero(), ring.zero(), ring.zero(), ring.zero(),
                   ring.zero(), ring.zero(), ring.zero(), ring.zero()};
    const auto wit = q0_root_coeffs(BlockKind::witten, n);
    const auto lcos = q0_root_coeffs(BlockKind::b1, n);
    std::vector<Rational> ltan(wit.size());
    for (std::size_t k = 0; k < wit.size(); ++k) {
        ltan[k] = wit[k] + lcos[k];
    }
    const auto two_cos = cos_coeffs(n, Rational(2), 2);
    const auto two_cos_psi2 = cos_coeffs(n, Rational(2), 4);

    c.a_hat = exp_nilpotent(ring.power_sum('t', wit));
    c.l_hat = exp_nilpotent(ring.power_sum('t', ltan)) * Rational::two_pow(2L * n - 1);
    c.ch_t = ring.constant(Rational(4L * n - 1)) + ring.power_sum('t', two_cos);
    if (ring.model() != EModel::none) {
        c.ch_e = ring.power_sum('e', two_cos);
        c.ch_delta = ring.power_sum('e', lcos);
        // ch(Lambda^2 F) = (ch(F)^2 - psi^2 ch(F)) / 2 with ch(E_C) = N + ch_e.
        const GradedPoly full = ring.gen("N") + c.ch_e;
        const GradedPoly psi2 = ring.gen("N") + ring.power_sum('e', two_cos_psi2);
        c.ch_lambda2_e = ring.odd_part((full * full - psi2) * Rational(1, 2));
    }
    if (ring.twisted()) {
        c.cosh_half_c = ring.constant(Rational(1)) + ring.xi_sum(cos_coeffs(n, Rational(1), 1));
        c.inv_cosh2 = exp_nilpotent(ring.xi_sum(lcos) * Rational(-2));
        c.ch_xi = ring.constant(Rational(2)) + ring.xi_sum(two_cos);
    } else {
        c.cosh_half_c = ring.constant(Rational(1));
        c.inv_cosh2 = ring.constant(Rational(1));
    }
    return c;
}

} // namespace oddanom
