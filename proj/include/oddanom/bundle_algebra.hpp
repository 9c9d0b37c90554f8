#pragma once

#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "classes.hpp"
#include "errors.hpp"
#include "graded_poly.hpp"
#include "phi_builder.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "theta_q.hpp"

namespace oddanom
{

class BundleNode;
using BundleExpr = std::shared_ptr<const BundleNode>;

// Virtual bundle expression. Trivial bundles carry rank k + n_mult * N.
class BundleNode
{
public:
    enum class Kind { tangent, e_c, xi_c, trivial, sum, tensor, lambda, sym, tilde, delta_e, delta_tm };

    Kind kind;
    long k = 0;      // Lambda^k / S^k degree, or trivial rank constant
    long n_mult = 0; // trivial rank multiple of N
    std::vector<std::pair<Rational, BundleExpr>> terms; // sum
    BundleExpr a, b;

    explicit BundleNode(Kind kd) : kind(kd) {}
};

namespace bundle
{
inline BundleExpr make(BundleNode n) { return std::make_shared<const BundleNode>(std::move(n)); }

inline BundleExpr tangent() { return make(BundleNode(BundleNode::Kind::tangent)); }
inline BundleExpr e_c() { return make(BundleNode(BundleNode::Kind::e_c)); }
inline BundleExpr xi_c() { return make(BundleNode(BundleNode::Kind::xi_c)); }
inline BundleExpr delta_e() { return make(BundleNode(BundleNode::Kind::delta_e)); }
inline BundleExpr delta_tm() { return make(BundleNode(BundleNode::Kind::delta_tm)); }

inline BundleExpr trivial(long k, long n_mult = 0)
{
    BundleNode n(BundleNode::Kind::trivial);
    n.k = k;
    n.n_mult = n_mult;
    return make(std::move(n));
}

inline BundleExpr sum(std::vector<std::pair<Rational, BundleExpr>> terms)
{
    BundleNode n(BundleNode::Kind::sum);
    for (auto &[c, e] : terms) {
        if (c.is_zero()) {
            continue;
        }
        if (e->kind == BundleNode::Kind::sum) {
            for (const auto &[c2, e2] : e->terms) {
                n.terms.emplace_back(c * c2, e2);
            }
        } else {
            n.terms.emplace_back(c, std::move(e));
        }
    }
    return make(std::move(n));
}

inline BundleExpr zero() { return sum({}); }

inline bool is_zero(const BundleExpr &e) { return e->kind == BundleNode::Kind::sum && e->terms.empty(); }

inline bool is_one(const BundleExpr &e)
{
    return e->kind == BundleNode::Kind::trivial && e->k == 1 && e->n_mult == 0;
}

inline BundleExpr tensor(BundleExpr x, BundleExpr y)
{
    if (is_zero(x) || is_zero(y)) {
        return zero();
    }
    if (is_one(x)) {
        return y;
    }
    if (is_one(y)) {
        return x;
    }
    BundleNode n(BundleNode::Kind::tensor);
    n.a = std::move(x);
    n.b = std::move(y);
    return make(std::move(n));
}

inline BundleExpr lambda(long k, BundleExpr x)
{
    if (k == 0) {
        return trivial(1);
    }
    if (k == 1) {
        return x;
    }
    BundleNode n(BundleNode::Kind::lambda);
    n.k = k;
    n.a = std::move(x);
    return make(std::move(n));
}

inline BundleExpr sym(long k, BundleExpr x)
{
    if (k == 0) {
        return trivial(1);
    }
    if (k == 1) {
        return x;
    }
    BundleNode n(BundleNode::Kind::sym);
    n.k = k;
    n.a = std::move(x);
    return make(std::move(n));
}

inline BundleExpr tilde(BundleExpr x)
{
    BundleNode n(BundleNode::Kind::tilde);
    n.a = std::move(x);
    return make(std::move(n));
}

inline BundleExpr operator+(BundleExpr x, BundleExpr y) { return sum({{Rational(1), std::move(x)}, {Rational(1), std::move(y)}}); }
inline BundleExpr operator-(BundleExpr x, BundleExpr y) { return sum({{Rational(1), std::move(x)}, {Rational(-1), std::move(y)}}); }
inline BundleExpr operator*(const Rational &c, BundleExpr x) { return sum({{c, std::move(x)}}); }

// Distributes a tensor product over formal sums.
inline BundleExpr tensor_expand(const BundleExpr &x, const BundleExpr &y)
{
    if (x->kind == BundleNode::Kind::sum || y->kind == BundleNode::Kind::sum) {
        std::vector<std::pair<Rational, BundleExpr>> xs, ys, out;
        if (x->kind == BundleNode::Kind::sum) {
            xs = x->terms;
        } else {
            xs.emplace_back(Rational(1), x);
        }
        if (y->kind == BundleNode::Kind::sum) {
            ys = y->terms;
        } else {
            ys.emplace_back(Rational(1), y);
        }
        for (const auto &[cx, ex] : xs) {
            for (const auto &[cy, ey] : ys) {
                out.emplace_back(cx * cy, tensor(ex, ey));
            }
        }
        return sum(std::move(out));
    }
    return tensor(x, y);
}
} // namespace bundle

inline std::string to_text(const BundleExpr &e)
{
    using K = BundleNode::Kind;
    const auto wrap = [](const BundleExpr &x) {
        const std::string s = to_text(x);
        return x->kind == K::sum && x->terms.size() > 1 ? "(" + s + ")" : s;
    };
    switch (e->kind) {
    case K::tangent:
        return "T_C M";
    case K::e_c:
        return "E_C";
    case K::xi_c:
        return "xi_C";
    case K::delta_e:
        return "Delta(E)";
    case K::delta_tm:
        return "Delta(TM)";
    case K::trivial: {
        if (e->n_mult == 0) {
            return "C^" + std::to_string(e->k);
        }
        std::string s = e->n_mult == 1 ? "N" : std::to_string(e->n_mult) + "N";
        if (e->k != 0) {
            s += (e->k > 0 ? "+" : "") + std::to_string(e->k);
        }
        return "C^(" + s + ")";
    }
    case K::tilde:
        return wrap(e->a) + "~";
    case K::lambda:
        return "L" + std::to_string(e->k) + "(" + to_text(e->a) + ")";
    case K::sym:
        return "S" + std::to_string(e->k) + "(" + to_text(e->a) + ")";
    case K::tensor:
        return wrap(e->a) + " (x) " + wrap(e->b);
    case K::sum: {
        if (e->terms.empty()) {
            return "0";
        }
        std::string s;
        for (const auto &[c, x] : e->terms) {
            const bool neg = c.sign() < 0;
            const Rational a = neg ? -c : c;
            const std::string body = (a.is_one() ? std::string() : a.str() + " ") + to_text(x);
            s += s.empty() ? (neg ? "-" : "") + body : (neg ? " - " : " + ") + body;
        }
        return s;
    }
    }
    return "?";
}

// psi^k: scales the degree-d part by k^{d/2}.
inline GradedPoly adams(const GradedPoly &p, long k)
{
    GradedPoly out = p.zero_like();
    for (const auto &[m, c] : p.terms()) {
        out.add_term(m, c * Rational(k).pow(m.degree / 2));
    }
    return out;
}

// Chern character in the power sums of `ring`. Delta(E) contributes 2^{N/2}.
inline Pow2Poly chern_character(const BundleExpr &e, const ClassRing &ring)
{
    using K = BundleNode::Kind;
    const int n = ring.r();
    switch (e->kind) {
    case K::tangent:
        return {0, ring.constant(Rational(4L * n - 1)) + ring.power_sum('t', cos_coeffs(n, Rational(2), 2))};
    case K::e_c:
        if (ring.model() == EModel::none) {
            throw unsupported_expression_error("E_C in a ring without E generators");
        }
        return {0, ring.gen("N") + ring.power_sum('e', cos_coeffs(n, Rational(2), 2))};
    case K::xi_c:
        if (!ring.twisted()) {
            throw unsupported_expression_error("xi_C in an untwisted ring");
        }
        return {0, ring.constant(Rational(2)) + ring.xi_sum(cos_coeffs(n, Rational(2), 2))};
    case K::delta_e:
        if (ring.model() == EModel::none) {
            throw unsupported_expression_error("Delta(E) in a ring without E generators");
        }
        return {1, exp_nilpotent(ring.power_sum('e', q0_root_coeffs(BlockKind::b1, n)))};
    case K::delta_tm:
        throw unsupported_expression_error("Delta(TM) has no Chern character in odd dimension");
    case K::trivial:
        return {0, ring.constant(Rational(e->k)) + ring.gen("N") * Rational(e->n_mult)};
    case K::sum: {
        Pow2Poly acc{0, ring.zero()};
        for (const auto &[c, x] : e->terms) {
            acc = acc + c * chern_character(x, ring);
        }
        return acc;
    }
    case K::tensor:
        return chern_character(e->a, ring) * chern_character(e->b, ring);
    case K::tilde: {
        const Pow2Poly f = chern_character(e->a, ring);
        if (f.half_n != 0) {
            throw unsupported_expression_error("tilde of a bundle whose rank involves 2^{N/2}");
        }
        return {0, f.poly - f.poly.slice(0)};
    }
    case K::lambda:
    case K::sym: {
        // Newton: k ch(L^k) = sum_i (-1)^{i-1} psi^i ch(F) ch(L^{k-i}); S^k without the signs.
        const Pow2Poly f = chern_character(e->a, ring);
        if (f.half_n != 0) {
            throw unsupported_expression_error("exterior or symmetric power of a bundle with rank 2^{N/2}");
        }
        const bool alt = e->kind == K::lambda;
        std::vector<GradedPoly> pw{ring.constant(Rational(1))};
        for (long j = 1; j <= e->k; ++j) {
            GradedPoly acc = ring.zero();
            for (long i = 1; i <= j; ++i) {
                const Rational s = alt && i % 2 == 0 ? Rational(-1) : Rational(1);
                acc += adams(f.poly, i) * pw[static_cast<std::size_t>(j - i)] * s;
            }
            pw.push_back(acc * Rational(1, j));
        }
        return {0, pw.back()};
    }
    }
    throw unsupported_expression_error("unknown bundle node");
}

inline Pow2Poly rank(const BundleExpr &e, const ClassRing &ring)
{
    const Pow2Poly c = chern_character(e, ring);
    return {c.half_n, c.poly.slice(0)};
}

// Formal q^{1/2}-series of virtual bundles; coefficient k multiplies q^{k/2}.
struct BundleQSeries {
    int order = 0;
    std::vector<BundleExpr> coeffs;

    static BundleQSeries one(int K)
    {
        BundleQSeries s{K, std::vector<BundleExpr>(static_cast<std::size_t>(K) + 1, bundle::zero())};
        s.coeffs[0] = bundle::trivial(1);
        return s;
    }

    friend BundleQSeries operator*(const BundleQSeries &x, const BundleQSeries &y)
    {
        BundleQSeries out{x.order, std::vector<BundleExpr>(static_cast<std::size_t>(x.order) + 1, bundle::zero())};
        for (int k = 0; k <= x.order; ++k) {
            std::vector<std::pair<Rational, BundleExpr>> terms;
            for (int i = 0; i <= k; ++i) {
                const BundleExpr t =
                    bundle::tensor_expand(x.coeffs[static_cast<std::size_t>(i)], y.coeffs[static_cast<std::size_t>(k - i)]);
                if (!bundle::is_zero(t)) {
                    terms.emplace_back(Rational(1), t);
                }
            }
            out.coeffs[static_cast<std::size_t>(k)] = bundle::sum(std::move(terms));
        }
        return out;
    }
};

// Lambda_t(F) (alternating = false gives S_t(F)) with t = sign * q^{step/2}.
inline BundleQSeries power_operation_series(const BundleExpr &f, int step, int sign, bool exterior, int K)
{
    BundleQSeries s = BundleQSeries::one(K);
    for (long j = 1; j * step <= K; ++j) {
        const Rational c = sign < 0 && j % 2 == 1 ? Rational(-1) : Rational(1);
        s.coeffs[static_cast<std::size_t>(j * step)] =
            bundle::sum({{c, exterior ? bundle::lambda(j, f) : bundle::sym(j, f)}});
    }
    return s;
}

enum class ThetaBundle { theta1, theta2, theta3, q1, q2, q3, theta1_xi, theta2_xi, theta3_xi };

inline std::string_view theta_bundle_name(ThetaBundle w)
{
    switch (w) {
    case ThetaBundle::theta1:
        return "Theta1";
    case ThetaBundle::theta2:
        return "Theta2";
    case ThetaBundle::theta3:
        return "Theta3";
    case ThetaBundle::q1:
        return "Q1";
    case ThetaBundle::q2:
        return "Q2";
    case ThetaBundle::q3:
        return "Q3";
    case ThetaBundle::theta1_xi:
        return "Theta1_xi";
    case ThetaBundle::theta2_xi:
        return "Theta2_xi";
    case ThetaBundle::theta3_xi:
        return "Theta3_xi";
    }
    return "?";
}

inline ThetaBundle parse_theta_bundle(std::string_view s)
{
    for (auto w : {ThetaBundle::theta1, ThetaBundle::theta2, ThetaBundle::theta3, ThetaBundle::q1, ThetaBundle::q2,
                   ThetaBundle::q3, ThetaBundle::theta1_xi, ThetaBundle::theta2_xi, ThetaBundle::theta3_xi}) {
        if (theta_bundle_name(w) == s) {
            return w;
        }
    }
    throw configuration_error("unknown theta bundle '" + std::string(s) + "'");
}

// Infinite tensor products of Lambda/S operations truncated at q^{K/2}, K <= 4.
inline BundleQSeries expand_theta_bundle(ThetaBundle which, int K)
{
    using namespace bundle;
    if (K < 0 || K > 4) {
        throw configuration_error("bundle expansions are limited to q orders 0..4 half-units");
    }
    const BundleExpr t = tilde(tangent());
    const BundleExpr e = tilde(e_c());
    const BundleExpr x = tilde(xi_c());
    BundleQSeries s = BundleQSeries::one(K);
    // factor over n >= 1 of op_{sign q^{n - half/2}}(f)
    const auto product = [&](const BundleExpr &f, bool half, int sign, bool exterior) {
        for (int n = 1; 2 * n - (half ? 1 : 0) <= K; ++n) {
            s = s * power_operation_series(f, 2 * n - (half ? 1 : 0), sign, exterior, K);
        }
    };
    const BundleExpr t_minus_2x = t - Rational(2) * x;
    switch (which) {
    case ThetaBundle::theta1:
        product(t, false, 1, false);
        product(t, false, 1, true);
        break;
    case ThetaBundle::theta2:
        product(t, false, 1, false);
        product(t, true, -1, true);
        break;
    case ThetaBundle::theta3:
        product(t, false, 1, false);
        product(t, true, 1, true);
        break;
    case ThetaBundle::q1:
        s.coeffs[0] = delta_e();
        product(e, false, 1, true);
        break;
    case ThetaBundle::q2:
        product(e, true, -1, true);
        break;
    case ThetaBundle::q3:
        product(e, true, 1, true);
        break;
    case ThetaBundle::theta1_xi:
        product(t, false, 1, false);
        product(t_minus_2x, false, 1, true);
        product(x, true, 1, true);
        product(x, true, -1, true);
        break;
    case ThetaBundle::theta2_xi:
        product(t, false, 1, false);
        product(t_minus_2x, true, -1, true);
        product(x, true, 1, true);
        product(x, false, 1, true);
        break;
    case ThetaBundle::theta3_xi:
        product(t, false, 1, false);
        product(t_minus_2x, true, 1, true);
        product(x, false, 1, true);
        product(x, true, -1, true);
        break;
    }
    return s;
}

// Theta-quotient Chern character of the same bundle series: block exponentials
// with the q^0 parts that live outside the series (Ahat, Lhat, cosh) removed.
inline QSeries theta_bundle_build(ThetaBundle which, const ClassRing &ring, int K, long &half_n)
{
    const auto strip = [](QSeries s) {
        s.set(0, s[0].zero_like());
        return s;
    };
    const auto t_side = [&](BlockKind b) {
        return strip(block_over_roots(ring, BlockKind::witten, 't', K)) + strip(block_over_roots(ring, b, 't', K));
    };
    const auto xi_side = [&](PhiKind k) {
        QSeries acc(ring.zero(), K);
        for (BlockKind b : phi_blocks(k).xi_blocks) {
            acc += strip(block_over_roots(ring, b, 'v', K));
        }
        return acc;
    };
    half_n = 0;
    QSeries log(ring.zero(), K);
    switch (which) {
    case ThetaBundle::theta1:
        log = t_side(BlockKind::b1);
        break;
    case ThetaBundle::theta2:
        log = t_side(BlockKind::b2);
        break;
    case ThetaBundle::theta3:
        log = t_side(BlockKind::b3);
        break;
    case ThetaBundle::q1:
        half_n = 1;
        log = block_over_roots(ring, BlockKind::b1, 'e', K);
        break;
    case ThetaBundle::q2:
        log = block_over_roots(ring, BlockKind::b2, 'e', K);
        break;
    case ThetaBundle::q3:
        log = block_over_roots(ring, BlockKind::b3, 'e', K);
        break;
    case ThetaBundle::theta1_xi:
        log = t_side(BlockKind::b1) + xi_side(PhiKind::L);
        break;
    case ThetaBundle::theta2_xi:
        log = t_side(BlockKind::b2) + xi_side(PhiKind::W);
        break;
    case ThetaBundle::theta3_xi:
        log = t_side(BlockKind::b3) + xi_side(PhiKind::W_prime);
        break;
    }
    return log.exp();
}

struct CoefficientCheck {
    int half_order = 0;
    std::string expansion;
    bool matches = false;
    std::string difference;
};

struct PrintedCheck {
    int half_order = 0;
    std::string printed;
    bool matches = false;
    std::string difference;
    bool convention = false; // normalization-only term, reported but not required
};

struct CrosscheckResult {
    std::string id;
    std::string description;
    int r = 0;
    bool engine_agrees = false;
    std::vector<CoefficientCheck> coefficients;
    std::vector<PrintedCheck> printed;
    std::string note;

    [[nodiscard]] bool printed_agrees() const
    {
        for (const auto &p : printed) {
            if (!p.matches && !p.convention) {
                return false;
            }
        }
        return true;
    }
};

inline const std::vector<std::string> &crosscheck_ids()
{
    static const std::vector<std::string> ids{"theta2-q2", "theta1", "theta1-q1", "theta2-q2-twisted",
                                              "theta1-q1-twisted"};
    return ids;
}

namespace detail
{
inline std::string pow2_diff(const Pow2Poly &a, const Pow2Poly &b)
{
    if (a.poly.is_zero() && b.poly.is_zero()) {
        return {};
    }
    if (a.half_n != b.half_n && !a.poly.is_zero() && !b.poly.is_zero()) {
        return "different powers of 2^{N/2}";
    }
    const GradedPoly d = a.poly - b.poly;
    return d.is_zero() ? std::string() : d.str();
}
} // namespace detail

// Compares the lambda-ring expansion with the theta-quotient build coefficient by
// coefficient, and the published low-order forms with the expansion.
inline CrosscheckResult crosscheck(const std::string &id, int r, EModel model = EModel::even)
{
    using namespace bundle;
    const bool twisted = id.size() > 8 && id.substr(id.size() - 8) == "-twisted";
    const ClassRing ring(r, model, twisted);
    CrosscheckResult res;
    res.id = id;
    res.r = r;
    std::vector<ThetaBundle> factors;
    std::vector<std::pair<int, BundleExpr>> printed;
    int convention_order = -1;
    const BundleExpr t = tilde(tangent());
    const BundleExpr e = tilde(e_c());
    const BundleExpr x = tilde(xi_c());
    int K = 2;
    if (id == "theta2-q2") {
        res.description = "Theta2(T_C M) (x) Q2(E) through q";
        factors = {ThetaBundle::theta2, ThetaBundle::q2};
        printed = {{0, trivial(1)},
                   {1, Rational(-1) * (t + e)},
                   {2, sum({{Rational(1), t}, {Rational(1), lambda(2, t)}, {Rational(1), lambda(2, e)},
                            {Rational(1), tensor(t, e)}})}};
    } else if (id == "theta1") {
        res.description = "Theta1(T_C M) through q^2";
        K = 4;
        factors = {ThetaBundle::theta1};
        const long rk = 4L * r - 1;
        printed = {{0, trivial(2)},
                   {2, Rational(2) * (tangent() + trivial(1 - 4L * r))},
                   {4, Rational(2) * sum({{Rational(3 - 8L * r), tangent()},
                                          {Rational(1), tensor(tangent(), tangent())},
                                          {Rational(1), trivial(rk * (rk - 1))}})}};
        convention_order = 0;
        res.note = "the constant term of Theta1 is the trivial line; the published leading 2 is a normalization";
    } else if (id == "theta1-q1" || id == "theta1-q1-twisted") {
        res.description = twisted ? "Theta1(T_C M, xi_C) (x) Q1(E) through q" : "Theta1(T_C M) (x) Q1(E) through q";
        factors = {twisted ? ThetaBundle::theta1_xi : ThetaBundle::theta1, ThetaBundle::q1};
        printed = {{2, Rational(2) * tensor(delta_e(), e_c())}};
    } else if (id == "theta2-q2-twisted") {
        res.description = "Theta2(T_C M, xi_C) (x) Q2(E) through q";
        factors = {ThetaBundle::theta2_xi, ThetaBundle::q2};
        printed = {{0, trivial(1)},
                   {1, sum({{Rational(3), x}, {Rational(-1), t}, {Rational(-1), e}})},
                   {2, sum({{Rational(-3), tensor_expand(x, t + e)},
                            {Rational(1), t},
                            {Rational(1), lambda(2, t)},
                            {Rational(1), lambda(2, e)},
                            {Rational(1), tensor(t, e)},
                            {Rational(3), tensor(x, x)},
                            {Rational(2), sym(2, x)},
                            {Rational(1), lambda(2, x)},
                            {Rational(1), x}})}};
    } else {
        throw configuration_error("unknown crosscheck id '" + id + "'");
    }

    BundleQSeries expansion = BundleQSeries::one(K);
    QSeries build = QSeries::constant(ring.constant(Rational(1)), K);
    long half_n = 0;
    for (ThetaBundle f : factors) {
        expansion = expansion * expand_theta_bundle(f, K);
        long h = 0;
        build *= theta_bundle_build(f, ring, K, h);
        half_n += h;
    }
    res.engine_agrees = true;
    std::vector<Pow2Poly> expanded;
    for (int k = 0; k <= K; ++k) {
        const BundleExpr &c = expansion.coeffs[static_cast<std::size_t>(k)];
        const Pow2Poly ch = chern_character(c, ring);
        expanded.push_back(ch);
        const std::string d = detail::pow2_diff(ch, {half_n, build[k]});
        res.coefficients.push_back({k, to_text(c), d.empty(), d});
        res.engine_agrees = res.engine_agrees && d.empty();
    }
    for (const auto &[k, p] : printed) {
        const std::string d = detail::pow2_diff(chern_character(p, ring), expanded[static_cast<std::size_t>(k)]);
        res.printed.push_back({k, to_text(p), d.empty(), d, k == convention_order});
    }
    return res;
}

} // namespace oddanom
