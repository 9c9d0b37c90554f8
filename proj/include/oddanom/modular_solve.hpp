#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <variant>
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

// b_l = (8 delta2)^{r-2l} eps2^l over Gamma^0(2) and its mirror (8 delta1)^{r-2l} eps1^l.
struct ModularBasis {
    int r = 0;
    int q_order = 0;
    std::vector<ScalarSeries> upper; // Gamma^0(2)
    std::vector<ScalarSeries> lower; // Gamma_0(2)

    [[nodiscard]] int top_index() const noexcept { return r / 2; }
};

inline ModularBasis basis_expansions(int r, int K)
{
    if (r < 1) {
        throw configuration_error("r must be at least 1");
    }
    const ScalarSeries d1 = delta_eps(DeltaEps::delta1, K).series * Rational(8);
    const ScalarSeries e1 = delta_eps(DeltaEps::eps1, K).series;
    const ScalarSeries d2 = delta_eps(DeltaEps::delta2, K).series * Rational(8);
    const ScalarSeries e2 = delta_eps(DeltaEps::eps2, K).series;
    ModularBasis b{r, K, {}, {}};
    for (int l = 0; 2 * l <= r; ++l) {
        const auto a = static_cast<unsigned>(r - 2 * l);
        const auto e = static_cast<unsigned>(l);
        b.upper.push_back(d2.pow(a) * e2.pow(e));
        b.lower.push_back(d1.pow(a) * e1.pow(e));
    }
    return b;
}

// One emitted identity lhs = rhs with both sides evaluated in the class ring.
struct Identity {
    std::string id;
    std::string statement; // human-readable form of the identity
    std::string latex;
    Pow2Poly lhs;
    Pow2Poly rhs;
    bool verified = false;
    bool printed_form = false; // coefficients taken from the published statement, not derived
    std::string difference;    // lhs - rhs when they differ
    std::string note;
};

inline Identity finish_identity(Identity id)
{
    if (id.lhs.half_n != id.rhs.half_n) {
        id.verified = false;
        id.difference = "sides carry different powers of 2^{N/2}";
        return id;
    }
    const GradedPoly diff = id.lhs.poly - id.rhs.poly;
    id.verified = diff.is_zero();
    id.difference = id.verified ? std::string() : diff.str();
    return id;
}

// x, a polynomial in N alone, with p = x * q, when one exists.
inline std::optional<GradedPoly> fit_rank_multiple(const GradedPoly &p, const GradedPoly &q)
{
    const auto qc = q.collect("N");
    auto pivot = std::find_if(qc.begin(), qc.end(), [](const auto &kv) {
        return kv.second.size() == 1 && kv.second.begin()->first == 0;
    });
    if (pivot == qc.end()) {
        return std::nullopt;
    }
    const Rational c = pivot->second.begin()->second;
    const auto pc = p.collect("N");
    GradedPoly x = p.zero_like();
    if (auto it = pc.find(pivot->first); it != pc.end()) {
        for (const auto &[e, v] : it->second) {
            x += p.constant_like(v / c) * GradedPoly::generator(p.context(), p.max_degree(), "N", static_cast<unsigned>(e));
        }
    }
    if (!(x * q == p)) {
        return std::nullopt;
    }
    return x;
}

enum class Family { q0, q1, q2 };

inline std::string family_name(Family f)
{
    switch (f) {
    case Family::q0:
        return "q0-family";
    case Family::q1:
        return "q1-family";
    case Family::q2:
        return "q2-family";
    }
    return "?";
}

// Base-2 exponent a in 2^{a + N/2} sum_l 2^{-6l} l^j h_l for each family.
inline long family_base_exponent(Family f, int r)
{
    switch (f) {
    case Family::q0:
        return 3L * r - 1;
    case Family::q1:
        return 3L * r + 4;
    case Family::q2:
        return 3L * r + 9;
    }
    return 0;
}

struct TwoAdicRecord {
    Family family = Family::q0;
    std::optional<AffinePow2> exponent; // none when every h_l (l >= 1) vanishes
    std::optional<long> isolation_gap;  // exponent distance of the next term to the leading one
};

struct FormulaReport {
    int r = 0;
    bool twisted = false;
    EModel e_model = EModel::odd;
    std::optional<long> concrete_n;
    int q_order = 0;
    std::vector<GradedPoly> h;
    int residual_max_order = -1; // half-units through which the residual is exactly zero
    bool transport_verified = false;
    std::vector<Identity> identities;
    std::vector<TwoAdicRecord> two_adic;
    std::vector<std::string> notes;

    [[nodiscard]] bool all_verified() const
    {
        return transport_verified
               && std::all_of(identities.begin(), identities.end(),
                              [](const Identity &i) { return i.verified || i.printed_form; });
    }
};

// Triangular fit on orders 0..floor(r/2) half-units, then residual certification.
inline FormulaReport solve_h(const QSeries &phi_top, const ModularBasis &basis, bool twisted = false)
{
    const int L = basis.top_index();
    const int K = phi_top.order();
    if (basis.q_order != K) {
        throw context_error("basis and series truncations differ");
    }
    if (K < L) {
        throw configuration_error("q order too small to determine every h_l");
    }
    FormulaReport rep;
    rep.r = basis.r;
    rep.twisted = twisted;
    rep.q_order = K;
    for (int l = 0; l <= L; ++l) {
        GradedPoly acc = phi_top[l];
        for (int m = 0; m < l; ++m) {
            acc -= rep.h[static_cast<std::size_t>(m)] * basis.upper[static_cast<std::size_t>(m)][l];
        }
        const Rational lead = basis.upper[static_cast<std::size_t>(l)][l];
        if (lead.is_zero()) {
            throw not_invertible_error("basis element without leading coefficient at q^(" + std::to_string(l)
                                       + "/2)");
        }
        rep.h.push_back(acc / lead);
    }
    QSeries residual = phi_top;
    for (int l = 0; l <= L; ++l) {
        residual -= lift(basis.upper[static_cast<std::size_t>(l)], phi_top[0].context(), phi_top[0].max_degree())
                        .scale(rep.h[static_cast<std::size_t>(l)]);
    }
    for (int k = 0; k <= K; ++k) {
        if (!residual[k].is_zero()) {
            throw modularity_violation("nonzero residual at q^(" + std::to_string(k) + "/2): " + residual[k].str());
        }
    }
    rep.residual_max_order = K;
    if (!rep.h.front().is_zero()) {
        throw certification_error("h_0 does not vanish: " + rep.h.front().str());
    }
    return rep;
}

inline FormulaReport solve_h_twisted(const QSeries &phi_top, const ModularBasis &basis)
{
    return solve_h(phi_top, basis, true);
}

inline std::vector<TwoAdicRecord> two_adic_exponents(const FormulaReport &rep)
{
    std::vector<TwoAdicRecord> out;
    for (Family f : {Family::q0, Family::q1, Family::q2}) {
        TwoAdicRecord rec{f, std::nullopt, std::nullopt};
        std::vector<long> exps;
        for (int l = 1; l < static_cast<int>(rep.h.size()); ++l) {
            if (!rep.h[static_cast<std::size_t>(l)].is_zero()) {
                exps.push_back(family_base_exponent(f, rep.r) - 6L * l);
            }
        }
        if (!exps.empty()) {
            std::sort(exps.begin(), exps.end());
            rec.exponent = AffinePow2{exps.front(), 1};
            if (exps.size() > 1) {
                rec.isolation_gap = exps[1] - exps[0];
            }
        }
        out.push_back(rec);
    }
    return out;
}

// Full pipeline for one geometry: build, solve, transport, emit identities.
class Derivation
{
public:
    explicit Derivation(const GeometrySpec &spec)
        : m_spec(spec), m_ring(spec.r, spec.e_model, spec.twisted), m_K(spec.resolved_q_order()),
          m_classes(named_classes(m_ring))
    {
        m_phi_w = build_phi(m_ring, PhiKind::W, m_K);
        m_phi_l = build_phi(m_ring, PhiKind::L, m_K);
        m_top_w = top_slice(m_phi_w);
        m_top_l = top_slice(m_phi_l);
        m_basis = basis_expansions(spec.r, m_K);
        m_report = solve_h(m_top_w, m_basis, spec.twisted);
        m_report.e_model = spec.e_model;
        check_transport();
        m_report.two_adic = two_adic_exponents(m_report);
        emit_all();
    }

    [[nodiscard]] const FormulaReport &report() const noexcept { return m_report; }
    [[nodiscard]] const ClassRing &ring() const noexcept { return m_ring; }
    [[nodiscard]] const NamedClasses &classes() const noexcept { return m_classes; }
    [[nodiscard]] const PhiSeries &phi_w() const noexcept { return m_phi_w; }
    [[nodiscard]] const PhiSeries &phi_l() const noexcept { return m_phi_l; }
    [[nodiscard]] const QSeries &top_w() const noexcept { return m_top_w; }
    [[nodiscard]] const QSeries &top_l() const noexcept { return m_top_l; }
    [[nodiscard]] const ModularBasis &basis() const noexcept { return m_basis; }

    [[nodiscard]] const Identity &identity(const std::string &id) const
    {
        for (const auto &i : m_report.identities) {
            if (i.id == id) {
                return i;
            }
        }
        throw configuration_error("identity '" + id + "' not emitted for r = " + std::to_string(m_spec.r)
                                  + (m_spec.twisted ? " (twisted)" : ""));
    }

    [[nodiscard]] bool has_identity(const std::string &id) const
    {
        return std::any_of(m_report.identities.begin(), m_report.identities.end(),
                           [&](const Identity &i) { return i.id == id; });
    }

    // Top slice of a class product.
    [[nodiscard]] GradedPoly top(const GradedPoly &p) const { return p.slice(m_ring.top_degree()); }

    // The Phi_L coefficient of q^k (k in whole powers), prefactor included.
    [[nodiscard]] Pow2Poly phi_l_coefficient(int k) const
    {
        return {m_phi_l.prefactor.half_n,
                m_top_l[2 * k] * Rational::two_pow(m_phi_l.prefactor.constant)};
    }

    // A-hat ch(E) [cosh(c/2)], the class h_1 is made of.
    [[nodiscard]] GradedPoly a_ch_e() const { return top(m_classes.a_hat * m_classes.ch_e * m_classes.cosh_half_c); }

    // A-hat ch(T_C M [- 3 xi_C]) ch(E) [cosh(c/2)]
    [[nodiscard]] GradedPoly a_ch_t_ch_e() const
    {
        const GradedPoly t = m_classes.ch_t - m_classes.ch_xi * Rational(3);
        return top(m_classes.a_hat * t * m_classes.ch_e * m_classes.cosh_half_c);
    }

    // A-hat ch(Lambda^2 E) [cosh(c/2)]
    [[nodiscard]] GradedPoly a_ch_l2_e() const
    {
        return top(m_classes.a_hat * m_classes.ch_lambda2_e * m_classes.cosh_half_c);
    }

    // L-hat [/cosh^2(c/2)] ch(Delta(E)), including its 2^{N/2}.
    [[nodiscard]] Pow2Poly l_ch_delta() const
    {
        return {1, top(m_classes.l_hat * m_classes.inv_cosh2 * m_classes.ch_delta)};
    }

private:
    [[nodiscard]] std::string twist_suffix() const { return m_spec.twisted ? " / cosh^2(c/2)" : ""; }
    [[nodiscard]] std::string cosh_suffix() const { return m_spec.twisted ? " cosh(c/2)" : ""; }
    [[nodiscard]] std::string latex_twist() const { return m_spec.twisted ? "\\frac{1}{\\cosh^2(c/2)}" : ""; }
    [[nodiscard]] std::string latex_cosh() const { return m_spec.twisted ? "\\cosh\\frac{c}{2}" : ""; }
    [[nodiscard]] std::string deg() const { return "^{(" + std::to_string(4 * m_spec.r - 1) + ")}"; }

    void check_transport()
    {
        QSeries rhs(m_ring.zero(), m_K);
        for (std::size_t l = 0; l < m_report.h.size(); ++l) {
            rhs += lift(m_basis.lower[l], m_ring.context(), m_ring.top_degree()).scale(m_report.h[l]);
        }
        m_report.transport_verified = rhs == m_top_l;
        if (!m_report.transport_verified) {
            throw verification_failure("Phi_L does not equal the transported Gamma_0(2) decomposition");
        }
    }

    // 2^{a + N/2} sum_l 2^{-6l} l^j h_l
    [[nodiscard]] Pow2Poly h_sum(long a, int j, const Rational &sign) const
    {
        GradedPoly acc = m_ring.zero();
        for (int l = 1; l < static_cast<int>(m_report.h.size()); ++l) {
            acc += m_report.h[static_cast<std::size_t>(l)] * (Rational::two_pow(a - 6L * l) * Rational(l).pow(j) * sign);
        }
        return {1, acc};
    }

    // Y = A1/2 and Z = A2/2 - (3 - 8r) Y: the classes the q^1 and q^2 coefficients of Phi_L stand for.
    [[nodiscard]] Pow2Poly class_y() const { return Rational(1, 2) * phi_l_coefficient(1); }
    [[nodiscard]] Pow2Poly class_z() const
    {
        return Rational(1, 2) * phi_l_coefficient(2) + Rational(-(3 - 8 * m_spec.r)) * class_y();
    }

    void emit_all()
    {
        const int r = m_spec.r;
        auto &ids = m_report.identities;
        const std::string lhat = "Lhat" + twist_suffix();

        // Families, left sides read directly off Phi_L.
        {
            Identity id;
            id.id = family_name(Family::q0);
            id.statement = "{" + lhat + " ch(Delta(E))}" + deg() + " = 2^(3r-1+N/2) sum_l 2^(-6l) h_l";
            id.latex = "\\left\\{\\widehat{L}" + latex_twist() + "\\,\\mathrm{ch}(\\Delta(E))\\right\\}" + deg()
                       + " = 2^{3r-1+\\frac{N}{2}}\\sum_{l\\ge1} 2^{-6l} h_l";
            id.lhs = phi_l_coefficient(0);
            id.rhs = h_sum(family_base_exponent(Family::q0, r), 0, Rational(1));
            ids.push_back(finish_identity(std::move(id)));
        }
        {
            Identity id;
            id.id = family_name(Family::q1);
            id.statement = "(1/2) A_1 - 12r A_0 = -2^(3r+4+N/2) sum_l 2^(-6l) l h_l, A_k the q^k top coefficient of Phi_L";
            id.latex = "\\tfrac12 A_1 - 12r A_0 = -2^{3r+4+\\frac{N}{2}}\\sum_{l\\ge1} 2^{-6l}\\, l\\, h_l";
            id.lhs = class_y() + Rational(-12L * r) * phi_l_coefficient(0);
            id.rhs = h_sum(family_base_exponent(Family::q1, r), 1, Rational(-1));
            id.note = "A_1/2 is the class written Lhat ch(Delta(E) (x) E_C)";
            ids.push_back(finish_identity(std::move(id)));
        }
        if (2 * 2 <= m_K) {
            Identity id;
            id.id = family_name(Family::q2);
            id.statement = "(1/2) A_2 + (4-12r) A_1 + (144r^2+36r) A_0 = 2^(3r+9+N/2) sum_l 2^(-6l) l^2 h_l";
            id.latex = "\\tfrac12 A_2 + (4-12r) A_1 + (144r^2+36r) A_0 = 2^{3r+9+\\frac{N}{2}}\\sum_{l\\ge1} "
                       "2^{-6l}\\, l^2 h_l";
            id.lhs = Rational(1, 2) * phi_l_coefficient(2) + Rational(4 - 12L * r) * phi_l_coefficient(1)
                     + Rational(144L * r * r + 36L * r) * phi_l_coefficient(0);
            id.rhs = h_sum(family_base_exponent(Family::q2, r), 2, Rational(1));
            ids.push_back(finish_identity(std::move(id)));
        }
        {
            Identity id;
            id.id = "q0-class";
            id.statement = "constant term of Phi_L top slice = {" + lhat + " ch(Delta(E))}" + deg();
            id.latex = "A_0 = \\left\\{\\widehat{L}" + latex_twist() + "\\,\\mathrm{ch}(\\Delta(E))\\right\\}" + deg();
            id.lhs = phi_l_coefficient(0);
            id.rhs = l_ch_delta();
            ids.push_back(finish_identity(std::move(id)));
        }
        {
            Identity id;
            id.id = "h1";
            const Rational s(r % 2 == 0 ? -1 : 1);
            id.statement = "h_1 = (-1)^(r-1) {Ahat ch(E)" + cosh_suffix() + "}" + deg();
            id.latex = "h_1 = (-1)^{r-1}\\left\\{\\widehat{A}\\,\\mathrm{ch}(E)" + latex_cosh() + "\\right\\}" + deg();
            id.lhs = {0, m_report.h.size() > 1 ? m_report.h[1] : m_ring.zero()};
            id.rhs = {0, r >= 2 ? a_ch_e() * s : m_ring.zero()};
            ids.push_back(finish_identity(std::move(id)));
        }
        if (r >= 4) {
            emit_h2();
        }
        if (r == 3) {
            emit_dim11();
        }
        if (r == 4) {
            emit_dim15();
        }
    }

    void emit_h2()
    {
        const int r = m_spec.r;
        auto &ids = m_report.identities;
        const Rational sr(r % 2 == 0 ? 1 : -1);
        const GradedPoly base = (a_ch_t_ch_e() + a_ch_l2_e()) * sr;
        const GradedPoly ae = a_ch_e();
        const GradedPoly N = m_ring.gen("N");
        const std::string t = m_spec.twisted ? "T_C M - 3 xi_C" : "T_C M";
        const std::string stmt_head =
            "h_2 = (-1)^r [Ahat ch(" + t + ") ch(E)" + cosh_suffix() + " + Ahat ch(L2 E)" + cosh_suffix() + "] + ";
        const std::string latex_head = "h_2 = (-1)^{r}\\left[\\widehat{A}\\,\\mathrm{ch}(" + t + ")\\,\\mathrm{ch}(E)"
                                       + latex_cosh() + " + \\widehat{A}\\,\\mathrm{ch}(\\wedge^2 E)" + latex_cosh()
                                       + "\\right]" + deg() + " + ";
        // Published bracket: (-1)^{r-4}(7 - N - 4r) - 24(r-2) + 8(-1)^r.
        {
            const GradedPoly coeff = (m_ring.constant(Rational(7 - 4L * r)) - N) * sr
                                     + m_ring.constant(Rational(-24L * (r - 2)) + Rational(8) * sr);
            Identity id;
            id.id = "h2-printed";
            id.printed_form = true;
            id.statement = stmt_head + "[(-1)^(r-4)(7-N-4r) - 24(r-2) + 8(-1)^r] Ahat ch(E)" + cosh_suffix();
            id.latex = latex_head + "\\left[(-1)^{r-4}(7-N-4r)-24(r-2)+8(-1)^r\\right]\\widehat{A}\\,\\mathrm{ch}(E)"
                       + latex_cosh();
            id.lhs = {0, m_report.h[2]};
            id.rhs = {0, base + coeff * ae};
            ids.push_back(finish_identity(std::move(id)));
        }
        {
            Identity id;
            id.id = "h2-derived";
            const auto x = fit_rank_multiple(m_report.h[2] - base, ae);
            id.statement = stmt_head + "x Ahat ch(E)" + cosh_suffix() + ", x = " + (x ? x->str() : "none");
            id.latex = latex_head + "\\left(" + (x ? x->str() : "?") + "\\right)\\widehat{A}\\,\\mathrm{ch}(E)"
                       + latex_cosh();
            id.lhs = {0, m_report.h[2]};
            id.rhs = {0, base + (x ? *x * ae : m_ring.zero())};
            id.note = "x fitted from the triangular solve";
            ids.push_back(finish_identity(std::move(id)));
        }
        if (!m_spec.twisted) {
            // h_2 = (-1)^r {Ahat ch~(B_2)} + k h_1, ch~(B_2) = ch(L2 E~) + ch(T~) ch(E).
            const GradedPoly b2 =
                top(m_classes.a_hat
                    * (m_classes.ch_lambda2_e - N * m_classes.ch_e
                       + (m_classes.ch_t - m_ring.constant(Rational(4L * r - 1))) * m_classes.ch_e))
                * sr;
            {
                Identity id;
                id.id = "h2-recursion-printed";
                id.printed_form = true;
                id.statement = "h_2 = (-1)^r {Ahat ch~(B_2)} + [-8 + 24(-1)^r(r-2)] h_1";
                id.latex = "h_2 = (-1)^{r-4}\\left\\{\\widehat{A}\\,\\widetilde{\\mathrm{ch}}(B_2)\\right\\}" + deg()
                           + " + \\left[-8+24(-1)^r(r-2)\\right] h_1";
                id.lhs = {0, m_report.h[2]};
                id.rhs = {0, b2 + m_report.h[1] * (Rational(-8) + Rational(24L * (r - 2)) * sr)};
                ids.push_back(finish_identity(std::move(id)));
            }
            {
                Identity id;
                id.id = "h2-recursion-derived";
                id.statement = "h_2 = (-1)^r {Ahat ch~(B_2)} - [8 + 24(r-2)] h_1";
                id.latex = "h_2 = (-1)^{r}\\left\\{\\widehat{A}\\,\\widetilde{\\mathrm{ch}}(B_2)\\right\\}" + deg()
                           + " - \\left[8+24(r-2)\\right] h_1";
                id.lhs = {0, m_report.h[2]};
                id.rhs = {0, b2 - m_report.h[1] * Rational(8 + 24L * (r - 2))};
                ids.push_back(finish_identity(std::move(id)));
            }
        }
    }

    void emit_dim11()
    {
        auto &ids = m_report.identities;
        const std::string lhat = "Lhat" + twist_suffix();
        const std::string ll = "\\widehat{L}" + latex_twist();
        const GradedPoly ae = a_ch_e();
        {
            Identity id;
            id.id = "dim11-q0";
            id.statement = "{" + lhat + " ch(Delta(E))}^(11) = 2^(N/2+2) {Ahat ch(E)" + cosh_suffix() + "}^(11)";
            id.latex = "\\left\\{" + ll + "\\,\\mathrm{ch}(\\Delta(E))\\right\\}^{(11)} = 2^{\\frac{N}{2}+2}\\left\\{"
                       "\\widehat{A}\\,\\mathrm{ch}(E)" + latex_cosh() + "\\right\\}^{(11)}";
            id.lhs = l_ch_delta();
            id.rhs = {1, ae * Rational(4)};
            ids.push_back(finish_identity(std::move(id)));
        }
        {
            Identity id;
            id.id = "dim11-q1";
            id.statement = "{" + lhat + " ch(Delta(E) (x) E_C) - 36 " + lhat + " ch(Delta(E)) + 2^(7+N/2) Ahat ch(E)"
                           + cosh_suffix() + "}^(11) = 0";
            id.latex = "\\left\\{" + ll + "\\,\\mathrm{ch}(\\Delta(E)\\otimes E_C) - 36\\," + ll
                       + "\\,\\mathrm{ch}(\\Delta(E)) + 2^{7+\\frac{N}{2}}\\widehat{A}\\,\\mathrm{ch}(E)" + latex_cosh()
                       + "\\right\\}^{(11)} = 0";
            id.lhs = class_y() + Rational(-36) * l_ch_delta() + Pow2Poly{1, ae * Rational(128)};
            id.rhs = {1, m_ring.zero()};
            id.note = "Lhat ch(Delta(E) (x) E_C) read as half the q^1 top coefficient of Phi_L";
            ids.push_back(finish_identity(std::move(id)));
        }
        if (m_spec.twisted) {
            return;
        }
        const auto q2 = [&](const std::string &tag, long cy, long cx, bool printed) {
            Identity id;
            id.id = tag;
            id.printed_form = printed;
            id.statement = "{Lhat [" + std::to_string(cy) + " ch(Delta(E) (x) E_C) " + (cx < 0 ? "- " : "+ ")
                           + std::to_string(std::labs(cx))
                           + " ch(Delta(E)) + ch(T_C M) ch(Delta(E) (x) E_C) + ch(Delta(E) (x) L2 E_C)]}^(11) = "
                             "2^(12+N/2) {Ahat ch(E)}^(11)";
            id.latex = "\\left\\{\\widehat{L}\\left[" + std::to_string(cy) + "\\,\\mathrm{ch}(\\Delta(E)\\otimes E_C)"
                       + (cx < 0 ? " - " : " + ") + std::to_string(std::labs(cx))
                       + "\\,\\mathrm{ch}(\\Delta(E)) + \\mathrm{ch}(T_CM)\\,\\mathrm{ch}(\\Delta(E)\\otimes E_C) + "
                         "\\mathrm{ch}(\\Delta(E)\\otimes\\wedge^2E_C)\\right]\\right\\}^{(11)} = "
                         "2^{12+\\frac{N}{2}}\\left\\{\\widehat{A}\\,\\mathrm{ch}(E)\\right\\}^{(11)}";
            id.lhs = class_z() + Rational(cy) * class_y() + Rational(cx) * l_ch_delta();
            id.rhs = {1, ae * Rational::two_pow(12)};
            id.note = "bracketed classes read off the q^1 and q^2 top coefficients of Phi_L";
            ids.push_back(finish_identity(std::move(id)));
        };
        q2("dim11-q2-printed", -149, -864, true);
        q2("dim11-q2-derived", 11 - 32 * 3, 144 * 9 + 36 * 3, false);
    }

    void emit_dim15()
    {
        auto &ids = m_report.identities;
        const std::string lhat = "Lhat" + twist_suffix();
        const std::string ll = "\\widehat{L}" + latex_twist();
        const GradedPoly ae = a_ch_e();
        const GradedPoly rest = a_ch_t_ch_e() + a_ch_l2_e();
        const GradedPoly N = m_ring.gen("N");
        const std::string t = m_spec.twisted ? "T_C M - 3 xi_C" : "T_C M";
        const auto make = [&](const std::string &tag, const GradedPoly &coeff, bool printed) {
            Identity id;
            id.id = tag;
            id.printed_form = printed;
            id.statement = "{" + lhat + " ch(Delta(E))}^(15) = 2^(N/2-1) [(" + coeff.str() + ") Ahat ch(E)"
                           + cosh_suffix() + " + Ahat ch(" + t + ") ch(E)" + cosh_suffix() + " + Ahat ch(L2 E)"
                           + cosh_suffix() + "]^(15)";
            id.latex = "\\left\\{" + ll + "\\,\\mathrm{ch}(\\Delta(E))\\right\\}^{(15)} = 2^{\\frac{N}{2}-1}\\left[("
                       + coeff.str() + ")\\,\\widehat{A}\\,\\mathrm{ch}(E)" + latex_cosh() + " + \\widehat{A}\\,\\mathrm{ch}("
                       + t + ")\\,\\mathrm{ch}(E)" + latex_cosh() + " + \\widehat{A}\\,\\mathrm{ch}(\\wedge^2E)"
                       + latex_cosh() + "\\right]^{(15)}";
            id.lhs = l_ch_delta();
            id.rhs = {1, (coeff * ae + rest) * Rational(1, 2)};
            ids.push_back(finish_identity(std::move(id)));
        };
        make("dim15-q0-printed", m_ring.constant(Rational(-113)) - N, true);
        const auto x = fit_rank_multiple(l_ch_delta().poly * Rational(2) - rest, ae);
        make("dim15-q0-derived", x ? *x : m_ring.zero(), false);
        ids.back().note = "coefficient fitted from the class ring";
    }

    GeometrySpec m_spec;
    ClassRing m_ring;
    int m_K;
    NamedClasses m_classes;
    PhiSeries m_phi_w;
    PhiSeries m_phi_l;
    QSeries m_top_w;
    QSeries m_top_l;
    ModularBasis m_basis;
    FormulaReport m_report;
};

} // namespace oddanom
