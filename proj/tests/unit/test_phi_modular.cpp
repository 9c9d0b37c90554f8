#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oddanom/modular_solve.hpp"
#include "oddanom/report.hpp"

namespace
{

using namespace oddanom;

// "e2*t1^2" -> product of generators in the ring.
GradedPoly parse_monomial(const ClassRing &ring, const std::string &text)
{
    GradedPoly m = ring.constant(Rational(1));
    std::stringstream ss(text);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        const auto caret = factor.find('^');
        const unsigned p = caret == std::string::npos ? 1U : static_cast<unsigned>(std::stoi(factor.substr(caret + 1)));
        m = m * ring.gen(factor.substr(0, caret), p);
    }
    return m;
}

QSeries golden_series(const ClassRing &ring, const nlohmann::json &j, int K)
{
    QSeries s(ring.zero(), K);
    for (int k = 0; k <= K; ++k) {
        GradedPoly p = ring.zero();
        for (const auto &[mono, c] : j.at(std::to_string(k)).items()) {
            p += parse_monomial(ring, mono) * Rational::parse(c.get<std::string>());
        }
        s.set(k, p);
    }
    return s;
}

class GoldenPhi : public ::testing::TestWithParam<int>
{
};

TEST_P(GoldenPhi, TopSlicesMatchDirectExpansion)
{
    const int r = GetParam();
    std::ifstream f(std::string(ODDANOM_GOLDEN_DIR) + "/phi_r" + std::to_string(r) + ".json");
    ASSERT_TRUE(f) << "golden file missing";
    const nlohmann::json g = nlohmann::json::parse(f);
    const int K = g.at("q_order_half").get<int>();
    const ClassRing ring(r, EModel::odd, false);
    EXPECT_EQ(top_slice(build_phi(ring, PhiKind::W, K)), golden_series(ring, g.at("phi_W_top"), K));
    EXPECT_EQ(top_slice(build_phi(ring, PhiKind::L, K)), golden_series(ring, g.at("phi_L_top"), K));
}

INSTANTIATE_TEST_SUITE_P(Ranks, GoldenPhi, ::testing::Values(1, 2, 3),
                         [](const ::testing::TestParamInfo<int> &info) { return "r" + std::to_string(info.param); });

TEST(PhiBuilder, WSeriesHasNoHalfIntegralPowersForEvenGenerators)
{
    // Phi_L lives in integral powers of q; Phi_W may not.
    const ClassRing ring(2, EModel::odd, false);
    const QSeries l = top_slice(build_phi(ring, PhiKind::L, 6));
    for (int k = 1; k <= 6; k += 2) {
        EXPECT_TRUE(l[k].is_zero()) << "h^" << k;
    }
}

TEST(PhiBuilder, PrefactorAndConfiguration)
{
    const PhiSeries l = build_phi(GeometrySpec{3, EModel::odd, false, 7}, PhiKind::L);
    EXPECT_EQ(l.prefactor.constant, 5);
    EXPECT_EQ(l.prefactor.half_n, 1);
    EXPECT_EQ(build_phi(GeometrySpec{3, EModel::odd, false, 7}, PhiKind::W).prefactor.constant, 0);
    EXPECT_THROW(ClassRing(0, EModel::odd, false), configuration_error);
    EXPECT_THROW((void)parse_emodel("triple"), configuration_error);
    EXPECT_THROW((void)parse_phi_kind("X"), configuration_error);
}

TEST(PhiBuilder, OddModelIsLinearInE)
{
    const ClassRing ring(4, EModel::odd, false);
    const QSeries w = build_phi(ring, PhiKind::W, 4).series;
    for (int k = 0; k <= 4; ++k) {
        EXPECT_EQ(ring.odd_part(w[k]), w[k]);
    }
}

// 2^{r-6l}[1 + (24r-64l) q + (288r^2 - 1536rl + 2048l^2 + 512l - 264r) q^2]
TEST(ModularBasis, LowerBasisLeadingPattern)
{
    for (int r = 2; r <= 6; ++r) {
        const ModularBasis b = basis_expansions(r, 4);
        for (int l = 1; 2 * l <= r; ++l) {
            const ScalarSeries &s = b.lower[static_cast<std::size_t>(l)];
            const Rational lead = Rational::two_pow(r - 6 * l);
            EXPECT_EQ(s[0], lead);
            EXPECT_EQ(s[2], lead * Rational(24L * r - 64L * l));
            EXPECT_EQ(s[4], lead * Rational(288L * r * r - 1536L * r * l + 2048L * l * l + 512L * l - 264L * r))
                << "r=" << r << " l=" << l;
        }
    }
    // r = 2, l = 1 is eps1 scaled: 1 - 16q + 112q^2.
    EXPECT_EQ(basis_expansions(2, 4).lower[1][4], Rational(112, 16));
}

TEST(ModularBasis, UpperBasisStartsAtHalfPowers)
{
    const ModularBasis b = basis_expansions(5, 6);
    for (int l = 0; l <= 2; ++l) {
        const ScalarSeries &s = b.upper[static_cast<std::size_t>(l)];
        for (int k = 0; k < l; ++k) {
            EXPECT_TRUE(s[k].is_zero());
        }
        EXPECT_EQ(s[l], Rational(-1)); // (8 delta2)^{5-2l} leads with -1, eps2 with h
    }
    EXPECT_EQ(b.top_index(), 2);
    EXPECT_THROW((void)basis_expansions(0, 4), configuration_error);
}

struct Geometry {
    int r;
    bool twisted;
};

void PrintTo(const Geometry &g, std::ostream *os) { *os << "r=" << g.r << (g.twisted ? " twisted" : ""); }

class DerivationSweep : public ::testing::TestWithParam<Geometry>
{
};

TEST_P(DerivationSweep, DerivedIdentitiesHold)
{
    const auto [r, twisted] = GetParam();
    const Derivation d(GeometrySpec{r, EModel::odd, twisted, std::nullopt});
    const FormulaReport &rep = d.report();
    EXPECT_TRUE(rep.transport_verified);
    EXPECT_EQ(rep.residual_max_order, rep.q_order);
    EXPECT_EQ(static_cast<int>(rep.h.size()), r / 2 + 1);
    EXPECT_TRUE(rep.h.front().is_zero());
    for (const Identity &id : rep.identities) {
        if (!id.printed_form) {
            EXPECT_TRUE(id.verified) << id.id << ": " << id.difference;
        }
    }
}

TEST_P(DerivationSweep, TwoAdicExponents)
{
    const auto [r, twisted] = GetParam();
    const Derivation d(GeometrySpec{r, EModel::odd, twisted, std::nullopt});
    const auto &recs = d.report().two_adic;
    ASSERT_EQ(recs.size(), 3U);
    if (r == 1) {
        for (const auto &rec : recs) {
            EXPECT_FALSE(rec.exponent.has_value());
        }
        return;
    }
    // 3r - 1 - 6 floor(r/2): N/2 - 1 for even r, N/2 + 2 for odd r; then +5 per family.
    const long q0 = r % 2 == 0 ? -1 : 2;
    for (int f = 0; f < 3; ++f) {
        ASSERT_TRUE(recs[static_cast<std::size_t>(f)].exponent.has_value());
        EXPECT_EQ(recs[static_cast<std::size_t>(f)].exponent->constant, q0 + 5L * f);
        EXPECT_EQ(recs[static_cast<std::size_t>(f)].exponent->half_n, 1);
    }
    if (r >= 4) {
        EXPECT_EQ(recs[0].isolation_gap, 6);
    }
}

INSTANTIATE_TEST_SUITE_P(Ranks, DerivationSweep,
                         ::testing::Values(Geometry{1, false}, Geometry{2, false}, Geometry{3, false}, Geometry{4, false},
                                           Geometry{5, false}, Geometry{2, true}, Geometry{3, true}, Geometry{4, true}),
                         [](const ::testing::TestParamInfo<Geometry> &info) {
                             return "r" + std::to_string(info.param.r) + (info.param.twisted ? "_twisted" : "");
                         });

TEST(Derivation, PublishedFormsThatDisagree)
{
    const Derivation d3(GeometrySpec{3, EModel::odd, false, std::nullopt});
    EXPECT_TRUE(d3.identity("dim11-q0").verified);
    EXPECT_TRUE(d3.identity("dim11-q1").verified);
    EXPECT_TRUE(d3.identity("dim11-q2-derived").verified);
    EXPECT_TRUE(d3.identity("dim11-q2-printed").printed_form);
    EXPECT_FALSE(d3.identity("dim11-q2-printed").verified);

    const Derivation d4(GeometrySpec{4, EModel::odd, false, std::nullopt});
    EXPECT_TRUE(d4.identity("dim15-q0-derived").verified);
    EXPECT_FALSE(d4.identity("dim15-q0-printed").verified);
    EXPECT_TRUE(d4.identity("h2-derived").verified);
    EXPECT_NE(d4.identity("h2-derived").statement.find("x = -N + 41"), std::string::npos)
        << d4.identity("h2-derived").statement;
    EXPECT_TRUE(d4.identity("h2-recursion-derived").verified);
}

TEST(Derivation, TwistedDim11AndDim15)
{
    const Derivation d3(GeometrySpec{3, EModel::odd, true, std::nullopt});
    EXPECT_TRUE(d3.identity("dim11-q0").verified);
    EXPECT_TRUE(d3.identity("dim11-q1").verified);
    EXPECT_FALSE(d3.has_identity("dim11-q2-printed"));
    const Derivation d4(GeometrySpec{4, EModel::odd, true, std::nullopt});
    EXPECT_TRUE(d4.identity("dim15-q0-derived").verified);
    EXPECT_FALSE(d4.identity("dim15-q0-printed").verified);
    EXPECT_THROW((void)d4.identity("dim11-q0"), configuration_error);
}

TEST(Derivation, H1IsSignedAhatChE)
{
    for (int r = 2; r <= 5; ++r) {
        const Derivation d(GeometrySpec{r, EModel::odd, false, std::nullopt});
        const GradedPoly want = d.a_ch_e() * Rational(r % 2 == 0 ? -1 : 1);
        EXPECT_EQ(d.report().h[1], want) << "r=" << r;
    }
}

TEST(Derivation, ConcreteRank)
{
    const Derivation d(GeometrySpec{3, EModel::odd, false, std::nullopt});
    for (long n : {2L, 4L, 8L}) {
        const FormulaReport rep = apply_concrete_n(d.report(), n);
        EXPECT_EQ(rep.concrete_n, n);
        for (const Identity &id : rep.identities) {
            if (!id.printed_form) {
                EXPECT_TRUE(id.verified) << id.id << " at N=" << n;
            }
            EXPECT_EQ(id.lhs.half_n, 0);
        }
    }
    EXPECT_THROW((void)apply_concrete_n(d.report(), 3), configuration_error);
    EXPECT_THROW((void)apply_concrete_n(d.report(), 0), configuration_error);
}

TEST(ModularSolve, ErrorPaths)
{
    const ClassRing ring(4, EModel::odd, false);
    const QSeries top = top_slice(build_phi(ring, PhiKind::W, 8));
    EXPECT_NO_THROW((void)solve_h(top, basis_expansions(4, 8)));
    EXPECT_THROW((void)solve_h(top, basis_expansions(4, 6)), context_error);
    const QSeries short_top = top_slice(build_phi(ring, PhiKind::W, 1));
    EXPECT_THROW((void)solve_h(short_top, basis_expansions(4, 1)), configuration_error);
    QSeries bent = top;
    bent.set(7, bent[7] + ring.gen("e4"));
    EXPECT_THROW((void)solve_h(bent, basis_expansions(4, 8)), modularity_violation);
    // A multiple of the l = 0 basis element survives the solve as a nonzero h_0.
    const ModularBasis b = basis_expansions(4, 8);
    QSeries shifted = top;
    for (int k = 0; k <= 8; ++k) {
        shifted.set(k, shifted[k] + ring.gen("e4") * b.upper[0][k]);
    }
    EXPECT_THROW((void)solve_h(shifted, basis_expansions(4, 8)), certification_error);
}

TEST(ModularSolve, RankOneHasNoInteriorTerms)
{
    const Derivation d(GeometrySpec{1, EModel::odd, false, std::nullopt});
    EXPECT_EQ(d.report().h.size(), 1U);
    EXPECT_TRUE(d.identity("q0-family").verified);
    EXPECT_TRUE(d.identity("h1").verified);
}

} // namespace
