#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oddanom/serialize.hpp"
#include "oddanom/theta_q.hpp"

namespace
{

using namespace oddanom;

constexpr int kOrder = 40;

// Series oracles from the theta sums, written in h = q^{1/2}.
ScalarSeries theta_sum(int sign)
{
    ScalarSeries s = ScalarSeries::constant(Rational(1), kOrder);
    for (int n = 1; n * n <= kOrder; ++n) {
        s.set(n * n, Rational(2 * (sign < 0 && n % 2 == 1 ? -1 : 1)));
    }
    return s;
}

TEST(ThetaQ, Theta3MatchesSumFormula) { EXPECT_EQ(theta_nullwert(ThetaFlavor::theta3, kOrder).series, theta_sum(1)); }

TEST(ThetaQ, Theta2MatchesSumFormula) { EXPECT_EQ(theta_nullwert(ThetaFlavor::theta2, kOrder).series, theta_sum(-1)); }

TEST(ThetaQ, Theta1MatchesSumFormula)
{
    // theta1(0) = 2 q^{1/8} sum_{n>=0} q^{n(n+1)/2}
    ScalarSeries want(Rational(0), kOrder);
    for (int n = 0; n * (n + 1) <= kOrder; ++n) {
        want.set(n * (n + 1), Rational(2));
    }
    const ThetaConstant t = theta_nullwert(ThetaFlavor::theta1, kOrder);
    EXPECT_EQ(t.series, want);
    EXPECT_EQ(t.q_eighths, 1);
}

TEST(ThetaQ, ThetaPrimeMatchesJacobiCube)
{
    // prod (1-q^j)^3 = sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}
    ScalarSeries want(Rational(0), kOrder);
    for (int n = 0; n * (n + 1) <= kOrder; ++n) {
        want.set(n * (n + 1), Rational((n % 2 == 0 ? 1 : -1) * (2 * n + 1)));
    }
    EXPECT_EQ(theta_nullwert(ThetaFlavor::theta, kOrder, true).series, want);
    EXPECT_TRUE(theta_nullwert(ThetaFlavor::theta, 4).series.is_zero());
}

TEST(ThetaQ, DisplayedDeltaEpsTerms)
{
    EXPECT_EQ(to_text(delta_eps(DeltaEps::delta1, 4).series), "1/4 + 6q + 6q^2");
    EXPECT_EQ(to_text(delta_eps(DeltaEps::eps1, 4).series), "1/16 - q + 7q^2");
    EXPECT_EQ(to_text(delta_eps(DeltaEps::delta2, 2).series), "-1/8 - 3q^(1/2) - 3q");
    EXPECT_EQ(to_text(delta_eps(DeltaEps::eps2, 2).series), "q^(1/2) + 8q");
}

TEST(ThetaQ, DeltaEpsIntegralBeyondConstant)
{
    for (auto w : {DeltaEps::delta1, DeltaEps::eps1, DeltaEps::delta2, DeltaEps::eps2}) {
        const ModForm f = delta_eps(w, 10);
        for (int k = 1; k <= 10; ++k) {
            EXPECT_TRUE(f.series[k].is_integer()) << delta_eps_name(w) << " at h^" << k;
        }
    }
    EXPECT_EQ(delta_eps(DeltaEps::delta1, 2).weight, 2);
    EXPECT_EQ(delta_eps(DeltaEps::eps2, 2).weight, 4);
    EXPECT_EQ(delta_eps(DeltaEps::eps2, 2).group, ModGroup::gamma_upper_0_2);
}

TEST(ThetaQ, DeltaEpsGoldenThroughQ5)
{
    std::ifstream f(std::string(ODDANOM_GOLDEN_DIR) + "/delta_eps.json");
    ASSERT_TRUE(f) << "golden file missing";
    const nlohmann::json golden = nlohmann::json::parse(f);
    const int K = golden.at("q_order_half").get<int>();
    for (auto w : {DeltaEps::delta1, DeltaEps::eps1, DeltaEps::delta2, DeltaEps::eps2}) {
        const ScalarSeries s = delta_eps(w, K).series;
        const auto &g = golden.at("forms").at(std::string(delta_eps_name(w)));
        for (int k = 0; k <= K; ++k) {
            EXPECT_EQ(s[k], Rational::parse(g.at(std::to_string(k)).get<std::string>()))
                << delta_eps_name(w) << " at h^" << k;
        }
    }
}

TEST(ThetaQ, ConfigurationErrors)
{
    EXPECT_THROW((void)theta_nullwert(ThetaFlavor::theta2, -1), configuration_error);
    EXPECT_THROW((void)parse_flavor("theta4"), configuration_error);
    EXPECT_THROW((void)parse_block("b4"), configuration_error);
    EXPECT_THROW((void)log_block(BlockKind::b1, 2, -4), configuration_error);
    EXPECT_EQ(parse_flavor("theta2"), ThetaFlavor::theta2);
}

// Product-side oracle: the theta quotient as a series over Q[z], then its log.
class BlockOracle : public ::testing::Test
{
protected:
    static constexpr int K = 6;
    static constexpr int D = 16; // z^8

    ContextPtr ctx = z_context();

    GradedPoly cos_z(long f) const
    {
        GradedPoly p(ctx, D);
        for (int k = 0; 4 * k <= D; ++k) {
            p += GradedPoly::generator(ctx, D, "z", static_cast<unsigned>(2 * k))
                 * (Rational(k % 2 == 0 ? 1 : -1) * Rational(f).pow(2 * k) / Rational::factorial(2 * k));
        }
        return p;
    }

    GradedPoly sinc() const
    {
        GradedPoly p(ctx, D);
        for (int k = 0; 4 * k <= D; ++k) {
            p += GradedPoly::generator(ctx, D, "z", static_cast<unsigned>(2 * k))
                 * (Rational(k % 2 == 0 ? 1 : -1) / Rational::factorial(2 * k + 1));
        }
        return p;
    }

    // (1 + s c2 h^e + h^{2e}) with c2 = 2 cos 2z, as a QSeries.
    QSeries factor(int e, int s) const
    {
        QSeries f = QSeries::constant(GradedPoly::constant(ctx, D, Rational(1)), K);
        if (e <= K) {
            f.set(e, cos_z(2) * Rational(2 * s));
        }
        if (2 * e <= K) {
            f.set(2 * e, f[2 * e] + GradedPoly::constant(ctx, D, Rational(1)));
        }
        return f;
    }

    QSeries scalar(const ScalarSeries &s) const { return lift(s, ctx, D); }

    QSeries quotient(BlockKind b) const
    {
        QSeries out = QSeries::constant(GradedPoly::constant(ctx, D, Rational(1)), K);
        const auto one_plus = [&](int e, int s) {
            ScalarSeries x = ScalarSeries::constant(Rational(1), K);
            if (e <= K) {
                x.set(e, Rational(s));
            }
            return x;
        };
        switch (b) {
        case BlockKind::witten:
            out = QSeries::constant(inverse(sinc()), K);
            for (int j = 2; j <= K; j += 2) {
                out = out * scalar(one_plus(j, -1).pow(2)) * factor(j, -1).inverse();
            }
            break;
        case BlockKind::b1:
            out = QSeries::constant(cos_z(1), K);
            for (int j = 2; j <= K; j += 2) {
                out = out * factor(j, 1) * scalar(one_plus(j, 1).pow(2).inverse());
            }
            break;
        default: {
            const int s = b == BlockKind::b2 ? -1 : 1;
            for (int e = 1; e <= K; e += 2) {
                out = out * factor(e, s) * scalar(one_plus(e, s).pow(2).inverse());
            }
        }
        }
        return out;
    }
};

TEST_F(BlockOracle, LogBlocksMatchProductLogarithms)
{
    for (BlockKind b : {BlockKind::witten, BlockKind::b1, BlockKind::b2, BlockKind::b3}) {
        const QSeries want = quotient(b).log();
        EXPECT_EQ(log_block(b, K, D), want) << block_name(b);
    }
}

TEST_F(BlockOracle, InverseSquareBlocks)
{
    for (auto [inv, base] : {std::pair{BlockKind::inv_sq_b1, BlockKind::b1}, std::pair{BlockKind::inv_sq_b2, BlockKind::b2},
                             std::pair{BlockKind::inv_sq_b3, BlockKind::b3}}) {
        EXPECT_EQ(log_block(inv, K, D), log_block(base, K, D) * Rational(-2));
    }
}

TEST(ThetaQ, KnownLowOrderBlockCoefficients)
{
    // log(z/sin z) = z^2/6 + z^4/180 + ..., log cos z = -z^2/2 - z^4/12 - ...
    EXPECT_EQ(block_coefficient(BlockKind::witten, 1, 0)[0], Rational(1, 6));
    EXPECT_EQ(block_coefficient(BlockKind::witten, 2, 0)[0], Rational(1, 180));
    EXPECT_EQ(block_coefficient(BlockKind::b1, 1, 0)[0], Rational(-1, 2));
    EXPECT_EQ(block_coefficient(BlockKind::b1, 2, 0)[0], Rational(-1, 12));
    // b2 at h: -2 (cos 2z - 1) -> +4 z^2
    EXPECT_EQ(block_coefficient(BlockKind::b2, 1, 1)[1], Rational(4));
}

} // namespace
