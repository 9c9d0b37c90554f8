#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oddanom/bundle_algebra.hpp"

namespace
{

using namespace oddanom;
namespace B = oddanom::bundle;
using B::operator+;
using B::operator-;

constexpr int kCases = 1000;

const ClassRing &even_ring()
{
    static const ClassRing ring(3, EModel::even, true);
    return ring;
}

GradedPoly ch(const BundleExpr &e) { return chern_character(e, even_ring()).poly; }

// Random genuine bundle: a short sum of tangent, E_C, xi_C, trivial and Lambda^2 pieces.
BundleExpr random_bundle(std::mt19937 &g)
{
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_int_distribution<long> small(1, 3);
    std::vector<std::pair<Rational, BundleExpr>> terms;
    for (int i = count(g); i > 0; --i) {
        BundleExpr x;
        switch (pick(g)) {
        case 0:
            x = B::tangent();
            break;
        case 1:
            x = B::e_c();
            break;
        case 2:
            x = B::xi_c();
            break;
        case 3:
            x = B::trivial(small(g));
            break;
        default:
            x = B::lambda(2, B::e_c());
        }
        terms.emplace_back(Rational(small(g)), x);
    }
    return B::sum(std::move(terms));
}

TEST(BundleAlgebra, ExteriorPowerOfSumProperty)
{
    std::mt19937 g(41);
    std::uniform_int_distribution<long> deg(1, 3);
    for (int i = 0; i < kCases; ++i) {
        const BundleExpr f = random_bundle(g), h = random_bundle(g);
        const long k = deg(g);
        GradedPoly rhs = even_ring().zero();
        for (long j = 0; j <= k; ++j) {
            rhs += ch(B::lambda(j, f)) * ch(B::lambda(k - j, h));
        }
        ASSERT_EQ(ch(B::lambda(k, f + h)), rhs) << to_text(f) << " | " << to_text(h);
    }
}

TEST(BundleAlgebra, ExteriorSymmetricQuotientProperty)
{
    // Lambda_{-t} F * S_t F = 1
    std::mt19937 g(43);
    std::uniform_int_distribution<long> deg(1, 3);
    for (int i = 0; i < kCases; ++i) {
        const BundleExpr f = random_bundle(g);
        const long k = deg(g);
        GradedPoly acc = even_ring().zero();
        for (long j = 0; j <= k; ++j) {
            acc += ch(B::lambda(j, f)) * ch(B::sym(k - j, f)) * Rational(j % 2 == 0 ? 1 : -1);
        }
        ASSERT_TRUE(acc.is_zero()) << to_text(f) << " at k=" << k;
    }
}

TEST(BundleAlgebra, RankAdditiveAndMultiplicativeProperty)
{
    std::mt19937 g(47);
    const ClassRing &ring = even_ring();
    for (int i = 0; i < kCases; ++i) {
        const BundleExpr f = random_bundle(g), h = random_bundle(g);
        const GradedPoly rf = rank(f, ring).poly, rh = rank(h, ring).poly;
        ASSERT_EQ(rank(f + h, ring).poly, rf + rh);
        ASSERT_EQ(rank(B::tensor(f, h), ring).poly, rf * rh);
        ASSERT_TRUE(rank(B::tilde(f), ring).poly.is_zero());
        ASSERT_EQ(ch(f).slice(0), rf);
        ASSERT_EQ(ch(B::tensor(f, h)), ch(f) * ch(h));
    }
}

TEST(BundleAlgebra, ExteriorSquareFromAdams)
{
    std::mt19937 g(53);
    for (int i = 0; i < 200; ++i) {
        const BundleExpr f = random_bundle(g);
        const GradedPoly c = ch(f);
        ASSERT_EQ(ch(B::lambda(2, f)), (c * c - adams(c, 2)) * Rational(1, 2));
        ASSERT_EQ(ch(B::sym(2, f)), (c * c + adams(c, 2)) * Rational(1, 2));
    }
}

TEST(BundleAlgebra, BasicCharacters)
{
    const ClassRing &ring = even_ring();
    const GradedPoly N = ring.gen("N");
    EXPECT_EQ(rank(B::tangent(), ring).poly, ring.constant(Rational(11)));
    EXPECT_EQ(rank(B::e_c(), ring).poly, N);
    EXPECT_EQ(rank(B::xi_c(), ring).poly, ring.constant(Rational(2)));
    EXPECT_EQ(rank(B::lambda(2, B::e_c()), ring).poly, (N * N - N) * Rational(1, 2));
    EXPECT_EQ(rank(B::trivial(3, 2), ring).poly, ring.constant(Rational(3)) + N * Rational(2));
    // ch(T_C M) = 4r - 1 + sum_j (2 cos 2z_j - 2) = 11 - 4 t1 + 4/3 t2 - 8/45 t3
    EXPECT_EQ(ch(B::tangent()), ring.constant(Rational(11)) - ring.gen("t1") * Rational(4) + ring.gen("t2") * Rational(4, 3)
                                    - ring.gen("t3") * Rational(8, 45));
    const Pow2Poly d = chern_character(B::delta_e(), ring);
    EXPECT_EQ(d.half_n, 1);
    EXPECT_EQ(d.poly.slice(0), ring.constant(Rational(1)));
    EXPECT_EQ(chern_character(B::tensor(B::delta_e(), B::delta_e()), ring).half_n, 2);
}

TEST(BundleAlgebra, UnsupportedExpressions)
{
    const ClassRing untwisted(2, EModel::odd, false);
    EXPECT_THROW((void)chern_character(B::delta_tm(), untwisted), unsupported_expression_error);
    EXPECT_THROW((void)chern_character(B::xi_c(), untwisted), unsupported_expression_error);
    EXPECT_THROW((void)chern_character(B::lambda(2, B::delta_e()), untwisted), unsupported_expression_error);
    EXPECT_THROW((void)chern_character(B::tilde(B::delta_e()), untwisted), unsupported_expression_error);
    EXPECT_THROW((void)chern_character(B::e_c(), ClassRing(2, EModel::none, false)), unsupported_expression_error);
}

TEST(BundleAlgebra, TextAndSimplification)
{
    EXPECT_TRUE(ch(B::tangent() - B::tangent()).is_zero());
    EXPECT_EQ(to_text(B::tangent() - B::tangent()), "T_C M - T_C M");
    EXPECT_TRUE(B::is_one(B::lambda(0, B::tangent())));
    EXPECT_EQ(to_text(B::zero()), "0");
    EXPECT_EQ(to_text(B::lambda(2, B::tilde(B::e_c()))), "L2(E_C~)");
}

TEST(BundleAlgebra, ThetaBundleExpansionLimits)
{
    EXPECT_THROW((void)expand_theta_bundle(ThetaBundle::theta2, 5), configuration_error);
    EXPECT_THROW((void)parse_theta_bundle("theta9"), configuration_error);
    EXPECT_EQ(parse_theta_bundle(theta_bundle_name(ThetaBundle::q2)), ThetaBundle::q2);
    const BundleQSeries s = expand_theta_bundle(ThetaBundle::theta2, 0);
    ASSERT_EQ(s.coeffs.size(), 1U);
    EXPECT_TRUE(B::is_one(s.coeffs[0]));
}

struct CrossCase {
    std::string id;
    int r;
    EModel model;
};

void PrintTo(const CrossCase &c, std::ostream *os) { *os << c.id << " r=" << c.r << " " << emodel_name(c.model); }

class CrosscheckSweep : public ::testing::TestWithParam<CrossCase>
{
};

TEST_P(CrosscheckSweep, EngineAgrees)
{
    const auto &c = GetParam();
    const CrosscheckResult res = crosscheck(c.id, c.r, c.model);
    EXPECT_TRUE(res.engine_agrees) << c.id << " r=" << c.r;
    for (const auto &k : res.coefficients) {
        EXPECT_TRUE(k.matches) << c.id << " at h^" << k.half_order << ": " << k.difference;
    }
}

std::vector<CrossCase> cross_cases()
{
    std::vector<CrossCase> out;
    for (const auto &id : crosscheck_ids()) {
        for (int r = 2; r <= 4; ++r) {
            out.push_back({id, r, EModel::even});
        }
        out.push_back({id, 3, EModel::odd});
    }
    return out;
}

INSTANTIATE_TEST_SUITE_P(All, CrosscheckSweep, ::testing::ValuesIn(cross_cases()),
                         [](const ::testing::TestParamInfo<CrossCase> &info) {
                             std::string name = info.param.id + "_r" + std::to_string(info.param.r) + "_"
                                                + std::string(emodel_name(info.param.model));
                             std::replace(name.begin(), name.end(), '-', '_');
                             return name;
                         });

TEST(Crosscheck, PublishedForms)
{
    EXPECT_TRUE(crosscheck("theta2-q2", 3).printed_agrees());
    EXPECT_TRUE(crosscheck("theta2-q2-twisted", 3).printed_agrees());
    const CrosscheckResult t1 = crosscheck("theta1", 3);
    EXPECT_TRUE(t1.printed_agrees());
    const bool has_convention =
        std::any_of(t1.printed.begin(), t1.printed.end(), [](const PrintedCheck &p) { return p.convention; });
    EXPECT_TRUE(has_convention);
    // The published q^1 term of the Theta1 (x) Theta_q product omits 2 T~ (x) Delta(E).
    EXPECT_FALSE(crosscheck("theta1-q1", 3).printed_agrees());
    EXPECT_FALSE(crosscheck("theta1-q1-twisted", 3).printed_agrees());
    EXPECT_THROW((void)crosscheck("theta7", 3), configuration_error);
}

} // namespace
