#include <gtest/gtest.h>

#include "oddanom/numeric_theta.hpp"

namespace
{

using namespace oddanom;
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// Theta functions as sums over n in Z, independent of the product formulas.
cplx theta_sum(ThetaFlavor f, cplx v, cplx tau)
{
    cplx acc = 0.0;
    for (int n = -60; n <= 60; ++n) {
        switch (f) {
        case ThetaFlavor::theta: {
            const double m = n + 0.5;
            acc += (n % 2 == 0 ? 1.0 : -1.0) * std::exp(kPi * kI * (tau * m * m + 2.0 * m * v));
            break;
        }
        case ThetaFlavor::theta1: {
            const double m = n + 0.5;
            acc += std::exp(kPi * kI * (tau * m * m + 2.0 * m * v));
            break;
        }
        case ThetaFlavor::theta2:
            acc += (n % 2 == 0 ? 1.0 : -1.0) * std::exp(kPi * kI * (tau * double(n * n) + 2.0 * double(n) * v));
            break;
        case ThetaFlavor::theta3:
            acc += std::exp(kPi * kI * (tau * double(n * n) + 2.0 * double(n) * v));
            break;
        }
    }
    return f == ThetaFlavor::theta ? -kI * acc : acc;
}

TEST(NumericTheta, ProductsMatchSums)
{
    for (const auto &p : default_grid()) {
        for (ThetaFlavor f : {ThetaFlavor::theta, ThetaFlavor::theta1, ThetaFlavor::theta2, ThetaFlavor::theta3}) {
            const cplx want = theta_sum(f, p.v, p.tau);
            const cplx got = theta_value(f, p.v, p.tau);
            EXPECT_LT(std::abs(got - want) / std::max(1.0, std::abs(want)), 1e-12)
                << flavor_name(f) << " at v=" << p.v << " tau=" << p.tau;
        }
    }
}

TEST(NumericTheta, Theta3AtTwoI)
{
    const double want = 1.0 + 2.0 * std::exp(-2.0 * kPi) + 2.0 * std::exp(-8.0 * kPi);
    EXPECT_NEAR(theta_value(ThetaFlavor::theta3, 0.0, 2.0 * kI).real(), want, 1e-14);
    EXPECT_NEAR(want, 1.00373, 5e-6);
}

TEST(NumericTheta, ZeroAndDerivativeAtOrigin)
{
    const cplx tau{0.2, 0.9};
    EXPECT_LT(std::abs(theta_value(ThetaFlavor::theta, 0.0, tau)), 1e-15);
    // theta'(0) = 2 pi eta^3
    const cplx q = std::exp(2.0 * kPi * kI * tau);
    cplx eta3 = std::exp(kPi * kI * tau / 4.0);
    for (int j = 1; j < 400; ++j) {
        eta3 *= std::pow(1.0 - std::pow(q, j), 3);
    }
    EXPECT_LT(std::abs(theta_prime_eval(0.0, tau).value - 2.0 * kPi * eta3), 1e-12);
}

TEST(NumericTheta, DeltaEpsAtSelfDualPoint)
{
    // eps2(-1/tau) = tau^4 eps1(tau) at tau = i.
    EXPECT_LT(std::abs(delta_eps_eval(DeltaEps::eps2, kI) - delta_eps_eval(DeltaEps::eps1, kI)), 1e-13);
}

TEST(NumericTheta, AllLawsOnGrid)
{
    for (const auto &law : law_ids()) {
        const GridReport g = check_law_on_grid(law, default_grid());
        EXPECT_TRUE(g.pass) << law << " residual " << g.max_residual;
        EXPECT_LT(g.max_residual, 1e-9) << law;
        EXPECT_EQ(g.samples, 21);
    }
    EXPECT_EQ(law_ids().size(), 13U);
}

TEST(NumericTheta, ErrorPaths)
{
    EXPECT_THROW((void)theta_value(ThetaFlavor::theta3, 0.0, cplx{0.3, 0.0}), domain_error);
    EXPECT_THROW((void)theta_value(ThetaFlavor::theta3, 0.0, cplx{0.3, -1.0}), domain_error);
    EXPECT_THROW((void)check_transformation("theta4-T", 0.0, kI), configuration_error);
    EXPECT_THROW((void)theta_eval(ThetaFlavor::theta2, 0.1, cplx{0.0, 0.01}, 1e-17, 3), precision_error);
    EXPECT_THROW((void)sample_roots(2, 6, false), configuration_error);
}

struct SCase {
    int r;
    EModel model;
    bool twisted;
};

void PrintTo(const SCase &c, std::ostream *os)
{
    *os << "r=" << c.r << " " << emodel_name(c.model) << (c.twisted ? " twisted" : "");
}

class SRelation : public ::testing::TestWithParam<SCase>
{
};

TEST_P(SRelation, WAtInverseTauMatchesL)
{
    const auto [r, model, twisted] = GetParam();
    const RootSample roots = sample_roots(r, 4, twisted);
    for (cplx tau : {cplx{0.2, 1.3}, cplx{-0.1, 0.8}}) {
        const SRelationCheck c = check_phi_s_relation(r, model, roots, tau);
        EXPECT_TRUE(c.pass) << "r=" << r << " residual " << c.residual;
        EXPECT_LT(c.residual, 1e-9);
    }
}

INSTANTIATE_TEST_SUITE_P(Models, SRelation,
                         ::testing::Values(SCase{1, EModel::odd, false}, SCase{2, EModel::odd, false},
                                           SCase{2, EModel::odd, true}, SCase{2, EModel::even, false},
                                           SCase{1, EModel::even, true}, SCase{2, EModel::none, false}),
                         [](const ::testing::TestParamInfo<SCase> &info) {
                             return "r" + std::to_string(info.param.r) + "_" + std::string(emodel_name(info.param.model))
                                    + (info.param.twisted ? "_twisted" : "");
                         });

TEST(NumericTheta, SymbolicExpansionsAgreeWithProducts)
{
    const AgreementReport rep = symbolic_numeric_agreement();
    EXPECT_LT(rep.max_residual, 1e-8);
    EXPECT_GT(rep.samples, 60);
}

} // namespace
