#include <doctest.h>

#include "aai/fock.hpp"

using namespace aai;

namespace {
const TrapSpec kTrap = TrapSpec::dimensionless();
const CoherentAmplitude kAlphaA = alpha_from_phase_space({0.0, 10.0}, kTrap);
}

TEST_CASE("shifted position power matrix") {
    const double eta = kTrap.eta();
    SUBCASE("bare position is tridiagonal in eta") {
        const Eigen::MatrixXd m = shifted_position_power_matrix(1, 0.0, 4, kTrap);
        CHECK(m(0, 1) == doctest::Approx(eta));
        CHECK(m(1, 2) == doctest::Approx(eta * std::sqrt(2.0)));
        CHECK(m(0, 0) == 0.0);
    }
    SUBCASE("cubic ladder endpoint") {
        const Eigen::MatrixXd m = shifted_position_power_matrix(3, 0.0, 8, kTrap);
        CHECK(m(3, 0) == doctest::Approx(std::sqrt(6.0) * eta * eta * eta).epsilon(1e-14));
        CHECK(m(5, 0) == 0.0); // bandwidth: x^3 raises at most three levels
    }
    SUBCASE("hermitian for real shift") {
        const Eigen::MatrixXd m = shifted_position_power_matrix(4, 1.7, 9, kTrap);
        CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("dimension guard") {
        CHECK_THROWS_AS(shifted_position_power_matrix(3, 0.0, 3, kTrap), DimensionTooSmall);
    }
}

TEST_CASE("second-order mean position against the cubic closed form") {
    const double beta = 0.005, amplitude = 10.0;
    SUBCASE("reference point") {
        const double got = second_order_mean_position(kAlphaA, {3, beta}, kTrap, M_PI);
        const double want = cubic_x2_closed_form(beta, amplitude, kTrap, M_PI);
        CHECK(want == doctest::Approx(0.30041).epsilon(2e-5));
        CHECK(got == doctest::Approx(want).epsilon(1e-8));
    }
    SUBCASE("several times") {
        for (double wt : {M_PI / 4.0, M_PI / 2.0, 1.5 * M_PI}) {
            const double got = second_order_mean_position(kAlphaA, {3, beta}, kTrap, wt);
            const double want = cubic_x2_closed_form(beta, amplitude, kTrap, wt);
            CHECK(got == doctest::Approx(want).epsilon(1e-7));
        }
    }
    SUBCASE("vanishes without perturbation") {
        CHECK(second_order_mean_position(kAlphaA, {3, 0.0}, kTrap, M_PI) == 0.0);
    }
    SUBCASE("scales quadratically in beta") {
        const double x2a = second_order_mean_position(kAlphaA, {3, 0.001}, kTrap, 2.0);
        const double x2b = second_order_mean_position(kAlphaA, {3, 0.002}, kTrap, 2.0);
        CHECK(x2b / x2a == doctest::Approx(4.0).epsilon(1e-10));
    }
    SUBCASE("truncation at 2 lambda + 1 is already exact") {
        const SecondOrderResult small =
            second_order_mean_position_full(kAlphaA, {3, beta}, kTrap, 2.0, 24, 7);
        const SecondOrderResult large =
            second_order_mean_position_full(kAlphaA, {3, beta}, kTrap, 2.0, 24, 10);
        CHECK(small.x2 == doctest::Approx(large.x2).epsilon(1e-13));
    }
    SUBCASE("unitarity residual vanishes") {
        const SecondOrderResult res =
            second_order_mean_position_full(kAlphaA, {3, beta}, kTrap, M_PI);
        CHECK(std::abs(res.unitarity_residual) < 1e-10);
    }
}
