#include <doctest.h>

#include <random>

#include "aai/classical.hpp"
#include "aai/errors.hpp"

using namespace aai;

namespace {
const TrapSpec kTrap = TrapSpec::dimensionless();
const double kA = 10.0;
const double kBeta = 0.005;
const PowerLawPerturbation kCubic{3, kBeta};

double cubic_x1(double t, double amplitude, double beta, const TrapSpec& trap) {
    const double w = trap.omega;
    return -beta * amplitude * amplitude / (2.0 * trap.mass * w * w) *
           (3.0 - 4.0 * std::cos(w * t) + std::cos(2.0 * w * t));
}
} // namespace

TEST_CASE("unperturbed trajectory") {
    SUBCASE("quarter period turns velocity into displacement") {
        const ClassicalTrajectory traj = unperturbed_trajectory({0.0, 10.0}, kTrap);
        CHECK(traj.x(M_PI / 2.0) == doctest::Approx(10.0).epsilon(1e-14));
        CHECK(std::abs(traj.v(M_PI / 2.0)) < 1e-13);
    }
    SUBCASE("pure velocity start is A sin(w t)") {
        const ClassicalTrajectory traj = unperturbed_trajectory({0.0, kA}, kTrap);
        for (double t : {0.3, 1.1, 2.9, 5.0})
            CHECK(traj.x(t) == doctest::Approx(kA * std::sin(t)).epsilon(1e-14));
    }
    SUBCASE("full period returns the start point") {
        const ClassicalTrajectory traj = unperturbed_trajectory({3.0, 0.0}, kTrap);
        CHECK(traj.x(2.0 * M_PI) == doctest::Approx(3.0).epsilon(1e-13));
        CHECK(std::abs(traj.v(2.0 * M_PI)) < 1e-12);
    }
    SUBCASE("x0 satisfies the free oscillator equation (finite differences)") {
        const ClassicalTrajectory traj = unperturbed_trajectory({1.5, -2.0}, kTrap);
        const double h = 1e-5;
        for (double t : {0.7, 2.2, 4.4}) {
            const double acc =
                (traj.x(t + h) - 2.0 * traj.x(t) + traj.x(t - h)) / (h * h);
            CHECK(acc == doctest::Approx(-traj.x(t)).epsilon(1e-5));
        }
    }
}

TEST_CASE("first-order cubic trajectory matches the closed form") {
    const ClassicalTrajectory traj = first_order_trajectory({0.0, kA}, kCubic, kTrap);
    SUBCASE("general t") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> time(0.0, 4.0 * M_PI);
        for (int i = 0; i < 50; ++i) {
            const double t = time(rng);
            CHECK(traj.x1.evaluate_real(t) ==
                  doctest::Approx(cubic_x1(t, kA, kBeta, kTrap)).epsilon(1e-12));
        }
    }
    SUBCASE("half period values") {
        CHECK(traj.x1.evaluate_real(M_PI) == doctest::Approx(-2.0).epsilon(1e-13));
        CHECK(std::abs(traj.v1.evaluate_real(M_PI)) < 1e-13);
    }
    SUBCASE("initial conditions hold exactly") {
        CHECK(std::abs(traj.x1.evaluate_real(0.0)) < 1e-15);
        CHECK(std::abs(traj.v1.evaluate_real(0.0)) < 1e-15);
    }
    SUBCASE("no forcing means no correction") {
        const ClassicalTrajectory free = first_order_trajectory({0.0, kA}, {3, 0.0}, kTrap);
        CHECK(free.x1.empty());
    }
}

TEST_CASE("first-order trajectory is unit-system independent") {
    const TrapSpec trap(2.0, 3.0);
    const double amplitude = 10.0 * trap.ell();
    const double beta = 0.005 * kHbar * trap.omega / std::pow(trap.ell(), 3);
    const ClassicalTrajectory traj =
        first_order_trajectory({0.0, amplitude * trap.omega}, {3, beta}, trap);
    const ClassicalTrajectory ref = first_order_trajectory({0.0, kA}, kCubic, kTrap);
    for (double wt : {0.5, 1.5, 3.0}) {
        CHECK(traj.x(wt / trap.omega) / trap.ell() ==
              doctest::Approx(ref.x(wt)).epsilon(1e-12));
        CHECK(traj.v(wt / trap.omega) / (trap.omega * trap.ell()) ==
              doctest::Approx(ref.v(wt)).epsilon(1e-12));
    }
}

TEST_CASE("exact trajectory") {
    SUBCASE("harmonic limit reproduces A sin over one period") {
        const SampledPath path =
            exact_trajectory({0.0, kA}, PowerLawPerturbation{3, 0.0}, kTrap, 2.0 * M_PI,
                             default_rk4_dt(kTrap));
        for (Eigen::Index i = 0; i < path.t.size(); i += 50)
            CHECK(std::abs(path.x[i] - kA * std::sin(path.t[i])) < 1e-10);
    }
    SUBCASE("energy drift stays below 1e-8 over ten periods") {
        const SampledPath path = exact_trajectory({0.0, kA}, kCubic, kTrap, 20.0 * M_PI,
                                                  default_rk4_dt(kTrap));
        CHECK(path.energy_drift < 1e-8);
    }
    SUBCASE("fourth-order convergence under step halving") {
        auto final_x = [&](double dt) {
            const SampledPath p = exact_trajectory({0.0, kA}, kCubic, kTrap, M_PI, dt);
            return p.x[p.x.size() - 1];
        };
        const double coarse = final_x(2.0 * M_PI / 200.0);
        const double mid = final_x(2.0 * M_PI / 400.0);
        const double fine = final_x(2.0 * M_PI / 800.0);
        const double ratio = (coarse - mid) / (mid - fine);
        CHECK(ratio == doctest::Approx(16.0).epsilon(0.25));
    }
    SUBCASE("an oversized step is rejected post-hoc") {
        CHECK_THROWS_AS(
            exact_trajectory({0.0, kA}, PowerLawPerturbation{3, 0.02}, kTrap, 20.0 * M_PI, 0.5),
            StepTooLarge);
    }
}
