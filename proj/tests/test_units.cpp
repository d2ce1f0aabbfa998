#include <doctest.h>

#include <random>

#include "aai/units.hpp"

using namespace aai;

TEST_CASE("trap length scales satisfy their definitions exactly") {
    const TrapSpec trap(2.5, 0.7);
    CHECK(trap.ell() * trap.ell() * trap.mass * trap.omega == doctest::Approx(kHbar).epsilon(1e-15));
    CHECK(trap.eta() == trap.ell() / std::sqrt(2.0));
    CHECK(trap.internal_energy == 0.0);
    CHECK_THROWS_AS(TrapSpec(-1.0, 1.0), Error);
}

TEST_CASE("coherent amplitude map") {
    const TrapSpec trap = TrapSpec::dimensionless();
    SUBCASE("velocity-only point") {
        const CoherentAmplitude a = alpha_from_phase_space({0.0, 10.0}, trap);
        CHECK(a.alpha.real() == 0.0);
        CHECK(a.alpha.imag() == doctest::Approx(10.0 / std::sqrt(2.0)).epsilon(1e-15));
    }
    SUBCASE("position-only point") {
        const CoherentAmplitude a = alpha_from_phase_space({trap.ell(), 0.0}, trap);
        CHECK(a.alpha.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(a.alpha.imag() == 0.0);
    }
    SUBCASE("origin") {
        const PhaseSpacePoint p = phase_space_from_alpha({Complex(0.0, 0.0)}, trap);
        CHECK(p.x == 0.0);
        CHECK(p.v == 0.0);
    }
}

TEST_CASE("phase-space round trip is the identity") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> val(-20.0, 20.0);
    for (const TrapSpec& trap : {TrapSpec::dimensionless(), TrapSpec(3.0, 0.25)}) {
        for (int i = 0; i < 200; ++i) {
            const PhaseSpacePoint p{val(rng), val(rng)};
            const PhaseSpacePoint q = phase_space_from_alpha(alpha_from_phase_space(p, trap), trap);
            const double scale = std::max({std::abs(p.x), std::abs(p.v), 1e-6});
            CHECK(std::abs(q.x - p.x) <= 1e-14 * scale);
            CHECK(std::abs(q.v - p.v) <= 1e-14 * scale * trap.omega);
        }
    }
}

TEST_CASE("kick shifts the amplitude by i kappa ell / sqrt(2)") {
    const TrapSpec trap(2.0, 3.0);
    const CoherentAmplitude a0 = alpha_from_phase_space({0.4, -0.9}, trap);
    const double kappa = 5.0;
    const PhaseSpacePoint p = phase_space_from_alpha(kicked(a0, kappa, trap), trap);
    CHECK(p.x == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(p.v == doctest::Approx(-0.9 + kHbar * kappa / trap.mass).epsilon(1e-14));
}
