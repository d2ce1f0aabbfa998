#include <doctest.h>

#include "aai/config.hpp"

using namespace aai;

TEST_CASE("minimal config fills documented defaults") {
    const RunConfig cfg = parse_config("lambda = 3\nbeta = 0.005\namplitude = 10\nt = pi\n");
    CHECK(cfg.lambda == 3);
    CHECK(cfg.beta == 0.005);
    CHECK(cfg.t == doctest::Approx(M_PI));
    CHECK(cfg.dimensionless);
    CHECK(cfg.trap.omega == 1.0);
    CHECK(cfg.samples == 201);
    CHECK(cfg.quad_order == 24);
    CHECK(cfg.methods.size() == 2);

    const InterferometerSequence seq = cfg.sequence();
    CHECK(seq.kappa_ai == doctest::Approx(10.0));
    CHECK(seq.kappa_bi == doctest::Approx(-10.0));
    CHECK(seq.kappa_af == doctest::Approx(10.0));
    CHECK(seq.kappa_bf == doctest::Approx(-10.0));
    CHECK(seq.hold_t == doctest::Approx(M_PI));
    CHECK(cfg.trajectory_initial().v == doctest::Approx(10.0));
}

TEST_CASE("strict keys: typos are hard errors naming the line") {
    try {
        parse_config("lamda = 3\nbeta = 0.005\nt = pi\n");
        FAIL("expected UnknownKey");
    } catch (const UnknownKey& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        CHECK(std::string(e.what()).find("lamda") != std::string::npos);
    }
}

TEST_CASE("type mismatches are rejected") {
    CHECK_THROWS_AS(parse_config("lambda = 3\nbeta = abc\nt = pi\n"), TypeMismatch);
    CHECK_THROWS_AS(parse_config("lambda = 3.5\nbeta = 1\nt = pi\n"), TypeMismatch);
    CHECK_THROWS_AS(parse_config("lambda = 3\nbeta = 1\nt = pi\nforce_oracle = maybe\n"),
                    TypeMismatch);
}

TEST_CASE("required keys") {
    CHECK_THROWS_AS(parse_config("beta = 0.005\nt = pi\n"), MissingRequired);
    CHECK_THROWS_AS(parse_config("lambda = 3\nt = pi\n"), MissingRequired);
    CHECK_THROWS_AS(parse_config("lambda = 3\nbeta = 0.005\n"), MissingRequired);
}

TEST_CASE("pi-multiples parse in times and phases") {
    const RunConfig cfg =
        parse_config("lambda = 3\nbeta = 1\nt = 2pi\nxi = 0.5pi\n");
    CHECK(cfg.t == doctest::Approx(2.0 * M_PI));
    CHECK(cfg.xi == doctest::Approx(0.5 * M_PI));
    const RunConfig neg = parse_config("lambda = 3\nbeta = 1\nt = pi\nxi = -pi\n");
    CHECK(neg.xi == doctest::Approx(-M_PI));
}

TEST_CASE("comments, blanks, and duplicates") {
    const RunConfig cfg = parse_config(
        "# a comment\n\nlambda = 3  # trailing\nbeta = 0.005\nt = pi\n");
    CHECK(cfg.lambda == 3);
    CHECK_THROWS_AS(parse_config("lambda = 3\nlambda = 4\nbeta = 1\nt = pi\n"), ConfigError);
}

TEST_CASE("methods list and overrides") {
    const RunConfig cfg = parse_config(
        "lambda = 3\nbeta = 0.005\nt = pi\nmethods = sca-perturbative, oracle\nthreads = 2\n");
    REQUIRE(cfg.methods.size() == 2);
    CHECK(cfg.methods[1] == "oracle");
    CHECK(cfg.threads == 2);
}

TEST_CASE("explicit kicks take precedence over the amplitude shorthand") {
    const RunConfig cfg = parse_config(
        "lambda = 3\nbeta = 0.005\nt = pi\namplitude = 10\nkappa_ai = 4\nkappa_bi = -4\n"
        "kappa_af = 4\nkappa_bf = -4\n");
    CHECK(cfg.sequence().kappa_ai == 4.0);
}

TEST_CASE("dimensionless mode rejects physical trap keys") {
    CHECK_THROWS_AS(parse_config("lambda = 3\nbeta = 1\nt = pi\nomega = 2\n"), ConfigError);
    const RunConfig cfg =
        parse_config("lambda = 3\nbeta = 1\nt = 1\ndimensionless = false\nomega = 2\nmass = 3\n");
    CHECK(cfg.trap.omega == 2.0);
    CHECK(cfg.trap.mass == 3.0);
    // beta is read in hbar*omega/ell^lambda
    CHECK(cfg.perturbation().beta ==
          doctest::Approx(kHbar * 2.0 / std::pow(cfg.trap.ell(), 3)));
}

TEST_CASE("sequence respects explicit initial conditions") {
    const RunConfig cfg =
        parse_config("lambda = 3\nbeta = 0.005\nt = pi\nx_i = 0.5\nv_i = -1\namplitude = 10\n");
    CHECK(cfg.sequence().initial.x == 0.5);
    CHECK(cfg.sequence().initial.v == -1.0);
    CHECK(cfg.trajectory_initial().v == -1.0); // explicit v_i beats the shorthand
}
