#pragma once

#include <string>
#include <vector>

#include "aai/interferometer.hpp"
#include "aai/units.hpp"

namespace aai {

/// Flat `key = value` configuration, '#' comments, strict keys (any unknown
/// key is a hard error naming the line). Times and phases accept multiples
/// of pi ("pi", "2pi", "0.5pi").
///
/// In dimensionless mode (the default) hbar = m = omega = 1 and lengths are
/// in ell; otherwise `mass` and `omega` set the trap and inputs are physical
/// (hbar = 1 units).
struct RunConfig {
    TrapSpec trap;
    bool dimensionless = true;

    int lambda = 0;     // required
    double beta = 0.0;  // required
    double t = 0.0;     // required

    double x_i = 0.0, v_i = 0.0;
    bool v_i_set = false;
    double amplitude = 0.0;
    bool amplitude_set = false;
    double kappa_ai = 0.0, kappa_bi = 0.0, kappa_af = 0.0, kappa_bf = 0.0;
    bool kappas_set = false;
    double xi = 0.0;

    std::vector<std::string> methods = {"sca-perturbative", "quantum-first-order"};

    double dx = -1.0, dt = -1.0, padding = -1.0; // grid overrides
    int quad_order = 24;
    int samples = 201;
    std::string out;
    int threads = 0; // 0 = all logical cores
    bool force_oracle = false;

    /// Initial point for single-packet trajectory runs: `amplitude` is the
    /// v_i = A omega shorthand unless v_i was given explicitly.
    PhaseSpacePoint trajectory_initial() const;

    /// Interferometer sequence: `amplitude` is the symmetric double-Bragg
    /// shorthand unless explicit kicks were given.
    InterferometerSequence sequence() const;

    /// beta is configured in hbar*omega/ell^lambda (the trap's natural units).
    PowerLawPerturbation perturbation() const {
        return {lambda, beta * kHbar * trap.omega / std::pow(trap.ell(), lambda)};
    }
    RunOptions run_options() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Worker count: config value (0 = hardware), capped by the AAI_THREADS
/// environment variable when set.
int effective_threads(int config_threads);

} // namespace aai
