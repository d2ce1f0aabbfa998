#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "aai/classical.hpp"
#include "aai/first_order.hpp"
#include "aai/grid.hpp"
#include "aai/potential.hpp"
#include "aai/units.hpp"

namespace aai {

/// One experiment: split kicks, a hold, optional further (kick-pair, hold)
/// stages, recombination kicks, and the recombination laser phase
/// xi = xi_b - xi_a (applied once, at the final pulse).
struct InterferometerSequence {
    PhaseSpacePoint initial;
    double kappa_ai = 0.0, kappa_bi = 0.0;
    double hold_t = 0.0;
    struct Stage {
        double kappa_a = 0.0, kappa_b = 0.0;
        double hold = 0.0;
    };
    std::vector<Stage> extra_stages;
    double kappa_af = 0.0, kappa_bf = 0.0;
    double xi = 0.0;

    /// Symmetric double-Bragg sequence: kicks +-m omega A/hbar, start at rest.
    static InterferometerSequence symmetric(double amplitude, double hold_t, double xi,
                                            const TrapSpec& trap) {
        InterferometerSequence s;
        const double kappa = trap.mass * trap.omega * amplitude / kHbar;
        s.kappa_ai = kappa;
        s.kappa_bi = -kappa;
        s.kappa_af = kappa;
        s.kappa_bf = -kappa;
        s.hold_t = hold_t;
        s.xi = xi;
        return s;
    }
};

enum class Method { ScaPerturbative, ScaExact, QuantumFirstOrder, Oracle, ScaVeff };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Pieces of the first-order phase theta1, kept separate so the cancellation
/// structure of specific sequences can be inspected.
struct Theta1Terms {
    double v0_diff = 0.0;  // (m/2hbar)(v_b0 - v_a0)(x_a1 + x_b1)
    double v1_cross = 0.0; // -(m/2hbar)(v_a1 + v_b1)(x_b0 - x_a0)
    double kick = 0.0;     // (1/2)(kappa_bf - kappa_af)(x_a1 + x_b1)
    double integral = 0.0; // -(1/hbar) Int [<V>_b - <V>_a] dt
    double sum() const { return v0_diff + v1_cross + kick + integral; }
};

struct PhaseReport {
    Method method = Method::ScaPerturbative;
    double theta_total = 0.0; // theta0 + theta1 for perturbative methods
    double theta0 = 0.0;
    double theta1 = 0.0;
    Theta1Terms terms;
    // prop/laser/sep breakdown from the unlinearized per-arm expressions;
    // sums to theta_total up to O(beta^2). NaN where not defined (oracle
    // reports only the total).
    double phi_prop = NAN, phi_laser = NAN, phi_sep = NAN;
    double packet_gap = 0.0; // |alpha_af - alpha_bf|
    bool gap_warning = false;
    double visibility = 1.0;
    double population = 0.0; // (1 + V cos theta)/2
};

struct RunOptions {
    double grid_dx = -1.0;      // oracle overrides; negative = defaults
    double grid_dt = -1.0;
    double grid_padding = -1.0;
    int quad_order = 24;        // fock-second-order only
    bool force_oracle = false;  // allow oracle beyond 40 ell amplitude
};

PhaseReport run_sequence(const InterferometerSequence& seq, const PowerLawPerturbation& pert,
                         const TrapSpec& trap, Method method, const RunOptions& opts = {});

/// Cubic potential averaged over the ground-state Gaussian:
/// V_eff(x) = beta (x^3 + (3/2) ell^2 x). Only lambda = 3 admits this
/// replacement.
MonomialPotential effective_potential_cubic(const PowerLawPerturbation& pert,
                                            const TrapSpec& trap);

/// Per-arm trajectory/phase providers share one assembly routine; these are
/// its inputs, evaluated at the end of the (single) hold.
struct ArmInput {
    double x0 = 0.0, v0 = 0.0; // zeroth order at t
    double x1 = 0.0, v1 = 0.0; // first order at t
    double int_v = 0.0;        // Int_0^t of the V-expectation along the zeroth-order path
};

struct AssemblyInput {
    PhaseSpacePoint initial;
    double kappa_ai = 0.0, kappa_bi = 0.0;
    double kappa_af = 0.0, kappa_bf = 0.0;
    double xi = 0.0;
    ArmInput a, b;
};

/// The common theta assembly: identical code evaluates the semi-classical
/// and quantum phase formulas, differing only in which trajectory and
/// potential expectations are fed in.
PhaseReport assemble_theta(const AssemblyInput& in, const TrapSpec& trap, Method method);

/// Oracle arm wavefunctions after all kicks (xi not included).
struct OracleArms {
    GridWavefunction a, b;
    GridSpec spec;
};

OracleArms oracle_final_states(const InterferometerSequence& seq,
                               const PowerLawPerturbation& pert, const TrapSpec& trap,
                               const RunOptions& opts = {});

/// Report from already-evolved arm states. theta is the continuity branch of
/// arg<psi_a|psi_b> + xi nearest the quantum-first-order prediction.
PhaseReport oracle_phase_report(const OracleArms& arms, const InterferometerSequence& seq,
                                const PowerLawPerturbation& pert, const TrapSpec& trap);

} // namespace aai
