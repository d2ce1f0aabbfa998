#pragma once

#include <Eigen/Dense>

#include "aai/potential.hpp"
#include "aai/trig_poly.hpp"
#include "aai/units.hpp"

namespace aai {

/// Classical trajectory split into perturbative orders, x(t) = x0(t) + x1(t),
/// with each order held in closed TrigPoly form. x0 solves the free oscillator
/// with the full initial conditions; x1 solves the linearized forced equation
/// with x1(0) = v1(0) = 0.
struct ClassicalTrajectory {
    TrigPoly x0, v0, x1, v1;
    TrapSpec trap;

    double x(double t) const { return x0.evaluate_real(t) + x1.evaluate_real(t); }
    double v(double t) const { return v0.evaluate_real(t) + v1.evaluate_real(t); }
};

ClassicalTrajectory unperturbed_trajectory(const PhaseSpacePoint& init, const TrapSpec& trap);

ClassicalTrajectory first_order_trajectory(const PhaseSpacePoint& init,
                                           const MonomialPotential& pert,
                                           const TrapSpec& trap);

inline ClassicalTrajectory first_order_trajectory(const PhaseSpacePoint& init,
                                                  const PowerLawPerturbation& pert,
                                                  const TrapSpec& trap) {
    return first_order_trajectory(init, MonomialPotential::from(pert), trap);
}

/// Fixed-step RK4 samples of the exact anharmonic motion.
struct SampledPath {
    Eigen::VectorXd t, x, v;
    double dt = 0.0;
    double energy_drift = 0.0; // max relative drift of E = mv^2/2 + U(x)
};

inline double default_rk4_dt(const TrapSpec& trap) { return 2.0 * M_PI / (2000.0 * trap.omega); }

SampledPath exact_trajectory(const PhaseSpacePoint& init, const MonomialPotential& pert,
                             const TrapSpec& trap, double t_max, double dt);

inline SampledPath exact_trajectory(const PhaseSpacePoint& init, const PowerLawPerturbation& pert,
                                    const TrapSpec& trap, double t_max, double dt) {
    return exact_trajectory(init, MonomialPotential::from(pert), trap, t_max, dt);
}

/// (1/hbar) Int_0^t [L - E_int] dt' along an RK4 path, L = m v^2/2 - U(x),
/// by composite Simpson on the stored samples.
double action_phase(const SampledPath& path, const MonomialPotential& pert, const TrapSpec& trap);

} // namespace aai
