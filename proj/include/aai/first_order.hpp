#pragma once

#include <vector>

#include "aai/gc_states.hpp"
#include "aai/potential.hpp"
#include "aai/trig_poly.hpp"
#include "aai/units.hpp"

namespace aai {

/// First-order perturbed state: unperturbed amplitude alpha(t) = alpha_i e^{-i w t}
/// plus correction coefficients D_n on |alpha(t), n>, n = 0..lambda. The global
/// factor e^{-i omega t / 2} is tracked separately from the D_n (it cancels in
/// every interferometer assembly) and is never folded into them.
struct GCFirstOrderState {
    CoherentAmplitude alpha_i;
    CoherentAmplitude alpha_t;
    double t = 0.0;
    std::vector<Complex> D; // index n, size lambda+1
    PowerLawPerturbation pert;
    TrapSpec trap;

    Complex global_phase() const { return std::exp(Complex(0.0, -0.5 * trap.omega * t)); }
};

/// The coefficients D_n(t) as closed-form TrigPoly functions of t,
/// D_n = -(i beta/hbar) e^{-i n w t} Int_0^t e^{i n w t1} f_n(x_c(t1)) dt1,
/// with the integral done analytically in the exponential basis. No
/// quadrature parameter exists anywhere in this path.
struct FirstOrderPolys {
    std::vector<TrigPoly> D; // index n, size lambda+1
    TrigPoly x_c;            // unperturbed center
    TrigPoly x_bar;          // x_c + sqrt(2) ell Re D_1
    TrigPoly v_bar;          // d x_bar / dt
};

FirstOrderPolys first_order_coeff_polys(const CoherentAmplitude& alpha_i,
                                        const PowerLawPerturbation& pert, const TrapSpec& trap);

GCFirstOrderState first_order_coeffs(const CoherentAmplitude& alpha_i,
                                     const PowerLawPerturbation& pert, const TrapSpec& trap,
                                     double t);

/// Transcription of the appendix closed forms D_{lambda n} for lambda in
/// {3..6}, n in {0,1}, in dimensionless variables xt = x_c(0)/ell,
/// vt = v_c(0)/(omega ell). Serves as the golden oracle for the engine.
Complex closed_form_D_reference(int lambda, int n, double xt, double vt, double omega_t,
                                double beta_tilde);

struct MeanPhaseSpace {
    double x = 0.0;
    double v = 0.0;
    CoherentAmplitude alpha_bar;
};

/// x_bar = x_c + sqrt(2) ell Re D_1, v_bar = v_c + sqrt(2) ell omega Im D_1,
/// alpha_bar = alpha + D_1.
MeanPhaseSpace mean_phase_space(const GCFirstOrderState& state);

/// Between stages of a multi-pulse sequence the perturbed state is replaced
/// by the displaced ground state |alpha_bar, 0>, accurate at first order.
inline GCState stage_replace(const GCFirstOrderState& state) {
    return {mean_phase_space(state).alpha_bar, 0};
}

struct CentralPhase {
    double phi_bar = 0.0;  // (m/2hbar)(x0 v0 - x_i v_i + 2 x1 v0) + sum_even h_n Im D_n
    double phi_prop = 0.0; // (m/2hbar)(x0 v0 - x_i v_i + 2 x1 v0) + Im D_0
};

/// Central phase of the perturbed packet, referenced to the unperturbed
/// central-phase convention (the -omega t/2 zero-point advance and the
/// initial m x_i v_i / 2 hbar are not included; add them when comparing with
/// a lab-frame wave function).
CentralPhase central_phase_perturbed(const GCFirstOrderState& state);

/// Wave function of the first-order state (includes the global e^{-i w t/2}).
Complex first_order_wavefunction(const GCFirstOrderState& state, double x);

} // namespace aai
