#pragma once

#include <cmath>
#include <complex>

#include "aai/errors.hpp"

namespace aai {

using Complex = std::complex<double>;

inline constexpr double kHbar = 1.0; // unit system: hbar = 1 throughout

/// Harmonic trap parameters. Fixes the unit system of every calculation:
/// lengths scale with the oscillator length ell = sqrt(hbar/(m*omega)),
/// velocities with omega*ell, energies with hbar*omega. The internal atomic
/// state contributes no energy (internal_energy = 0).
struct TrapSpec {
    double mass = 1.0;
    double omega = 1.0;
    double internal_energy = 0.0;

    TrapSpec() = default;
    TrapSpec(double m, double w) : mass(m), omega(w) {
        if (!(m > 0.0) || !(w > 0.0))
            throw Error("TrapSpec: mass and omega must be positive");
    }

    static TrapSpec dimensionless() { return TrapSpec(1.0, 1.0); }

    double ell() const { return std::sqrt(kHbar / (mass * omega)); }
    double eta() const { return ell() / std::sqrt(2.0); }

    // conversions to/from trap units (x in ell, v in omega*ell, t in 1/omega)
    double x_tilde(double x) const { return x / ell(); }
    double v_tilde(double v) const { return v / (omega * ell()); }
    double t_tilde(double t) const { return omega * t; }
    double x_phys(double xt) const { return xt * ell(); }
    double v_phys(double vt) const { return vt * omega * ell(); }
    double t_phys(double tt) const { return tt / omega; }
    /// beta (units hbar*omega/ell^lambda) -> dimensionless beta~
    double beta_tilde(double beta, int lambda) const {
        return beta * std::pow(ell(), lambda) / (kHbar * omega);
    }
};

struct PhaseSpacePoint {
    double x = 0.0;
    double v = 0.0;
};

/// Dimensionless coherent amplitude alpha = (x + i v/omega) / (sqrt(2) ell).
struct CoherentAmplitude {
    Complex alpha{0.0, 0.0};
};

inline CoherentAmplitude alpha_from_phase_space(const PhaseSpacePoint& p, const TrapSpec& trap) {
    const double s = std::sqrt(2.0) * trap.ell();
    return {Complex(p.x / s, p.v / (trap.omega * s))};
}

inline PhaseSpacePoint phase_space_from_alpha(const CoherentAmplitude& a, const TrapSpec& trap) {
    const double s = std::sqrt(2.0) * trap.ell();
    return {s * a.alpha.real(), s * trap.omega * a.alpha.imag()};
}

/// Laser kick hbar*kappa: alpha -> alpha + i*kappa*ell/sqrt(2).
inline CoherentAmplitude kicked(const CoherentAmplitude& a, double kappa, const TrapSpec& trap) {
    return {a.alpha + Complex(0.0, kappa * trap.ell() / std::sqrt(2.0))};
}

/// Free harmonic evolution of the amplitude over time t: alpha*exp(-i omega t).
inline CoherentAmplitude evolved(const CoherentAmplitude& a, double t, const TrapSpec& trap) {
    return {a.alpha * std::exp(Complex(0.0, -trap.omega * t))};
}

} // namespace aai
