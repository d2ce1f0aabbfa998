#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "aai/potential.hpp"
#include "aai/units.hpp"

namespace aai {

/// Uniform spatial grid with hard-wall (Dirichlet) boundaries just outside
/// the sampled nodes. dt satisfies dt*(hbar/(m dx^2) + V_max/hbar) <= 0.5;
/// it is chosen from the tighter 5-point kinetic bound with a 0.5 safety
/// factor, so the inequality holds with margin.
struct GridSpec {
    double x_min = -20.0;
    double x_max = 20.0;
    int n_points = 2048;
    double dt = 1e-4;

    double dx() const { return (x_max - x_min) / double(n_points - 1); }
    double x(int j) const { return x_min + j * dx(); }

    double stability_product(double v_max, const TrapSpec& trap) const {
        return dt * (kHbar / (trap.mass * dx() * dx()) + v_max / kHbar);
    }
};

/// Complex amplitudes on the grid, stored synchronous (Re and Im at a common
/// time). The evolver staggers Im to t +- dt/2 internally while stepping and
/// de-staggers on exit; norm conservation is monitored on the staggered
/// estimator sum(R^2 + I+ I-) dx, which the scheme conserves to roundoff.
struct GridWavefunction {
    GridSpec spec;
    Eigen::ArrayXd re;
    Eigen::ArrayXd im;

    Eigen::ArrayXcd psi() const {
        Eigen::ArrayXcd out(re.size());
        out.real() = re;
        out.imag() = im;
        return out;
    }
    double norm() const { return ((re * re + im * im).sum()) * spec.dx(); }
};

struct GridObservables {
    double norm = 0.0;
    double x_mean = 0.0;
    double p_mean = 0.0;
    double energy = 0.0;
    double force_mean = 0.0; // <dU/dx>, for Ehrenfest checks
};

struct EvolveReport {
    long steps = 0;
    double dt = 0.0;
    double norm_drift = 0.0;       // relative, staggered estimator, start vs end
    double max_edge_density = 0.0; // max |psi|^2 seen on the outer 3 nodes per side
};

struct EvolveOptions {
    long observe_every = 0; // steps between observer calls; 0 disables
    std::function<void(double t, const GridWavefunction&)> observer;
};

/// Explicit staggered-time (Visscher) integrator for the 1D Schroedinger
/// equation in the trap potential U(x) = m w^2 x^2 / 2 + V(x).
class SchrodingerSolver {
public:
    SchrodingerSolver(const TrapSpec& trap, const MonomialPotential& pert, const GridSpec& spec);

    /// Default grid for motion of amplitude `a`: half-width a + padding,
    /// dx = ell/128 (at least 2048 nodes), dt from the stability bound.
    static GridSpec default_grid(double amplitude, const TrapSpec& trap,
                                 const MonomialPotential& pert, double dx = -1.0,
                                 double padding = -1.0, double dt = -1.0);

    const GridSpec& spec() const { return spec_; }
    const TrapSpec& trap() const { return trap_; }
    double potential_max() const { return v_max_; }

    /// psi(x) = pi^{-1/4} ell^{-1/2} exp(-(x-x_c)^2/(2 ell^2) + i m v_c (x-x_c)/hbar).
    GridWavefunction gaussian_packet(const PhaseSpacePoint& p) const;

    /// Multiplication by e^{i kappa x}. Throws AliasRisk for kappa dx > pi/4.
    GridWavefunction kicked(const GridWavefunction& psi, double kappa) const;

    /// Evolve in place for duration t (rounded to a whole number of steps of
    /// size <= spec.dt). Throws UnstableStep / BoundaryLeak.
    EvolveReport evolve(GridWavefunction& psi, double t, const EvolveOptions& opts = {}) const;

    GridObservables observables(const GridWavefunction& psi) const;

    /// Wave function value at arbitrary x by linear interpolation.
    Complex value_at(const GridWavefunction& psi, double x) const;

private:
    void apply_h(const Eigen::ArrayXd& f, Eigen::ArrayXd& out) const;

    TrapSpec trap_;
    MonomialPotential pert_;
    GridSpec spec_;
    Eigen::ArrayXd u_;      // potential on the grid
    Eigen::ArrayXd du_;     // dU/dx on the grid
    double v_max_ = 0.0;
};

Complex grid_overlap(const GridWavefunction& a, const GridWavefunction& b);

/// arg <psi_a | psi_b>; PhaseUndefined when the normalized overlap magnitude
/// is below 1e-6.
double overlap_phase(const GridWavefunction& a, const GridWavefunction& b);

/// Shift `raw` by multiples of 2 pi into the branch nearest `reference`.
double nearest_branch(double raw, double reference);

/// Binary snapshot: 32-byte header (magic "AAIWF1\0\0", int64 n_points,
/// double x_min, double dx, little-endian), then n_points interleaved
/// (Re, Im) float64 pairs.
void write_snapshot(const std::string& path, const GridWavefunction& psi);
GridWavefunction read_snapshot(const std::string& path);

} // namespace aai
