#include "aai/classical.hpp"

#include <cmath>

#include "aai/errors.hpp"
#include "aai/quadrature.hpp"

namespace aai {

ClassicalTrajectory unperturbed_trajectory(const PhaseSpacePoint& init, const TrapSpec& trap) {
    ClassicalTrajectory traj;
    traj.trap = trap;
    traj.x0 = classical_center(init, trap);
    traj.v0 = traj.x0.derivative();
    traj.x1 = TrigPoly(trap.omega);
    traj.v1 = TrigPoly(trap.omega);
    return traj;
}

ClassicalTrajectory first_order_trajectory(const PhaseSpacePoint& init,
                                           const MonomialPotential& pert,
                                           const TrapSpec& trap) {
    ClassicalTrajectory traj = unperturbed_trajectory(init, trap);

    // x1(t) = -(1/m omega) Int_0^t sin(omega (t - t')) V'(x0(t')) dt'
    //       = i/(2 m omega) [ e^{i w t} (Fm(t) - Fm(0)) - e^{-i w t} (Fp(t) - Fp(0)) ]
    // with Fm, Fp antiderivatives of e^{-+ i w t'} V'(x0(t')).
    const TrigPoly g = pert.derivative_poly(traj.x0);
    const TrigPoly Fm = g.frequency_shifted(-1).antiderivative();
    const TrigPoly Fp = g.frequency_shifted(+1).antiderivative();

    TrigPoly a = Fm.frequency_shifted(+1);
    a.add_term(+1, 0, -Fm.evaluate(0.0));
    TrigPoly b = Fp.frequency_shifted(-1);
    b.add_term(-1, 0, -Fp.evaluate(0.0));

    TrigPoly x1 = (a - b) * Complex(0.0, 1.0 / (2.0 * trap.mass * trap.omega));
    traj.x1 = x1.real_part(); // drops exact-zero imaginary bookkeeping terms
    traj.v1 = traj.x1.derivative();
    return traj;
}

SampledPath exact_trajectory(const PhaseSpacePoint& init, const MonomialPotential& pert,
                             const TrapSpec& trap, double t_max, double dt) {
    if (!(dt > 0.0))
        throw Error("exact_trajectory: dt must be positive");
    const long steps = std::max(1L, std::lround(std::ceil(t_max / dt - 1e-12)));
    dt = t_max / double(steps);

    SampledPath path;
    path.dt = dt;
    path.t.resize(steps + 1);
    path.x.resize(steps + 1);
    path.v.resize(steps + 1);

    auto accel = [&](double x) {
        return -trap.omega * trap.omega * x - pert.derivative(x) / trap.mass;
    };

    double x = init.x, v = init.v;
    path.t[0] = 0.0;
    path.x[0] = x;
    path.v[0] = v;
    for (long i = 1; i <= steps; ++i) {
        const double k1x = v, k1v = accel(x);
        const double k2x = v + 0.5 * dt * k1v, k2v = accel(x + 0.5 * dt * k1x);
        const double k3x = v + 0.5 * dt * k2v, k3v = accel(x + 0.5 * dt * k2x);
        const double k4x = v + dt * k3v, k4v = accel(x + dt * k3x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        path.t[i] = dt * double(i);
        path.x[i] = x;
        path.v[i] = v;
    }

    auto energy = [&](double xx, double vv) {
        return 0.5 * trap.mass * vv * vv + trap_potential(xx, trap, pert);
    };
    const double e0 = energy(path.x[0], path.v[0]);
    const double scale = std::max(std::abs(e0), kHbar * trap.omega);
    double drift = 0.0;
    for (long i = 0; i <= steps; ++i)
        drift = std::max(drift, std::abs(energy(path.x[i], path.v[i]) - e0) / scale);
    path.energy_drift = drift;
    if (drift > 1e-6)
        throw StepTooLarge("exact_trajectory: relative energy drift " + std::to_string(drift));
    return path;
}

double action_phase(const SampledPath& path, const MonomialPotential& pert, const TrapSpec& trap) {
    Eigen::VectorXd lagrangian(path.t.size());
    for (Eigen::Index i = 0; i < path.t.size(); ++i) {
        const double kin = 0.5 * trap.mass * path.v[i] * path.v[i];
        lagrangian[i] = kin - trap_potential(path.x[i], trap, pert) - trap.internal_energy;
    }
    return simpson(lagrangian, path.dt) / kHbar;
}

} // namespace aai
