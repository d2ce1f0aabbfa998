#include "aai/interferometer.hpp"

#include <cmath>
#include <functional>

#include "aai/errors.hpp"

namespace aai {

std::string method_name(Method m) {
    switch (m) {
    case Method::ScaPerturbative: return "sca-perturbative";
    case Method::ScaExact: return "sca-exact";
    case Method::QuantumFirstOrder: return "quantum-first-order";
    case Method::Oracle: return "oracle";
    case Method::ScaVeff: return "sca-veff";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "sca-perturbative" || name == "sca")
        return Method::ScaPerturbative;
    if (name == "sca-exact")
        return Method::ScaExact;
    if (name == "quantum-first-order" || name == "quantum1")
        return Method::QuantumFirstOrder;
    if (name == "oracle")
        return Method::Oracle;
    if (name == "sca-veff")
        return Method::ScaVeff;
    throw Error("unknown method '" + name + "'");
}

MonomialPotential effective_potential_cubic(const PowerLawPerturbation& pert,
                                            const TrapSpec& trap) {
    if (pert.lambda != 3)
        throw UnsupportedLambda("effective_potential_cubic: only lambda = 3 admits the "
                                "Gaussian-averaged replacement");
    const double ell2 = trap.ell() * trap.ell();
    return {{{pert.beta, 3}, {1.5 * pert.beta * ell2, 1}}};
}

namespace {

void finish_report(PhaseReport& rep, const TrapSpec& trap, double gap) {
    rep.packet_gap = gap;
    rep.gap_warning = gap > 0.1;
    if (gap > 1.0)
        throw PacketGapTooLarge("run_sequence: |alpha_af - alpha_bf| = " + std::to_string(gap));
    rep.population = 0.5 * (1.0 + rep.visibility * std::cos(rep.theta_total));
    (void)trap;
}

double packet_gap_from_means(const PhaseSpacePoint& af, const PhaseSpacePoint& bf,
                             const TrapSpec& trap) {
    const Complex da = alpha_from_phase_space(af, trap).alpha;
    const Complex db = alpha_from_phase_space(bf, trap).alpha;
    return std::abs(da - db);
}

} // namespace

PhaseReport assemble_theta(const AssemblyInput& in, const TrapSpec& trap, Method method) {
    const double m2h = trap.mass / (2.0 * kHbar);
    const double x_i = in.initial.x, v_i = in.initial.v;
    const ArmInput &a = in.a, &b = in.b;

    PhaseReport rep;
    rep.method = method;
    rep.theta0 = in.xi + m2h * (a.x0 * b.v0 - b.x0 * a.v0) + 0.5 * (in.kappa_bi - in.kappa_ai) * x_i +
                 0.5 * (in.kappa_bf - in.kappa_af) * (a.x0 + b.x0);
    rep.terms.v0_diff = m2h * (b.v0 - a.v0) * (a.x1 + b.x1);
    rep.terms.v1_cross = -m2h * (a.v1 + b.v1) * (b.x0 - a.x0);
    rep.terms.kick = 0.5 * (in.kappa_bf - in.kappa_af) * (a.x1 + b.x1);
    rep.terms.integral = -(b.int_v - a.int_v) / kHbar;
    rep.theta1 = rep.terms.sum();
    rep.theta_total = rep.theta0 + rep.theta1;

    // unlinearized breakdown (sums to theta_total up to O(beta^2))
    const double xa = a.x0 + a.x1, va = a.v0 + a.v1;
    const double xb = b.x0 + b.x1, vb = b.v0 + b.v1;
    const double v_as = v_i + kHbar * in.kappa_ai / trap.mass;
    const double v_bs = v_i + kHbar * in.kappa_bi / trap.mass;
    const double prop_a = m2h * (xa * va - x_i * v_as - a.x0 * a.v1 + a.x1 * a.v0) -
                          0.5 * in.kappa_ai * x_i - a.int_v / kHbar;
    const double prop_b = m2h * (xb * vb - x_i * v_bs - b.x0 * b.v1 + b.x1 * b.v0) -
                          0.5 * in.kappa_bi * x_i - b.int_v / kHbar;
    rep.phi_prop = prop_b - prop_a;
    rep.phi_laser = (in.kappa_bi - in.kappa_ai) * x_i + in.kappa_bf * xb - in.kappa_af * xa + in.xi;
    const double v_af = va + kHbar * in.kappa_af / trap.mass;
    const double v_bf = vb + kHbar * in.kappa_bf / trap.mass;
    rep.phi_sep = -m2h * (v_af + v_bf) * (xb - xa);

    finish_report(rep, trap,
                  packet_gap_from_means({xa, v_af}, {xb, v_bf}, trap));
    return rep;
}

namespace {

// --- perturbative providers -------------------------------------------------

struct StageResult {
    ArmInput arm;              // orders relative to the stage start
    PhaseSpacePoint end_mean;  // (x0+x1, v0+v1) at the stage end
};

using StageProvider = std::function<StageResult(const PhaseSpacePoint& start, double hold)>;

StageProvider classical_provider(const MonomialPotential& pot, const TrapSpec& trap) {
    return [pot, trap](const PhaseSpacePoint& start, double hold) {
        const ClassicalTrajectory traj = first_order_trajectory(start, pot, trap);
        StageResult res;
        res.arm.x0 = traj.x0.evaluate_real(hold);
        res.arm.v0 = traj.v0.evaluate_real(hold);
        res.arm.x1 = traj.x1.evaluate_real(hold);
        res.arm.v1 = traj.v1.evaluate_real(hold);
        res.arm.int_v = pot.value_poly(traj.x0).integrate(hold).real();
        res.end_mean = {res.arm.x0 + res.arm.x1, res.arm.v0 + res.arm.v1};
        return res;
    };
}

StageProvider quantum_provider(const PowerLawPerturbation& pert, const TrapSpec& trap) {
    return [pert, trap](const PhaseSpacePoint& start, double hold) {
        const CoherentAmplitude alpha_i = alpha_from_phase_space(start, trap);
        const GCFirstOrderState state = first_order_coeffs(alpha_i, pert, trap, hold);
        const PhaseSpacePoint c = phase_space_from_alpha(state.alpha_t, trap);
        const double s2l = std::sqrt(2.0) * trap.ell();
        StageResult res;
        res.arm.x0 = c.x;
        res.arm.v0 = c.v;
        res.arm.x1 = s2l * state.D[1].real();
        res.arm.v1 = s2l * trap.omega * state.D[1].imag();
        res.arm.int_v = -kHbar * state.D[0].imag();
        res.end_mean = {res.arm.x0 + res.arm.x1, res.arm.v0 + res.arm.v1};
        return res;
    };
}

struct ArmPhases {
    double prop = 0.0;
    double laser = 0.0;
    PhaseSpacePoint final_mean; // after the recombination kick
    ArmInput last_stage;
};

ArmPhases propagate_arm(const InterferometerSequence& seq, bool arm_b,
                        const StageProvider& provider, const TrapSpec& trap) {
    const double m2h = trap.mass / (2.0 * kHbar);
    ArmPhases out;
    PhaseSpacePoint state = seq.initial;

    std::vector<InterferometerSequence::Stage> stages;
    stages.push_back({seq.kappa_ai, seq.kappa_bi, seq.hold_t});
    for (const auto& st : seq.extra_stages)
        stages.push_back(st);

    for (const auto& st : stages) {
        const double kappa = arm_b ? st.kappa_b : st.kappa_a;
        out.laser += kappa * state.x;
        state.v += kHbar * kappa / trap.mass;
        const StageResult res = provider(state, st.hold);
        out.prop += m2h * (res.arm.x0 * res.arm.v0 + 2.0 * res.arm.x1 * res.arm.v0 -
                           state.x * state.v) -
                    res.arm.int_v / kHbar;
        state = res.end_mean;
        out.last_stage = res.arm;
    }

    const double kappa_f = arm_b ? seq.kappa_bf : seq.kappa_af;
    out.laser += kappa_f * state.x;
    state.v += kHbar * kappa_f / trap.mass;
    out.final_mean = state;
    return out;
}

PhaseReport run_perturbative(const InterferometerSequence& seq, const StageProvider& provider,
                             const TrapSpec& trap, Method method) {
    if (seq.extra_stages.empty()) {
        // single stage: the assembly formulas apply directly
        PhaseSpacePoint start_a = seq.initial, start_b = seq.initial;
        start_a.v += kHbar * seq.kappa_ai / trap.mass;
        start_b.v += kHbar * seq.kappa_bi / trap.mass;
        AssemblyInput in;
        in.initial = seq.initial;
        in.kappa_ai = seq.kappa_ai;
        in.kappa_bi = seq.kappa_bi;
        in.kappa_af = seq.kappa_af;
        in.kappa_bf = seq.kappa_bf;
        in.xi = seq.xi;
        in.a = provider(start_a, seq.hold_t).arm;
        in.b = provider(start_b, seq.hold_t).arm;
        return assemble_theta(in, trap, method);
    }

    // multi-stage: accumulate propagation and laser phases stage by stage,
    // replacing the state between stages by the displaced packet at the
    // perturbed mean (accurate at first order).
    const ArmPhases pa = propagate_arm(seq, false, provider, trap);
    const ArmPhases pb = propagate_arm(seq, true, provider, trap);

    PhaseReport rep;
    rep.method = method;
    rep.phi_prop = pb.prop - pa.prop;
    rep.phi_laser = pb.laser - pa.laser + seq.xi;
    rep.phi_sep = -trap.mass / (2.0 * kHbar) * (pa.final_mean.v + pb.final_mean.v) *
                  (pb.final_mean.x - pa.final_mean.x);
    rep.theta_total = rep.phi_prop + rep.phi_laser + rep.phi_sep;

    // theta0 from the harmonic (beta = 0) composition, which is exact
    const StageProvider free_provider =
        classical_provider(MonomialPotential{}, trap);
    const ArmPhases fa = propagate_arm(seq, false, free_provider, trap);
    const ArmPhases fb = propagate_arm(seq, true, free_provider, trap);
    rep.theta0 = (fb.prop - fa.prop) + (fb.laser - fa.laser) + seq.xi -
                 trap.mass / (2.0 * kHbar) * (fa.final_mean.v + fb.final_mean.v) *
                     (fb.final_mean.x - fa.final_mean.x);
    rep.theta1 = rep.theta_total - rep.theta0;

    finish_report(rep, trap, packet_gap_from_means(pa.final_mean, pb.final_mean, trap));
    return rep;
}

// --- exact-classical method --------------------------------------------------

PhaseReport run_sca_exact(const InterferometerSequence& seq, const MonomialPotential& pot,
                          const TrapSpec& trap, bool with_theta0) {
    struct ArmOut {
        double prop = 0.0, laser = 0.0;
        PhaseSpacePoint final_state;
    };
    auto run_arm = [&](bool arm_b) {
        ArmOut out;
        PhaseSpacePoint state = seq.initial;
        std::vector<InterferometerSequence::Stage> stages;
        stages.push_back({seq.kappa_ai, seq.kappa_bi, seq.hold_t});
        for (const auto& st : seq.extra_stages)
            stages.push_back(st);
        for (const auto& st : stages) {
            const double kappa = arm_b ? st.kappa_b : st.kappa_a;
            out.laser += kappa * state.x;
            state.v += kHbar * kappa / trap.mass;
            const SampledPath path = exact_trajectory(state, pot, trap, st.hold,
                                                      default_rk4_dt(trap));
            out.prop += action_phase(path, pot, trap);
            state = {path.x[path.x.size() - 1], path.v[path.v.size() - 1]};
        }
        const double kappa_f = arm_b ? seq.kappa_bf : seq.kappa_af;
        out.laser += kappa_f * state.x;
        state.v += kHbar * kappa_f / trap.mass;
        out.final_state = state;
        return out;
    };

    const ArmOut a = run_arm(false), b = run_arm(true);
    PhaseReport rep;
    rep.method = Method::ScaExact;
    rep.phi_prop = b.prop - a.prop;
    rep.phi_laser = b.laser - a.laser + seq.xi;
    rep.phi_sep = -trap.mass / (2.0 * kHbar) * (a.final_state.v + b.final_state.v) *
                  (b.final_state.x - a.final_state.x);
    rep.theta_total = rep.phi_prop + rep.phi_laser + rep.phi_sep;
    if (with_theta0) {
        rep.theta0 =
            run_sca_exact(seq, MonomialPotential{}, trap, false).theta_total;
        rep.theta1 = rep.theta_total - rep.theta0;
    }
    finish_report(rep, trap, packet_gap_from_means(a.final_state, b.final_state, trap));
    return rep;
}

// --- oracle -------------------------------------------------------------------

double oracle_amplitude_estimate(const InterferometerSequence& seq, const TrapSpec& trap) {
    double max_exc = std::abs(seq.initial.x);
    for (bool arm_b : {false, true}) {
        CoherentAmplitude alpha = alpha_from_phase_space(seq.initial, trap);
        std::vector<InterferometerSequence::Stage> stages;
        stages.push_back({seq.kappa_ai, seq.kappa_bi, seq.hold_t});
        for (const auto& st : seq.extra_stages)
            stages.push_back(st);
        for (const auto& st : stages) {
            alpha = kicked(alpha, arm_b ? st.kappa_b : st.kappa_a, trap);
            max_exc = std::max(max_exc, std::abs(alpha.alpha) * std::sqrt(2.0) * trap.ell());
        }
    }
    return max_exc;
}

} // namespace

OracleArms oracle_final_states(const InterferometerSequence& seq,
                               const PowerLawPerturbation& pert, const TrapSpec& trap,
                               const RunOptions& opts) {
    const MonomialPotential pot = MonomialPotential::from(pert);
    const double amplitude = oracle_amplitude_estimate(seq, trap);
    if (amplitude > 40.0 * trap.ell() && !opts.force_oracle)
        throw PhysicsError("oracle: amplitude " + std::to_string(amplitude / trap.ell()) +
                           " ell exceeds 40 ell; pass --force-oracle to override");
    const GridSpec spec = SchrodingerSolver::default_grid(amplitude, trap, pot, opts.grid_dx,
                                                          opts.grid_padding, opts.grid_dt);
    SchrodingerSolver solver(trap, pot, spec);

    auto run_arm = [&](bool arm_b) {
        GridWavefunction psi = solver.gaussian_packet(seq.initial);
        std::vector<InterferometerSequence::Stage> stages;
        stages.push_back({seq.kappa_ai, seq.kappa_bi, seq.hold_t});
        for (const auto& st : seq.extra_stages)
            stages.push_back(st);
        for (const auto& st : stages) {
            psi = solver.kicked(psi, arm_b ? st.kappa_b : st.kappa_a);
            solver.evolve(psi, st.hold);
        }
        psi = solver.kicked(psi, arm_b ? seq.kappa_bf : seq.kappa_af);
        return psi;
    };

    OracleArms arms;
    arms.spec = spec;
    arms.a = run_arm(false);
    arms.b = run_arm(true);
    return arms;
}

PhaseReport run_sequence(const InterferometerSequence& seq, const PowerLawPerturbation& pert,
                         const TrapSpec& trap, Method method, const RunOptions& opts) {
    switch (method) {
    case Method::ScaPerturbative:
        return run_perturbative(seq, classical_provider(MonomialPotential::from(pert), trap),
                                trap, method);
    case Method::ScaVeff:
        return run_perturbative(seq, classical_provider(effective_potential_cubic(pert, trap), trap),
                                trap, method);
    case Method::QuantumFirstOrder:
        return run_perturbative(seq, quantum_provider(pert, trap), trap, method);
    case Method::ScaExact:
        return run_sca_exact(seq, MonomialPotential::from(pert), trap, true);
    case Method::Oracle:
        return oracle_phase_report(oracle_final_states(seq, pert, trap, opts), seq, pert, trap);
    }
    throw Error("run_sequence: unreachable");
}

PhaseReport oracle_phase_report(const OracleArms& arms, const InterferometerSequence& seq,
                                const PowerLawPerturbation& pert, const TrapSpec& trap) {
    const PhaseReport quantum = run_sequence(seq, pert, trap, Method::QuantumFirstOrder);
    SchrodingerSolver solver(trap, MonomialPotential::from(pert), arms.spec);

    PhaseReport rep;
    rep.method = Method::Oracle;
    const Complex ov = grid_overlap(arms.a, arms.b);
    const double scale = std::sqrt(arms.a.norm() * arms.b.norm());
    if (std::abs(ov) <= 1e-6 * scale)
        throw PhaseUndefined("oracle: final packets do not overlap");
    rep.visibility = std::min(1.0, std::abs(ov) / scale);
    rep.theta_total = nearest_branch(std::arg(ov) + seq.xi, quantum.theta_total);
    rep.theta0 = NAN;
    rep.theta1 = NAN;

    const GridObservables oa = solver.observables(arms.a);
    const GridObservables ob = solver.observables(arms.b);
    finish_report(rep, trap,
                  packet_gap_from_means({oa.x_mean, oa.p_mean / trap.mass},
                                        {ob.x_mean, ob.p_mean / trap.mass}, trap));
    return rep;
}

} // namespace aai
