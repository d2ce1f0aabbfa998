#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "aai/classical.hpp"
#include "aai/config.hpp"
#include "aai/csvio.hpp"
#include "aai/errors.hpp"
#include "aai/fock.hpp"
#include "aai/interferometer.hpp"
#include "aai/parallel.hpp"

namespace {

using namespace aai;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos)
            out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open output file '" + path + "'");
    out << text;
    if (!out)
        throw Error("short write to '" + path + "'");
}

std::string csv_cell(std::optional<double> v) { return v ? format_double(*v) : std::string(); }

// ---------------------------------------------------------------- trajectory

int cmd_trajectory(const RunConfig& cfg, const std::vector<std::string>& methods,
                   const std::string& out_path) {
    const TrapSpec trap = cfg.trap;
    const PowerLawPerturbation pert = cfg.perturbation();
    const PhaseSpacePoint init = cfg.trajectory_initial();
    const double t_max = cfg.dimensionless ? cfg.t / trap.omega : cfg.t;
    const int samples = cfg.samples;
    const double interval = t_max / double(samples - 1);

    bool want_sca = false, want_exact = false, want_q1 = false, want_q2 = false,
         want_oracle = false;
    for (const std::string& m : methods) {
        if (m == "sca-perturbative" || m == "sca")
            want_sca = true;
        else if (m == "sca-exact")
            want_exact = true;
        else if (m == "quantum-first-order" || m == "quantum1")
            want_q1 = true;
        else if (m == "quantum-second-order" || m == "quantum2")
            want_q2 = true;
        else if (m == "oracle")
            want_oracle = true;
        else
            throw ConfigError("method '" + m + "' has no trajectory column");
    }

    std::vector<double> ts(samples);
    for (int i = 0; i < samples; ++i)
        ts[i] = interval * i;

    std::vector<std::optional<double>> sca0(samples), sca_total(samples), exact(samples),
        q1(samples), q2(samples), oracle(samples);

    if (want_sca) {
        const ClassicalTrajectory traj = first_order_trajectory(init, pert, trap);
        for (int i = 0; i < samples; ++i) {
            sca0[i] = traj.x0.evaluate_real(ts[i]);
            sca_total[i] = traj.x(ts[i]);
        }
    }
    if (want_exact) {
        const long spi = std::max(1L, std::lround(std::ceil(interval / default_rk4_dt(trap))));
        const SampledPath path = exact_trajectory(init, pert, trap, t_max, interval / double(spi));
        for (int i = 0; i < samples; ++i)
            exact[i] = path.x[std::min<Eigen::Index>(i * spi, path.x.size() - 1)];
    }
    if (want_q1 || want_q2) {
        const FirstOrderPolys polys =
            first_order_coeff_polys(alpha_from_phase_space(init, trap), pert, trap);
        for (int i = 0; i < samples; ++i) {
            const double xb = polys.x_bar.evaluate_real(ts[i]);
            if (want_q1)
                q1[i] = xb;
            if (want_q2)
                q2[i] = xb + (ts[i] == 0.0
                                  ? 0.0
                                  : second_order_mean_position(alpha_from_phase_space(init, trap),
                                                               pert, trap, ts[i], cfg.quad_order));
        }
    }
    if (want_oracle) {
        const double amp_est =
            std::abs(alpha_from_phase_space(init, trap).alpha) * std::sqrt(2.0) * trap.ell();
        if (amp_est > 40.0 * trap.ell() && !cfg.force_oracle)
            throw PhysicsError("oracle: amplitude exceeds 40 ell; pass --force-oracle");
        const MonomialPotential pot = MonomialPotential::from(pert);
        const GridSpec spec =
            SchrodingerSolver::default_grid(amp_est, trap, pot, cfg.dx, cfg.padding, cfg.dt);
        SchrodingerSolver solver(trap, pot, spec);
        GridWavefunction psi = solver.gaussian_packet(init);
        oracle[0] = solver.observables(psi).x_mean;
        for (int i = 1; i < samples; ++i) {
            solver.evolve(psi, interval);
            oracle[i] = solver.observables(psi).x_mean;
        }
    }

    std::string csv = "t,x_sca0,x_sca_total,x_classical_exact,x_quantum1,x_quantum2,x_oracle\n";
    for (int i = 0; i < samples; ++i) {
        const double t_out = cfg.dimensionless ? trap.omega * ts[i] : ts[i];
        csv += format_double(t_out);
        csv += ',' + csv_cell(sca0[i]) + ',' + csv_cell(sca_total[i]) + ',' + csv_cell(exact[i]) +
               ',' + csv_cell(q1[i]) + ',' + csv_cell(q2[i]) + ',' + csv_cell(oracle[i]) + '\n';
    }
    write_text(out_path.empty() ? "trajectory.csv" : out_path, csv);
    return 0;
}

// --------------------------------------------------------------------- phase

std::string report_block(const PhaseReport& rep) {
    std::string s;
    s += "method = " + method_name(rep.method) + '\n';
    s += "theta_total = " + format_double(rep.theta_total) + '\n';
    s += "theta0 = " + format_double(rep.theta0) + '\n';
    s += "theta1 = " + format_double(rep.theta1) + '\n';
    if (rep.method != Method::Oracle && rep.method != Method::ScaExact) {
        s += "theta1_v0_diff = " + format_double(rep.terms.v0_diff) + '\n';
        s += "theta1_v1_cross = " + format_double(rep.terms.v1_cross) + '\n';
        s += "theta1_kick = " + format_double(rep.terms.kick) + '\n';
        s += "theta1_integral = " + format_double(rep.terms.integral) + '\n';
    }
    s += "phi_prop = " + format_double(rep.phi_prop) + '\n';
    s += "phi_laser = " + format_double(rep.phi_laser) + '\n';
    s += "phi_sep = " + format_double(rep.phi_sep) + '\n';
    s += "packet_gap = " + format_double(rep.packet_gap) + '\n';
    s += "gap_warning = " + std::string(rep.gap_warning ? "1" : "0") + '\n';
    s += "visibility = " + format_double(rep.visibility) + '\n';
    s += "population = " + format_double(rep.population) + '\n';
    return s;
}

int cmd_phase(const RunConfig& cfg, const std::vector<std::string>& methods,
              const std::string& out_path, const std::string& dump_prefix) {
    const InterferometerSequence seq = cfg.sequence();
    const PowerLawPerturbation pert = cfg.perturbation();
    const RunOptions opts = cfg.run_options();

    std::string text;
    for (std::size_t i = 0; i < methods.size(); ++i) {
        const Method m = method_from_name(methods[i]);
        PhaseReport rep;
        if (m == Method::Oracle && !dump_prefix.empty()) {
            const OracleArms arms = oracle_final_states(seq, pert, cfg.trap, opts);
            write_snapshot(dump_prefix + "_a.wf", arms.a);
            write_snapshot(dump_prefix + "_b.wf", arms.b);
            rep = oracle_phase_report(arms, seq, pert, cfg.trap);
        } else {
            rep = run_sequence(seq, pert, cfg.trap, m, opts);
        }
        if (rep.gap_warning)
            std::cerr << "warning: packet gap " << rep.packet_gap
                      << " exceeds 0.1; interference contrast is degraded\n";
        if (i)
            text += '\n';
        text += report_block(rep);
    }
    std::cout << text;
    if (!out_path.empty())
        write_text(out_path, text);
    return 0;
}

// --------------------------------------------------------------------- sweep

int cmd_sweep(const RunConfig& cfg, const std::vector<std::string>& methods,
              const std::string& param, double from, double to, int steps,
              const std::string& out_path) {
    if (steps < 2)
        throw ConfigError("sweep needs --steps >= 2");
    if (param != "beta" && param != "amplitude" && param != "t")
        throw ConfigError("sweep --param must be one of beta, amplitude, t");
    if (param == "amplitude" && cfg.kappas_set)
        throw ConfigError("sweeping amplitude conflicts with explicit kappa_* keys");

    bool want_sca = false, want_q1 = false, want_oracle = false;
    for (const std::string& m : methods) {
        const Method mm = method_from_name(m);
        if (mm == Method::ScaPerturbative)
            want_sca = true;
        else if (mm == Method::QuantumFirstOrder)
            want_q1 = true;
        else if (mm == Method::Oracle)
            want_oracle = true;
        else
            throw ConfigError("sweep columns exist for sca-perturbative, quantum-first-order, "
                              "oracle; got '" + m + "'");
    }

    struct Row {
        std::optional<double> sca, q1, oracle, population, visibility;
    };
    std::vector<Row> rows(steps);
    std::vector<double> values(steps);
    for (int i = 0; i < steps; ++i)
        values[i] = from + (to - from) * double(i) / double(steps - 1);

    parallel_for(steps, effective_threads(cfg.threads), [&](long i) {
        RunConfig point = cfg;
        if (param == "beta")
            point.beta = values[i];
        else if (param == "amplitude") {
            point.amplitude = values[i];
            point.amplitude_set = true;
        } else {
            point.t = values[i];
            if (!(point.t > 0.0))
                throw ConfigError("sweep over t hit a non-positive value");
        }
        const InterferometerSequence seq = point.sequence();
        const PowerLawPerturbation pert = point.perturbation();
        Row& row = rows[i];
        PhaseReport last;
        if (want_sca) {
            last = run_sequence(seq, pert, point.trap, Method::ScaPerturbative);
            row.sca = last.theta_total;
        }
        if (want_q1) {
            last = run_sequence(seq, pert, point.trap, Method::QuantumFirstOrder);
            row.q1 = last.theta_total;
        }
        if (want_oracle) {
            last = run_sequence(seq, pert, point.trap, Method::Oracle, point.run_options());
            row.oracle = last.theta_total;
        }
        if (want_sca || want_q1 || want_oracle) {
            row.population = last.population;
            row.visibility = last.visibility;
        }
    });

    std::string csv = "param,theta_sca,theta_quantum1,theta_oracle,population,visibility\n";
    for (int i = 0; i < steps; ++i) {
        csv += format_double(values[i]);
        csv += ',' + csv_cell(rows[i].sca) + ',' + csv_cell(rows[i].q1) + ',' +
               csv_cell(rows[i].oracle) + ',' + csv_cell(rows[i].population) + ',' +
               csv_cell(rows[i].visibility) + '\n';
    }
    write_text(out_path.empty() ? "sweep.csv" : out_path, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interferometer phase of a trapped atom in a weakly anharmonic trap"};
    app.require_subcommand(1);

    std::string config_path, method_list, out_path, dump_prefix;
    std::string param;
    double from = 0.0, to = 0.0;
    int steps = 0;
    bool force_oracle = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (key = value lines)")->required();
        sub->add_option("--method", method_list, "comma-separated method list (overrides config)");
        sub->add_option("--out", out_path, "output path");
        sub->add_flag("--force-oracle", force_oracle, "allow oracle runs beyond 40 ell");
    };

    CLI::App* traj = app.add_subcommand("trajectory", "packet trajectory comparison CSV");
    add_common(traj);
    CLI::App* phase = app.add_subcommand("phase", "interferometer phase report");
    add_common(phase);
    phase->add_option("--dump-psi", dump_prefix,
                      "write final oracle wavefunctions to PREFIX_{a,b}.wf");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep CSV");
    add_common(sweep);
    sweep->add_option("--param", param, "beta | amplitude | t")->required();
    sweep->add_option("--from", from, "sweep start")->required();
    sweep->add_option("--to", to, "sweep end")->required();
    sweep->add_option("--steps", steps, "number of points (>= 2)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        aai::RunConfig cfg = aai::load_config(config_path);
        if (force_oracle)
            cfg.force_oracle = true;
        if (!out_path.empty())
            cfg.out = out_path;
        std::vector<std::string> methods =
            method_list.empty() ? cfg.methods : split_list(method_list);
        if (methods.empty())
            throw aai::ConfigError("empty method list");

        if (traj->parsed())
            return cmd_trajectory(cfg, methods, cfg.out);
        if (phase->parsed())
            return cmd_phase(cfg, methods, cfg.out, dump_prefix);
        return cmd_sweep(cfg, methods, param, from, to, steps, cfg.out);
    } catch (const aai::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const aai::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const aai::PhysicsError& e) {
        std::cerr << "physics-domain error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
