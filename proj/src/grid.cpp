#include "aai/grid.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "aai/errors.hpp"

namespace aai {

SchrodingerSolver::SchrodingerSolver(const TrapSpec& trap, const MonomialPotential& pert,
                                     const GridSpec& spec)
    : trap_(trap), pert_(pert), spec_(spec) {
    if (spec_.n_points < 16)
        throw Error("SchrodingerSolver: grid too coarse");
    u_.resize(spec_.n_points);
    du_.resize(spec_.n_points);
    for (int j = 0; j < spec_.n_points; ++j) {
        u_[j] = trap_potential(spec_.x(j), trap_, pert_);
        du_[j] = trap_force_gradient(spec_.x(j), trap_, pert_);
    }
    v_max_ = u_.abs().maxCoeff();
    if (spec_.stability_product(v_max_, trap_) > 0.5)
        throw UnstableStep("SchrodingerSolver: dt violates the stability bound");
}

GridSpec SchrodingerSolver::default_grid(double amplitude, const TrapSpec& trap,
                                         const MonomialPotential& pert, double dx, double padding,
                                         double dt) {
    const double ell = trap.ell();
    if (padding < 0.0)
        padding = 10.0 * ell;
    const bool dx_defaulted = dx < 0.0;
    if (dx_defaulted)
        dx = ell / 128.0;
    GridSpec spec;
    const double half = std::abs(amplitude) + padding;
    spec.x_min = -half;
    spec.x_max = half;
    spec.n_points = int(std::ceil(2.0 * half / dx)) + 1;
    if (dx_defaulted)
        spec.n_points = std::max(2048, spec.n_points);

    double v_max = 0.0;
    for (int j = 0; j < spec.n_points; ++j)
        v_max = std::max(v_max, std::abs(trap_potential(spec.x(j), trap, pert)));
    // 5-point kinetic spectral radius is (4/3) hbar/(m dx^2); safety 0.5 on
    // top of the 0.5 stability margin.
    const double rate =
        (4.0 / 3.0) * kHbar / (trap.mass * spec.dx() * spec.dx()) + v_max / kHbar;
    spec.dt = (dt > 0.0) ? dt : 0.25 / rate;
    return spec;
}

GridWavefunction SchrodingerSolver::gaussian_packet(const PhaseSpacePoint& p) const {
    const double ell = trap_.ell();
    const double amp = std::pow(M_PI, -0.25) / std::sqrt(ell);
    GridWavefunction psi;
    psi.spec = spec_;
    psi.re.resize(spec_.n_points);
    psi.im.resize(spec_.n_points);
    for (int j = 0; j < spec_.n_points; ++j) {
        const double d = spec_.x(j) - p.x;
        const double mag = amp * std::exp(-d * d / (2.0 * ell * ell));
        const double phase = trap_.mass * p.v * d / kHbar;
        psi.re[j] = mag * std::cos(phase);
        psi.im[j] = mag * std::sin(phase);
    }
    const double edge = std::max(std::hypot(psi.re[0], psi.im[0]),
                                 std::hypot(psi.re[spec_.n_points - 1], psi.im[spec_.n_points - 1]));
    if (edge > 1e-12 * amp)
        throw GridTooNarrow("gaussian_packet: tails exceed 1e-12 at the grid edge");
    return psi;
}

GridWavefunction SchrodingerSolver::kicked(const GridWavefunction& psi, double kappa) const {
    if (std::abs(kappa) * spec_.dx() > M_PI / 4.0)
        throw AliasRisk("kicked: kappa dx > pi/4, kick not resolvable on this grid");
    GridWavefunction out = psi;
    for (int j = 0; j < spec_.n_points; ++j) {
        const double c = std::cos(kappa * spec_.x(j));
        const double s = std::sin(kappa * spec_.x(j));
        out.re[j] = c * psi.re[j] - s * psi.im[j];
        out.im[j] = s * psi.re[j] + c * psi.im[j];
    }
    return out;
}

void SchrodingerSolver::apply_h(const Eigen::ArrayXd& f, Eigen::ArrayXd& out) const {
    const Eigen::Index n = f.size();
    const double k2 = kHbar * kHbar / (24.0 * trap_.mass * spec_.dx() * spec_.dx());
    out = (u_ + 30.0 * k2) * f;
    out.segment(1, n - 1) -= 16.0 * k2 * f.segment(0, n - 1);
    out.segment(0, n - 1) -= 16.0 * k2 * f.segment(1, n - 1);
    out.segment(2, n - 2) += k2 * f.segment(0, n - 2);
    out.segment(0, n - 2) += k2 * f.segment(2, n - 2);
}

EvolveReport SchrodingerSolver::evolve(GridWavefunction& psi, double t,
                                       const EvolveOptions& opts) const {
    if (psi.re.size() != spec_.n_points)
        throw Error("evolve: wavefunction does not match the solver grid");
    EvolveReport report;
    if (t <= 0.0)
        return report;

    const long steps = std::max(1L, std::lround(std::ceil(t / spec_.dt - 1e-12)));
    const double dt = t / double(steps);
    report.steps = steps;
    report.dt = dt;

    const Eigen::Index n = spec_.n_points;
    const double dx = spec_.dx();
    Eigen::ArrayXd r = psi.re;
    Eigen::ArrayXd h(n);

    // stagger: I(t +- dt/2) = I(t) -+ (dt/2 hbar) H R(t)
    apply_h(r, h);
    Eigen::ArrayXd i_plus = psi.im - (0.5 * dt / kHbar) * h;
    Eigen::ArrayXd i_minus = psi.im + (0.5 * dt / kHbar) * h;

    auto staggered_norm = [&]() { return (r * r + i_plus * i_minus).sum() * dx; };
    const double norm0 = staggered_norm();

    auto edge_density = [&]() {
        double m = 0.0;
        for (int j : {0, 1, 2, int(n - 3), int(n - 2), int(n - 1)}) {
            const double is = 0.5 * (i_plus[j] + i_minus[j]);
            m = std::max(m, r[j] * r[j] + is * is);
        }
        return m;
    };

    const long check_every = std::max(1L, steps / 64);
    GridWavefunction scratch;
    for (long s = 1; s <= steps; ++s) {
        apply_h(i_plus, h);
        r += (dt / kHbar) * h;
        i_minus = i_plus;
        apply_h(r, h);
        i_plus -= (dt / kHbar) * h;

        if (s % check_every == 0 || s == steps) {
            const double norm = staggered_norm();
            if (!std::isfinite(norm) || norm > 2.0 * norm0)
                throw UnstableStep("evolve: norm blow-up detected");
            report.max_edge_density = std::max(report.max_edge_density, edge_density());
            if (report.max_edge_density > 1e-9)
                throw BoundaryLeak("evolve: edge density exceeded 1e-9");
        }
        if (opts.observer && opts.observe_every > 0 &&
            (s % opts.observe_every == 0 || s == steps)) {
            scratch.spec = spec_;
            scratch.re = r;
            scratch.im = 0.5 * (i_plus + i_minus);
            opts.observer(dt * double(s), scratch);
        }
    }

    report.norm_drift = std::abs(staggered_norm() - norm0) / norm0;
    psi.re = std::move(r);
    psi.im = 0.5 * (i_plus + i_minus);
    return report;
}

GridObservables SchrodingerSolver::observables(const GridWavefunction& psi) const {
    const Eigen::Index n = psi.re.size();
    const double dx = spec_.dx();
    GridObservables obs;

    const Eigen::ArrayXd density = psi.re * psi.re + psi.im * psi.im;
    obs.norm = density.sum() * dx;
    for (int j = 0; j < n; ++j) {
        obs.x_mean += density[j] * spec_.x(j);
        obs.force_mean += density[j] * du_[j];
    }
    obs.x_mean *= dx / obs.norm;
    obs.force_mean *= dx / obs.norm;

    // <p> = hbar Im int psi^* psi' dx, 7-point centered first derivative
    // (6th order; the lower-order stencils bias <p> by O((k dx)^2) at the
    // k ~ 10/ell wavenumbers of kicked packets)
    auto deriv = [&](const Eigen::ArrayXd& f, Eigen::Index j) {
        auto at = [&](Eigen::Index i) { return (i < 0 || i >= n) ? 0.0 : f[i]; };
        return (45.0 * (at(j + 1) - at(j - 1)) - 9.0 * (at(j + 2) - at(j - 2)) +
                (at(j + 3) - at(j - 3))) /
               (60.0 * dx);
    };
    double p_acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
        p_acc += psi.re[j] * deriv(psi.im, j) - psi.im[j] * deriv(psi.re, j);
    obs.p_mean = kHbar * p_acc * dx / obs.norm;

    Eigen::ArrayXd hr(n), hi(n);
    apply_h(psi.re, hr);
    apply_h(psi.im, hi);
    obs.energy = ((psi.re * hr + psi.im * hi).sum()) * dx / obs.norm;
    return obs;
}

Complex SchrodingerSolver::value_at(const GridWavefunction& psi, double x) const {
    const double dx = spec_.dx();
    const double pos = (x - spec_.x_min) / dx;
    const int j = std::clamp(int(std::floor(pos)), 0, spec_.n_points - 2);
    const double w = pos - j;
    return Complex(psi.re[j] * (1.0 - w) + psi.re[j + 1] * w,
                   psi.im[j] * (1.0 - w) + psi.im[j + 1] * w);
}

Complex grid_overlap(const GridWavefunction& a, const GridWavefunction& b) {
    if (a.re.size() != b.re.size())
        throw Error("grid_overlap: mismatched grids");
    Complex acc = 0.0;
    for (Eigen::Index j = 0; j < a.re.size(); ++j)
        acc += Complex(a.re[j], -a.im[j]) * Complex(b.re[j], b.im[j]);
    return acc * a.spec.dx();
}

double overlap_phase(const GridWavefunction& a, const GridWavefunction& b) {
    const Complex ov = grid_overlap(a, b);
    const double scale = std::sqrt(a.norm() * b.norm());
    if (std::abs(ov) <= 1e-6 * scale)
        throw PhaseUndefined("overlap_phase: packets do not overlap");
    return std::arg(ov);
}

double nearest_branch(double raw, double reference) {
    const double two_pi = 2.0 * M_PI;
    return raw + two_pi * std::round((reference - raw) / two_pi);
}

namespace {
constexpr char kMagic[8] = {'A', 'A', 'I', 'W', 'F', '1', '\0', '\0'};
}

void write_snapshot(const std::string& path, const GridWavefunction& psi) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("write_snapshot: cannot open " + path);
    out.write(kMagic, 8);
    const std::int64_t n = psi.re.size();
    const double x_min = psi.spec.x_min;
    const double dx = psi.spec.dx();
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(&x_min), 8);
    out.write(reinterpret_cast<const char*>(&dx), 8);
    for (std::int64_t j = 0; j < n; ++j) {
        out.write(reinterpret_cast<const char*>(&psi.re[j]), 8);
        out.write(reinterpret_cast<const char*>(&psi.im[j]), 8);
    }
    if (!out)
        throw Error("write_snapshot: short write to " + path);
}

GridWavefunction read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("read_snapshot: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw Error("read_snapshot: bad magic in " + path);
    std::int64_t n = 0;
    double x_min = 0.0, dx = 0.0;
    in.read(reinterpret_cast<char*>(&n), 8);
    in.read(reinterpret_cast<char*>(&x_min), 8);
    in.read(reinterpret_cast<char*>(&dx), 8);
    if (!in || n < 2)
        throw Error("read_snapshot: bad header in " + path);
    GridWavefunction psi;
    psi.spec.x_min = x_min;
    psi.spec.x_max = x_min + dx * double(n - 1);
    psi.spec.n_points = int(n);
    psi.re.resize(n);
    psi.im.resize(n);
    for (std::int64_t j = 0; j < n; ++j) {
        in.read(reinterpret_cast<char*>(&psi.re[j]), 8);
        in.read(reinterpret_cast<char*>(&psi.im[j]), 8);
    }
    if (!in)
        throw Error("read_snapshot: truncated data in " + path);
    return psi;
}

} // namespace aai
