#include "aai/fock.hpp"

#include <cmath>

#include "aai/errors.hpp"
#include "aai/first_order.hpp"
#include "aai/quadrature.hpp"

namespace aai {

Eigen::MatrixXd shifted_position_power_matrix(int lambda, double x_c, int dim,
                                              const TrapSpec& trap) {
    if (lambda < 1)
        throw UnsupportedLambda("shifted_position_power_matrix: lambda must be >= 1");
    if (dim < lambda + 1)
        throw DimensionTooSmall("shifted_position_power_matrix: dim < lambda + 1");
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
    const double eta = trap.eta();
    for (int m = 1; m < dim; ++m) {
        x(m - 1, m) = eta * std::sqrt(double(m));
        x(m, m - 1) = x(m - 1, m);
    }
    x.diagonal().array() += x_c;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(dim, dim);
    for (int i = 0; i < lambda; ++i)
        acc = acc * x;
    return acc;
}

namespace {

struct SecondOrderAmplitudes {
    Complex E0, E1;
};

// E_n = e^{-i n w t} c_n^{(2)} with
// c_n^{(2)} = -(beta^2/hbar^2) Int_0^t dt2 Int_0^{t2} dt1
//             sum_k e^{i(n-k) w t2} M_{nk}(t2) e^{i k w t1} M_{k0}(t1),
// M(t') = (x + x_c(t'))^lambda in the number basis.
SecondOrderAmplitudes second_order_amplitudes(const CoherentAmplitude& alpha_i,
                                              const PowerLawPerturbation& pert,
                                              const TrapSpec& trap, double t, int quad_order,
                                              int dim) {
    const double w = trap.omega;
    const PhaseSpacePoint init = phase_space_from_alpha(alpha_i, trap);
    auto x_center = [&](double tt) {
        return init.x * std::cos(w * tt) + init.v / w * std::sin(w * tt);
    };

    const GaussLegendre outer(quad_order, 0.0, t);
    Eigen::VectorXcd phases(dim);
    Complex acc0 = 0.0, acc1 = 0.0;
    for (int i = 0; i < quad_order; ++i) {
        const double t2 = outer.nodes[i];
        const Eigen::MatrixXd m2 = shifted_position_power_matrix(pert.lambda, x_center(t2), dim, trap);

        const GaussLegendre inner(quad_order, 0.0, t2);
        Eigen::VectorXcd column = Eigen::VectorXcd::Zero(dim);
        for (int j = 0; j < quad_order; ++j) {
            const double t1 = inner.nodes[j];
            const Eigen::MatrixXd m1 =
                shifted_position_power_matrix(pert.lambda, x_center(t1), dim, trap);
            for (int k = 0; k < dim; ++k)
                phases[k] = std::exp(Complex(0.0, k * w * t1));
            column += inner.weights[j] * (phases.array() * m1.col(0).array().cast<Complex>()).matrix();
        }

        for (int k = 0; k < dim; ++k)
            phases[k] = std::exp(Complex(0.0, -k * w * t2));
        Complex s0 = 0.0, s1 = 0.0;
        for (int k = 0; k < dim; ++k) {
            s0 += m2(0, k) * phases[k] * column[k];
            s1 += m2(1, k) * phases[k] * column[k];
        }
        acc0 += outer.weights[i] * s0;                                  // n = 0
        acc1 += outer.weights[i] * std::exp(Complex(0.0, w * t2)) * s1; // n = 1
    }

    const double pref = -pert.beta * pert.beta / (kHbar * kHbar);
    SecondOrderAmplitudes amps;
    amps.E0 = pref * acc0;
    amps.E1 = pref * acc1 * std::exp(Complex(0.0, -w * t));
    return amps;
}

double collect_x2(const CoherentAmplitude& alpha_i, const PowerLawPerturbation& pert,
                  const TrapSpec& trap, double t, const SecondOrderAmplitudes& amps,
                  double* unitarity_residual) {
    const GCFirstOrderState first = first_order_coeffs(alpha_i, pert, trap, t);
    const PhaseSpacePoint c = phase_space_from_alpha(evolved(alpha_i, t, trap), trap);

    double norm2 = 2.0 * amps.E0.real();
    for (const Complex& d : first.D)
        norm2 += std::norm(d);
    if (unitarity_residual)
        *unitarity_residual = norm2;

    double cross = 0.0;
    for (int n = 0; n + 1 < int(first.D.size()); ++n)
        cross += std::sqrt(n + 1.0) * (std::conj(first.D[n]) * first.D[n + 1]).real();

    return c.x * norm2 + std::sqrt(2.0) * trap.ell() * (amps.E1.real() + cross);
}

} // namespace

SecondOrderResult second_order_mean_position_full(const CoherentAmplitude& alpha_i,
                                                  const PowerLawPerturbation& pert,
                                                  const TrapSpec& trap, double t, int quad_order,
                                                  int dim) {
    if (quad_order < 16)
        quad_order = 16;
    if (dim < 0)
        dim = 2 * pert.lambda + 1;
    if (dim < 2 * pert.lambda + 1)
        throw DimensionTooSmall("second_order_mean_position: dim < 2*lambda + 1");

    SecondOrderResult res;
    const SecondOrderAmplitudes coarse =
        second_order_amplitudes(alpha_i, pert, trap, t, quad_order, dim);
    const SecondOrderAmplitudes fine =
        second_order_amplitudes(alpha_i, pert, trap, t, 2 * quad_order, dim);
    const double x2_coarse = collect_x2(alpha_i, pert, trap, t, coarse, nullptr);
    res.x2 = collect_x2(alpha_i, pert, trap, t, fine, &res.unitarity_residual);
    res.quad_order_used = 2 * quad_order;

    const double scale = std::max(std::abs(res.x2), 1e-30);
    if (std::abs(res.x2 - x2_coarse) / scale > 1e-8 && std::abs(res.x2 - x2_coarse) > 1e-14)
        throw QuadratureNotConverged("second_order_mean_position: order doubling changed x2 by " +
                                     std::to_string(std::abs(res.x2 - x2_coarse) / scale));
    return res;
}

double cubic_x2_closed_form(double beta, double amplitude, const TrapSpec& trap, double t) {
    const double m = trap.mass, w = trap.omega, wt = w * t;
    const double a3 = amplitude * amplitude * amplitude;
    const double term1 = beta * beta * a3 / (16.0 * m * m * w * w * w * w) *
                         (-60.0 * wt * std::cos(wt) + 5.0 * std::sin(wt) +
                          32.0 * std::sin(2.0 * wt) - 3.0 * std::sin(3.0 * wt));
    const double term2 = 2.5 * beta * beta * kHbar * amplitude / (m * m * m * w * w * w * w * w) *
                         (-3.0 * wt * std::cos(wt) + std::sin(wt) + std::sin(2.0 * wt));
    return term1 + term2;
}

} // namespace aai
