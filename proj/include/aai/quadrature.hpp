#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace aai {

/// Gauss-Legendre nodes and weights on [a, b]. Newton iteration on P_n with
/// the usual Chebyshev initial guess; accurate to machine precision for the
/// orders used here (<= a few hundred).
struct GaussLegendre {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    GaussLegendre(int n, double a, double b) : nodes(n), weights(n) {
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                const double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15)
                    break;
            }
            nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
            weights[i] = (b - a) / ((1.0 - x * x) * pp * pp);
        }
    }
};

/// Composite Simpson rule over uniformly spaced samples (n odd => exact
/// composite; even sample counts fall back to a trapezoid on the last panel).
inline double simpson(const Eigen::VectorXd& f, double h) {
    const Eigen::Index n = f.size();
    if (n < 2)
        return 0.0;
    if (n == 2)
        return 0.5 * h * (f[0] + f[1]);
    double acc = 0.0;
    Eigen::Index i = 0;
    for (; i + 2 < n; i += 2)
        acc += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (i + 1 < n) // one panel left over
        acc += 0.5 * h * (f[i] + f[i + 1]);
    return acc;
}

} // namespace aai
