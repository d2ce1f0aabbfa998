#pragma once

#include <vector>

#include "aai/errors.hpp"
#include "aai/trig_poly.hpp"
#include "aai/units.hpp"

namespace aai {

/// Anharmonic perturbation V(x) = beta x^lambda on top of the harmonic trap.
/// beta carries units hbar*omega/ell^lambda. Closed-form reference tables
/// exist for lambda in {3..6}; the analytic engine accepts any lambda >= 3.
struct PowerLawPerturbation {
    int lambda = 3;
    double beta = 0.0;

    PowerLawPerturbation() = default;
    PowerLawPerturbation(int lam, double b) : lambda(lam), beta(b) {
        if (lam < 3)
            throw UnsupportedLambda("PowerLawPerturbation: lambda must be >= 3");
    }
};

/// Sum of monomials beta_k x^(lambda_k). The classical machinery works on
/// this form so that the cubic Gaussian effective potential (which adds a
/// linear term) runs through the same code path.
struct MonomialPotential {
    struct Term {
        double beta = 0.0;
        int power = 0;
    };
    std::vector<Term> terms;

    static MonomialPotential from(const PowerLawPerturbation& p) {
        return {{{p.beta, p.lambda}}};
    }

    double value(double x) const {
        double acc = 0.0;
        for (const Term& t : terms)
            acc += t.beta * std::pow(x, t.power);
        return acc;
    }
    double derivative(double x) const {
        double acc = 0.0;
        for (const Term& t : terms)
            if (t.power > 0)
                acc += t.beta * t.power * std::pow(x, t.power - 1);
        return acc;
    }

    /// V(x0(t)) with x0 a pure p=0 TrigPoly.
    TrigPoly value_poly(const TrigPoly& x0) const {
        TrigPoly acc(x0.omega());
        for (const Term& t : terms)
            acc += t.beta * poly_power(x0, t.power);
        return acc;
    }
    /// V'(x0(t)).
    TrigPoly derivative_poly(const TrigPoly& x0) const {
        TrigPoly acc(x0.omega());
        for (const Term& t : terms)
            if (t.power > 0)
                acc += (t.beta * double(t.power)) * poly_power(x0, t.power - 1);
        return acc;
    }

    static TrigPoly poly_power(const TrigPoly& base, int n) {
        TrigPoly acc = TrigPoly::constant(1.0, base.omega());
        for (int i = 0; i < n; ++i)
            acc = acc * base;
        return acc;
    }
};

/// Full trap potential U(x) = (1/2) m omega^2 x^2 + V(x).
inline double trap_potential(double x, const TrapSpec& trap, const MonomialPotential& v) {
    return 0.5 * trap.mass * trap.omega * trap.omega * x * x + v.value(x);
}
inline double trap_force_gradient(double x, const TrapSpec& trap, const MonomialPotential& v) {
    return trap.mass * trap.omega * trap.omega * x + v.derivative(x); // dU/dx
}

} // namespace aai
