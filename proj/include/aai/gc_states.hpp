#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "aai/errors.hpp"
#include "aai/units.hpp"

namespace aai {

/// Generalized coherent state |alpha, n> = D(alpha)|n>: the n-th oscillator
/// eigenstate displaced to complex amplitude alpha.
struct GCState {
    CoherentAmplitude alpha;
    int n = 0;
};

/// Small exact fraction for the polynomial recursion coefficients.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction() = default;
    Fraction(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    Fraction operator*(std::int64_t k) const { return Fraction(num * k, den); }
    Fraction operator/(std::int64_t k) const { return Fraction(num, den * k); }
    double value() const { return double(num) / double(den); }
};

/// Matrix element <alpha,n| x^lambda |alpha,0> as a polynomial in the packet
/// center x_c: coefficient of x_c^j is frac[j] * eta^(lambda-j) / sqrt(n!).
/// Obtained from f_0 = p_lambda by the derivative recursion
/// f_n = (eta/sqrt(n)) d f_{n-1}/d x_c; the fractions stay exact, the square
/// roots are applied once at evaluation time.
struct FnPoly {
    int lambda = 0;
    int n = 0;
    std::vector<Fraction> frac; // index j = power of x_c, size lambda+1

    bool is_zero() const { return frac.empty(); }

    double coefficient(int j, double eta) const;
    double evaluate(double x_c, double eta) const;
};

/// p_lambda(x_c) = <alpha,0| x^lambda |alpha,0>; identical to f_n with n = 0.
FnPoly p_lambda(int lambda);

/// f_n for 0 <= n; zero polynomial for n > lambda. Memoized per (lambda, n).
const FnPoly& f_n(int lambda, int n);

/// q_k = <0|(a + a^dag)^k|0> from the recursion q_{k+2} = k(k-1) q_{k-2} + q_k.
double q_moment(int k);

/// Normalized Hermite value H_n(y)/sqrt(2^n n!) by three-term recurrence;
/// overflow-free up to the documented cap n = 64.
double hermite_normalized(int n, double y);

/// h_n = H_n(0)/sqrt(2^n n!); zero for odd n.
inline double h_center(int n) { return hermite_normalized(n, 0.0); }

/// <alpha,n|beta,0> = <alpha|beta> (beta-alpha)^n / sqrt(n!).
Complex gc_overlap(const GCState& a, const GCState& b);

/// Position wave function <x|alpha,n> at t = 0 (phase convention: the value
/// at the packet center carries exp(i m x_c v_c / 2 hbar)).
Complex gc_wavefunction(const GCState& s, double x, const TrapSpec& trap);

/// Evolved wave function: e^{-i(n+1/2) omega t} <x| alpha e^{-i omega t}, n>.
Complex gc_wavefunction(const GCState& s, double x, double t, const TrapSpec& trap);

} // namespace aai
