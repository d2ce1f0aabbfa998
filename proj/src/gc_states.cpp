#include "aai/gc_states.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace aai {

double FnPoly::coefficient(int j, double eta) const {
    if (j < 0 || j >= int(frac.size()))
        return 0.0;
    double lgamma_n1 = std::lgamma(double(n) + 1.0);
    return frac[j].value() * std::pow(eta, lambda - j) * std::exp(-0.5 * lgamma_n1);
}

double FnPoly::evaluate(double x_c, double eta) const {
    double acc = 0.0;
    for (int j = int(frac.size()) - 1; j >= 0; --j)
        acc = acc * x_c + coefficient(j, eta);
    return acc;
}

FnPoly p_lambda(int lambda) {
    if (lambda < 1)
        throw Error("p_lambda: lambda must be >= 1");
    FnPoly p;
    p.lambda = lambda;
    p.n = 0;
    p.frac.assign(lambda + 1, Fraction(0));
    // coefficient of x_c^(lambda-k) is lambda! / (2^(k/2) (k/2)! (lambda-k)!), even k
    for (int k = 0; k <= lambda; k += 2) {
        std::int64_t c = 1;
        for (int i = lambda - k + 1; i <= lambda; ++i)
            c *= i; // lambda!/(lambda-k)!
        std::int64_t d = 1;
        for (int i = 1; i <= k / 2; ++i)
            d *= 2 * i; // 2^(k/2) (k/2)!
        p.frac[lambda - k] = Fraction(c, d);
    }
    return p;
}

namespace {

FnPoly differentiate_step(const FnPoly& f) {
    // g = eta * d f / d x_c for the next n; the 1/sqrt(n) normalization is
    // carried by the n! factor applied at evaluation.
    FnPoly g;
    g.lambda = f.lambda;
    g.n = f.n + 1;
    if (f.frac.size() <= 1) {
        g.frac.clear();
        return g;
    }
    g.frac.assign(f.frac.size() - 1, Fraction(0));
    for (int j = 1; j < int(f.frac.size()); ++j)
        g.frac[j - 1] = f.frac[j] * j;
    bool all_zero = true;
    for (const Fraction& c : g.frac)
        all_zero = all_zero && c.num == 0;
    if (all_zero)
        g.frac.clear();
    return g;
}

} // namespace

const FnPoly& f_n(int lambda, int n) {
    if (lambda < 1 || n < 0)
        throw Error("f_n: need lambda >= 1 and n >= 0");
    static std::map<std::pair<int, int>, FnPoly> memo;
    static std::mutex memo_mutex;
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find({lambda, n});
    if (it != memo.end())
        return it->second;
    FnPoly f = p_lambda(lambda);
    for (int m = 1; m <= n; ++m)
        f = differentiate_step(f);
    return memo.emplace(std::pair{lambda, n}, std::move(f)).first->second;
}

double q_moment(int k) {
    if (k < 0)
        throw Error("q_moment: k must be >= 0");
    if (k % 2 == 1)
        return 0.0;
    // q_0 = q_2 = 1; q_{k+2} = k(k-1) q_{k-2} + q_k
    if (k == 0 || k == 2)
        return 1.0;
    double q_prev2 = 1.0, q_prev1 = 1.0; // q_0, q_2
    double q = 0.0;
    for (int kk = 2; kk + 2 <= k; kk += 2) {
        q = double(kk) * double(kk - 1) * q_prev2 + q_prev1;
        q_prev2 = q_prev1;
        q_prev1 = q;
    }
    return q;
}

double hermite_normalized(int n, double y) {
    if (n < 0 || n > 64)
        throw Error("hermite_normalized: n outside [0, 64]");
    double hm = 1.0; // n = 0
    if (n == 0)
        return hm;
    double h = std::sqrt(2.0) * y; // n = 1
    for (int m = 1; m < n; ++m) {
        const double next =
            y * std::sqrt(2.0 / (m + 1.0)) * h - std::sqrt(double(m) / (m + 1.0)) * hm;
        hm = h;
        h = next;
    }
    return h;
}

Complex gc_overlap(const GCState& a, const GCState& b) {
    if (b.n != 0)
        throw UnsupportedIndex("gc_overlap: right state must have n = 0");
    const Complex al = a.alpha.alpha, be = b.alpha.alpha;
    const Complex base =
        std::exp(-0.5 * std::norm(al - be)) * std::exp(0.5 * (std::conj(al) * be - std::conj(be) * al));
    Complex num = 1.0;
    double fact = 1.0;
    for (int m = 1; m <= a.n; ++m) {
        num *= (be - al);
        fact *= double(m);
    }
    return base * num / std::sqrt(fact);
}

Complex gc_wavefunction(const GCState& s, double x, const TrapSpec& trap) {
    const double ell = trap.ell();
    const PhaseSpacePoint c = phase_space_from_alpha(s.alpha, trap);
    const double y = (x - c.x) / ell;
    const double amp = std::pow(trap.mass * trap.omega / (M_PI * kHbar), 0.25);
    const double phase = trap.mass * c.v * (x - c.x) / kHbar + 0.5 * trap.mass * c.x * c.v / kHbar;
    return amp * hermite_normalized(s.n, y) * std::exp(-0.5 * y * y) *
           std::exp(Complex(0.0, phase));
}

Complex gc_wavefunction(const GCState& s, double x, double t, const TrapSpec& trap) {
    const GCState evolved_state{evolved(s.alpha, t, trap), s.n};
    const double phase = -(s.n + 0.5) * trap.omega * t;
    return std::exp(Complex(0.0, phase)) * gc_wavefunction(evolved_state, x, trap);
}

} // namespace aai
