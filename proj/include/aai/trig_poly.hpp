#pragma once

#include <cmath>
#include <compare>
#include <complex>
#include <map>

#include "aai/errors.hpp"
#include "aai/units.hpp"

namespace aai {

/// Finite sum  f(t) = sum_{k,p} c_{k,p} t^p e^{i k omega t}  with integer
/// frequency index k and t-power p in {0,1}. This is the closed form of every
/// integrand and integral produced by the first-order theory: products of
/// sines and cosines stay in this family, and one time integration raises p
/// by at most one (secular terms). Resonances are detected on the exact
/// integer index k == 0, never by a floating-point threshold.
class TrigPoly {
public:
    struct Key {
        int k = 0; // frequency index, multiplies omega
        int p = 0; // explicit t power, 0 or 1
        auto operator<=>(const Key&) const = default;
    };
    using TermMap = std::map<Key, Complex>;

    TrigPoly() = default;
    explicit TrigPoly(double omega) : omega_(omega) {}

    static TrigPoly constant(Complex c, double omega) {
        TrigPoly f(omega);
        f.add_term(0, 0, c);
        return f;
    }
    /// c * e^{i k omega t}
    static TrigPoly harmonic(int k, Complex c, double omega) {
        TrigPoly f(omega);
        f.add_term(k, 0, c);
        return f;
    }
    static TrigPoly cosine(double omega) {
        TrigPoly f(omega);
        f.add_term(1, 0, 0.5);
        f.add_term(-1, 0, 0.5);
        return f;
    }
    static TrigPoly sine(double omega) {
        TrigPoly f(omega);
        f.add_term(1, 0, Complex(0.0, -0.5));
        f.add_term(-1, 0, Complex(0.0, 0.5));
        return f;
    }

    double omega() const { return omega_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Complex coefficient(int k, int p) const {
        auto it = terms_.find(Key{k, p});
        return it == terms_.end() ? Complex(0.0) : it->second;
    }

    void add_term(int k, int p, Complex c) {
        if (p < 0 || p > 1)
            throw PowerOverflow("TrigPoly: t-power outside {0,1}");
        if (c == Complex(0.0))
            return;
        auto [it, fresh] = terms_.try_emplace(Key{k, p}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == Complex(0.0))
                terms_.erase(it);
        }
    }

    Complex evaluate(double t) const {
        Complex acc = 0.0;
        for (const auto& [key, c] : terms_) {
            Complex term = c * std::exp(Complex(0.0, key.k * omega_ * t));
            if (key.p == 1)
                term *= t;
            acc += term;
        }
        return acc;
    }

    /// For polys carrying the reality symmetry c_{-k,p} = conj(c_{k,p}).
    double evaluate_real(double t) const { return evaluate(t).real(); }

    double max_coefficient() const {
        double m = 0.0;
        for (const auto& [key, c] : terms_)
            m = std::max(m, std::abs(c));
        return m;
    }

    bool has_reality_symmetry(double tol = 1e-12) const {
        const double scale = std::max(max_coefficient(), 1e-300);
        for (const auto& [key, c] : terms_)
            if (std::abs(c - std::conj(coefficient(-key.k, key.p))) > tol * scale)
                return false;
        return true;
    }

    TrigPoly& operator+=(const TrigPoly& o) {
        check_same_omega(o);
        for (const auto& [key, c] : o.terms_)
            add_term(key.k, key.p, c);
        return *this;
    }
    TrigPoly& operator-=(const TrigPoly& o) {
        check_same_omega(o);
        for (const auto& [key, c] : o.terms_)
            add_term(key.k, key.p, -c);
        return *this;
    }
    TrigPoly& operator*=(Complex s) {
        if (s == Complex(0.0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [key, c] : terms_)
            c *= s;
        return *this;
    }

    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator*(TrigPoly a, Complex s) { return a *= s; }
    friend TrigPoly operator*(Complex s, TrigPoly a) { return a *= s; }

    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
        a.check_same_omega(b);
        TrigPoly out(a.omega_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                if (ka.p + kb.p > 1)
                    throw PowerOverflow("TrigPoly: product term has t-power > 1");
                out.add_term(ka.k + kb.k, ka.p + kb.p, ca * cb);
            }
        return out;
    }

    /// Multiply by e^{i s omega t}: shifts every frequency index by s.
    TrigPoly frequency_shifted(int s) const {
        TrigPoly out(omega_);
        for (const auto& [key, c] : terms_)
            out.add_term(key.k + s, key.p, c);
        return out;
    }

    TrigPoly conjugated() const {
        TrigPoly out(omega_);
        for (const auto& [key, c] : terms_)
            out.add_term(-key.k, key.p, std::conj(c));
        return out;
    }

    /// (f + conj f)/2; evaluates to Re f(t) for all t.
    TrigPoly real_part() const {
        TrigPoly out = conjugated();
        out += *this;
        out *= 0.5;
        return out;
    }

    TrigPoly derivative() const {
        TrigPoly out(omega_);
        for (const auto& [key, c] : terms_) {
            out.add_term(key.k, key.p, c * Complex(0.0, key.k * omega_));
            if (key.p == 1)
                out.add_term(key.k, 0, c);
        }
        return out;
    }

    /// Symbolic antiderivative F with F(0) not normalized; requires every
    /// input term to have p = 0 when k = 0 would force t^2/2 out of the family.
    TrigPoly antiderivative() const {
        TrigPoly out(omega_);
        for (const auto& [key, c] : terms_) {
            if (key.k == 0) {
                if (key.p == 1)
                    throw PowerOverflow("TrigPoly: antiderivative of t is t^2/2");
                out.add_term(0, 1, c); // secular term
            } else {
                const Complex ikw(0.0, key.k * omega_);
                if (key.p == 0) {
                    out.add_term(key.k, 0, c / ikw);
                } else {
                    // int t e^{ikwt} = e^{ikwt} (t/(ikw) - 1/(ikw)^2)
                    out.add_term(key.k, 1, c / ikw);
                    out.add_term(key.k, 0, -c / (ikw * ikw));
                }
            }
        }
        return out;
    }

    /// Definite integral over [0, t]. Unlike antiderivative(), this also
    /// accepts (k=0, p=1) terms, contributing c t^2/2 to the value.
    Complex integrate(double t) const {
        Complex acc = 0.0;
        TrigPoly rest(omega_);
        for (const auto& [key, c] : terms_) {
            if (key.k == 0 && key.p == 1)
                acc += c * t * t / 2.0;
            else
                rest.add_term(key.k, key.p, c);
        }
        const TrigPoly F = rest.antiderivative();
        return acc + F.evaluate(t) - F.evaluate(0.0);
    }

private:
    void check_same_omega(const TrigPoly& o) const {
        if (omega_ != o.omega_)
            throw Error("TrigPoly: mixed carrier frequencies");
    }

    double omega_ = 1.0;
    TermMap terms_;
};

/// x_c(t) = x_i cos(omega t) + (v_i/omega) sin(omega t) as a TrigPoly.
inline TrigPoly classical_center(const PhaseSpacePoint& init, const TrapSpec& trap) {
    TrigPoly f(trap.omega);
    const Complex half_minus(init.x / 2.0, -init.v / (2.0 * trap.omega));
    f.add_term(1, 0, half_minus);
    f.add_term(-1, 0, std::conj(half_minus));
    return f;
}

} // namespace aai
