#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

// Core value types shared by every module: the q-context (base q with its
// modular companions), points of the Riemann surface of the logarithm, and
// the error-carrying result type returned by all series/quadrature routines.

namespace pantoq {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kI{0.0, 1.0};

// Fixed base q in (0,1) together with kappa = -2*pi/ln q, the dual base
// q* = exp(-2*pi*kappa), and the working precision policy.
struct QContext {
    double q = 0.5;
    double kappa = 0.0;    // kappa * ln q == -2*pi
    double q_star = 0.0;   // exp(4*pi^2 / ln q); may be denormal for q near 1
    double ln_q = 0.0;
    double rel_tol = 1e-12;
    int max_terms = 600;
};

inline QContext make_context(double q, double rel_tol = 1e-12, int max_terms = 600) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("make_context: q must lie in (0,1)");
    if (!(rel_tol > 0.0))
        throw std::domain_error("make_context: rel_tol must be positive");
    if (max_terms < 16)
        throw std::domain_error("make_context: max_terms must be >= 16");
    QContext ctx;
    ctx.q = q;
    ctx.ln_q = std::log(q);
    ctx.kappa = -2.0 * kPi / ctx.ln_q;
    ctx.q_star = std::exp(-2.0 * kPi * ctx.kappa);
    ctx.rel_tol = rel_tol;
    ctx.max_terms = max_terms;
    return ctx;
}

// A point of the Riemann surface of log: modulus plus an unbounded argument.
// Powers, logs and the modular variable are always computed from this pair,
// never from a wrapped complex value, so windings stay distinguishable.
struct SurfacePoint {
    double log_modulus = 0.0;  // ln|x|
    double argument = 0.0;     // arg x on the universal cover

    static SurfacePoint from_complex(Complex x) {
        if (x == Complex(0.0, 0.0))
            throw std::domain_error("SurfacePoint: x must be nonzero");
        return {std::log(std::abs(x)), std::arg(x)};
    }
    static SurfacePoint polar(double modulus, double argument) {
        if (!(modulus > 0.0))
            throw std::domain_error("SurfacePoint: modulus must be positive");
        return {std::log(modulus), argument};
    }

    double modulus() const { return std::exp(log_modulus); }
    Complex log() const { return {log_modulus, argument}; }
    Complex value() const { return std::exp(Complex(log_modulus, argument)); }

    // x * e^{2 pi i k}: same projection, different sheet.
    SurfacePoint winding(int k) const { return {log_modulus, argument + 2.0 * kPi * k}; }
    SurfacePoint rotated(double phi) const { return {log_modulus, argument + phi}; }
    // multiply the modulus by e^{dl} (real positive scaling)
    SurfacePoint log_scaled(double dl) const { return {log_modulus + dl, argument}; }
    SurfacePoint inverse() const { return {-log_modulus, -argument}; }

    // x^mu = exp(mu Log x), continuous in mu.
    Complex power(Complex mu) const { return std::exp(mu * log()); }

    // Modular variable x^* = x^{-i kappa}; |x^*| = exp(kappa * arg x).
    SurfacePoint star(const QContext& ctx) const {
        return {ctx.kappa * argument, -ctx.kappa * log_modulus};
    }
};

// Complex result with an absolute error estimate and convergence diagnostics.
struct SeriesValue {
    Complex value{0.0, 0.0};
    double abs_err = 0.0;
    int terms_used = 0;
    bool converged = false;
};

// Index of mu on the degenerate lattice Z_{<=0} + kappa*i*Z, when it is
// within tol of a lattice point -m + k*kappa*i.  q^mu = q^{-m} there, so the
// associated power series terminate.
struct DegenerateIndex {
    int m = 0;
    int k = 0;
};

inline std::optional<DegenerateIndex> degenerate_index(Complex mu, const QContext& ctx,
                                                       double tol = 1e-9) {
    const double m_hat = std::round(-mu.real());
    const double k_hat = std::round(mu.imag() / ctx.kappa);
    if (m_hat < 0.0) return std::nullopt;
    const Complex lattice(-m_hat, k_hat * ctx.kappa);
    if (std::abs(mu - lattice) < tol)
        return DegenerateIndex{static_cast<int>(m_hat), static_cast<int>(k_hat)};
    return std::nullopt;
}

}  // namespace pantoq
