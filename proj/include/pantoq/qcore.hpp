#pragma once

#include <cmath>
#include <limits>

#include "pantoq/types.hpp"

// Base arithmetic: q-Pochhammer symbols, rising factorials, q-binomials,
// the Jacobi theta function theta(q,x) = sum_{n in Z} q^{n(n-1)/2} x^n
// (series and triple product), the Gaussian factor e(q,x), the theta modular
// relation between bases q and q*, and the complex Gamma function.

namespace pantoq::qcore {

// ---------------------------------------------------------------------------
// q-Pochhammer and friends

// (a;q)_n = prod_{j<n} (1 - a q^j)
inline SeriesValue qpoch(Complex a, int n, const QContext& ctx) {
    if (n < 0) throw std::domain_error("qpoch: n must be nonnegative");
    Complex p(1.0, 0.0);
    double qj = 1.0;
    for (int j = 0; j < n; ++j) {
        p *= (1.0 - a * qj);
        qj *= ctx.q;
    }
    return {p, std::abs(p) * n * std::numeric_limits<double>::epsilon(), n, true};
}

// (a;q)_infty, truncated once |a| q^j drops below 1e-18 with a first-order
// tail correction prod_{j>=J}(1 - a q^j) ~ 1 - a q^J/(1-q).
inline SeriesValue qpoch_inf(Complex a, const QContext& ctx) {
    constexpr double cut = 1e-18;
    Complex p(1.0, 0.0);
    double qj = 1.0;
    const double mag = std::abs(a);
    int j = 0;
    while (mag * qj >= cut && j < 4 * ctx.max_terms) {
        p *= (1.0 - a * qj);
        qj *= ctx.q;
        ++j;
    }
    const Complex tail = a * qj / (1.0 - ctx.q);
    p *= (1.0 - tail);
    const double err = std::abs(p) * (std::norm(tail) + j * std::numeric_limits<double>::epsilon());
    return {p, err, j, mag * qj < cut};
}

// (a)_n = prod_{j<n} (a + j)
inline Complex pochhammer(Complex a, int n) {
    if (n < 0) throw std::domain_error("pochhammer: n must be nonnegative");
    Complex p(1.0, 0.0);
    for (int j = 0; j < n; ++j) p *= (a + static_cast<double>(j));
    return p;
}

// Gaussian binomial (q;q)_n / ((q;q)_k (q;q)_{n-k})
inline Complex qbinomial(int n, int k, const QContext& ctx) {
    if (k < 0 || k > n) throw std::domain_error("qbinomial: need 0 <= k <= n");
    // all factors real positive; evaluate as a running ratio to stay stable
    double num = 1.0, den = 1.0;
    double qj = ctx.q;
    for (int j = 1; j <= n; ++j, qj *= ctx.q) num *= (1.0 - qj);
    qj = ctx.q;
    for (int j = 1; j <= k; ++j, qj *= ctx.q) den *= (1.0 - qj);
    qj = ctx.q;
    for (int j = 1; j <= n - k; ++j, qj *= ctx.q) den *= (1.0 - qj);
    return Complex(num / den, 0.0);
}

// ---------------------------------------------------------------------------
// Theta

namespace detail {

// Bilateral theta sum parameterized by ln q directly, so the dual base q*
// can be passed in log form even when exp(ln q*) underflows.
inline SeriesValue theta_ln_base(double ln_q, Complex x, double rel_tol, int max_terms) {
    if (x == Complex(0.0, 0.0)) throw std::domain_error("theta: x must be nonzero");
    const double q = std::exp(ln_q);
    Complex sum(1.0, 0.0);  // n = 0
    Complex tp(1.0, 0.0);   // q^{n(n-1)/2} x^n
    Complex tm(1.0, 0.0);   // q^{m(m+1)/2} x^{-m}
    const Complex inv_x = 1.0 / x;
    const double ax = std::abs(x);
    int n = 0;
    double bound = std::numeric_limits<double>::infinity();
    while (n < max_terms) {
        ++n;
        tp *= std::exp(ln_q * (n - 1)) * x;
        tm *= std::exp(ln_q * n) * inv_x;
        sum += tp + tm;
        // ratio of consecutive ring magnitudes; certified once it is < 0.9
        const double r = std::exp(ln_q * n) * std::max(ax, std::exp(ln_q) / ax);
        if (r < 0.9) {
            const double next = std::abs(tp) * std::exp(ln_q * n) * ax +
                                std::abs(tm) * std::exp(ln_q * (n + 1)) / ax;
            bound = next / (1.0 - r);
            if (bound <= rel_tol * std::abs(sum) + 1e-300) break;
        }
        if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
            return {sum, bound, 2 * n + 1, false};
    }
    (void)q;
    return {sum, bound, 2 * n + 1, bound <= rel_tol * std::abs(sum) + 1e-300};
}

}  // namespace detail

inline SeriesValue theta(Complex x, const QContext& ctx) {
    return detail::theta_ln_base(ctx.ln_q, x, ctx.rel_tol, ctx.max_terms);
}
inline SeriesValue theta(const SurfacePoint& x, const QContext& ctx) {
    return theta(x.value(), ctx);
}

// theta(z) factored as exp(log_scale) * value with |value| = O(1), using the
// shift identity theta(q^n z0) = q^{-n(n-1)/2} z0^{-n} theta(z0) to pull z
// into the fundamental annulus sqrt(q) <= |z0| < 1/sqrt(q).  Keeps theta
// usable at arguments whose direct series over/underflows.
struct FactoredTheta {
    Complex log_scale{0.0, 0.0};
    Complex value{0.0, 0.0};
};

inline FactoredTheta theta_factored(Complex z, const QContext& ctx) {
    if (z == Complex(0.0, 0.0)) throw std::domain_error("theta_factored: z must be nonzero");
    const Complex lz = std::log(z);
    const double n = std::round(lz.real() / ctx.ln_q);
    const Complex lz0 = lz - n * ctx.ln_q;
    const SeriesValue t0 = theta(std::exp(lz0), ctx);
    return {Complex(-0.5 * n * (n - 1.0) * ctx.ln_q, 0.0) - n * lz0, t0.value};
}

// Triple product (q; q)_inf (-x; q)_inf (-q/x; q)_inf; agrees with theta.
inline SeriesValue theta_triple(Complex x, const QContext& ctx) {
    if (x == Complex(0.0, 0.0)) throw std::domain_error("theta_triple: x must be nonzero");
    const SeriesValue a = qpoch_inf(Complex(ctx.q, 0.0), ctx);
    const SeriesValue b = qpoch_inf(-x, ctx);
    const SeriesValue c = qpoch_inf(-ctx.q / x, ctx);
    const Complex v = a.value * b.value * c.value;
    const double err = std::abs(v) * 1e-14 + a.abs_err * std::abs(b.value * c.value) +
                       b.abs_err * std::abs(a.value * c.value) +
                       c.abs_err * std::abs(a.value * b.value);
    return {v, err, a.terms_used + b.terms_used + c.terms_used,
            a.converged && b.converged && c.converged};
}

// ---------------------------------------------------------------------------
// Gaussian factor and the modular relation

// e(q,x) = exp(-Log^2(x/sqrt q) / (2 ln q)); solves x y(qx) = y(x) on the
// surface, like theta does on C*.
inline Complex e_factor(const SurfacePoint& x, const QContext& ctx) {
    const Complex L(x.log_modulus - 0.5 * ctx.ln_q, x.argument);
    return std::exp(-L * L / (2.0 * ctx.ln_q));
}

// Relative residual of theta(q,-x) = sqrt(kappa) e(q,-x) theta(q*,-x*),
// with -x = e^{i pi} x on the surface.
inline double verify_theta_modular(const SurfacePoint& x, const QContext& ctx) {
    const SurfacePoint minus_x = x.rotated(kPi);
    const Complex lhs = theta(minus_x.value(), ctx).value;
    const double ln_q_star = 4.0 * kPi * kPi / ctx.ln_q;
    const SurfacePoint xs = x.star(ctx);
    const Complex rhs = std::sqrt(ctx.kappa) * e_factor(minus_x, ctx) *
                        detail::theta_ln_base(ln_q_star, -xs.value(), ctx.rel_tol, ctx.max_terms).value;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

// ---------------------------------------------------------------------------
// Complex Gamma (Lanczos, g = 607/128 with 15 coefficients)

namespace detail {

inline constexpr double kLanczosG = 4.7421875;  // 607/128
inline constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

inline Complex lanczos_sum(Complex zm1) {
    Complex s(kLanczos[0], 0.0);
    for (int i = 1; i < 15; ++i) s += kLanczos[i] / (zm1 + static_cast<double>(i));
    return s;
}

// log(sin(pi z)) stable for large |Im z|
inline Complex log_sin_pi(Complex z) {
    const double y = z.imag();
    const Complex ipz = kI * kPi * z;
    if (y > 8.0)  // e^{-i pi z} dominates
        return -ipz - std::log(Complex(0.0, 2.0)) + std::log(1.0 - std::exp(2.0 * ipz));
    if (y < -8.0)
        return ipz - std::log(Complex(0.0, 2.0)) + std::log(1.0 - std::exp(-2.0 * ipz));
    return std::log(std::sin(kPi * z));
}

inline void check_gamma_pole(Complex z) {
    if (z.real() < 0.5 && std::abs(z.imag()) < 0.5) {
        const double n = std::round(z.real());
        if (n <= 0.0 && std::abs(z - Complex(n, 0.0)) < 1e-12)
            throw std::domain_error("gamma: z too close to a nonpositive-integer pole");
    }
}

}  // namespace detail

// log Gamma(z); the imaginary part is the Lanczos branch, adequate wherever
// only exp(log_gamma(...)) is consumed.
inline Complex log_gamma(Complex z) {
    detail::check_gamma_pole(z);
    if (z.real() < 0.5)
        return std::log(Complex(kPi, 0.0)) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    const Complex zm1 = z - 1.0;
    const Complex t = zm1 + detail::kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (zm1 + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(zm1));
}

inline Complex gamma(Complex z) {
    detail::check_gamma_pole(z);
    if (std::abs(z.imag()) > 12.0) return std::exp(log_gamma(z));
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
    const Complex zm1 = z - 1.0;
    const Complex t = zm1 + detail::kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, zm1 + 0.5) * std::exp(-t) *
           detail::lanczos_sum(zm1);
}

}  // namespace pantoq::qcore
