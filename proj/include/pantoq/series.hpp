#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "pantoq/qcore.hpp"
#include "pantoq/types.hpp"

// Power-series and Dirichlet-series solutions of y'(x) = alpha y(qx) - y(x)
// at the origin: the entire solution F(mu;q,x), the companion series
// G(a;q,z) used at infinity, the Laurent families Psi and Phi built from
// Gamma values on vertical lines, and left-half-plane asymptotics.

namespace pantoq::series {

enum class StopReason { tolerance, max_terms, divergent };

struct TruncationReport {
    int terms_used = 0;
    double tail_bound = 0.0;
    StopReason stop_reason = StopReason::tolerance;
};

namespace detail {

inline Complex q_power(Complex mu, const QContext& ctx) {
    return std::exp(mu * ctx.ln_q);  // q^mu
}

// Terminating series for degenerate mu = -m + k*kappa*i, where
// (q^mu;q)_n = prod_{j<n}(1 - q^{j-m}) vanishes exactly for n > m.
inline Complex f_polynomial(int m, Complex x, const QContext& ctx) {
    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    for (int n = 0; n < m; ++n) {
        const double factor = 1.0 - std::exp((n - m) * ctx.ln_q);
        term *= factor * (-x) / (n + 1.0);
        sum += term;
    }
    return sum;
}

// Adaptive Dirichlet sum (alpha;q)_inf sum alpha^n e^{-q^n x}/(q;q)_n,
// valid for Re(mu) > 0; cancellation-free for Re(x) >= 0 and the natural
// representation deep in the left half-plane.
inline SeriesValue dirichlet_adaptive(Complex mu, Complex x, const QContext& ctx) {
    const Complex alpha = q_power(mu, ctx);
    const Complex pref = qcore::qpoch_inf(alpha, ctx).value;
    Complex sum(0.0, 0.0);
    Complex alpha_n(1.0, 0.0);
    double qq_n = 1.0;  // (q;q)_n
    double qn = 1.0;    // q^n
    const double amag = std::abs(alpha);
    int small = 0;
    int n = 0;
    for (; n < ctx.max_terms; ++n) {
        const Complex term = alpha_n / qq_n * std::exp(-qn * x);
        sum += term;
        small = (std::abs(term) <= ctx.rel_tol * std::abs(sum)) ? small + 1 : 0;
        if (small >= 3) break;
        alpha_n *= alpha;
        qq_n *= (1.0 - ctx.q * qn);
        qn *= ctx.q;
    }
    const double tail = std::pow(amag, n + 1) / ((1.0 - amag) * qq_n) *
                        std::exp(std::max(0.0, -qn * x.real()));
    const Complex v = pref * sum;
    return {v, std::abs(pref) * tail, n + 1, small >= 3};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// F(mu;q,x) = sum (q^mu;q)_n / n! (-x)^n  (entire in x)

inline SeriesValue F(Complex mu, Complex x, const QContext& ctx,
                     TruncationReport* rep = nullptr) {
    const auto deg = degenerate_index(mu, ctx);
    if (deg) {
        const Complex v = detail::f_polynomial(deg->m, x, ctx);
        if (rep) *rep = {deg->m + 1, 0.0, StopReason::tolerance};
        return {v, std::abs(v) * (deg->m + 2) * 1e-16, deg->m + 1, true};
    }
    if (x.real() < -30.0 || (x.real() > 8.0 && mu.real() > 0.0)) {
        // power series cancels catastrophically here; use the Dirichlet form
        if (mu.real() > 0.0) {
            const SeriesValue v = detail::dirichlet_adaptive(mu, x, ctx);
            if (rep) *rep = {v.terms_used, v.abs_err,
                             v.converged ? StopReason::tolerance : StopReason::max_terms};
            return v;
        }
        // Re(mu) <= 0: optimal-truncation partial sum, error reported
        const int n_opt = static_cast<int>(std::ceil(std::log(std::max(2.0, -x.real())) /
                                                     -ctx.ln_q)) + 2;
        const Complex alpha = detail::q_power(mu, ctx);
        const Complex pref = qcore::qpoch_inf(alpha, ctx).value;
        Complex sum(0.0, 0.0);
        Complex alpha_n(1.0, 0.0);
        double qq_n = 1.0, qn = 1.0;
        for (int n = 0; n < n_opt; ++n) {
            sum += alpha_n / qq_n * std::exp(-qn * x);
            alpha_n *= alpha;
            qq_n *= (1.0 - ctx.q * qn);
            qn *= ctx.q;
        }
        const double bound = std::abs(pref) * std::pow(1.0 + std::abs(alpha), n_opt) *
                             std::exp(-qn * x.real()) / qq_n;
        if (rep) *rep = {n_opt, bound, StopReason::tolerance};
        return {pref * sum, bound, n_opt, bound < std::abs(pref * sum)};
    }
    const Complex alpha = detail::q_power(mu, ctx);
    const double amag = std::abs(alpha);
    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    double qn = 1.0;
    double peak = 1.0;
    int small = 0;
    int n = 0;
    double tail = 0.0;
    StopReason reason = StopReason::max_terms;
    while (n < ctx.max_terms) {
        term *= (1.0 - alpha * qn) * (-x) / (n + 1.0);
        qn *= ctx.q;
        ++n;
        sum += term;
        peak = std::max(peak, std::abs(term));
        small = (std::abs(term) <= ctx.rel_tol * std::abs(sum)) ? small + 1 : 0;
        if (small >= 3) {
            const double r = std::abs(x) * (1.0 + amag * qn) / (n + 2.0);
            tail = (r < 0.9) ? std::abs(term) * r / (1.0 - r)
                             : std::numeric_limits<double>::infinity();
            reason = StopReason::tolerance;
            break;
        }
    }
    const double rounding = peak * n * std::numeric_limits<double>::epsilon();
    if (rep) *rep = {n + 1, tail, reason};
    return {sum, tail + rounding, n + 1,
            reason == StopReason::tolerance && std::isfinite(tail)};
}

// ---------------------------------------------------------------------------
// G(a;q,z) = sum (a)_n q^{n(n+1)/2} / (q;q)_n (-z)^n  (entire in z)

inline SeriesValue G(Complex a, Complex z, const QContext& ctx,
                     TruncationReport* rep = nullptr) {
    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    double qn1 = ctx.q;  // q^{n+1}
    int small = 0;
    int n = 0;
    double tail = 0.0;
    StopReason reason = StopReason::max_terms;
    while (n < ctx.max_terms) {
        term *= (a + static_cast<double>(n)) * qn1 / (1.0 - qn1) * (-z);
        qn1 *= ctx.q;
        ++n;
        sum += term;
        small = (std::abs(term) <= ctx.rel_tol * std::abs(sum)) ? small + 1 : 0;
        if (small >= 3) {
            const double r = std::abs(a + static_cast<double>(n)) * qn1 * std::abs(z) /
                             (1.0 - qn1);
            tail = (r < 0.9) ? std::abs(term) * r / (1.0 - r)
                             : std::numeric_limits<double>::infinity();
            reason = StopReason::tolerance;
            break;
        }
    }
    if (rep) *rep = {n + 1, tail, reason};
    return {sum, tail + std::abs(sum) * n * 1e-17, n + 1,
            reason == StopReason::tolerance && std::isfinite(tail)};
}

// ---------------------------------------------------------------------------
// Dirichlet series and Jackson q-integral forms (Re mu > 0)

inline SeriesValue F_dirichlet(Complex mu, Complex x, int N, const QContext& ctx) {
    if (!(mu.real() > 0.0))
        throw std::domain_error("F_dirichlet: requires Re(mu) > 0");
    const Complex alpha = detail::q_power(mu, ctx);
    const Complex pref = qcore::qpoch_inf(alpha, ctx).value;
    Complex sum(0.0, 0.0);
    Complex alpha_n(1.0, 0.0);
    double qq_n = 1.0, qn = 1.0;
    for (int n = 0; n < N; ++n) {
        sum += alpha_n / qq_n * std::exp(-qn * x);
        alpha_n *= alpha;
        qq_n *= (1.0 - ctx.q * qn);
        qn *= ctx.q;
    }
    const double amag = std::abs(alpha);
    const double qq_inf = qcore::qpoch_inf(Complex(ctx.q, 0.0), ctx).value.real();
    const double tail = std::abs(pref) * std::pow(amag, N) *
                        std::exp(-qn * std::min(0.0, x.real())) / (qq_inf * (1.0 - amag));
    const Complex v = pref * sum;
    return {v, tail, N, tail <= ctx.rel_tol * std::abs(v) + 1e-300};
}

// Jackson form: prefactor (alpha;q)_inf / ((1-q)(q;q)_inf) times the
// discrete q-integral (1-q) sum f(q^n) q^n of f(t) = (qt;q)_inf e^{-tx} t^{mu-1}.
inline SeriesValue F_jackson(Complex mu, Complex x, const QContext& ctx) {
    if (!(mu.real() > 0.0))
        throw std::domain_error("F_jackson: requires Re(mu) > 0");
    const Complex alpha = detail::q_power(mu, ctx);
    const double qq_inf = qcore::qpoch_inf(Complex(ctx.q, 0.0), ctx).value.real();
    const Complex pref = qcore::qpoch_inf(alpha, ctx).value / ((1.0 - ctx.q) * qq_inf);
    Complex sum(0.0, 0.0);
    double pn = qq_inf;  // (q^{n+1};q)_inf
    Complex alpha_n(1.0, 0.0);
    double qn = 1.0;
    int small = 0;
    int n = 0;
    for (; n < ctx.max_terms; ++n) {
        const Complex term = pn * std::exp(-qn * x) * alpha_n;
        sum += term;
        small = (std::abs(term) <= ctx.rel_tol * std::abs(sum)) ? small + 1 : 0;
        if (small >= 3) break;
        pn /= (1.0 - ctx.q * qn);  // (q^{n+2};q)_inf = (q^{n+1};q)_inf / (1-q^{n+1})
        alpha_n *= alpha;
        qn *= ctx.q;
    }
    const Complex v = pref * (1.0 - ctx.q) * sum;
    const double tail = std::abs(pref * (1.0 - ctx.q)) * std::abs(alpha_n) /
                        (qq_inf * std::max(1e-16, 1.0 - std::abs(alpha)));
    return {v, tail, n + 1, small >= 3};
}

// d^k/dx^k F(mu;q,x) = (-1)^k (q^mu;q)_k F(mu+k;q,x)
inline Complex F_derivative(Complex mu, Complex x, int k, const QContext& ctx) {
    if (k < 0) throw std::domain_error("F_derivative: k must be nonnegative");
    const Complex alpha = detail::q_power(mu, ctx);
    const Complex sign = (k % 2 == 0) ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
    return sign * qcore::qpoch(alpha, k, ctx).value *
           F(mu + static_cast<double>(k), x, ctx).value;
}

// ---------------------------------------------------------------------------
// Psi(u,v,z) = sum_{n in Z} Gamma(u + 2ivn/pi) z^n on e^{-|v|} < |z| < e^{|v|}

// Raw bilateral partial sum, no domain checks.  Used by boundary scans and
// by the connection formula, which needs a pinned symmetric cutoff.
inline Complex psi_partial_sum(Complex u, double v, Complex z, int N) {
    const double step = 2.0 * v / kPi;
    const Complex lz = std::log(z);
    Complex sum = qcore::gamma(u);
    for (int n = 1; n <= N; ++n) {
        sum += std::exp(qcore::log_gamma(u + kI * (step * n)) + static_cast<double>(n) * lz);
        sum += std::exp(qcore::log_gamma(u - kI * (step * n)) - static_cast<double>(n) * lz);
    }
    return sum;
}

inline SeriesValue Psi(Complex u, double v, Complex z, int N, double tol = 1e-10) {
    if (v == 0.0) throw std::domain_error("Psi: v must be nonzero");
    const double vabs = std::abs(v);
    const double lz = std::log(std::abs(z));
    if (!(std::abs(lz) < vabs))
        throw std::domain_error("Psi: z outside the annulus exp(-|v|) < |z| < exp(|v|)");
    const double step = 2.0 * v / kPi;
    const double m_hat = std::round(-u.real());
    const double k_hat = std::round(u.imag() / step);
    if (m_hat >= 0.0 && std::abs(u - Complex(-m_hat, k_hat * step)) < 1e-9)
        throw std::domain_error("Psi: u on the Gamma-pole lattice");
    const Complex value = psi_partial_sum(u, v, z, N);
    // Stirling tail: ring magnitudes decay like exp(-(|v| -|ln|z||) n) n^{Re u - 1/2}
    const double adj = std::pow(1.0 + 1.0 / std::max(N, 1), u.real() - 0.5);
    const double rp = std::exp(-vabs + lz) * adj;
    const double rm = std::exp(-vabs - lz) * adj;
    double bound = std::numeric_limits<double>::infinity();
    if (rp < 0.95 && rm < 0.95) {
        const double tp = std::abs(std::exp(qcore::log_gamma(u + kI * (step * N)) +
                                            static_cast<double>(N) * std::log(z)));
        const double tm = std::abs(std::exp(qcore::log_gamma(u - kI * (step * N)) -
                                            static_cast<double>(N) * std::log(z)));
        bound = tp * rp / (1.0 - rp) + tm * rm / (1.0 - rm);
    }
    const bool ok = bound <= tol * std::abs(value) + 1e-300;
    return {value, bound, 2 * N + 1, ok};
}

inline SeriesValue Psi(Complex u, double v, const SurfacePoint& z, int N, double tol = 1e-10) {
    return Psi(u, v, z.value(), N, tol);
}

// ---------------------------------------------------------------------------
// Phi(u,mu;q,z) = z^{-i mu/kappa} sum_l Gamma(u+mu+i kappa l) z^l / (1 - e^{2 pi i (mu + i kappa l)})
// on the annulus e^{-3 kappa pi/2} < |z e^{kappa pi}| < e^{3 kappa pi/2}.

inline SeriesValue Phi(Complex u, Complex mu, const SurfacePoint& z, const QContext& ctx,
                       int N) {
    if (std::abs(mu.imag()) < 1e-9 && std::abs(mu.real() - std::round(mu.real())) < 1e-9)
        throw std::domain_error("Phi: mu must not be an integer");
    const double k = ctx.kappa;
    if (!(z.log_modulus > -2.5 * k * kPi && z.log_modulus < 0.5 * k * kPi))
        throw std::domain_error("Phi: z outside the annulus of convergence");
    const Complex lz = z.log();
    auto term = [&](int l) -> Complex {
        const Complex g = qcore::log_gamma(u + mu + kI * (k * l));
        if (l >= 0) {
            const Complex w = std::exp(2.0 * kPi * kI * mu - 2.0 * kPi * k * l);
            if (std::abs(1.0 - w) < 1e-9)
                throw std::domain_error("Phi: mu + i kappa l collides with an integer");
            return std::exp(g + static_cast<double>(l) * lz) / (1.0 - w);
        }
        const Complex winv = std::exp(-2.0 * kPi * kI * mu + 2.0 * kPi * k * l);
        if (std::abs(1.0 - winv) < 1e-9)
            throw std::domain_error("Phi: mu + i kappa l collides with an integer");
        return -std::exp(g + static_cast<double>(l) * (lz + 2.0 * kPi * k) -
                         2.0 * kPi * kI * mu) / (1.0 - winv);
    };
    Complex sum = term(0);
    double tp = 0.0, tm = 0.0, tp_prev = 0.0, tm_prev = 0.0;
    for (int l = 1; l <= N; ++l) {
        tp_prev = tp;
        tm_prev = tm;
        const Complex a = term(l);
        const Complex b = term(-l);
        tp = std::abs(a);
        tm = std::abs(b);
        sum += a + b;
    }
    double bound = std::numeric_limits<double>::infinity();
    const double rp = (tp_prev > 0.0) ? 1.2 * tp / tp_prev : 0.0;
    const double rm = (tm_prev > 0.0) ? 1.2 * tm / tm_prev : 0.0;
    if (rp < 0.95 && rm < 0.95) bound = tp * rp / (1.0 - rp) + tm * rm / (1.0 - rm);
    const Complex pref = std::exp(-(kI * mu / k) * lz);
    const Complex v = pref * sum;
    bound *= std::abs(pref);
    return {v, bound, 2 * N + 1, bound <= ctx.rel_tol * std::abs(v) + 1e-300};
}

// ---------------------------------------------------------------------------
// Left-half-plane N-term asymptote and its error-bound shape C^N e^{-q^N Re x}

inline std::pair<Complex, double> left_asymptote(Complex mu, Complex x, int N,
                                                 const QContext& ctx) {
    if (!(x.real() < 0.0))
        throw std::domain_error("left_asymptote: requires Re(x) < 0");
    const auto deg = degenerate_index(mu, ctx);
    if (deg)  // F is a polynomial here; the series below collapses to it
        return {detail::f_polynomial(deg->m, x, ctx), 0.0};
    const Complex alpha = detail::q_power(mu, ctx);
    const Complex pref = qcore::qpoch_inf(alpha, ctx).value;
    Complex sum(0.0, 0.0);
    Complex alpha_n(1.0, 0.0);
    double qq_n = 1.0, qn = 1.0;
    for (int n = 0; n < N; ++n) {
        sum += alpha_n / qq_n * std::exp(-qn * x);
        alpha_n *= alpha;
        qq_n *= (1.0 - ctx.q * qn);
        qn *= ctx.q;
    }
    const double amag = std::abs(alpha);
    const double qq_inf = qcore::qpoch_inf(Complex(ctx.q, 0.0), ctx).value.real();
    const double cN = (amag < 1.0)
                          ? std::pow(amag, N) / (qq_inf * (1.0 - amag))
                          : std::pow(1.0 + amag, N) / qq_inf;
    const double bound = std::abs(pref) * cN * std::exp(-qn * x.real());
    return {pref * sum, bound};
}

}  // namespace pantoq::series
