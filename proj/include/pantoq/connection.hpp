#pragma once

#include <cmath>
#include <limits>

#include "pantoq/qcore.hpp"
#include "pantoq/series.hpp"
#include "pantoq/types.hpp"

// Connection formulas between the solution F at the origin and the canonical
// system at infinity: the bilateral Gamma-weighted G-sum, its regrouping
// through Psi in the modular variable, Fourier expansions of theta-quotient
// character functions, the Ramanujan Laurent expansion, and the periodic
// coefficient family g_n.

namespace pantoq::connection {

struct ConnectionParams {
    Complex mu;
    int K = 4;  // bilateral cutoff for the k-sum / Psi rings
    QContext ctx;
};

namespace detail {

// kappa (q^mu;q)_inf / (2 pi (q;q)_inf)
inline Complex leading_constant(Complex mu, const QContext& ctx) {
    const Complex alpha = std::exp(mu * ctx.ln_q);
    const Complex a_inf = qcore::qpoch_inf(alpha, ctx).value;
    const double q_inf = qcore::qpoch_inf(Complex(ctx.q, 0.0), ctx).value.real();
    return ctx.kappa * a_inf / (2.0 * kPi * q_inf);
}

inline void require_right_half_plane(const SurfacePoint& x) {
    if (!(std::abs(x.argument) < kPi / 2.0))
        throw std::domain_error("connection: x must satisfy |arg x| < pi/2");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// RHS of the connection formula:
//   F(mu;q,x) = kappa (q^mu;q)_inf / (2 pi (q;q)_inf)
//               * sum_k Gamma(mu_k) x^{-mu_k} G(mu_k; q, 1/x),   mu_k = mu + i k kappa

inline SeriesValue connection_rhs(const ConnectionParams& p, const SurfacePoint& x) {
    const QContext& ctx = p.ctx;
    detail::require_right_half_plane(x);
    if (degenerate_index(p.mu, ctx))
        throw std::domain_error(
            "connection_rhs: degenerate mu (use degenerate_identity instead)");
    const Complex lx = x.log();
    const Complex inv_x = std::exp(-lx);
    Complex sum(0.0, 0.0);
    double ring = 0.0;
    for (int k = -p.K; k <= p.K; ++k) {
        const Complex mu_k = p.mu + kI * (ctx.kappa * k);
        const Complex t = std::exp(qcore::log_gamma(mu_k) - mu_k * lx) *
                          series::G(mu_k, inv_x, ctx).value;
        sum += t;
        if (std::abs(k) == p.K) ring += std::abs(t);
    }
    const Complex c0 = detail::leading_constant(p.mu, ctx);
    const Complex v = c0 * sum;
    // ring magnitudes decay like exp(-kappa (pi/2 - |arg x|) |k|)
    const double r = std::exp(-ctx.kappa * (kPi / 2.0 - std::abs(x.argument)));
    const double bound = (r < 0.95) ? std::abs(c0) * ring * r / (1.0 - r)
                                    : std::numeric_limits<double>::infinity();
    return {v, bound, 2 * p.K + 1, bound <= ctx.rel_tol * std::abs(v) + 1e-300};
}

// Same double sum regrouped through the modular variable:
//   F = C0 x^{-mu} sum_{n>=0} q^{n(n+1)/2}/(q;q)_n Psi(mu+n, kappa pi/2, x*) (-1/x)^n
// The Psi rings are truncated at the same bilateral cutoff K, so this is an
// exact regrouping of connection_rhs up to the n-tail.
inline SeriesValue connection_psi_rhs(const ConnectionParams& p, const SurfacePoint& x,
                                      int Nn) {
    const QContext& ctx = p.ctx;
    detail::require_right_half_plane(x);
    if (degenerate_index(p.mu, ctx))
        throw std::domain_error(
            "connection_psi_rhs: degenerate mu (use degenerate_identity instead)");
    const Complex xs = x.star(ctx).value();
    const Complex inv_x = std::exp(-x.log());
    Complex sum(0.0, 0.0);
    Complex outer(1.0, 0.0);  // q^{n(n+1)/2}/(q;q)_n (-1/x)^n
    double qn1 = ctx.q;
    double psi_scale = 0.0;
    for (int n = 0; n <= Nn; ++n) {
        const Complex psi = series::psi_partial_sum(p.mu + static_cast<double>(n),
                                                    ctx.kappa * kPi / 2.0, xs, p.K);
        if (n == 0) psi_scale = std::abs(psi);
        sum += outer * psi;
        if (std::abs(outer) * std::max(psi_scale, std::abs(psi)) <
            1e-3 * ctx.rel_tol * std::abs(sum))
            break;
        outer *= qn1 / (1.0 - qn1) * (-inv_x);
        qn1 *= ctx.q;
    }
    const Complex c0 = detail::leading_constant(p.mu, ctx);
    const Complex v = c0 * std::exp(-p.mu * x.log()) * sum;
    const double r = std::exp(-ctx.kappa * (kPi / 2.0 - std::abs(x.argument)));
    const double bound = (r < 0.95) ? 2.0 * std::abs(v) * std::pow(r, p.K + 1) / (1.0 - r)
                                    : std::numeric_limits<double>::infinity();
    return {v, bound, (2 * p.K + 1) * (Nn + 1), std::isfinite(bound)};
}

// Degenerate branch: relative residual of the polynomial identity
//   F(-m;q,x) = (q;q)_m / m! q^{-m(m+1)/2} x^m G(-m;q,1/x)
inline double degenerate_identity(int m, Complex x, const QContext& ctx) {
    if (m < 0) throw std::domain_error("degenerate_identity: m must be >= 0");
    const Complex lhs = series::F(Complex(-static_cast<double>(m), 0.0), x, ctx).value;
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    const double qq_m = qcore::qpoch(Complex(ctx.q, 0.0), m, ctx).value.real();
    const Complex rhs = qq_m / fact * std::exp(-0.5 * m * (m + 1) * ctx.ln_q) *
                        std::pow(x, m) *
                        series::G(Complex(-static_cast<double>(m), 0.0), 1.0 / x, ctx).value;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

// ---------------------------------------------------------------------------
// Fourier expansion of the character function theta(-q^mu x)/theta(-x) on the
// sector S(-2 m pi, 2(1-m) pi):
//   theta(-q^mu x)/theta(-x) = C(q,m,mu) x^{-mu}
//        sum_l e^{2 pi (m-1) kappa l} x^{-i kappa l} / (1 - e^{2 pi i (mu + i kappa l)})

inline Complex character_constant(Complex mu, int m, const QContext& ctx) {
    const Complex alpha = std::exp(mu * ctx.ln_q);
    const Complex alpha1 = std::exp((1.0 - mu) * ctx.ln_q);
    const double q_inf = qcore::qpoch_inf(Complex(ctx.q, 0.0), ctx).value.real();
    return ctx.kappa * qcore::qpoch_inf(alpha, ctx).value *
           qcore::qpoch_inf(alpha1, ctx).value *
           std::exp(2.0 * (1.0 - m) * kPi * kI * mu) / (kI * q_inf * q_inf);
}

struct CharacterExpansion {
    int m = 1;
    Complex mu;
    Complex C_qm;       // closed-form constant above
    int ell_range = 3;  // bilateral cutoff used
};

inline SeriesValue character_fourier(Complex mu, int m, const SurfacePoint& x, int L,
                                     const QContext& ctx) {
    if (std::abs(mu.imag()) < 1e-9 && std::abs(mu.real() - std::round(mu.real())) < 1e-9)
        throw std::domain_error("character_fourier: mu must not be an integer");
    const double lo = -2.0 * m * kPi, hi = 2.0 * (1 - m) * kPi;
    if (!(x.argument > lo && x.argument < hi))
        throw std::domain_error("character_fourier: arg x outside the sector");
    const double k = ctx.kappa;
    const Complex lx = x.log();
    auto term = [&](int l) -> Complex {
        // e^{2 pi (m-1) kappa l} x^{-i kappa l} with the stable 1/(1-w) split
        const Complex base = static_cast<double>(l) * (2.0 * kPi * (m - 1) * k - kI * k * lx);
        if (l >= 0) {
            const Complex w = std::exp(2.0 * kPi * kI * mu - 2.0 * kPi * k * l);
            return std::exp(base) / (1.0 - w);
        }
        const Complex winv = std::exp(-2.0 * kPi * kI * mu + 2.0 * kPi * k * l);
        return -std::exp(base + 2.0 * kPi * k * l - 2.0 * kPi * kI * mu) / (1.0 - winv);
    };
    Complex sum(0.0, 0.0);
    for (int l = -L; l <= L; ++l) sum += term(l);
    const Complex v = character_constant(mu, m, ctx) * std::exp(-mu * lx) * sum;
    // decay rates of the two tails inside the sector
    const double rp = std::exp(k * (2.0 * kPi * (m - 1) + x.argument));
    const double rm = std::exp(-k * (2.0 * kPi * m + x.argument));
    double bound = std::numeric_limits<double>::infinity();
    if (rp < 0.95 && rm < 0.95)
        bound = std::abs(v) * (std::abs(term(L)) * rp / (1.0 - rp) +
                               std::abs(term(-L)) * rm / (1.0 - rm)) /
                std::max(std::abs(sum), 1e-300);
    return {v, bound, 2 * L + 1, bound <= ctx.rel_tol * std::abs(v) + 1e-300};
}

// ---------------------------------------------------------------------------
// Ramanujan Laurent expansion of theta(-lambda x)/theta(-x) on q^m < |x| < q^{m-1}:
//   lambda^{1-m} theta(-lambda) / (q;q)_inf^3 * sum_l (q^{1-m} x)^l / (1 - lambda q^l)

inline SeriesValue ramanujan_laurent(Complex lambda, int m, Complex x, int L,
                                     const QContext& ctx) {
    const double lmod = std::abs(lambda);
    const double k_hat = std::round(std::log(lmod) / ctx.ln_q);
    if (std::abs(lambda / std::exp(k_hat * ctx.ln_q) - 1.0) < 1e-9)
        throw std::domain_error("ramanujan_laurent: lambda must avoid q^Z");
    const double xm = std::abs(x);
    const double qm = std::exp(m * ctx.ln_q), qm1 = std::exp((m - 1) * ctx.ln_q);
    if (!(xm > qm && xm < qm1))
        throw std::domain_error("ramanujan_laurent: |x| outside the open annulus (q^m, q^{m-1})");
    const Complex zp = std::exp((1 - m) * ctx.ln_q) * x;   // q^{1-m} x, |zp| < 1
    const Complex zm = std::exp(m * ctx.ln_q) / x;         // q^m / x,   |zm| < 1
    Complex sum(0.0, 0.0);
    Complex zp_l(1.0, 0.0);
    double q_l = 1.0;
    for (int l = 0; l <= L; ++l) {
        sum += zp_l / (1.0 - lambda * q_l);
        zp_l *= zp;
        q_l *= ctx.q;
    }
    Complex zm_l(1.0, 0.0);
    double qml = 1.0;  // q^{|l|}
    for (int l = 1; l <= L; ++l) {
        zm_l *= zm;
        qml *= ctx.q;
        sum -= zm_l / (lambda * (1.0 - qml / lambda));
    }
    const double q_inf = qcore::qpoch_inf(Complex(ctx.q, 0.0), ctx).value.real();
    const Complex pref = std::pow(lambda, 1 - m) * qcore::theta(-lambda, ctx).value /
                         (q_inf * q_inf * q_inf);
    const Complex v = pref * sum;
    const double rp = std::abs(zp), rm = std::abs(zm);
    const double bound = std::abs(pref) * (std::abs(zp_l) * rp / (1.0 - rp) +
                                           std::abs(zm_l) * rm / (1.0 - rm));
    return {v, bound, 2 * L + 1, bound <= ctx.rel_tol * std::abs(v) + 1e-300};
}

// ---------------------------------------------------------------------------
// Periodic coefficient family of the x -> +infinity expansion:
//   g_n(s) = (-1)^n kappa (q^mu;q)_inf / (2 pi (q;q)_inf) Psi(n+mu, kappa pi/2, e^{-i kappa s})
// with period |ln q| in s; they satisfy g_{n+1} = g_n' - (mu+n) g_n.

inline Complex km_g(int n, Complex mu, double s, const QContext& ctx, int L) {
    if (degenerate_index(mu, ctx))
        throw std::domain_error("km_g: degenerate mu");
    const Complex z = std::exp(-kI * (ctx.kappa * s));
    const Complex psi = series::psi_partial_sum(mu + static_cast<double>(n),
                                                ctx.kappa * kPi / 2.0, z, L);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * detail::leading_constant(mu, ctx) * psi;
}

}  // namespace pantoq::connection
