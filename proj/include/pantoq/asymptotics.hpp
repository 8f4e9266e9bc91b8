#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <vector>

#include "pantoq/contour.hpp"
#include "pantoq/types.hpp"

// Lambert-W machinery and the saddle-point expansion of
//   u(lambda,x) = int_C exp(x t + (lambda/2) log^2 t) dt
// over a Hankel-type contour: the inverse series l(z) with exact rational
// coefficients, the variant omega(x) = lambda W(x/lambda), the V-coefficient
// polynomials in lambda, the U_N expansion, and the asymptotic evaluator for
// the b=0 solution h(x).

namespace pantoq::asymptotics {

using Rational = boost::multiprecision::cpp_rational;

// Polynomial in lambda with exact rational coefficients, lowest degree first.
using RationalPoly = std::vector<Rational>;

namespace detail {

inline RationalPoly poly_add(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b) {
    if (a.empty() || b.empty()) return {};
    RationalPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline RationalPoly poly_scale(const RationalPoly& a, const Rational& c) {
    RationalPoly r = a;
    for (auto& v : r) v *= c;
    return r;
}

inline void poly_trim(RationalPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline double poly_eval(const RationalPoly& a, double lambda) {
    double r = 0.0;
    for (size_t i = a.size(); i-- > 0;)
        r = r * lambda + a[i].convert_to<double>();
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lambert W, principal branch (continued along the surface when the argument
// carries an unbounded lift).

namespace detail {

inline Complex halley_w(Complex w, Complex z) {
    for (int it = 0; it < 80; ++it) {
        const Complex ew = std::exp(w);
        const Complex f = w * ew - z;
        if (std::abs(f) <= 1e-14 * std::max(1.0, std::abs(z)) && it > 0) return w;
        const Complex fp = ew * (w + 1.0);
        const Complex step = f / (fp - f * (w + 2.0) / (2.0 * w + 2.0));
        w -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(w))) {
            if (std::abs(w * std::exp(w) - z) <= 1e-13 * std::max(1.0, std::abs(z)))
                return w;
        }
    }
    if (std::abs(w * std::exp(w) - z) <= 1e-12 * std::max(1.0, std::abs(z))) return w;
    throw std::runtime_error("lambert_w: Halley iteration did not converge");
}

}  // namespace detail

inline Complex lambert_w(Complex z) {
    if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
    const double e_inv = std::exp(-1.0);
    if (std::abs(z + e_inv) < 1e-14) return {-1.0, 0.0};
    Complex w0;
    if (std::abs(z + e_inv) < 0.25) {
        const Complex pbr = std::sqrt(2.0 * (std::exp(1.0) * z + 1.0));
        w0 = -1.0 + pbr - pbr * pbr / 3.0 + 11.0 * pbr * pbr * pbr / 72.0;
    } else if (std::abs(z) < 0.6) {
        w0 = z * (1.0 - z + 1.5 * z * z);
    } else {
        const Complex L = std::log(z);
        w0 = (std::abs(L) < 0.1) ? Complex(0.567143, 0.0) : L - std::log(L);
    }
    return detail::halley_w(w0, z);
}

// Lift-aware evaluation: the initial guess uses the surface Log, so the
// iteration lands on the analytic continuation of W along arg z.
inline Complex lambert_w(const SurfacePoint& z) {
    const Complex L = z.log();
    if (std::abs(L) < 0.5) return lambert_w(z.value());
    const Complex w0 = L - std::log(L);
    return detail::halley_w(w0, z.value());
}

// Three-term large-z form W ~ log z - log log z + log log z / log z.
inline Complex w_asymptotic(Complex z) {
    const Complex L = std::log(z);
    const Complex L2 = std::log(L);
    return L - L2 + L2 / L;
}

// omega(lambda, x) = lambda W(x/lambda); satisfies omega e^{omega/lambda} = x.
inline Complex omega(double lambda, Complex x) {
    if (!(lambda > 0.0)) throw std::domain_error("omega: lambda must be positive");
    return lambda * lambert_w(x / lambda);
}
inline Complex omega(double lambda, const SurfacePoint& x) {
    if (!(lambda > 0.0)) throw std::domain_error("omega: lambda must be positive");
    return lambda * lambert_w(x.log_scaled(-std::log(lambda)));
}

// ---------------------------------------------------------------------------
// l(z): the analytic inverse with l(0)=0, l'(0)=1 of (1-y) e^y = e^{-z^2/2},
// equal to W(-e^{-1-z^2/2}) + 1 near 0 and analytic for |z| < 2 sqrt(pi).
// Coefficients satisfy c_0 = 0, c_1 = 1 and, from y y' = (1-y) z,
//   (n+1) c_n = -( c_{n-1} + sum_{k=2}^{n-1} k c_k c_{n+1-k} ).

inline std::vector<Rational> ell_coeffs(int N) {
    if (N < 1 || N > 64) throw std::domain_error("ell_coeffs: need 1 <= N <= 64");
    std::vector<Rational> c(N + 1, Rational(0));
    c[1] = 1;
    for (int n = 2; n <= N; ++n) {
        Rational s = c[n - 1];
        for (int k = 2; k <= n - 1; ++k) s += Rational(k) * c[k] * c[n + 1 - k];
        c[n] = -s / Rational(n + 1);
    }
    return c;
}

inline Complex ell(Complex z, int N) {
    const double radius = 2.0 * std::sqrt(kPi);
    if (!(std::abs(z) < radius - 1e-6))
        throw std::domain_error("ell: |z| must stay inside the disc of radius 2 sqrt(pi)");
    static const std::vector<Rational> c = ell_coeffs(64);
    if (N > 64) N = 64;
    Complex sum(0.0, 0.0);
    Complex zn = z;
    for (int n = 1; n <= N; ++n) {
        sum += c[n].convert_to<double>() * zn;
        zn *= z;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// V(sigma) = exp((lambda/2)(l^2 + sigma^2 l + sigma^4/4)) l'(sigma), expanded
// at sigma = 0 with polynomial-in-lambda coefficients; deg V_n = floor(n/2).

inline std::vector<RationalPoly> V_coeffs(int N) {
    if (N < 0 || N > 32) throw std::domain_error("V_coeffs: need 0 <= N <= 32");
    const std::vector<Rational> c = ell_coeffs(N + 2);
    // scalar series: l, l^2, sigma^2 l, sigma^4/4, summed into S
    std::vector<Rational> ell_s(N + 1, Rational(0));
    for (int n = 1; n <= N; ++n) ell_s[n] = c[n];
    std::vector<Rational> S(N + 1, Rational(0));
    for (int i = 1; i <= N; ++i)
        for (int j = 1; i + j <= N; ++j) S[i + j] += ell_s[i] * ell_s[j];
    for (int n = 1; n + 2 <= N; ++n) S[n + 2] += ell_s[n];
    if (N >= 4) S[4] += Rational(1, 4);
    // E = (lambda/2) S has coefficients linear in lambda
    std::vector<RationalPoly> E(N + 1);
    for (int n = 0; n <= N; ++n) E[n] = RationalPoly{Rational(0), S[n] / 2};
    // B = exp(E) via B_n = (1/n) sum_{k=1}^{n} k E_k B_{n-k}
    std::vector<RationalPoly> B(N + 1);
    B[0] = RationalPoly{Rational(1)};
    for (int n = 1; n <= N; ++n) {
        RationalPoly acc;
        for (int k = 1; k <= n; ++k)
            acc = detail::poly_add(acc, detail::poly_scale(detail::poly_mul(E[k], B[n - k]),
                                                           Rational(k)));
        B[n] = detail::poly_scale(acc, Rational(1, n));
        detail::poly_trim(B[n]);
    }
    // V_n = sum_k B_k * l'_{n-k},  l'_j = (j+1) c_{j+1}
    std::vector<RationalPoly> V(N + 1);
    for (int n = 0; n <= N; ++n) {
        RationalPoly acc;
        for (int k = 0; k <= n; ++k) {
            const Rational lp = Rational(n - k + 1) * c[n - k + 1];
            acc = detail::poly_add(acc, detail::poly_scale(B[k], lp));
        }
        detail::poly_trim(acc);
        V[n] = acc;
    }
    return V;
}

// Exact coefficient of (-1/z)^n in the U-expansion: (2n)! V_{2n} / (2^n n!).
inline RationalPoly u_expansion_coefficient(int n) {
    if (n < 0 || 2 * n > 32)
        throw std::domain_error("u_expansion_coefficient: need 0 <= n <= 16");
    const auto V = V_coeffs(2 * n);
    boost::multiprecision::cpp_int num = 1, den = 1;
    for (int j = 2; j <= 2 * n; ++j) num *= j;
    for (int j = 2; j <= n; ++j) den *= j;
    den <<= n;
    return detail::poly_scale(V[2 * n], Rational(num, den));
}

// U_N(z) = 1 + sum_{n=1}^N (2n)! V_{2n}/(2^n n!) (-1/z)^n
inline Complex U_N_eval(Complex z, double lambda, int N) {
    static const std::vector<RationalPoly> V = V_coeffs(32);
    if (2 * N > 32) throw std::domain_error("U_N_eval: N too large (max 16)");
    Complex sum(1.0, 0.0);
    Complex zp(1.0, 0.0);
    double fact = 1.0;  // (2n)!/(2^n n!)
    for (int n = 1; n <= N; ++n) {
        fact *= 2.0 * n - 1.0;  // (2n)!/(2^n n!) ratio
        zp *= -1.0 / z;
        sum += fact * detail::poly_eval(V[2 * n], lambda) * zp;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Saddle-point evaluator: u(x) ~ i e^{omega^2/(2 lambda) + (1 - 1/lambda) omega}
//                                  sqrt(2 pi / omega) (U_N(omega) + r_N),
// |r_N| <= C A^N N! / omega(|x|)^{N+1}.  C and A are fitted on the contour
// oracle ladder; the bound's shape is what the tests assert.

inline constexpr double kRemainderC = 2.0;
inline constexpr double kRemainderA = 6.0;

inline std::pair<Complex, double> u_saddle(double lambda, const SurfacePoint& x, int N) {
    const Complex om = omega(lambda, x);
    const Complex pref =
        kI * std::exp(om * om / (2.0 * lambda) + (1.0 - 1.0 / lambda) * om) *
        std::sqrt(2.0 * kPi / om);
    const Complex value = pref * U_N_eval(om, lambda, N);
    const double om_abs = omega(lambda, Complex(x.modulus(), 0.0)).real();
    double fact = 1.0;
    for (int j = 2; j <= N; ++j) fact *= j;
    const double bound = std::abs(pref) * kRemainderC * std::pow(kRemainderA, N) * fact /
                         std::pow(om_abs, N + 1);
    return {value, bound};
}

// Contour oracle: u(x) = (1/x) int_C e^{t + (lambda/2) Log^2(t/x)} dt over a
// Hankel contour; the rescaled kernel continues u to the whole surface.
inline SeriesValue u_contour(double lambda, const SurfacePoint& x,
                             const contour::ContourSpec& spec) {
    if (!(lambda > 0.0)) throw std::domain_error("u_contour: lambda must be positive");
    const Complex lx = x.log();
    auto f = [&](const SurfacePoint& tp) -> Complex {
        const Complex L = tp.log() - lx;
        return std::exp(tp.value() + 0.5 * lambda * L * L);
    };
    double T = spec.cutoff;
    const double A = spec.arm_angle;
    if (T <= 0.0) {
        auto mag = [&](double s) { return std::abs(f(SurfacePoint{std::log(s), A})); };
        T = contour::detail::auto_cutoff(mag, std::max(4.0, 2.0 * spec.radius), 1.25, 1e5);
    }
    SeriesValue r = contour::detail::integrate_pieces(
        f, contour::detail::hankel_pieces(spec.radius, A, T), contour::detail::gl32());
    const Complex inv_x = std::exp(-lx);
    r.value *= inv_x;
    r.abs_err *= std::abs(inv_x);
    return r;
}

inline SeriesValue u_contour(double lambda, const SurfacePoint& x) {
    return u_contour(lambda, x, contour::ContourSpec::hankel());
}

// Unrescaled form int_C e^{x t + (lambda/2) Log^2 t} dt with the whole Hankel
// contour rotated by rot; used to cross-check continuation in arg x.
inline SeriesValue u_contour_rotated(double lambda, const SurfacePoint& x, double rot,
                                     const contour::ContourSpec& spec) {
    const Complex xc = x.value();
    auto f = [&](const SurfacePoint& tp) -> Complex {
        const Complex L = tp.log();
        return std::exp(xc * tp.value() + 0.5 * lambda * L * L);
    };
    double T = spec.cutoff;
    const double A = spec.arm_angle;
    if (T <= 0.0) {
        auto mag = [&](double s) {
            return std::abs(f(SurfacePoint{std::log(s), rot + A}));
        };
        T = contour::detail::auto_cutoff(mag, std::max(4.0, 2.0 * spec.radius), 1.25, 1e5);
    }
    auto pieces = contour::detail::hankel_pieces(spec.radius, A, T);
    for (auto& p : pieces) {
        auto base = p.map;
        p.map = [base, rot](double s, SurfacePoint& t, Complex& dtds) {
            base(s, t, dtds);
            t = t.rotated(rot);
            dtds *= std::exp(Complex(0.0, rot));
        };
    }
    return contour::detail::integrate_pieces(f, pieces, contour::detail::gl32());
}

// ---------------------------------------------------------------------------
// Asymptotics of the b=0 canonical solution, with lambda = -1/ln q and
// omega~ = omega(lambda, q^{-3/2} x):
//   h(x) ~ (q ln(1/q))^{-1/2} e^{-(ln q/2) omega~^2 + (1+ln q) omega~}
//          omega~^{-1/2} (1 + sum (2n)! V_{2n}/(2^n n!) (-1/omega~)^n)
// via h(x) = u(-1/ln q, q^{-3/2} x) / (i sqrt(2 pi q ln(1/q))).

inline Complex h_tilde_omega(const SurfacePoint& x, const QContext& ctx) {
    const double lambda = -1.0 / ctx.ln_q;
    return omega(lambda, x.log_scaled(-1.5 * ctx.ln_q));
}

inline Complex h_asymptotic(const SurfacePoint& x, int N, const QContext& ctx) {
    const double lambda = -1.0 / ctx.ln_q;
    const Complex om = h_tilde_omega(x, ctx);
    if (!(std::abs(om) > 5.0))
        throw std::domain_error("h_asymptotic: requires |omega~| > 5 (|x| too small)");
    const double lq = ctx.ln_q;
    const Complex pref = std::exp(-0.5 * lq * om * om + (1.0 + lq) * om) /
                         std::sqrt(ctx.q * (-lq)) / std::sqrt(om);
    return pref * U_N_eval(om, lambda, N);
}

}  // namespace pantoq::asymptotics
