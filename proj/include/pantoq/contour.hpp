#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "pantoq/qcore.hpp"
#include "pantoq/series.hpp"
#include "pantoq/types.hpp"

// Contour-integral solutions: I(alpha;q,x) on a Jordan loop around q^N,
// the ray integrals I_nu, their shift/monodromy/G-reduction identities, and
// the b=0 family f, g, g_-, h with the winding-sum connection.
//
// Quadrature: trapezoid on closed circles (spectrally accurate for periodic
// parameterizations), composite Gauss-Legendre panels on open arms, with an
// error estimate from panel doubling.  Node layouts are fixed functions of
// the inputs, never randomized, so results are deterministic.

namespace pantoq::contour {

enum class ContourKind { jordan_circle, ray, horizontal_line, hankel };

struct ContourSpec {
    ContourKind kind = ContourKind::jordan_circle;
    double radius = 2.0;           // jordan circle R (> 1); hankel core radius
    double angle = kPi / 2.0;      // ray direction d in (0, 2pi)
    double offset = 0.25;          // horizontal line |Im t|
    int line_sign = +1;            // line at +offset*i or -offset*i
    double cutoff = 0.0;           // 0 => choose from the integrand's decay
    double arm_angle = kPi - 0.3;  // hankel arm angle
    int panels = 0;                // 0 => per-kind default (jordan: 256 nodes)

    static ContourSpec jordan(double R = 2.0, int nodes = 256) {
        ContourSpec s;
        s.kind = ContourKind::jordan_circle;
        s.radius = R;
        s.panels = nodes;
        return s;
    }
    static ContourSpec ray(double d, double T = 0.0) {
        ContourSpec s;
        s.kind = ContourKind::ray;
        s.angle = d;
        s.cutoff = T;
        return s;
    }
    static ContourSpec line(double eps, int sign, double T = 0.0) {
        ContourSpec s;
        s.kind = ContourKind::horizontal_line;
        s.offset = eps;
        s.line_sign = sign;
        s.cutoff = T;
        return s;
    }
    static ContourSpec hankel(double r = 0.8, double T = 0.0) {
        ContourSpec s;
        s.kind = ContourKind::hankel;
        s.radius = r;
        s.cutoff = T;
        return s;
    }
};

namespace detail {

using LiftedIntegrand = std::function<Complex(const SurfacePoint&)>;

struct GLRule {
    std::vector<double> x, w;  // nodes/weights on [-1, 1]
};

inline GLRule make_gl(int n) {
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

inline const GLRule& gl16() {
    static const GLRule r = make_gl(16);
    return r;
}
inline const GLRule& gl32() {
    static const GLRule r = make_gl(32);
    return r;
}

// A parameterized sub-path: s in [edges.front(), edges.back()] maps to a
// surface point t(s) with derivative dt/ds.
struct PathPiece {
    std::function<void(double, SurfacePoint&, Complex&)> map;
    std::vector<double> edges;
};

inline Complex integrate_piece(const LiftedIntegrand& f, const PathPiece& piece,
                               const GLRule& rule, int split, long& evals) {
    Complex total(0.0, 0.0);
    SurfacePoint t;
    Complex dtds;
    for (size_t p = 0; p + 1 < piece.edges.size(); ++p) {
        const double lo = piece.edges[p], hi = piece.edges[p + 1];
        for (int s = 0; s < split; ++s) {
            const double a = lo + (hi - lo) * s / split;
            const double b = lo + (hi - lo) * (s + 1) / split;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            Complex acc(0.0, 0.0);
            for (size_t i = 0; i < rule.x.size(); ++i) {
                piece.map(mid + half * rule.x[i], t, dtds);
                acc += rule.w[i] * f(t) * dtds;
                ++evals;
            }
            total += half * acc;
        }
    }
    return total;
}

inline SeriesValue integrate_pieces(const LiftedIntegrand& f,
                                    const std::vector<PathPiece>& pieces,
                                    const GLRule& rule) {
    long evals = 0;
    Complex v1(0.0, 0.0), v2(0.0, 0.0);
    for (const auto& p : pieces) v1 += integrate_piece(f, p, rule, 1, evals);
    for (const auto& p : pieces) v2 += integrate_piece(f, p, rule, 2, evals);
    const double err = std::abs(v2 - v1);
    return {v2, err, static_cast<int>(evals), err <= 1e-8 * std::abs(v2) + 1e-300};
}

// Closed circle |t| = R traversed once counterclockwise, trapezoid rule.
inline SeriesValue integrate_circle(const LiftedIntegrand& f, double R, int nodes) {
    auto pass = [&](int m) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < m; ++j) {
            const double th = 2.0 * kPi * j / m;
            const SurfacePoint t{std::log(R), th};
            acc += f(t) * (kI * t.value());
        }
        return acc * (2.0 * kPi / m);
    };
    const Complex v1 = pass(nodes / 2);
    const Complex v2 = pass(nodes);
    const double err = std::abs(v2 - v1);
    return {v2, err, nodes + nodes / 2, err <= 1e-9 * std::abs(v2) + 1e-300};
}

// Hankel contour: in along arg t = -A from T to r, circle of radius r from
// -A to +A, out along arg t = +A from r to T.
inline std::vector<PathPiece> hankel_pieces(double r, double A, double T,
                                            int circle_panels = 8) {
    std::vector<PathPiece> ps(3);
    std::vector<double> arm;
    arm.push_back(r);
    double w = std::max(0.25, r / 2.0);
    while (arm.back() < T) {
        arm.push_back(std::min(T, arm.back() + w));
        w *= 1.35;
    }
    ps[0].edges = arm;
    ps[0].map = [A](double s, SurfacePoint& t, Complex& dtds) {
        t = SurfacePoint{std::log(s), -A};
        dtds = -std::exp(Complex(0.0, -A));  // traversed from T down to r
    };
    ps[1].edges.resize(circle_panels + 1);
    for (int i = 0; i <= circle_panels; ++i)
        ps[1].edges[i] = -A + 2.0 * A * i / circle_panels;
    const double lr = std::log(r);
    ps[1].map = [lr](double th, SurfacePoint& t, Complex& dtds) {
        t = SurfacePoint{lr, th};
        dtds = kI * t.value();
    };
    ps[2].edges = arm;
    ps[2].map = [A](double s, SurfacePoint& t, Complex& dtds) {
        t = SurfacePoint{std::log(s), A};
        dtds = std::exp(Complex(0.0, A));
    };
    return ps;
}

// March outward until the magnitude falls 19 decades below its running peak.
inline double auto_cutoff(const std::function<double(double)>& mag, double start,
                          double factor = 1.3, double cap = 1e6) {
    double peak = mag(start);
    double s = start;
    while (s < cap) {
        s *= factor;
        const double m = mag(s);
        peak = std::max(peak, m);
        if (m < 1e-19 * peak) return s;
    }
    return cap;
}

// A ray angle with x's sector condition cos(arg x + d) > 0 comfortably met.
inline double auto_ray_angle(double arg_x) {
    const double lo = std::max(1e-3, -arg_x - kPi / 2.0 + 1e-3);
    const double hi = std::min(2.0 * kPi - 1e-3, -arg_x + kPi / 2.0 - 1e-3);
    if (!(lo < hi))
        throw std::domain_error("auto_ray_angle: arg x outside S(-5pi/2, pi/2)");
    return 0.5 * (lo + hi);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Generic quadrature over a ContourSpec path.  The integrand receives the
// complex point; branch-sensitive kernels go through the lifted machinery the
// named operations below use internally.

inline SeriesValue integrate(const std::function<Complex(Complex)>& f,
                             const ContourSpec& spec) {
    auto lifted = [&f](const SurfacePoint& t) { return f(t.value()); };
    switch (spec.kind) {
        case ContourKind::jordan_circle:
            return detail::integrate_circle(lifted, spec.radius,
                                            spec.panels > 0 ? spec.panels : 256);
        case ContourKind::ray: {
            const double T = spec.cutoff > 0.0 ? spec.cutoff : 50.0;
            const double r_min = 1e-21 * std::max(1.0, T);
            detail::PathPiece piece;
            piece.edges.push_back(r_min);
            while (piece.edges.back() < std::min(1.0, T))
                piece.edges.push_back(std::min(std::min(1.0, T), piece.edges.back() * 2.0));
            double w = 0.5;
            while (piece.edges.back() < T) {
                piece.edges.push_back(std::min(T, piece.edges.back() + w));
                w = std::min(2.0, w * 1.2);
            }
            const double d = spec.angle;
            piece.map = [d](double s, SurfacePoint& t, Complex& dtds) {
                t = SurfacePoint{std::log(s), d};
                dtds = std::exp(Complex(0.0, d));
            };
            return detail::integrate_pieces(lifted, {piece}, detail::gl32());
        }
        case ContourKind::horizontal_line: {
            const double T = spec.cutoff > 0.0 ? spec.cutoff : 20.0;
            const double y = spec.line_sign * spec.offset;
            detail::PathPiece piece;
            const double h = std::min(0.3, std::max(1e-3, spec.offset));
            double s = -T;
            piece.edges.push_back(s);
            while (s < T) {
                s = std::min(T, s + h);
                piece.edges.push_back(s);
            }
            piece.map = [y](double sv, SurfacePoint& t, Complex& dtds) {
                t = SurfacePoint::from_complex(Complex(sv, y));
                dtds = Complex(1.0, 0.0);
            };
            return detail::integrate_pieces(lifted, {piece}, detail::gl16());
        }
        case ContourKind::hankel: {
            const double T = spec.cutoff > 0.0 ? spec.cutoff : 45.0;
            return detail::integrate_pieces(
                lifted, detail::hankel_pieces(spec.radius, spec.arm_angle, T),
                detail::gl32());
        }
    }
    throw std::logic_error("integrate: unknown contour kind");
}

// ---------------------------------------------------------------------------
// I(alpha;q,x) = (1/2 pi i) oint theta(-alpha/t) / (1/t;q)_inf e^{-xt} dt/t
// over a loop enclosing {1, q, q^2, ...}; equals (q/alpha;q)_inf F(mu;q,x).

inline SeriesValue I_jordan(Complex mu, Complex x, const ContourSpec& spec,
                            const QContext& ctx) {
    if (!(spec.radius > 1.0))
        throw std::domain_error("I_jordan: circle must enclose q^N, need R > 1");
    const Complex alpha = std::exp(mu * ctx.ln_q);
    auto f = [&](const SurfacePoint& tp) {
        const Complex t = tp.value();
        return qcore::theta(-alpha / t, ctx).value /
               qcore::qpoch_inf(1.0 / t, ctx).value * std::exp(-x * t) / t;
    };
    SeriesValue r =
        detail::integrate_circle(f, spec.radius, spec.panels > 0 ? spec.panels : 256);
    r.value /= 2.0 * kPi * kI;
    r.abs_err /= 2.0 * kPi;
    return r;
}

inline SeriesValue I_jordan(Complex mu, Complex x, const QContext& ctx) {
    return I_jordan(mu, x, ContourSpec::jordan(), ctx);
}

// ---------------------------------------------------------------------------
// I_nu(alpha;q,x) over the ray arg t = d:
//   int_0^{inf e^{id}} theta(-alpha/t)/(1/t;q)_inf e^{-xt} t^nu dt/t
// Needs Re(nu+mu) > 0; converges for arg x in (-d - pi/2, -d + pi/2).
// The kernel is assembled in log space through factored thetas, since both
// theta(-alpha/t) and (1/t;q)_inf overflow long before the head of the ray
// stops contributing.

inline SeriesValue I_nu_ray(Complex nu, Complex mu, const SurfacePoint& x, double d,
                            const ContourSpec& spec, const QContext& ctx) {
    if (!(d > 0.0 && d < 2.0 * kPi))
        throw std::domain_error("I_nu_ray: ray angle d must lie in (0, 2pi)");
    const double p_exp = (nu + mu).real();
    if (!(p_exp > 0.0))
        throw std::domain_error("I_nu_ray: requires Re(nu + mu) > 0");
    const double cosad = std::cos(x.argument + d);
    if (!(cosad > 0.02))
        throw std::domain_error("I_nu_ray: x outside the sector of convergence for this ray");
    const Complex alpha = std::exp(mu * ctx.ln_q);
    const Complex xc = x.value();
    const Complex eid = std::exp(Complex(0.0, d));
    const double lq_inf =
        std::log(qcore::qpoch_inf(Complex(ctx.q, 0.0), ctx).value.real());

    // theta(-alpha/t)/(1/t;q)_inf = (q;q)_inf (qt;q)_inf theta(-alpha/t)/theta(-1/t);
    // returns the integrand without the e^{i nu d} phase, as exp(logpart)*vratio
    auto eval = [&](double r, Complex& logpart, Complex& vratio) {
        const Complex t = r * eid;
        const auto num = qcore::theta_factored(-alpha / t, ctx);
        const auto den = qcore::theta_factored(-1.0 / t, ctx);
        logpart = num.log_scale - den.log_scale + lq_inf +
                  std::log(qcore::qpoch_inf(ctx.q * t, ctx).value) - xc * t +
                  (nu - 1.0) * std::log(r);
        vratio = num.value / den.value;
    };
    auto mag = [&](double r) {
        Complex lp, vr;
        eval(r, lp, vr);
        return std::exp(std::min(700.0, lp.real())) * std::abs(vr) * r;
    };

    double T = spec.cutoff;
    if (T <= 0.0)
        T = detail::auto_cutoff(mag, std::max(2.0, 2.0 / (std::abs(xc) * cosad)), 1.3, 3e3);

    // endpoint substitution r = s^{1/p}, p = max(1, Re(nu+mu)); lower cutoff
    // keeps the head integral near tolerance when the exponent allows it
    const double p = std::max(1.0, p_exp);
    const double r_min =
        std::max(std::exp(std::log(1e-14) / std::min(p_exp, 1.0)), 1e-250);

    std::vector<double> r_edges;
    r_edges.push_back(r_min);
    const double geo = std::exp(-0.5 * ctx.ln_q);  // two panels per theta log-period
    while (r_edges.back() < std::min(1.0, T))
        r_edges.push_back(std::min(std::min(1.0, T), r_edges.back() * geo));
    {
        const double freq = std::abs((xc * eid).imag()) + 0.4;
        double r = r_edges.back();
        while (r < T) {
            const double w = std::min({kPi / freq, -r * ctx.ln_q / 2.0 + 0.25, 2.0});
            r = std::min(T, r + w);
            r_edges.push_back(r);
        }
    }
    detail::PathPiece piece;
    piece.edges.resize(r_edges.size());
    for (size_t i = 0; i < r_edges.size(); ++i) piece.edges[i] = std::pow(r_edges[i], p);
    auto f = [&](const SurfacePoint& sp) -> Complex {
        const double s = sp.modulus();
        const double r = std::pow(s, 1.0 / p);
        Complex lp, vr;
        eval(r, lp, vr);
        return std::exp(lp + std::log(r) - std::log(s)) * vr;
    };
    piece.map = [](double s, SurfacePoint& t, Complex& dtds) {
        t = SurfacePoint{std::log(s), 0.0};
        dtds = Complex(1.0, 0.0);
    };
    SeriesValue res = detail::integrate_pieces(f, {piece}, detail::gl32());
    const Complex phase = std::exp(nu * Complex(0.0, d)) / p;
    res.value *= phase;
    res.abs_err *= std::abs(phase);
    res.abs_err += mag(r_min) * r_min / p_exp;  // head-of-ray truncation
    return res;
}

inline SeriesValue I_nu_ray(Complex nu, Complex mu, const SurfacePoint& x, double d,
                            const QContext& ctx) {
    return I_nu_ray(nu, mu, x, d, ContourSpec::ray(d), ctx);
}

// ---------------------------------------------------------------------------
// Monodromy: I_k(alpha;q,x e^{-2 pi i}) - I_k(alpha;q,x) = C_k(alpha) F(mu+k;q,x)
// with C_k(alpha) = 2 pi i (-alpha)^k (q^{1-k}/alpha;q)_inf q^{k(k-1)/2}.
// The statement and its proof display disagree on the orientation; the value
// returned here is the left side divided by C_k, pinned against +F in tests.

inline SeriesValue monodromy_F(int k, Complex mu, Complex x, const QContext& ctx) {
    if (!(x.real() > 0.0))
        throw std::domain_error("monodromy_F: requires Re(x) > 0");
    if (!((mu.real() + k) > 0.0))
        throw std::domain_error("monodromy_F: requires Re(k + mu) > 0");
    const Complex alpha = std::exp(mu * ctx.ln_q);
    Complex minus_alpha_k(1.0, 0.0);
    for (int j = 0; j < std::abs(k); ++j)
        minus_alpha_k = (k > 0) ? minus_alpha_k * (-alpha) : minus_alpha_k / (-alpha);
    const Complex c_k = 2.0 * kPi * kI * minus_alpha_k *
                        qcore::qpoch_inf(std::exp((1.0 - k) * ctx.ln_q) / alpha, ctx).value *
                        std::exp(0.5 * k * (k - 1) * ctx.ln_q);
    if (std::abs(c_k) < 1e-12)
        throw std::domain_error("monodromy_F: degenerate alpha, C_k vanishes");
    const SurfacePoint x0 = SurfacePoint::from_complex(x);
    const SurfacePoint x2 = x0.winding(-1);
    const double d1 = 0.5 * (kPi / 2.0 - x0.argument);
    const double d2 = 2.0 * kPi - 0.5 * (kPi / 2.0 + x0.argument);
    const Complex nu_k(static_cast<double>(k), 0.0);
    const SeriesValue i1 = I_nu_ray(nu_k, mu, x0, d1, ctx);
    const SeriesValue i2 = I_nu_ray(nu_k, mu, x2, d2, ctx);
    const Complex v = (i2.value - i1.value) / c_k;
    return {v, (i1.abs_err + i2.abs_err) / std::abs(c_k), i1.terms_used + i2.terms_used,
            i1.converged && i2.converged};
}

// ---------------------------------------------------------------------------
// Reduction at alpha = q^m:
//   I_nu(q^m;q,x) = K_nu(m) x^{-(m+nu)} G(m+nu;q,1/x),
//   K_nu(m) = (-1)^m (q;q)_inf q^{-m(m-1)/2} Gamma(m+nu).
// Returns the ray-quadrature value; abs_err carries |quadrature - closed form|.

inline SeriesValue I_nu_G(int m, Complex nu, const SurfacePoint& x, const QContext& ctx) {
    if (!((nu.real() + m) > 0.0))
        throw std::domain_error("I_nu_G: requires Re(nu) + m > 0");
    const double d = detail::auto_ray_angle(x.argument);
    const SeriesValue quad = I_nu_ray(nu, Complex(static_cast<double>(m), 0.0), x, d, ctx);
    const double q_inf = qcore::qpoch_inf(Complex(ctx.q, 0.0), ctx).value.real();
    const Complex K = ((m % 2 == 0) ? 1.0 : -1.0) * q_inf *
                      std::exp(-0.5 * m * (m - 1) * ctx.ln_q) *
                      qcore::gamma(nu + static_cast<double>(m));
    const Complex closed = K * x.power(-(nu + static_cast<double>(m))) *
                           series::G(nu + static_cast<double>(m), std::exp(-x.log()), ctx).value;
    const double resid = std::abs(quad.value - closed);
    return {quad.value, resid, quad.terms_used,
            resid <= 1e-6 * std::max(1e-300, std::abs(closed))};
}

// ---------------------------------------------------------------------------
// b = 0 family: y'(x) = y(qx)

// f(x) = sum q^{n(n-1)/2} x^n / n!
inline SeriesValue f0(Complex x, const QContext& ctx) {
    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    double qn = 1.0;  // q^{n-1} at step n
    int small = 0;
    int n = 0;
    while (n < ctx.max_terms) {
        term *= qn * x / (n + 1.0);
        qn *= ctx.q;
        ++n;
        sum += term;
        small = (std::abs(term) <= ctx.rel_tol * std::abs(sum)) ? small + 1 : 0;
        if (small >= 3) break;
    }
    const double rnext = qn * std::abs(x) / (n + 1.0);
    const double tail =
        (rnext < 0.9) ? std::abs(term) * rnext / (1.0 - rnext) : std::abs(term);
    return {sum, tail, n + 1, small >= 3};
}

// Loop form f(x) = (1/2 pi i) oint e^t theta(x/t) dt/t on any loop around 0.
inline SeriesValue f0_contour(Complex x, const ContourSpec& spec, const QContext& ctx) {
    auto f = [&](const SurfacePoint& tp) {
        const Complex t = tp.value();
        return std::exp(t) * qcore::theta(x / t, ctx).value / t;
    };
    SeriesValue r =
        detail::integrate_circle(f, spec.radius, spec.panels > 0 ? spec.panels : 256);
    r.value /= 2.0 * kPi * kI;
    r.abs_err /= 2.0 * kPi;
    return r;
}

inline SeriesValue f0_contour(Complex x, const QContext& ctx) {
    return f0_contour(x, ContourSpec::jordan(1.0), ctx);
}

// g(x) = (1/2 pi i) int_{R + sign*i*eps} q^{t(t+1)/2} Gamma(t) (x e^{-pi i})^{-t} dt,
// analytic on the whole surface and independent of eps between the pole rows.
inline SeriesValue g0_line(const SurfacePoint& x, int sign, double eps,
                           const ContourSpec& spec, const QContext& ctx) {
    if (!(eps >= 1e-3))
        throw std::domain_error("g0_line: path too close to the Gamma poles (eps < 1e-3)");
    const Complex lshift = x.log() - Complex(0.0, kPi);  // Log(x e^{-pi i})
    const double y = sign * eps;
    auto integrand = [&](Complex t) -> Complex {
        return std::exp(ctx.ln_q * t * (t + 1.0) / 2.0 - t * lshift) * qcore::gamma(t);
    };
    double Tp = spec.cutoff, Tm = spec.cutoff;
    if (spec.cutoff <= 0.0) {
        auto magp = [&](double s) { return std::abs(integrand(Complex(s, y))); };
        auto magm = [&](double s) { return std::abs(integrand(Complex(-s, y))); };
        Tp = detail::auto_cutoff(magp, 2.0, 1.25, 400.0);
        Tm = detail::auto_cutoff(magm, 2.0, 1.25, 400.0);
    }
    detail::PathPiece piece;
    const double hfine = std::min(0.25, eps);
    double s = -Tm;
    piece.edges.push_back(s);
    while (s < std::min(3.0, Tp)) {
        s = std::min(std::min(3.0, Tp), s + hfine);
        piece.edges.push_back(s);
    }
    while (s < Tp) {
        s = std::min(Tp, s + 0.5);
        piece.edges.push_back(s);
    }
    piece.map = [y](double sv, SurfacePoint& t, Complex& dtds) {
        t = SurfacePoint::from_complex(Complex(sv, y));
        dtds = Complex(1.0, 0.0);
    };
    auto f = [&](const SurfacePoint& tp) -> Complex { return integrand(tp.value()); };
    SeriesValue r = detail::integrate_pieces(f, {piece}, detail::gl16());
    r.value /= 2.0 * kPi * kI;
    r.abs_err /= 2.0 * kPi;
    return r;
}

inline SeriesValue g0_line(const SurfacePoint& x, int sign, double eps,
                           const QContext& ctx) {
    return g0_line(x, sign, eps, ContourSpec::line(eps, sign), ctx);
}

// h(x) = (sqrt(kappa)/2 pi i) oint_C e^{t - Log^2(sqrt(q) t/x)/(2 ln q)} dt/t
// over a Hankel contour; the canonical solution at infinity.
inline SeriesValue h0(const SurfacePoint& x, const ContourSpec& spec, const QContext& ctx) {
    const Complex lx = x.log();
    auto f = [&](const SurfacePoint& tp) -> Complex {
        const Complex L = tp.log() + 0.5 * ctx.ln_q - lx;
        return std::exp(tp.value() - L * L / (2.0 * ctx.ln_q)) / tp.value();
    };
    double T = spec.cutoff;
    const double A = spec.arm_angle;
    if (T <= 0.0) {
        auto mag = [&](double s) { return std::abs(f(SurfacePoint{std::log(s), A})); };
        T = detail::auto_cutoff(mag, std::max(4.0, 2.0 * spec.radius), 1.25, 1e4);
    }
    SeriesValue r = detail::integrate_pieces(
        f, detail::hankel_pieces(spec.radius, A, T), detail::gl32());
    const double pref = std::sqrt(ctx.kappa) / (2.0 * kPi);
    r.value *= pref / kI;
    r.abs_err *= pref;
    return r;
}

inline SeriesValue h0(const SurfacePoint& x, const QContext& ctx) {
    return h0(x, ContourSpec::hankel(), ctx);
}

}  // namespace pantoq::contour
