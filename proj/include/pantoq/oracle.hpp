#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "pantoq/qcore.hpp"
#include "pantoq/series.hpp"
#include "pantoq/types.hpp"

// Brute-force validation independent of the series/contour evaluators:
// method-of-steps integration of y'(x) = alpha y(qx) - y(x) (and of the b=0
// equation y'(x) = y(qx)) along rays from the origin, plus the q-binomial
// derivative-tower identity.
//
// The integrator is classic RK4 with the delayed value y(q r) read from
// cubic-Hermite interpolation of the already computed history; since q < 1
// the delayed point always lies behind the current front.  The first steps
// are seeded from the Taylor recursion of the equation itself at the origin,
// never from the series module.

namespace pantoq::oracle {

struct RaySolution {
    double angle = 0.0;
    double step = 0.0;
    std::vector<std::pair<double, Complex>> samples;  // (radius, value)
    double residual_max = 0.0;
};

namespace detail {

struct Stepper {
    double h = 0.0;
    double seed_radius = 0.0;
    Complex phase;                 // e^{id}
    std::vector<Complex> taylor;   // y(z) = sum t_n z^n near 0
    std::vector<Complex> y, dy;    // uniform grid values / derivatives
    std::function<Complex(Complex, Complex)> rhs;  // f(y_delayed, y)

    Complex taylor_eval(Complex z) const {
        Complex acc(0.0, 0.0);
        for (size_t n = taylor.size(); n-- > 0;) acc = acc * z + taylor[n];
        return acc;
    }

    // delayed lookup at radius r (0 <= r <= front), Hermite cubic off the grid
    Complex history(double r, double d) const {
        if (r <= seed_radius + 1e-15)
            return taylor_eval(r * std::exp(Complex(0.0, d)));
        size_t j = static_cast<size_t>(std::floor(r / h));
        if (j + 1 >= y.size()) j = y.size() - 2;
        const double u = r / h - static_cast<double>(j);
        const double u2 = u * u, u3 = u2 * u;
        const Complex a = y[j], b = y[j + 1];
        const Complex da = dy[j] * h, db = dy[j + 1] * h;
        return (2.0 * u3 - 3.0 * u2 + 1.0) * a + (u3 - 2.0 * u2 + u) * da +
               (-2.0 * u3 + 3.0 * u2) * b + (u3 - u2) * db;
    }
};

}  // namespace detail

namespace detail {

inline RaySolution integrate_ray(const std::vector<Complex>& taylor, double q,
                                 Complex alpha_term, Complex linear_term, double d,
                                 double r_max, double step) {
    if (!(step > 0.0) || step > r_max / 100.0)
        throw std::domain_error("integrate_fde: need 0 < step <= r_max/100");
    Stepper st;
    st.h = step;
    st.phase = std::exp(Complex(0.0, d));
    st.taylor = taylor;
    // the delayed point q(r+h) must stay behind the front r
    st.seed_radius = std::max(8.0 * step, 1.2 * q * step / (1.0 - q));
    if (st.seed_radius > 0.25 * r_max)
        throw std::domain_error(
            "integrate_fde: interpolation gap, step too large for this q");
    const Complex ph_alpha = st.phase * alpha_term;
    const Complex ph_lin = st.phase * linear_term;
    st.rhs = [ph_alpha, ph_lin](Complex y_delayed, Complex y) {
        return ph_alpha * y_delayed + ph_lin * y;
    };

    const size_t n_steps = static_cast<size_t>(std::ceil(r_max / step));
    st.y.reserve(n_steps + 1);
    st.dy.reserve(n_steps + 1);
    size_t j_seed = static_cast<size_t>(std::floor(st.seed_radius / step)) + 1;
    for (size_t j = 0; j <= j_seed; ++j) {
        const double r = j * step;
        const Complex yv = st.taylor_eval(r * st.phase);
        st.y.push_back(yv);
        st.dy.push_back(st.rhs(st.taylor_eval(q * r * st.phase), yv));
    }
    st.seed_radius = j_seed * step;

    for (size_t j = j_seed; j < n_steps; ++j) {
        const double r = j * step;
        const double h = step;
        const Complex y0 = st.y[j];
        const Complex k1 = st.rhs(st.history(q * r, d), y0);
        const Complex yd_half = st.history(q * (r + 0.5 * h), d);
        const Complex k2 = st.rhs(yd_half, y0 + 0.5 * h * k1);
        const Complex k3 = st.rhs(yd_half, y0 + 0.5 * h * k2);
        const Complex k4 = st.rhs(st.history(q * (r + h), d), y0 + h * k3);
        st.y.push_back(y0 + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
        st.dy.push_back(st.rhs(st.history(q * (r + h), d), st.y.back()));
    }

    RaySolution sol;
    sol.angle = d;
    sol.step = step;
    sol.samples.reserve(st.y.size());
    for (size_t j = 0; j < st.y.size(); ++j) sol.samples.emplace_back(j * step, st.y[j]);
    // FDE residual on a midpoint grid, all values from the interpolant
    double resid = 0.0;
    for (size_t j = j_seed; j + 1 < st.y.size(); ++j) {
        const double rm = (j + 0.5) * step;
        // Hermite derivative at the midpoint
        const Complex dmid = 1.5 * (st.y[j + 1] - st.y[j]) / step -
                             0.25 * (st.dy[j] + st.dy[j + 1]);
        const Complex rhs_mid = st.rhs(st.history(q * rm, d), st.history(rm, d));
        resid = std::max(resid, std::abs(dmid - rhs_mid));
    }
    sol.residual_max = resid;
    return sol;
}

}  // namespace detail

// y'(x) = alpha y(qx) - y(x) along the ray x = r e^{id}, y(0) = initial.
inline RaySolution integrate_fde(Complex mu, double d, double r_max, double step,
                                 const QContext& ctx, Complex initial = Complex(1.0, 0.0)) {
    const Complex alpha = std::exp(mu * ctx.ln_q);
    // Taylor recursion at 0: y^{(n+1)}(0) = -(1 - alpha q^n) y^{(n)}(0)
    std::vector<Complex> taylor;
    taylor.push_back(initial);
    double qn = 1.0;
    for (int n = 0; n < 40; ++n) {
        taylor.push_back(taylor.back() * (-(1.0 - alpha * qn)) / (n + 1.0));
        qn *= ctx.q;
    }
    return detail::integrate_ray(taylor, ctx.q, alpha, Complex(-1.0, 0.0), d, r_max, step);
}

// b = 0 variant: y'(x) = y(qx), y(0) = initial.
inline RaySolution integrate_fde_b0(double d, double r_max, double step,
                                    const QContext& ctx,
                                    Complex initial = Complex(1.0, 0.0)) {
    // t_{n+1} = t_n q^n / (n+1)  =>  t_n = q^{n(n-1)/2}/n!
    std::vector<Complex> taylor;
    taylor.push_back(initial);
    double qn = 1.0;
    for (int n = 0; n < 40; ++n) {
        taylor.push_back(taylor.back() * qn / (n + 1.0));
        qn *= ctx.q;
    }
    return detail::integrate_ray(taylor, ctx.q, Complex(1.0, 0.0), Complex(0.0, 0.0), d,
                                 r_max, step);
}

// Residual of the derivative tower
//   y^{(n)}(x) = sum_k (-1)^{n-k} alpha^k q^{k(k-1)/2} [n k]_q y(q^k x)
// against the termwise-differentiated power series, with y = F(mu;q,.).
inline double derivative_tower(Complex mu, Complex x, int n, const QContext& ctx) {
    if (n < 0 || n > 8) throw std::domain_error("derivative_tower: need 0 <= n <= 8");
    const Complex alpha = std::exp(mu * ctx.ln_q);
    // termwise n-th derivative of sum (alpha;q)_m/m! (-x)^m
    Complex lhs(0.0, 0.0);
    {
        Complex coeff(1.0, 0.0);  // (alpha;q)_m
        double qm = 1.0;
        double fact = 1.0;  // m!
        Complex sum(0.0, 0.0);
        int small = 0;
        for (int m = 0; m < ctx.max_terms; ++m) {
            if (m >= n) {
                // d^n/dx^n of (-1)^m x^m / m!  ->  (-1)^m x^{m-n}/(m-n)!
                double fall = 1.0;
                for (int j = 0; j < n; ++j) fall *= (m - j);
                const Complex term = coeff / fact * fall *
                                     ((m % 2 == 0) ? 1.0 : -1.0) *
                                     std::pow(x, m - n);
                sum += term;
                small = (std::abs(term) <= 1e-14 * std::abs(sum)) ? small + 1 : 0;
                if (small >= 3) break;
            }
            coeff *= (1.0 - alpha * qm);
            qm *= ctx.q;
            fact *= (m + 1.0);
        }
        lhs = sum;
    }
    Complex rhs(0.0, 0.0);
    double qk = 1.0;  // q^k
    Complex alpha_k(1.0, 0.0);
    for (int k = 0; k <= n; ++k) {
        const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
        const double gauss = std::exp(0.5 * k * (k - 1) * ctx.ln_q);
        rhs += sign * alpha_k * gauss * qcore::qbinomial(n, k, ctx).real() *
               series::F(mu, qk * x, ctx).value;
        alpha_k *= alpha;
        qk *= ctx.q;
    }
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

}  // namespace pantoq::oracle
