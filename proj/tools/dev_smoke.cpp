// scratch smoke checks during bring-up; removed before release
#include <cstdio>

#include "pantoq/pantoq.hpp"

using namespace pantoq;

int main() {
    const QContext ctx = make_context(0.5);
    std::printf("kappa(0.5) = %.15g  q* = %.6g\n", ctx.kappa, ctx.q_star);

    // gamma sanity
    std::printf("Gamma(0.5)^2/pi - 1 = %.3e\n",
                std::norm(qcore::gamma(Complex(0.5, 0.0))) / kPi - 1.0);
    const Complex z(0.3, 7.0);
    const Complex rec = qcore::gamma(z + 1.0) / (z * qcore::gamma(z)) - 1.0;
    std::printf("Gamma recurrence at 0.3+7i: %.3e\n", std::abs(rec));

    // theta identities
    const Complex th2 = qcore::theta(Complex(2.0, 0.0), ctx).value;
    const Complex thq2 = qcore::theta(Complex(1.0, 0.0), ctx).value;  // q*2 = 1
    std::printf("theta shift: q^0 1/2: %.3e\n",
                std::abs(thq2 - 0.5 * th2) / std::abs(th2));  // theta(qx)=x^{-1}theta(x), x=2
    const Complex tt = qcore::theta_triple(Complex(2.0, 0.0), ctx).value;
    std::printf("triple product rel diff: %.3e\n", std::abs(tt - th2) / std::abs(th2));

    // modular relation
    for (double arg : {0.0, 1.0, -2.5, 8.0}) {
        const SurfacePoint x{std::log(1.3), arg};
        std::printf("modular residual (q=0.5, |x|=1.3, arg=%.1f): %.3e\n", arg,
                    qcore::verify_theta_modular(x, ctx));
    }

    // F basics
    std::printf("F(0;q,7) = %.15g\n", series::F(Complex(0, 0), Complex(7, 0), ctx).value.real());
    const Complex f1 = series::F(Complex(1, 0), Complex(1, 0), ctx).value;
    const Complex fd = series::F_dirichlet(Complex(1, 0), Complex(1, 0), 40, ctx).value;
    std::printf("F vs dirichlet: %.3e\n", std::abs(f1 - fd) / std::abs(f1));
    const Complex fj = series::F_jackson(Complex(1, 0), Complex(1, 0), ctx).value;
    std::printf("F vs jackson:   %.3e\n", std::abs(f1 - fj) / std::abs(f1));

    // FDE residual via F_derivative
    {
        const Complex mu(0.5, 0.0), x(1.0, 0.0);
        const Complex lhs = series::F_derivative(mu, x, 1, ctx);
        const Complex alpha = std::exp(mu * ctx.ln_q);
        const Complex rhs = alpha * series::F(mu, ctx.q * x, ctx).value - series::F(mu, x, ctx).value;
        std::printf("FDE residual: %.3e\n", std::abs(lhs - rhs));
    }

    // connection formula
    {
        connection::ConnectionParams p{Complex(0.3, 0.1), 4, ctx};
        const SurfacePoint x = SurfacePoint::from_complex(Complex(2.0, 0.0));
        const Complex rhs = connection::connection_rhs(p, x).value;
        const Complex lhs = series::F(p.mu, Complex(2.0, 0.0), ctx).value;
        std::printf("connection: F=%.12g%+.12gi rhs rel err=%.3e\n", lhs.real(), lhs.imag(),
                    std::abs(lhs - rhs) / std::abs(lhs));
        const Complex rhs2 = connection::connection_psi_rhs(p, x, 40).value;
        std::printf("psi regrouping vs rhs: %.3e\n", std::abs(rhs2 - rhs) / std::abs(rhs));
    }

    // degenerate identity
    std::printf("degenerate m=1 q=0.5 x=3: %.3e\n",
                connection::degenerate_identity(1, Complex(3, 0), ctx));

    // Phi/Psi jump: which prefactor exponent closes the identity
    {
        const Complex u(0.7, 0.0), mu(0.3, 0.0);
        const SurfacePoint zsp{std::log(1.2), 0.4};
        const Complex lhs = series::Phi(u, mu, zsp, ctx, 30).value -
                            series::Phi(u, mu, zsp.log_scaled(-2.0 * ctx.kappa * kPi), ctx, 30).value;
        const Complex psi = series::Psi(u + mu, ctx.kappa * kPi / 2.0, zsp.value(), 30).value;
        const Complex pref_mu = std::exp(-(kI * mu / ctx.kappa) * zsp.log());
        const Complex pref_pi = std::exp(-(kI * kPi / ctx.kappa) * zsp.log());
        std::printf("jump with z^{-i mu/kappa}: %.3e   with z^{-i pi/kappa}: %.3e\n",
                    std::abs(lhs - pref_mu * psi) / std::abs(lhs),
                    std::abs(lhs - pref_pi * psi) / std::abs(lhs));
    }

    // contour: I_jordan vs (q/alpha;q)_inf F
    {
        const Complex mu(0.7, 0.0), x(1.5, 0.0);
        const Complex alpha = std::exp(mu * ctx.ln_q);
        const Complex iv = contour::I_jordan(mu, x, ctx).value;
        const Complex want =
            qcore::qpoch_inf(ctx.q / alpha, ctx).value * series::F(mu, x, ctx).value;
        std::printf("I_jordan rel err: %.3e (I at x=0: %.12g want %.12g)\n",
                    std::abs(iv - want) / std::abs(want),
                    contour::I_jordan(mu, Complex(0, 0), ctx).value.real(),
                    qcore::qpoch_inf(ctx.q / alpha, ctx).value.real());
    }

    // b=0 family
    {
        const Complex x(1.0, 0.0);
        const Complex fs = contour::f0(x, ctx).value;
        const Complex fc = contour::f0_contour(x, ctx).value;
        std::printf("f0 series vs contour: %.3e\n", std::abs(fs - fc) / std::abs(fs));
        const SurfacePoint xs = SurfacePoint::from_complex(x);
        const Complex gm = contour::g0_line(xs, -1, 0.25, ctx).value;
        const Complex gp = contour::g0_line(xs, +1, 0.25, ctx).value;
        std::printf("f = g- - g: %.3e\n", std::abs(fs - (gm - gp)) / std::abs(fs));
        const SurfacePoint x2 = SurfacePoint::from_complex(Complex(2.0, 0.0));
        const Complex h = contour::h0(x2, ctx).value;
        const Complex g_x = contour::g0_line(x2, +1, 0.25, ctx).value;
        const Complex g_xw = contour::g0_line(x2.winding(1), +1, 0.25, ctx).value;
        std::printf("h vs g - g(x e^{2pi i}): %.3e  (h=%.12g)\n",
                    std::abs(h - (g_x - g_xw)) / std::abs(h), h.real());
        Complex wind(0.0, 0.0);
        for (int n = -3; n <= 3; ++n) wind += contour::h0(x2.winding(n), ctx).value;
        const Complex f2 = contour::f0(Complex(2.0, 0.0), ctx).value;
        std::printf("winding sum vs f0: %.3e (f0(2)=%.12g)\n",
                    std::abs(wind - f2) / std::abs(f2), f2.real());
    }

    // Lambert W / ell / V
    {
        std::printf("W(e)-1 = %.3e\n", std::abs(asymptotics::lambert_w(Complex(std::exp(1.0), 0)) - 1.0));
        const Complex lw = asymptotics::ell(Complex(0.5, 0.0), 40);
        const Complex lref = asymptotics::lambert_w(Complex(-std::exp(-1.0 - 0.125), 0.0)) + 1.0;
        std::printf("ell(0.5) vs W-form: %.3e\n", std::abs(lw - lref));
        auto V = asymptotics::V_coeffs(8);
        auto show = [](const asymptotics::RationalPoly& p, const char* name) {
            std::printf("%s =", name);
            for (size_t i = 0; i < p.size(); ++i)
                std::printf(" %s*l^%zu", p[i].str().c_str(), i);
            std::printf("\n");
        };
        show(V[2], "V2");
        show(V[3], "V3");
        show(V[4], "V4");
        show(V[6], "V6");
        show(asymptotics::u_expansion_coefficient(2), "u2");
    }

    // u_saddle vs u_contour
    {
        const double lambda = 1.0;
        for (double xr : {30.0, 100.0, 400.0}) {
            const SurfacePoint x = SurfacePoint::polar(xr, 0.0);
            const auto [us, bound] = asymptotics::u_saddle(lambda, x, 3);
            const Complex uc = asymptotics::u_contour(lambda, x).value;
            std::printf("u lambda=1 x=%g: rel err N=3: %.3e (bound %.3e, quad err %.1e)\n", xr,
                        std::abs(us - uc) / std::abs(uc), bound / std::abs(uc),
                        asymptotics::u_contour(lambda, x).abs_err / std::abs(uc));
        }
    }

    // h_asymptotic ladder
    for (double xr : {50.0, 100.0, 200.0}) {
        const SurfacePoint x = SurfacePoint::polar(xr, 0.0);
        const Complex ha = asymptotics::h_asymptotic(x, 2, ctx);
        const Complex hq = contour::h0(x, ctx).value;
        std::printf("h ladder x=%g: rel err %.3e  (omega~=%.4f)\n", xr,
                    std::abs(ha - hq) / std::abs(hq),
                    std::abs(asymptotics::h_tilde_omega(x, ctx)));
    }

    // oracle
    {
        auto sol = oracle::integrate_fde(Complex(0.7, 0.0), 0.0, 10.0, 1e-3, ctx);
        double worst = 0.0;
        for (size_t j = 0; j < sol.samples.size(); j += 200) {
            const auto& [r, yv] = sol.samples[j];
            worst = std::max(worst,
                             std::abs(yv - series::F(Complex(0.7, 0.0), Complex(r, 0.0), ctx).value));
        }
        std::printf("oracle vs F max err: %.3e, residual %.3e\n", worst, sol.residual_max);
        std::printf("derivative tower n=4: %.3e\n",
                    oracle::derivative_tower(Complex(0.3, 0.0), Complex(1.2, 0.0), 4, ctx));
    }
    return 0;
}
