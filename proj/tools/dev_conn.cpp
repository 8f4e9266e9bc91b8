// scratch: connection-formula term-level debugging
#include <cstdio>

#include "pantoq/pantoq.hpp"

using namespace pantoq;

// reference gamma through upward recurrence from a high-Re Lanczos evaluation
static Complex gamma_ref(Complex z) {
    Complex shift(1.0, 0.0);
    Complex w = z;
    while (w.real() < 25.0) {
        shift *= w;
        w += 1.0;
    }
    return qcore::gamma(w) / shift;
}

int main() {
    const QContext ctx = make_context(0.5, 1e-14, 2000);
    const Complex mu(0.3, 0.1);
    const Complex x(2.0, 0.0);
    const SurfacePoint xs = SurfacePoint::from_complex(x);
    const Complex lx = xs.log();
    const Complex F = series::F(mu, x, ctx).value;
    std::printf("F = %.15g %+.15gi\n", F.real(), F.imag());

    const Complex alpha = std::exp(mu * ctx.ln_q);
    const Complex c0 = ctx.kappa * qcore::qpoch_inf(alpha, ctx).value /
                       (2.0 * kPi * qcore::qpoch_inf(Complex(ctx.q, 0), ctx).value.real());
    std::printf("C0 = %.15g %+.15gi\n", c0.real(), c0.imag());

    Complex sum(0.0, 0.0);
    for (int K = 0; K <= 6; ++K) {
        for (int k : {K, -K}) {
            if (k == 0 && K != 0) continue;
            const Complex mu_k = mu + kI * (ctx.kappa * k);
            const Complex g1 = std::exp(qcore::log_gamma(mu_k));
            const Complex g2 = gamma_ref(mu_k);
            const Complex gv = series::G(mu_k, 1.0 / x, ctx).value;
            const Complex term = g2 * std::exp(-mu_k * lx) * gv;
            sum += term;
            std::printf(
                "k=%+d |G|=%.6g lgamma_vs_ref=%.2e term=%.6e%+.6ei\n", k,
                std::abs(gv), std::abs(g1 - g2) / std::abs(g2), term.real(), term.imag());
        }
        const Complex approx = c0 * sum;
        std::printf("K=%d: rel err vs F = %.3e\n", K,
                    std::abs(approx - F) / std::abs(F));
    }

    // Psi route, same cutoff
    for (int K : {1, 2, 4}) {
        Complex psum(0.0, 0.0);
        Complex outer(1.0, 0.0);
        double qn1 = ctx.q;
        for (int n = 0; n <= 40; ++n) {
            psum += outer * series::psi_partial_sum(mu + static_cast<double>(n),
                                                    ctx.kappa * kPi / 2.0,
                                                    xs.star(ctx).value(), K);
            outer *= qn1 / (1.0 - qn1) * (-1.0 / x);
            qn1 *= ctx.q;
        }
        const Complex v = c0 * std::exp(-mu * lx) * psum;
        std::printf("psi route K=%d: rel err vs F = %.3e\n", K,
                    std::abs(v - F) / std::abs(F));
    }

    // G convergence check at mu_1 with tighter tolerance
    {
        const Complex mu_1 = mu + kI * ctx.kappa;
        series::TruncationReport rep;
        const Complex g_tight = series::G(mu_1, 1.0 / x, ctx, &rep).value;
        std::printf("G(mu_1) = %.15g%+.15gi terms=%d tail=%.2e\n", g_tight.real(),
                    g_tight.imag(), rep.terms_used, rep.tail_bound);
        // brute force with 200 terms, long accumulation
        Complex bf(1.0, 0.0), t(1.0, 0.0);
        double qn1 = ctx.q;
        for (int n = 0; n < 200; ++n) {
            t *= (mu_1 + static_cast<double>(n)) * qn1 / (1.0 - qn1) * (-0.5);
            qn1 *= ctx.q;
            bf += t;
        }
        std::printf("G brute = %.15g%+.15gi  diff=%.2e\n", bf.real(), bf.imag(),
                    std::abs(bf - g_tight));
    }
    return 0;
}
