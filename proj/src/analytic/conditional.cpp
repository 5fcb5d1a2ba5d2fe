#include "hstcn/analytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace hstcn::analytic {

namespace sf = hstcn::specfun;
using GK31 = boost::math::quadrature::gauss_kronrod<double, 31>;

double omega_of_u(const system::PowerConfig& pc, double u) {
    return u <= pc.sigma_S() ? pc.gS : pc.gI / u;
}

double cdf_u_sj(const NetworkConfig& cfg, double t) {
    if (t <= 0.0) return 0.0;
    const auto& J = cfg.sje1;
    const double lam = cfg.sjp.lambda, sig = cfg.power.sigma_SJ();
    double head = channels::rayleigh_gain_cdf(cfg.sjp, sig) * channels::sr_cdf(J, t / cfg.power.gSJ);
    double tail = 0.0;
    const double x = J.upsilon * t / (cfg.power.gI * lam);
    for (int n1 = 0; n1 < J.m; ++n1) {
        sf::MeijerGSpec g;
        g.m = 1, g.n = 2, g.p = 2, g.q = 2;
        g.top = {{1.0, 0.0}, {0.0, sig * lam}};
        g.bottom = {{n1 + 1.0, 0.0}, {0.0, 0.0}};
        tail += J.phi[n1] / std::pow(J.upsilon, n1 + 1) * sf::meijer_g(g, x).value;
    }
    return std::clamp(head + J.Delta * tail, 0.0, 1.0);
}

double cdf_u_sj_elementary(const NetworkConfig& cfg, double t) {
    if (t <= 0.0) return 0.0;
    const auto& J = cfg.sje1;
    const double lam = cfg.sjp.lambda, sig = cfg.power.sigma_SJ();
    double head = channels::rayleigh_gain_cdf(cfg.sjp, sig) * channels::sr_cdf(J, t / cfg.power.gSJ);
    // lambda int_sig^inf e^{-lambda v} gamma(n+1, c v) dv with c = upsilon t / gI.
    const double c = J.upsilon * t / cfg.power.gI, q = lam + c, qs = q * sig;
    double tail = 0.0;
    for (int n = 0; n < J.m; ++n) {
        double nf = std::tgamma(n + 1.0);
        double acc = std::exp(-lam * sig);
        double cj_over_jf = 1.0;  // c^j / j!
        for (int j = 0; j <= n; ++j) {
            if (j > 0) cj_over_jf *= c / j;
            // Gamma(j+1, qs) / q^{j+1} = j! e^{-qs} sum_i qs^i / i! / q^{j+1}
            double s = 0.0, term = 1.0;
            for (int i = 0; i <= j; ++i) {
                if (i > 0) term *= qs / i;
                s += term;
            }
            double upper = std::tgamma(j + 1.0) * std::exp(-qs) * s / std::pow(q, j + 1);
            acc -= cj_over_jf * lam * upper;
        }
        tail += J.phi[n] / std::pow(J.upsilon, n + 1) * nf * acc;
    }
    return std::clamp(head + J.Delta * tail, 0.0, 1.0);
}

double eve1_gain_cdf(const NetworkConfig& cfg, double x, bool jammer_on) {
    if (x <= 0.0) return 0.0;
    if (!jammer_on) return channels::sr_cdf(cfg.se1, x);
    // 1 - x int_0^inf f_SE1(x(1+t)) F_U(t) dt, with t = e^v - 1.
    const auto& E = cfg.se1;
    auto f = [&](double v) {
        double ev = std::exp(v);
        return x * channels::sr_pdf(E, x * ev) * cdf_u_sj(cfg, ev - 1.0) * ev;
    };
    const double vmax = std::max(1.0, std::log((60.0 + 4.0 * E.m) / (E.upsilon * x)));
    double acc = 0.0;
    for (double lo = 0.0; lo < vmax; lo += 1.0)
        acc += GK31::integrate(f, lo, std::min(lo + 1.0, vmax), 5, 1e-10);
    return std::clamp(1.0 - acc, 0.0, 1.0);
}

double cond_cdf_gamma_r(const NetworkConfig& cfg, double y, double u) {
    if (y <= 0.0) return 0.0;
    return channels::sr_cdf(cfg.sr, y / omega_of_u(cfg.power, u));
}

double cond_cdf_gamma_e1(const NetworkConfig& cfg, double y, double u, bool jammer_on) {
    if (y <= 0.0) return 0.0;
    return eve1_gain_cdf(cfg, y / omega_of_u(cfg.power, u), jammer_on);
}

double gg_upper_cutoff(const channels::OpticalLinkParams& p) {
    double z = p.mu;
    while (channels::gg_snr_ccdf(p, z) > 1e-15) z *= 1.5;
    return z;
}

double j2(const NetworkConfig& cfg, double y) {
    if (y <= 0.0) return 0.0;
    y = std::min(y, gg_upper_cutoff(cfg.e2));
    // z = e^w, from 12 decades below the E2 scale.
    auto f = [&](double w) {
        double z = std::exp(w);
        return channels::gg_snr_pdf(cfg.e2, z) * channels::gg_snr_ccdf(cfg.d, z) * z;
    };
    const double lo = std::log(cfg.e2.mu) - 12.0 * std::log(10.0), hi = std::log(y);
    double acc = lo < hi ? channels::gg_snr_cdf(cfg.e2, cfg.e2.mu * 1e-12) : channels::gg_snr_cdf(cfg.e2, y);
    for (double a = lo; a < hi; a += 1.0)
        acc += GK31::integrate(f, a, std::min(a + 1.0, hi), 6, 1e-11);
    return acc;
}

}  // namespace hstcn::analytic
