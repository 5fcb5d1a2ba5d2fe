#include "hstcn/channels.hpp"

#include "hstcn/specfun.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace hstcn::channels {

namespace sf = hstcn::specfun;

ShadowedRicianParams ShadowedRicianParams::make(double b, int m, double omega) {
    if (!(b > 0.0) || !(omega > 0.0)) throw ParameterError("shadowed-Rician: b and Omega must be > 0");
    if (m < 1) throw ParameterError("shadowed-Rician: m must be an integer >= 1");
    ShadowedRicianParams p;
    p.b = b, p.m = m, p.omega = omega;
    const double tbm = 2.0 * b * m;
    p.Delta = std::pow(tbm / (tbm + omega), m) / (2.0 * b);
    p.beta = 1.0 / (2.0 * b);
    p.delta = p.beta * omega / (tbm + omega);
    p.upsilon = p.beta - p.delta;
    if (!(p.upsilon > 0.0)) throw ParameterError("shadowed-Rician: upsilon must be > 0");
    p.phi.resize(m);
    for (int n = 0; n < m; ++n) {
        double lg = std::lgamma(m) - std::lgamma(m - n) - 2.0 * std::lgamma(n + 1.0);
        p.phi[n] = std::exp(lg) * std::pow(p.delta, n);
    }
    return p;
}

double sr_pdf(const ShadowedRicianParams& p, double x) {
    double poly = 0.0;
    for (int n = p.m - 1; n >= 0; --n) poly = poly * x + p.phi[n];
    return p.Delta * std::exp(-p.upsilon * x) * poly;
}

double sr_pdf_confluent(const ShadowedRicianParams& p, double x) {
    return p.Delta * std::exp(-p.beta * x) * sf::kummer_1f1_finite(p.m, p.delta * x);
}

double sr_cdf(const ShadowedRicianParams& p, double x) {
    if (x <= 0.0) return 0.0;
    double acc = 0.0;
    for (int n = 0; n < p.m; ++n)
        acc += p.phi[n] / std::pow(p.upsilon, n + 1) * sf::lower_incomplete_gamma(n + 1, p.upsilon * x);
    return std::min(1.0, p.Delta * acc);
}

double sr_sample(const ShadowedRicianParams& p, rng::Stream& s) {
    std::gamma_distribution<double> los_power(p.m, p.omega / p.m);
    std::normal_distribution<double> scatter(0.0, std::sqrt(p.b));
    double a = std::sqrt(los_power(s));
    double theta = 2.0 * std::numbers::pi * s.uniform_open();
    double re = a * std::cos(theta) + scatter(s);
    double im = a * std::sin(theta) + scatter(s);
    return re * re + im * im;
}

double rayleigh_gain_pdf(const RayleighGainParams& p, double u) {
    return u < 0.0 ? 0.0 : p.lambda * std::exp(-p.lambda * u);
}

double rayleigh_gain_cdf(const RayleighGainParams& p, double u) {
    return u <= 0.0 ? 0.0 : -std::expm1(-p.lambda * u);
}

double rayleigh_gain_sample(const RayleighGainParams& p, rng::Stream& s) {
    return -std::log(s.uniform_open()) / p.lambda;
}

OpticalLinkParams OpticalLinkParams::make(double alpha, double beta, double xi, double mu, int r) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(xi > 0.0) || !(mu > 0.0))
        throw ParameterError("optical link: alpha, beta, xi and mu must be > 0");
    if (r != 1 && r != 2) throw ParameterError("optical link: r must be 1 or 2");
    OpticalLinkParams p;
    p.alpha = alpha, p.beta = beta, p.xi = xi, p.mu = mu, p.r = r;
    auto is_int = [](double v) { return std::abs(v - std::round(v)) < 1e-9; };
    double xi2 = xi * xi;
    if (is_int(p.alpha - p.beta)) {
        p.alpha += 1e-6;
        p.perturbations.push_back("alpha += 1e-6 (alpha - beta integer)");
    }
    if (is_int(xi2 - p.alpha)) {
        p.alpha += 1e-6;
        p.perturbations.push_back("alpha += 1e-6 (xi^2 - alpha integer)");
    }
    if (is_int(xi2 - p.beta)) {
        p.beta += 1e-6;
        p.perturbations.push_back("beta += 1e-6 (xi^2 - beta integer)");
    }
    if (is_int(p.alpha - p.beta)) {
        p.beta += 1e-6 * std::numbers::sqrt2;
        p.perturbations.push_back("beta += 1.41e-6 (alpha - beta integer after nudging)");
    }
    p.xi2 = xi2;
    p.O = xi2 / (std::tgamma(p.alpha) * std::tgamma(p.beta));
    p.Upsilon = xi2 * p.alpha * p.beta / (xi2 + 1.0);
    for (int i = 1; i <= r; ++i) p.kappa1.push_back((xi2 + i) / r);
    for (int i = 0; i < r; ++i) {
        p.kappa2.push_back((xi2 + i) / r);
        p.kappa2.push_back((p.alpha + i) / r);
        p.kappa2.push_back((p.beta + i) / r);
    }
    return p;
}

namespace {

// The contours used here sit at a saddle point well clear of every pole, so
// the trapezoid rule is already converged at spacing 1/2; halving checks it.
sf::TruncationPolicy coarse_contour() {
    sf::TruncationPolicy pol;
    pol.contour_nodes_per_unit = 2;
    return pol;
}

sf::MeijerGSpec pdf_kernel(const OpticalLinkParams& p) {
    sf::MeijerGSpec g;
    g.m = 3, g.n = 0, g.p = 1, g.q = 3;
    g.top = {{p.xi2 + 1.0, 0.0}};
    g.bottom = {{p.xi2, 0.0}, {p.alpha, 0.0}, {p.beta, 0.0}};
    return g;
}

sf::MeijerGSpec cdf_kernel(const OpticalLinkParams& p) {
    const int r = p.r;
    sf::MeijerGSpec g;
    g.m = 3 * r, g.n = 1, g.p = r + 1, g.q = 3 * r + 1;
    g.top.push_back({1.0, 0.0});
    for (double k : p.kappa1) g.top.push_back({k, 0.0});
    for (double k : p.kappa2) g.bottom.push_back({k, 0.0});
    g.bottom.push_back({0.0, 0.0});
    return g;
}

double cdf_prefactor(const OpticalLinkParams& p) {
    const int r = p.r;
    return std::pow(r, p.alpha + p.beta - 2.0) * p.O / std::pow(2.0 * std::numbers::pi, r - 1);
}

}  // namespace

double gg_snr_pdf(const OpticalLinkParams& p, double z) {
    if (z <= 0.0) return 0.0;
    double x = p.Upsilon * std::pow(z / p.mu, 1.0 / p.r);
    return p.O / (p.r * z) * sf::meijer_g(pdf_kernel(p), x, coarse_contour()).value;
}

namespace {

// F(z) for small y, 1 - F(z) for large y; `upper` says which was computed.
double gg_snr_cdf_part(const OpticalLinkParams& p, double z, bool& upper) {
    const int r = p.r;
    double y = std::pow(p.Upsilon, r) * z / (std::pow(r, 2 * r) * p.mu);
    auto g = cdf_kernel(p);
    double c = cdf_prefactor(p);
    upper = y > 5.0;
    if (!upper) return c * sf::meijer_g(g, y).value;
    // Gamma(-s) / Gamma(1 - s) = -1/s, so moving the contour across s = 0
    // leaves 1 - F = c G^{3r+1,0}_{r+1,3r+1}(y | kappa1, 1; kappa2, 0),
    // whose contour can sit at the saddle point.
    sf::MeijerGSpec t;
    t.m = g.q, t.n = 0, t.p = g.p, t.q = g.q;
    t.top.assign(g.top.begin() + 1, g.top.end());
    t.top.push_back({1.0, 0.0});
    t.bottom = g.bottom;
    return c * sf::meijer_g(t, y, coarse_contour(), sf::MeijerMethod::contour).value;
}

}  // namespace

double gg_snr_cdf(const OpticalLinkParams& p, double z) {
    if (z <= 0.0) return 0.0;
    bool upper;
    double v = gg_snr_cdf_part(p, z, upper);
    return std::clamp(upper ? 1.0 - v : v, 0.0, 1.0);
}

double gg_snr_ccdf(const OpticalLinkParams& p, double z) {
    if (z <= 0.0) return 1.0;
    bool upper;
    double v = gg_snr_cdf_part(p, z, upper);
    return std::clamp(upper ? v : 1.0 - v, 0.0, 1.0);
}

double gg_snr_cdf_by_root(const OpticalLinkParams& p, double z) {
    if (p.r == 1) return gg_snr_cdf(p, z);
    OpticalLinkParams unit = p;
    unit.r = 1;
    unit.mu = 1.0;
    unit.kappa1 = {p.xi2 + 1.0};
    unit.kappa2 = {p.xi2, p.alpha, p.beta};
    return gg_snr_cdf(unit, std::pow(z / p.mu, 1.0 / p.r));
}

double gg_snr_sample(const OpticalLinkParams& p, rng::Stream& s) {
    std::gamma_distribution<double> gx(p.alpha, 1.0 / p.alpha), gy(p.beta, 1.0 / p.beta);
    double ia = gx(s) * gy(s);
    double ip = std::pow(s.uniform_open(), 1.0 / p.xi2);
    double mean = p.xi2 / (p.xi2 + 1.0);
    return p.mu * std::pow(ia * ip / mean, p.r);
}

}  // namespace hstcn::channels
