#include "hstcn/analytic.hpp"
#include "hstcn/channels.hpp"
#include "hstcn/cli.hpp"
#include "hstcn/montecarlo.hpp"
#include "hstcn/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace hstcn::cli {

namespace sf = hstcn::specfun;

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// Runs `body`, turning an escaped exception into a failed check.
template <class F>
CheckResult guarded(const std::string& name, F body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

}  // namespace

double ks_statistic(std::vector<double>& xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double ks_pvalue(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double lam = (sn + 0.12 + 0.11 / sn) * d;
    if (lam <= 0.0) return 1.0;
    const double pi = std::numbers::pi;
    if (lam < 1.18) {
        // Jacobi-theta form, fast for small lambda.
        double s = 0.0;
        for (int k = 1; k <= 20; ++k) s += std::exp(-(2 * k - 1) * (2 * k - 1) * pi * pi / (8 * lam * lam));
        return std::clamp(1.0 - std::sqrt(2 * pi) / lam * s, 0.0, 1.0);
    }
    double s = 0.0, sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        double t = std::exp(-2.0 * k * k * lam * lam);
        s += sign * t;
        if (t < 1e-17) break;
        sign = -sign;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

CheckResult ks_check(const std::string& name, const std::function<double(rng::Stream&)>& draw,
                     const std::function<double(double)>& cdf, std::size_t n, std::uint64_t seed, double alpha) {
    return guarded(name, [&] {
        std::vector<double> xs(n);
        for (size_t i = 0; i < n; ++i) {
            rng::Stream s(seed, i);
            xs[i] = draw(s);
        }
        double d = ks_statistic(xs, cdf);
        double p = ks_pvalue(d, n);
        return CheckResult{name, p >= alpha, fmt("D = %.5f, p = %.4f", d, p)};
    });
}

std::vector<CheckResult> check_specfun() {
    std::vector<CheckResult> out;
    using sf::cplx;

    out.push_back(guarded("specfun.loggamma_known_values", [] {
        double worst = std::max({std::abs(sf::log_gamma(1.0)),
                                 std::abs(sf::log_gamma(0.5).real() - 0.5 * std::log(std::numbers::pi)),
                                 std::abs(sf::log_gamma(5.0) - std::log(24.0)) / std::log(24.0),
                                 std::abs(sf::log_gamma(cplx(2.3, 1.7)) - cplx(-0.54813591721860035437, 1.2149462812383989758)) /
                                     std::abs(cplx(-0.54813591721860035437, 1.2149462812383989758))});
        return CheckResult{"specfun.loggamma_known_values", worst < 1e-13, fmt("max error %.2e", worst)};
    }));

    out.push_back(guarded("specfun.loggamma_vs_stirling", [] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> r(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            cplx z = std::polar(std::pow(10.0, -1.0 + 4.0 * r(rng)), (-0.97 + 1.94 * r(rng)) * std::numbers::pi);
            if (std::abs(z) > 1e3) continue;
            cplx ref = sf::log_gamma_stirling(z);
            worst = std::max(worst, std::abs(sf::log_gamma(z) - ref) / std::max(1.0, std::abs(ref)));
        }
        return CheckResult{"specfun.loggamma_vs_stirling", worst < 1e-13, fmt("max error %.2e", worst)};
    }));

    out.push_back(guarded("specfun.uig_at_zero_is_gamma", [] {
        double worst = 0.0;
        for (cplx s : {cplx(0.5, 0), cplx(3.2, 0), cplx(-1.5, 2.0), cplx(2.0, -7.0)})
            worst = std::max(worst, std::abs(sf::upper_incomplete_gamma(s, 0.0) - sf::gamma(s)) / std::abs(sf::gamma(s)));
        return CheckResult{"specfun.uig_at_zero_is_gamma", worst < 1e-12, fmt("max error %.2e", worst)};
    }));

    out.push_back(guarded("specfun.incomplete_gamma_split", [] {
        double worst = 0.0;
        for (int n = 1; n <= 8; ++n)
            for (double x : {0.2, 1.0, 3.0, 11.0}) {
                double sum = sf::lower_incomplete_gamma(n, x) + sf::upper_incomplete_gamma(double(n), x).real();
                worst = std::max(worst, std::abs(sum / std::tgamma(n) - 1.0));
            }
        return CheckResult{"specfun.incomplete_gamma_split", worst < 1e-12, fmt("max error %.2e", worst)};
    }));

    out.push_back(guarded("specfun.uig_recurrence", [] {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> re(-40.0, 39.0), im(-60.0, 60.0), lx(-3.0, 3.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            cplx s(re(rng), im(rng));
            double x = std::pow(10.0, lx(rng));
            cplx tail = std::exp(s * std::log(x) - x);
            cplx lhs = sf::upper_incomplete_gamma(s + 1.0, x);
            cplx rhs = s * sf::upper_incomplete_gamma(s, x) + tail;
            worst = std::max(worst, std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(tail) + 1e-300));
        }
        return CheckResult{"specfun.uig_recurrence", worst < 1e-9, fmt("max error %.2e", worst)};
    }));

    out.push_back(guarded("specfun.meijer_residue_vs_contour", [] {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_int_distribution<int> small(0, 2);
        int done = 0, tries = 0;
        double worst = 0.0;
        while (done < 100 && tries < 10000) {
            ++tries;
            sf::MeijerGSpec g;
            g.m = 1 + small(rng);
            g.q = g.m + small(rng);
            g.n = small(rng);
            g.p = g.n + small(rng);
            if (g.p >= g.q || 2 * (g.m + g.n) <= g.p + g.q) continue;
            for (int k = 0; k < g.q; ++k) g.bottom.push_back({k < g.m ? 0.1 + 2.0 * u(rng) : -1.0 + 2.0 * u(rng), 0.0});
            for (int k = 0; k < g.p; ++k) g.top.push_back({k < g.n ? -0.8 + u(rng) : 3.0 * u(rng), 0.0});
            bool near_int = false;
            for (int i = 0; i < g.m; ++i)
                for (int j = 0; j < i; ++j) {
                    double d = g.bottom[i].a - g.bottom[j].a;
                    if (std::abs(d - std::round(d)) < 1e-2) near_int = true;
                }
            if (near_int) continue;
            double x = std::exp(-2.0 + 3.0 * u(rng));
            double r, c;
            try {
                r = sf::meijer_g(g, x, {}, sf::MeijerMethod::residue).value;
                c = sf::meijer_g(g, x, {}, sf::MeijerMethod::contour).value;
            } catch (const sf::SpecfunError&) {
                continue;
            }
            if (std::abs(r) < 1e-8) continue;
            worst = std::max(worst, std::abs(r - c) / std::abs(r));
            ++done;
        }
        return CheckResult{"specfun.meijer_residue_vs_contour", done == 100 && worst < 1e-6,
                           fmt("%.0f instances, max rel diff %.2e", done, worst)};
    }));

    out.push_back(guarded("specfun.meijer_continuity", [] {
        const double al = 6.1096, be = 1.0794, xi2 = 1.1227 * 1.1227;
        sf::MeijerGSpec g{3, 0, 1, 3, {{xi2 + 1.0, 0.0}}, {{xi2, 0.0}, {al, 0.0}, {be, 0.0}}};
        double prev = sf::meijer_g(g, 0.05).value, worst = 0.0;
        for (double x = 0.05; x < 40.0; x *= 1.01) {
            double v = sf::meijer_g(g, x * 1.01).value;
            worst = std::max(worst, std::abs(v - prev) / (std::abs(prev) + 1e-12));
            prev = v;
        }
        return CheckResult{"specfun.meijer_continuity", worst < 0.05, fmt("max 1%% step change %.3f", worst)};
    }));
    return out;
}

std::vector<CheckResult> check_samplers(std::uint64_t seed, std::size_t n) {
    auto cfg = NetworkConfig::defaults();
    std::vector<CheckResult> out;
    auto sr = cfg.sr;
    out.push_back(ks_check("ks.shadowed_rician", [&](rng::Stream& s) { return channels::sr_sample(sr, s); },
                           [&](double x) { return channels::sr_cdf(sr, x); }, n, seed));
    auto ex = cfg.sp;
    out.push_back(ks_check("ks.exponential_gain", [&](rng::Stream& s) { return channels::rayleigh_gain_sample(ex, s); },
                           [&](double x) { return channels::rayleigh_gain_cdf(ex, x); }, n, seed));
    auto d = cfg.d;
    out.push_back(ks_check("ks.gamma_gamma_r1", [&](rng::Stream& s) { return channels::gg_snr_sample(d, s); },
                           [&](double x) { return channels::gg_snr_cdf(d, x); }, n, seed));
    auto d2 = channels::OpticalLinkParams::make(d.alpha, d.beta, d.xi, d.mu, 2);
    out.push_back(ks_check("ks.gamma_gamma_r2", [&](rng::Stream& s) { return channels::gg_snr_sample(d2, s); },
                           [&](double x) { return channels::gg_snr_cdf(d2, x); }, n, seed));
    return out;
}

std::vector<CheckResult> check_three_way(std::uint64_t seed, std::uint64_t n, unsigned workers) {
    std::vector<CheckResult> out;
    for (bool jam : {true, false}) {
        std::string name = std::string("three_way.defaults_jammer_") + (jam ? "on" : "off");
        out.push_back(guarded(name, [&] {
            auto cfg = NetworkConfig::defaults();
            cfg.power.jammer_on = jam;
            double closed = analytic::ip_closed_form(cfg).value;
            double l1 = analytic::ip_lemma1(cfg).value;
            auto mc = montecarlo::estimate_ip(cfg, n, seed, workers);
            bool agree = std::abs(closed - l1) <= std::max(0.01 * l1, 2e-3);
            bool in_ci = mc.ci99_low <= closed && closed <= mc.ci99_high;
            char buf[200];
            std::snprintf(buf, sizeof buf, "closed %.5f, lemma1 %.5f, mc %.5f [%.5f, %.5f]", closed, l1, mc.value,
                          mc.ci99_low, mc.ci99_high);
            return CheckResult{name, agree && in_ci, buf};
        }));
    }
    return out;
}

std::vector<CheckResult> run_selftest(const SelftestOptions& opt) {
    auto out = check_specfun();
    for (auto& c : check_samplers(opt.seed)) out.push_back(std::move(c));
    for (auto& c : check_three_way(opt.seed, opt.n_mc, opt.workers)) out.push_back(std::move(c));
    return out;
}

}  // namespace hstcn::cli
