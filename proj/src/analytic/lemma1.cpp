#include "hstcn/analytic.hpp"

#include <cmath>

// Boost 1.74's pchip calls an unqualified isnan.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

namespace hstcn::analytic {

namespace {

using GK31 = boost::math::quadrature::gauss_kronrod<double, 31>;
using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
const double kLn10 = std::log(10.0);

// Monotone interpolant of a function tabulated on a log grid, with
// power-law continuation on the left and a constant on the right.
class LogTable {
public:
    LogTable(std::vector<double> logx, std::vector<double> y, double left_power)
        : lo_(logx.front()), hi_(logx.back()), ylo_(y.front()), yhi_(y.back()), p_(left_power),
          f_(std::make_shared<Pchip>(std::move(logx), std::move(y))) {}

    double operator()(double x) const {
        if (x <= 0.0) return 0.0;
        double l = std::log(x);
        if (l <= lo_) return ylo_ * std::exp(p_ * (l - lo_));
        if (l >= hi_) return yhi_;
        return (*f_)(l);
    }

private:
    double lo_, hi_, ylo_, yhi_, p_;
    std::shared_ptr<Pchip> f_;
};

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    const double step = kLn10 / per_decade;
    std::vector<double> g;
    for (double l = std::log(lo); l < std::log(hi) + 0.5 * step; l += step) g.push_back(l);
    return g;
}

double min_pole(const channels::OpticalLinkParams& p) { return std::min({p.xi2, p.alpha, p.beta}); }

LogTable build_j2(const NetworkConfig& cfg, int per_decade) {
    const auto& E = cfg.e2;
    auto grid = log_grid(E.mu * 1e-12, gg_upper_cutoff(E), per_decade);
    // Past this point 1 - F_D < 1e-15 and the integrand no longer matters.
    const double w_d = std::log(gg_upper_cutoff(cfg.d));
    auto f = [&](double w) {
        double z = std::exp(w);
        return channels::gg_snr_pdf(E, z) * channels::gg_snr_ccdf(cfg.d, z) * z;
    };
    std::vector<double> vals(grid.size());
    vals[0] = channels::gg_snr_cdf(E, std::exp(grid[0]));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        vals[i] = vals[i - 1];
        if (grid[i - 1] < w_d) vals[i] += GK31::integrate(f, grid[i - 1], std::min(grid[i], w_d), 6, 1e-11);
    }
    return LogTable(std::move(grid), std::move(vals), min_pole(E));
}

LogTable build_cdf_u(const NetworkConfig& cfg, int per_decade) {
    const auto& J = cfg.sje1;
    const double t_hi = cfg.power.gSJ * (50.0 + 5.0 * J.m) / J.upsilon;
    auto grid = log_grid(cfg.power.gSJ * 1e-14, t_hi, per_decade);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = cdf_u_sj(cfg, std::exp(grid[i]));
    return LogTable(std::move(grid), std::move(vals), 1.0);
}

// Pr(g_SE1 <= x (1 + U)) = F_SE1(x) + x int_0^inf f_SE1(x(1+t)) (1 - F_U(t)) dt,
// the integrated-by-parts form of eve1_gain_cdf, on a log grid of x.
LogTable build_eve1_jammed(const NetworkConfig& cfg, double x_lo, double x_hi, int per_decade) {
    auto fu = build_cdf_u(cfg, per_decade);
    const auto& E = cfg.se1;
    auto grid = log_grid(x_lo, x_hi, per_decade);
    std::vector<double> vals(grid.size());
    const double t_hi = cfg.power.gSJ * (50.0 + 5.0 * cfg.sje1.m) / cfg.sje1.upsilon;
    const double v_hi = std::log1p(t_hi);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = std::exp(grid[i]);
        auto f = [&](double v) {
            double ev = std::exp(v);
            return x * channels::sr_pdf(E, x * ev) * (1.0 - fu(ev - 1.0)) * ev;
        };
        double acc = channels::sr_cdf(E, x);
        for (double a = 0.0; a < v_hi; a += 0.5) acc += GK31::integrate(f, a, std::min(a + 0.5, v_hi), 4, 1e-10);
        vals[i] = std::min(acc, 1.0);
    }
    return LogTable(std::move(grid), std::move(vals), 1.0);
}

// int f_SP(u) int_{gth}^inf f_{gR|u}(y) F_{gE1|u}(y) w(y) dy du, with the
// y-integral done in x = y / Omega(u) on a log scale and the u-integral
// split at sigma_S.
class SecureIntegrator {
public:
    SecureIntegrator(const NetworkConfig& cfg, int per_decade) : cfg_(cfg) {
        const auto& pc = cfg.power;
        x_hi_ = (60.0 + 5.0 * cfg.sr.m) / cfg.sr.upsilon;
        x_lo_ = 0.5 * pc.gth / pc.gS;
        if (pc.jammer_on) {
            auto t = build_eve1_jammed(cfg, x_lo_, x_hi_, per_decade);
            eve1_ = [t](double x) { return t(x); };
        } else {
            eve1_ = [&cfg](double x) { return channels::sr_cdf(cfg.se1, x); };
        }
    }

    double integrate(const std::function<double(double)>& w, double* err_out = nullptr) const {
        const auto& pc = cfg_.power;
        const double lam = cfg_.sp.lambda, sig = pc.sigma_S();
        double err = 0.0;
        double total = channels::rayleigh_gain_cdf(cfg_.sp, sig) * inner(pc.gS, w, &err);
        const double u_hi = std::min(sig + (40.0 + 1.0) / lam, x_hi_ * pc.gI / pc.gth);
        if (u_hi > sig) {
            auto g = [&](double l) {
                double u = std::exp(l);
                return lam * std::exp(-lam * u) * inner(pc.gI / u, w, nullptr) * u;
            };
            const double a0 = std::log(sig), a1 = std::log(u_hi), step = 0.5 * kLn10;
            for (double a = a0; a < a1; a += step) {
                double e = 0.0;
                total += GK31::integrate(g, a, std::min(a + step, a1), 5, 1e-9, &e);
                err += e;
            }
        }
        if (err_out) *err_out = err;
        return total;
    }

private:
    double inner(double omega, const std::function<double(double)>& w, double* err) const {
        const double x0 = cfg_.power.gth / omega;
        if (x0 >= x_hi_) return 0.0;
        auto f = [&](double l) {
            double x = std::exp(l);
            return channels::sr_pdf(cfg_.sr, x) * eve1_(x) * w(omega * x) * x;
        };
        const double a0 = std::log(x0), a1 = std::log(x_hi_), step = 0.5 * kLn10;
        double acc = 0.0;
        for (double a = a0; a < a1; a += step) {
            double e = 0.0;
            acc += GK31::integrate(f, a, std::min(a + step, a1), 5, 1e-10, &e);
            if (err) *err += e;
        }
        return acc;
    }

    const NetworkConfig& cfg_;
    double x_lo_, x_hi_;
    std::function<double(double)> eve1_;
};

}  // namespace

IPEstimate ip_lemma1(const NetworkConfig& cfg, const Lemma1Options& opt) {
    cfg.validate();
    SecureIntegrator si(cfg, opt.nodes_per_decade);
    auto j2t = build_j2(cfg, opt.nodes_per_decade);
    double err = 0.0;
    double secure = si.integrate([&](double y) { return j2t(y); }, &err);
    if (err > opt.abs_tol) throw EvaluationError("ip_lemma1: quadrature error estimate above tolerance");
    IPEstimate e;
    e.path = Path::lemma1;
    e.raw = 1.0 - secure;
    e.value = std::clamp(e.raw, 0.0, 1.0);
    e.ci_low = e.ci_high = e.ci99_low = e.ci99_high = e.value;
    e.error = err;
    e.evaluated_at_gI = cfg.power.gI;
    return e;
}

namespace detail {

double secure_moment_quadrature(const NetworkConfig& cfg, double nu) {
    SecureIntegrator si(cfg, 24);
    return si.integrate([nu](double y) { return std::pow(y, nu); });
}

}  // namespace detail

}  // namespace hstcn::analytic
