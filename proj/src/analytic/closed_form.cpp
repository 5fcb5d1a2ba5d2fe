#include "hstcn/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace hstcn::analytic {

namespace sf = hstcn::specfun;

namespace detail {

double gg_pole(const channels::OpticalLinkParams& p, Branch b, int k) {
    switch (b) {
        case Branch::xi2: return p.xi2;
        case Branch::alpha: return p.alpha + k;
        case Branch::beta: return p.beta + k;
    }
    return 0.0;
}

namespace {

// Gamma(x) as (log|Gamma|, sign) for real non-pole x.
std::pair<double, double> lgamma_signed(double x) {
    double lg = std::lgamma(x);
    double sign = 1.0;
    if (x < 0.0 && static_cast<long>(std::ceil(-x)) % 2 == 1) sign = -1.0;
    return {lg, sign};
}

std::pair<double, double> log_residue(const channels::OpticalLinkParams& p, Branch b, int k) {
    const double x2 = p.xi2, a = p.alpha, be = p.beta;
    if (b == Branch::xi2) {
        auto [l1, s1] = lgamma_signed(a - x2);
        auto [l2, s2] = lgamma_signed(be - x2);
        return {l1 + l2, s1 * s2};
    }
    const double self = b == Branch::alpha ? a : be, other = b == Branch::alpha ? be : a;
    auto [l1, s1] = lgamma_signed(other - self - k);
    double den = x2 - self - k;
    double sign = s1 * (k % 2 ? -1.0 : 1.0) * (den < 0 ? -1.0 : 1.0);
    return {l1 - std::lgamma(k + 1.0) - std::log(std::abs(den)), sign};
}

}  // namespace

double gg_residue(const channels::OpticalLinkParams& p, Branch b, int k) {
    auto [l, s] = log_residue(p, b, k);
    return s * std::exp(l);
}

}  // namespace detail

namespace {

using detail::Branch;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double min_pole(const channels::OpticalLinkParams& p) { return std::min({p.xi2, p.alpha, p.beta}); }

// Gamma(alpha+s) Gamma(beta+s) / (xi^2 + s)
cplx gg_kernel(const channels::OpticalLinkParams& p, cplx s) {
    return std::exp(sf::log_gamma(p.alpha + s) + sf::log_gamma(p.beta + s)) / (p.xi2 + s);
}

struct Outcome {
    double secure = 0.0;
    double error = 0.0;
    std::string mode;
};

// log of c_Z / Lambda with c_Z = Upsilon_Z / mu_Z and Lambda = 1 / gS.
double log_rate(const NetworkConfig& cfg, const channels::OpticalLinkParams& p) {
    return std::log(p.Upsilon / p.mu) + std::log(cfg.power.gS);
}

Outcome contour(const NetworkConfig& cfg, const ClosedFormOptions& opt, bool first_residue) {
    const auto &D = cfg.d, &E = cfg.e2;
    const double minE = min_pole(E), minD = min_pole(D);
    const double nu_r = std::min(0.3, 0.5 * minE);
    const double t_r = -0.5 * minD, s2 = -nu_r - t_r;
    double gap = std::min({nu_r, 0.5 * minD, minE - nu_r, s2 + minE, 0.3});
    const double h = std::min(opt.step, gap / 5.0);
    const int K = static_cast<int>(std::ceil(opt.halfwidth / h));

    detail::MomentOptions mo;
    mo.inner_halfwidth = opt.inner_halfwidth;
    mo.log_scale = -std::log(cfg.power.gS);
    mo.first_residue = first_residue;
    auto Hv = detail::secure_moment_line(cfg, nu_r, h, -2 * K, 2 * K, mo);
    auto H = [&](int i) { return Hv[static_cast<std::size_t>(i + 2 * K)]; };

    const double lcE = log_rate(cfg, E), lcD = log_rate(cfg, D);
    std::vector<cplx> single(2 * K + 1), eside(2 * K + 1), dside(2 * K + 1);
    std::vector<cplx> s2v(2 * K + 1), tv(2 * K + 1);
    for (int k = -K; k <= K; ++k) {
        cplx s(-nu_r, h * k);
        single[k + K] = gg_kernel(E, s) / (-s) * std::exp(-s * lcE);
        cplx sd(s2, h * k);
        s2v[k + K] = sd;
        eside[k + K] = gg_kernel(E, sd) * std::exp(-sd * lcE);
        cplx t(t_r, h * k);
        tv[k + K] = t;
        dside[k + K] = gg_kernel(D, t) / (-t) * std::exp(-t * lcD);
    }
    auto sums = [&](int stride) {
        cplx i1 = 0.0, i2 = 0.0;
        for (int k = -K; k <= K; ++k)
            if (k % stride == 0) i1 += single[k + K] * H(-k);
        for (int j = -K; j <= K; ++j) {
            if (j % stride) continue;
            cplx inner = 0.0;
            for (int k = -K; k <= K; ++k) {
                if (k % stride) continue;
                inner += eside[k + K] / (-tv[j + K] - s2v[k + K]) * H(-(j + k));
            }
            i2 += dside[j + K] * inner;
        }
        const double hs = h * stride;
        return E.O * (hs / kTwoPi) * i1 - cfg.theta() * (hs / kTwoPi) * (hs / kTwoPi) * i2;
    };
    cplx fine = sums(1), coarse = sums(2);
    Outcome o;
    o.secure = fine.real();
    o.error = std::abs(fine - coarse) + std::abs(fine.imag());
    o.mode = "contour";
    return o;
}

Outcome series(const NetworkConfig& cfg, const ClosedFormOptions& opt, bool first_residue) {
    const auto &D = cfg.d, &E = cfg.e2;
    const auto& pol = opt.policy;
    struct Pole {
        double e, logr, sign;
    };
    auto poles = [&](const channels::OpticalLinkParams& p) {
        std::vector<Pole> v;
        for (Branch b : {Branch::xi2, Branch::alpha, Branch::beta})
            for (int k = 0; k < (b == Branch::xi2 ? 1 : pol.max_terms); ++k) {
                double r = detail::gg_residue(p, b, k);
                v.push_back({detail::gg_pole(p, b, k), std::log(std::abs(r)), r < 0 ? -1.0 : 1.0});
            }
        std::sort(v.begin(), v.end(), [](const Pole& a, const Pole& b) { return a.e < b.e; });
        v.resize(std::min<std::size_t>(v.size(), pol.max_terms));
        return v;
    };
    const auto pe = poles(E), pd = poles(D);

    detail::MomentOptions mo;
    mo.inner_halfwidth = opt.inner_halfwidth;
    mo.log_scale = -std::log(cfg.power.gS);
    mo.first_residue = first_residue;
    std::map<double, double> memo;
    auto H = [&](double nu) {
        auto it = memo.find(nu);
        if (it != memo.end()) return it->second;
        double v = detail::secure_moment_line(cfg, nu, opt.step, 0, 0, mo)[0].real();
        memo.emplace(nu, v);
        return v;
    };
    const double lcE = log_rate(cfg, E), lcD = log_rate(cfg, D);

    // sum_e r_E(e) c^e H(b + e) / (b + e), truncated when `consecutive_small_terms`
    // successive terms are below rel_tol of the partial sum.
    auto e_sum = [&](double b, bool* converged) {
        double acc = 0.0, comp = 0.0, last = 0.0;
        int small = 0;
        *converged = false;
        for (const auto& p : pe) {
            double hv = H(b + p.e);
            double term = hv > 0 ? p.sign * std::exp(p.logr + p.e * lcE + std::log(hv) - std::log(b + p.e)) : 0.0;
            double y = term - comp, t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            last = std::abs(term);
            small = last < pol.rel_tol * std::abs(acc) ? small + 1 : 0;
            if (small >= pol.consecutive_small_terms) {
                *converged = true;
                break;
            }
        }
        return std::pair{acc, last};
    };
    Outcome o;
    o.mode = "series";
    bool ok = true, conv;
    auto [s1, e1] = e_sum(0.0, &conv);
    ok = ok && conv;
    double i1 = E.O * s1;
    double i2 = 0.0, comp = 0.0, err = E.O * e1;
    int small = 0;
    bool outer_conv = false;
    for (const auto& q : pd) {
        auto [inner, ie] = e_sum(q.e, &conv);
        ok = ok && conv;
        double term = q.sign * std::exp(q.logr + q.e * lcD - std::log(q.e)) * inner;
        err += std::abs(q.sign * std::exp(q.logr + q.e * lcD - std::log(q.e)) * ie);
        double y = term - comp, t = i2 + y;
        comp = (t - i2) - y;
        i2 = t;
        small = std::abs(term) < pol.rel_tol * std::abs(i2) ? small + 1 : 0;
        if (small >= pol.consecutive_small_terms) {
            outer_conv = true;
            break;
        }
    }
    if (!ok || !outer_conv) throw EvaluationError("closed form: residue series did not converge within max_terms");
    o.secure = i1 - cfg.theta() * i2;
    o.error = err;
    return o;
}

IPEstimate assemble(const NetworkConfig& cfg, const ClosedFormOptions& opt, bool first_residue, Path path) {
    cfg.validate_closed_form();
    ClosedFormMode mode = resolve_mode(cfg, opt);
    Outcome o = mode == ClosedFormMode::series ? series(cfg, opt, first_residue) : contour(cfg, opt, first_residue);
    IPEstimate e;
    e.path = path;
    e.raw = 1.0 - o.secure;
    e.value = std::clamp(e.raw, 0.0, 1.0);
    if (std::abs(e.raw - e.value) > opt.clip_tol)
        throw EvaluationError("closed form: raw value " + std::to_string(e.raw) + " outside [0, 1] beyond tolerance");
    e.ci_low = e.ci_high = e.ci99_low = e.ci99_high = e.value;
    e.error = o.error;
    e.evaluated_at_gI = cfg.power.gI;
    e.notes.push_back("mode=" + o.mode);
    for (const auto* p : {&cfg.d, &cfg.e2})
        for (const auto& s : p->perturbations) e.notes.push_back((p == &cfg.d ? "optical.D: " : "optical.E2: ") + s);
    return e;
}

}  // namespace

ClosedFormMode resolve_mode(const NetworkConfig& cfg, const ClosedFormOptions& opt) {
    if (opt.mode != ClosedFormMode::automatic) return opt.mode;
    double r = std::max(cfg.d.Upsilon * cfg.varrho_D(), cfg.e2.Upsilon * cfg.varrho_E2());
    return r <= opt.series_threshold ? ClosedFormMode::series : ClosedFormMode::contour;
}

IPEstimate ip_closed_form(const NetworkConfig& cfg, const ClosedFormOptions& opt) {
    return assemble(cfg, opt, false, Path::closed);
}

IPEstimate ip_asymptotic(const NetworkConfig& cfg, const ClosedFormOptions& opt) {
    if (!cfg.power.jammer_on)
        throw ModeError("asymptotic IP exists only with the jammer on; without it the IP has no high-gI expansion");
    return assemble(cfg, opt, true, Path::asymptotic);
}

}  // namespace hstcn::analytic
