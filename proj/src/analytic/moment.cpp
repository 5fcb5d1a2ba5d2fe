#include "hstcn/analytic.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace hstcn::analytic::detail {

namespace sf = hstcn::specfun;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double factorial(int n) { return std::tgamma(n + 1.0); }

double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// c^{-(nu+m)} Gamma(nu+m, c x0) with weight w: the x-integral of
// x^{nu+m-1} e^{-c x} over (x0, inf).
struct SimpleTerm {
    double c;
    int m;
    double w;
};

// Offset-indexed vector over [lo, hi].
template <class T>
struct Span {
    int lo = 0;
    std::vector<T> v;
    Span(int lo_, int hi_) : lo(lo_), v(static_cast<std::size_t>(hi_ - lo_ + 1)) {}
    T& operator[](int i) { return v[static_cast<std::size_t>(i - lo)]; }
    const T& operator[](int i) const { return v[static_cast<std::size_t>(i - lo)]; }
};

}  // namespace

std::vector<cplx> secure_moment_line(const NetworkConfig& cfg, double nu_r, double h, int j_lo, int j_hi,
                                     const MomentOptions& opt) {
    const auto& pc = cfg.power;
    const auto &R = cfg.sr, &E = cfg.se1, &J = cfg.sje1;
    const double lam = cfg.sp.lambda, lamJ = cfg.sjp.lambda;
    const double sigS = pc.sigma_S(), sigSJ = pc.sigma_SJ(), eps = pc.eps_I();
    const double x0 = pc.gth / pc.gS, zeta = cfg.zeta(), chi = cfg.chi();
    const double FSP = channels::rayleigh_gain_cdf(cfg.sp, sigS);
    const double FJP = channels::rayleigh_gain_cdf(cfg.sjp, sigSJ);
    const double d = opt.rho_offset, sl = opt.s_line;
    const double ls = opt.log_scale;

    std::vector<SimpleTerm> simple;
    auto add_simple = [&](double c, int m, double w) {
        for (auto& t : simple)
            if (t.c == c && t.m == m) {
                t.w += w;
                return;
            }
        simple.push_back({c, m, w});
    };
    for (int n3 = 0; n3 < R.m; ++n3) add_simple(R.upsilon, n3 + 1, R.Delta * R.phi[n3]);

    // Jammer terms keyed by (p, m), weights per n1.
    std::map<std::pair<int, int>, std::vector<double>> jam;
    if (!pc.jammer_on) {
        for (int n3 = 0; n3 < R.m; ++n3)
            for (int n2 = 0; n2 < E.m; ++n2)
                for (int j = 0; j <= n2; ++j)
                    add_simple(zeta, n3 + j + 1,
                               -R.Delta * E.Delta * R.phi[n3] * E.phi[n2] * factorial(n2) /
                                   std::pow(E.upsilon, n2 + 1) * std::pow(E.upsilon, j) / factorial(j));
    } else {
        for (int n1 = 0; n1 < J.m; ++n1)
            for (int n2 = 0; n2 < E.m; ++n2)
                for (int p = 0; p <= n2; ++p)
                    for (int n3 = 0; n3 < R.m; ++n3) {
                        auto& w = jam[{p, n2 + n3 - p + 1}];
                        w.resize(J.m, 0.0);
                        w[n1] -= R.Delta * E.Delta * J.Delta * binom(n2, p) * R.phi[n3] * E.phi[n2] * J.phi[n1] /
                                 (std::pow(J.upsilon, n1 + 1) * std::pow(E.upsilon, p + 1));
                    }
    }

    // The two jammer variants: g_SJP below sigma_SJ (weight F_SJP, argument
    // chi / gSJ) and above it (incomplete factor Gamma(1-s, lamJ sigSJ),
    // argument chi / (gI lamJ)).
    const double V[2] = {chi / pc.gSJ, chi / (pc.gI * lamJ)};
    const double fV[2] = {FJP, 1.0};
    const int Ls = static_cast<int>(std::ceil(opt.inner_halfwidth / h));

    struct JamKernel {
        int p, m;
        std::vector<cplx> k;  // over l in [-Ls, Ls], includes h / 2 pi
        double residue = 0.0; // first-residue replacement of the s-integral
    };
    std::vector<JamKernel> kernels;
    if (pc.jammer_on) {
        std::vector<cplx> extra(2 * Ls + 1);
        for (int l = -Ls; l <= Ls; ++l)
            extra[l + Ls] = sf::upper_incomplete_gamma(1.0 - cplx(sl, h * l), lamJ * sigSJ);
        for (const auto& [key, w] : jam) {
            JamKernel jk{key.first, key.second, {}, 0.0};
            const int p = key.first;
            if (opt.first_residue) {
                const double xg = lamJ * sigSJ;
                const double g2 = std::exp(-xg) * (1.0 + xg);  // Gamma(2, x)
                jk.residue = w[0] * factorial(p + 1) * (fV[0] * V[0] + fV[1] * V[1] * g2);
            } else {
                jk.k.assign(2 * Ls + 1, 0.0);
                for (int l = -Ls; l <= Ls; ++l) {
                    const cplx s(sl, h * l);
                    cplx acc = 0.0;
                    for (int n1 = 0; n1 < J.m; ++n1) {
                        if (w[n1] == 0.0) continue;
                        cplx lg = sf::log_gamma(n1 + 1.0 + s) + sf::log_gamma(1.0 + p - s);
                        cplx g = -std::exp(lg) / s;
                        cplx v0 = fV[0] * std::exp(-s * std::log(V[0]));
                        cplx v1 = fV[1] * std::exp(-s * std::log(V[1])) * extra[l + Ls];
                        acc += w[n1] * g * (v0 + v1);
                    }
                    jk.k[l + Ls] = acc * h / kTwoPi;
                }
            }
            kernels.push_back(std::move(jk));
        }
    }

    const int N = j_hi - j_lo + 1;
    std::vector<cplx> out(N, 0.0);

    // g_SP <= sigma_S: Omega = gS, lower limit x0.
    {
        Span<cplx> pref(j_lo, j_hi);
        for (int j = j_lo; j <= j_hi; ++j) pref[j] = FSP * std::exp(cplx(nu_r, h * j) * (ls + std::log(pc.gS)));
        for (const auto& t : simple)
            for (int j = j_lo; j <= j_hi; ++j) {
                const cplx nu(nu_r, h * j);
                cplx v = t.w * std::pow(t.c, -t.m) * std::exp(-nu * std::log(t.c)) *
                         sf::upper_incomplete_gamma(nu + static_cast<double>(t.m), t.c * x0);
                out[j - j_lo] += pref[j] * v;
            }
        std::map<int, Span<cplx>> tab;  // Gamma(nu_r + sl + m + i h idx, zeta x0)
        for (const auto& jk : kernels) {
            if (opt.first_residue || tab.count(jk.m)) continue;
            Span<cplx> t(j_lo - Ls, j_hi + Ls);
            for (int i = j_lo - Ls; i <= j_hi + Ls; ++i)
                t[i] = sf::upper_incomplete_gamma(cplx(nu_r + sl + jk.m, h * i), zeta * x0);
            tab.emplace(jk.m, std::move(t));
        }
        for (const auto& jk : kernels) {
            const double zm = std::pow(zeta, -jk.m);
            for (int j = j_lo; j <= j_hi; ++j) {
                const cplx nu(nu_r, h * j);
                cplx M = 0.0;
                if (opt.first_residue) {
                    M = jk.residue * sf::upper_incomplete_gamma(nu + (jk.m - 1.0), zeta * x0);
                } else {
                    const auto& t = tab.at(jk.m);
                    for (int l = -Ls; l <= Ls; ++l) M += jk.k[l + Ls] * t[j + l];
                }
                out[j - j_lo] += pref[j] * zm * std::exp(-nu * std::log(zeta)) * M;
            }
        }
    }

    // g_SP > sigma_S: the u-integral turns every incomplete gamma in x0 = eps u
    // into a Cauchy transform over rho on Re rho = nu_r + d.
    {
        const int Kr = Ls;
        Span<cplx> B(-Kr, Kr);
        auto rho_at = [&](int k) { return cplx(nu_r + d, h * k); };
        Span<cplx> ug(-Kr, Kr);
        for (int k = -Kr; k <= Kr; ++k) ug[k] = sf::upper_incomplete_gamma(1.0 - rho_at(k), lam * sigS);
        auto arg_log = [&](double c) { return std::log(c * eps / lam); };
        auto pref_log = [&](double c) { return nu_r * (ls + std::log(pc.gth) - arg_log(c)); };
        for (const auto& t : simple) {
            const double la = arg_log(t.c), lp = pref_log(t.c);
            for (int k = -Kr; k <= Kr; ++k) {
                const cplx rho = rho_at(k);
                B[k] += t.w * std::pow(t.c, -t.m) *
                        std::exp(sf::log_gamma(rho + static_cast<double>(t.m)) - (rho - nu_r) * la + lp);
            }
        }
        if (!kernels.empty()) {
            const double la = arg_log(zeta), lp = pref_log(zeta);
            std::map<int, Span<cplx>> gtab;  // Gamma(m + nu_r + d + sl + i h idx)
            for (const auto& jk : kernels) {
                if (opt.first_residue || gtab.count(jk.m)) continue;
                Span<cplx> t(-Kr - Ls, Kr + Ls);
                for (int i = -Kr - Ls; i <= Kr + Ls; ++i)
                    t[i] = std::exp(sf::log_gamma(cplx(jk.m + nu_r + d + sl, h * i)));
                gtab.emplace(jk.m, std::move(t));
            }
            for (int k = -Kr; k <= Kr; ++k) {
                const cplx rho = rho_at(k);
                const cplx sc = std::exp(-(rho - nu_r) * la + lp);
                cplx acc = 0.0;
                for (const auto& jk : kernels) {
                    cplx A = 0.0;
                    if (opt.first_residue) {
                        A = jk.residue * std::exp(sf::log_gamma(rho + (jk.m - 1.0)));
                    } else {
                        const auto& t = gtab.at(jk.m);
                        for (int l = -Ls; l <= Ls; ++l) A += jk.k[l + Ls] * t[k + l];
                    }
                    acc += std::pow(zeta, -jk.m) * A;
                }
                B[k] += acc * sc;
            }
        }
        for (int k = -Kr; k <= Kr; ++k) B[k] *= ug[k] * (h / kTwoPi);
        const double lg = ls + std::log(pc.gth);
        for (int j = j_lo; j <= j_hi; ++j) {
            cplx acc = 0.0;
            for (int k = -Kr; k <= Kr; ++k) acc += B[k] / cplx(d, h * (k - j));
            out[j - j_lo] += std::exp(cplx(0.0, h * j * lg)) * acc;
        }
    }
    return out;
}

}  // namespace hstcn::analytic::detail
