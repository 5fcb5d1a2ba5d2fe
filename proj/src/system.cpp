#include "hstcn/system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hstcn::system {

void PowerConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw channels::ParameterError(std::string(name) + " must be finite and > 0");
    };
    positive(gS, "power.gS");
    positive(gSJ, "power.gSJ");
    positive(gI, "power.gI");
    positive(gth, "power.gth");
}

double capped_power(double budget, double gI, double g_P) {
    if (g_P <= 0.0) return budget;
    return std::min(budget, gI / g_P);
}

double snr_relay(const PowerConfig& pc, double g_SR, double g_SP) {
    return capped_power(pc.gS, pc.gI, g_SP) * g_SR;
}

double snr_eve1(const PowerConfig& pc, double g_SE1, double g_SP, double g_SJE1, double g_SJP) {
    double u_s = capped_power(pc.gS, pc.gI, g_SP) * g_SE1;
    if (!pc.jammer_on) return u_s;
    double u_sj = capped_power(pc.gSJ, pc.gI, g_SJP) * g_SJE1;
    return u_s / (u_sj + 1.0);
}

double snr_optical(const channels::OpticalLinkParams& p, rng::Stream& s) {
    return channels::gg_snr_sample(p, s);
}

double secrecy_capacity(const SnrDraw& s, double gth) {
    if (s.gamma_R < gth) return 0.0;
    const double ln2 = std::numbers::ln2;
    double c1 = (std::log1p(s.gamma_R) - std::log1p(s.gamma_E1)) / ln2;
    double c2 = std::min(std::log1p(s.gamma_R) - std::log1p(s.gamma_E2),
                         std::log1p(s.gamma_D) - std::log1p(s.gamma_E2)) / ln2;
    return std::min(c1, c2);
}

double e2e_snr(const SnrDraw& s) { return std::min(s.gamma_R, s.gamma_D); }

bool intercepted(const SnrDraw& s, double gth) {
    bool secure = s.gamma_R >= gth && s.gamma_R > s.gamma_E1 && s.gamma_R > s.gamma_E2 &&
                  s.gamma_D > s.gamma_E2;
    return !secure;
}

SnrDraw to_snr(const PowerConfig& pc, const GainDraw& g) {
    return {snr_relay(pc, g.g_SR, g.g_SP), snr_eve1(pc, g.g_SE1, g.g_SP, g.g_SJE1, g.g_SJP), g.gamma_D,
            g.gamma_E2};
}

}  // namespace hstcn::system
