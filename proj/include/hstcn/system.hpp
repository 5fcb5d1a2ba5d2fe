#pragma once

#include "hstcn/channels.hpp"

namespace hstcn::system {

/// Transmit-power side of the scenario, all in linear SNR units.
struct PowerConfig {
    double gS = 1e6;          // source power budget / noise
    double gSJ = 10.0;        // jammer power budget / noise
    double gI = 7.943282347;  // tolerated interference at the primary receiver / noise
    double gth = 1.584893192; // relay decoding threshold
    bool jammer_on = true;

    double sigma_S() const { return gI / gS; }
    double sigma_SJ() const { return gI / gSJ; }
    double eps_I() const { return gth / gI; }
    void validate() const;
};

struct GainDraw {
    double g_SP = 0, g_SJP = 0, g_SR = 0, g_SE1 = 0, g_SJE1 = 0;
    double gamma_D = 0, gamma_E2 = 0;
};

struct SnrDraw {
    double gamma_R = 0, gamma_E1 = 0, gamma_D = 0, gamma_E2 = 0;
};

/// min(budget, gI / g_P), with g_P = 0 resolving to the budget.
double capped_power(double budget, double gI, double g_P);

double snr_relay(const PowerConfig& pc, double g_SR, double g_SP);
double snr_eve1(const PowerConfig& pc, double g_SE1, double g_SP, double g_SJE1, double g_SJP);
double snr_optical(const channels::OpticalLinkParams& p, rng::Stream& s);

/// Per-hop secrecy capacity in bits; zero when the relay cannot decode.
double secrecy_capacity(const SnrDraw& s, double gth);
double e2e_snr(const SnrDraw& s);

/// Intercept indicator, i.e. C_sec <= 0 or gamma_R < gth, from SNR
/// comparisons (exact in floating point, unlike the log form).
bool intercepted(const SnrDraw& s, double gth);

SnrDraw to_snr(const PowerConfig& pc, const GainDraw& g);

}  // namespace hstcn::system
