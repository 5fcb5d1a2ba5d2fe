#pragma once

#include "hstcn/rng.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hstcn::channels {

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Shadowed-Rician channel-gain law with integer fading severity m.
struct ShadowedRicianParams {
    double b = 1.4;      // half the average multipath power
    int m = 2;           // fading severity
    double omega = 3.0;  // average LOS power

    // Derived by make().
    double Delta = 0, beta = 0, delta = 0, upsilon = 0;
    std::vector<double> phi;  // phi[n], n = 0..m-1

    static ShadowedRicianParams make(double b, int m, double omega);
};

double sr_pdf(const ShadowedRicianParams& p, double x);
/// Same density through e^{-beta x} 1F1(m; 1; delta x).
double sr_pdf_confluent(const ShadowedRicianParams& p, double x);
double sr_cdf(const ShadowedRicianParams& p, double x);
double sr_sample(const ShadowedRicianParams& p, rng::Stream& s);

/// Exponential channel gain g = |h|^2 with rate lambda.
struct RayleighGainParams {
    double lambda = 0.8;
};

double rayleigh_gain_pdf(const RayleighGainParams& p, double u);
double rayleigh_gain_cdf(const RayleighGainParams& p, double u);
double rayleigh_gain_sample(const RayleighGainParams& p, rng::Stream& s);

/// Gamma-Gamma turbulence with pointing error, as an SNR law.
struct OpticalLinkParams {
    double alpha = 6.1096;
    double beta = 1.0794;
    double xi = 1.1227;
    double mu = 1e4;  // SNR scale mu_r (linear)
    int r = 1;        // 1 heterodyne, 2 intensity modulation / direct detection

    // Documentation only; folded into mu.
    std::optional<double> P_R, omega_Z, eta, N;

    // Derived by make().
    double xi2 = 0, O = 0, Upsilon = 0;
    std::vector<double> kappa1, kappa2;
    std::vector<std::string> perturbations;

    /// Validates and, if alpha - beta, xi^2 - alpha or xi^2 - beta is an
    /// integer, nudges alpha (first two cases) or beta by +1e-6.
    static OpticalLinkParams make(double alpha, double beta, double xi, double mu, int r = 1);
};

double gg_snr_pdf(const OpticalLinkParams& p, double z);
double gg_snr_cdf(const OpticalLinkParams& p, double z);
/// 1 - F(z), accurate in the far tail.
double gg_snr_ccdf(const OpticalLinkParams& p, double z);
double gg_snr_sample(const OpticalLinkParams& p, rng::Stream& s);

/// CDF through the r = 1, unit-scale law: F(z) = F_1((z / mu)^{1/r}).
/// Independent of the r-generalised Meijer G; used to cross-check it.
double gg_snr_cdf_by_root(const OpticalLinkParams& p, double z);

}  // namespace hstcn::channels
