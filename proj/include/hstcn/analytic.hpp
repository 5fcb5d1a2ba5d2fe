#pragma once

#include "hstcn/config.hpp"
#include "hstcn/specfun.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hstcn::analytic {

using specfun::cplx;

/// Requested evaluator cannot handle the configuration (e.g. the
/// asymptote with the jammer off).
class ModeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure: tolerance or truncation budget not met, or a closed
/// form value too far outside [0, 1] to be a rounding artefact.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Transmit SNR of the source given g_SP = u: gS below sigma_S, gI / u above.
double omega_of_u(const system::PowerConfig& pc, double u);

/// CDF of the jammer's interference U_SJ at E1, through the finite sums and
/// the incomplete G^{1,2}_{2,2} term.
double cdf_u_sj(const NetworkConfig& cfg, double t);
/// Same CDF with the v-integral done in elementary functions.
double cdf_u_sj_elementary(const NetworkConfig& cfg, double t);

/// Pr(g_SE1 <= x) with the jammer off, Pr(g_SE1 <= x (1 + U_SJ)) with it on.
double eve1_gain_cdf(const NetworkConfig& cfg, double x, bool jammer_on);

double cond_cdf_gamma_r(const NetworkConfig& cfg, double y, double u);
double cond_cdf_gamma_e1(const NetworkConfig& cfg, double y, double u, bool jammer_on);

/// Smallest z (on a 1.5x ladder from mu) with 1 - F(z) <= 1e-15.
double gg_upper_cutoff(const channels::OpticalLinkParams& p);

/// Pr(gamma_E2 <= y, gamma_D > gamma_E2).
double j2(const NetworkConfig& cfg, double y);

struct Lemma1Options {
    double abs_tol = 1e-4;
    int nodes_per_decade = 24;
};

IPEstimate ip_lemma1(const NetworkConfig& cfg, const Lemma1Options& opt = {});

enum class ClosedFormMode {
    automatic,  // series when it converges quickly, contour otherwise
    contour,    // outer Mellin-Barnes integrals by trapezoid sums
    series      // outer integrals by their residue series
};

struct ClosedFormOptions {
    ClosedFormMode mode = ClosedFormMode::automatic;
    specfun::TruncationPolicy policy{};
    double step = 1.0 / 16;       // trapezoid step on every vertical line (upper bound)
    double halfwidth = 25.0;      // truncation of the outer lines
    double inner_halfwidth = 25.0;
    double clip_tol = 5e-3;
    /// Series mode is chosen by `automatic` when max_Z Upsilon_Z varrho_Z is below this.
    double series_threshold = 0.05;
};

IPEstimate ip_closed_form(const NetworkConfig& cfg, const ClosedFormOptions& opt = {});
/// High-gI approximation; requires the jammer.
IPEstimate ip_asymptotic(const NetworkConfig& cfg, const ClosedFormOptions& opt = {});

/// Mode `automatic` resolves to for this config.
ClosedFormMode resolve_mode(const NetworkConfig& cfg, const ClosedFormOptions& opt);

namespace detail {

struct MomentOptions {
    double inner_halfwidth = 25.0;
    double rho_offset = 0.3;   // Re rho - Re nu on the Cauchy line
    double s_line = -0.5;      // Re s of the jammer integrals
    double log_scale = 0.0;    // log Lambda; returns Lambda^nu H(nu)
    bool first_residue = false;
};

/// H(nu) = E[gamma_R^nu ; gamma_R > gth, gamma_R > gamma_E1], scaled by
/// Lambda^nu, at nu = nu_r + i h j for j = j_lo..j_hi.
std::vector<cplx> secure_moment_line(const NetworkConfig& cfg, double nu_r, double h, int j_lo, int j_hi,
                                     const MomentOptions& opt);

/// Same quantity at one real nu by direct nested quadrature (test oracle).
double secure_moment_quadrature(const NetworkConfig& cfg, double nu);

/// Residue of Gamma(alpha+s)Gamma(beta+s)/(xi^2+s) at s = -e for the optical
/// link's three pole families; k is the index inside the family.
enum class Branch { xi2, alpha, beta };
double gg_residue(const channels::OpticalLinkParams& p, Branch b, int k);
double gg_pole(const channels::OpticalLinkParams& p, Branch b, int k);

}  // namespace detail

}  // namespace hstcn::analytic
