#pragma once

#include "hstcn/channels.hpp"
#include "hstcn/system.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hstcn {

/// Full scenario: powers, jammer flag and the seven link laws.
struct NetworkConfig {
    system::PowerConfig power;
    channels::RayleighGainParams sp, sjp;              // S -> P, S_J -> P
    channels::ShadowedRicianParams sr, se1, sje1;      // S -> R, S -> E1, S_J -> E1
    channels::OpticalLinkParams d, e2;                 // R -> D, R -> E2
    std::vector<std::string> notes;                    // overrides and ambiguities, for the manifest

    /// Simulation defaults: b = 1.4, m = 2, Omega = 3, lambda = 0.8,
    /// alpha = 6.1096, beta = 1.0794, xi = 1.1227, gth = 2 dB, gI = 9 dB,
    /// gS = 60 dB, gSJ = 10 dB, mu_E2 = 20 dB, mu_D = 40 dB.
    static NetworkConfig defaults();

    double zeta() const { return sr.upsilon + se1.upsilon; }
    double chi() const { return sje1.upsilon * zeta() / se1.upsilon; }
    double theta() const { return d.O * e2.O; }
    double varrho_D() const { return power.gS / d.mu; }
    double varrho_E2() const { return power.gS / e2.mu; }

    /// Throws channels::ParameterError naming the first bad field.
    void validate() const;
    /// Extra requirements of the closed-form and asymptotic evaluators.
    void validate_closed_form() const;
};

enum class Path { mc, lemma1, closed, asymptotic };
const char* path_name(Path p);

/// IP value from any evaluation path. Interval fields are only meaningful
/// for Monte Carlo; analytic paths set them to the value itself.
struct IPEstimate {
    double value = 0.0;
    double ci_low = 0.0, ci_high = 0.0;      // 95% Wilson
    double ci99_low = 0.0, ci99_high = 0.0;  // 99% Wilson
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    Path path = Path::mc;
    double raw = 0.0;        // closed/asymptotic value before clipping
    double error = 0.0;      // numerical error estimate of analytic paths
    double evaluated_at_gI = 0.0;
    std::vector<std::string> notes;
};

double db_to_linear(double db);
double linear_to_db(double v);

}  // namespace hstcn
