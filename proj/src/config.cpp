#include "hstcn/config.hpp"

#include <cmath>

namespace hstcn {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double v) { return 10.0 * std::log10(v); }

const char* path_name(Path p) {
    switch (p) {
        case Path::mc: return "mc";
        case Path::lemma1: return "lemma1";
        case Path::closed: return "closed";
        case Path::asymptotic: return "asymptotic";
    }
    return "?";
}

NetworkConfig NetworkConfig::defaults() {
    NetworkConfig c;
    c.power.gS = db_to_linear(60.0);
    c.power.gSJ = db_to_linear(10.0);
    c.power.gI = db_to_linear(9.0);
    c.power.gth = db_to_linear(2.0);
    c.power.jammer_on = true;
    c.sp.lambda = c.sjp.lambda = 0.8;
    c.sr = c.se1 = c.sje1 = channels::ShadowedRicianParams::make(1.4, 2, 3.0);
    c.d = channels::OpticalLinkParams::make(6.1096, 1.0794, 1.1227, db_to_linear(40.0));
    c.e2 = channels::OpticalLinkParams::make(6.1096, 1.0794, 1.1227, db_to_linear(20.0));
    c.d.eta = c.e2.eta = 0.7;
    c.d.omega_Z = c.e2.omega_Z = 0.7;
    return c;
}

void NetworkConfig::validate() const {
    power.validate();
    if (!(sp.lambda > 0.0)) throw channels::ParameterError("rayleigh.SP.lambda must be > 0");
    if (!(sjp.lambda > 0.0)) throw channels::ParameterError("rayleigh.SJP.lambda must be > 0");
    auto check_sr = [](const channels::ShadowedRicianParams& p, const char* key) {
        if (!(p.b > 0.0) || !(p.omega > 0.0) || p.m < 1 || !(p.upsilon > 0.0) ||
            static_cast<int>(p.phi.size()) != p.m)
            throw channels::ParameterError(std::string(key) + ": invalid shadowed-Rician parameters");
    };
    check_sr(sr, "sr.SR");
    check_sr(se1, "sr.SE1");
    check_sr(sje1, "sr.SJE1");
    auto check_opt = [](const channels::OpticalLinkParams& p, const char* key) {
        if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !(p.xi > 0.0) || !(p.mu > 0.0) || (p.r != 1 && p.r != 2))
            throw channels::ParameterError(std::string(key) + ": invalid optical parameters");
    };
    check_opt(d, "optical.D");
    check_opt(e2, "optical.E2");
}

void NetworkConfig::validate_closed_form() const {
    validate();
    if (d.r != 1 || e2.r != 1)
        throw channels::ParameterError("closed form requires r = 1 on both optical links");
}

}  // namespace hstcn
