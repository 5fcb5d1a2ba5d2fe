#include "hstcn/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace hstcn::cli {

ConfigError::ConfigError(int line, std::string key, const std::string& msg)
    : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + (key.empty() ? "" : key + ": ") + msg
                                     : (key.empty() ? "" : key + ": ") + msg),
      line_(line),
      key_(std::move(key)) {}

void Scenario::apply_ties() {
    auto& p = cfg.power;
    if (sigma_S) p.gS = p.gI / *sigma_S;
    if (sigma_SJ) p.gSJ = p.gI / *sigma_SJ;
    if (eps_I) p.gth = *eps_I * p.gI;
    if (varrho_D) cfg.d.mu = p.gS / *varrho_D;
    if (varrho_E2) cfg.e2.mu = p.gS / *varrho_E2;
}

namespace {

std::string trim(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

double to_double(const std::string& v, int line, const std::string& key) {
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        throw ConfigError(line, key, "expected a number, got '" + v + "'");
    return out;
}

int to_int(const std::string& v, int line, const std::string& key) {
    double d = to_double(v, line, key);
    if (d != std::floor(d) || std::abs(d) > 1e6)
        throw ConfigError(line, key, "must be an integer (got " + v + ")");
    return static_cast<int>(d);
}

bool to_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError(line, key, "expected true/false, got '" + v + "'");
}

// Shortest text that parses back to exactly v.
std::string fmt(double v) {
    char buf[40];
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

struct SrDraft {
    double b, omega;
    int m;
    bool touched = false;
};

struct OptDraft {
    double alpha, beta, xi, mu;
    int r;
    bool touched = false;
};

}  // namespace

Scenario parse_scenario(std::string_view text, const Scenario& base, const std::string& source) {
    Scenario sc = base;
    auto& pw = sc.cfg.power;
    std::map<std::string, SrDraft> sr;
    for (auto [name, p] : {std::pair<const char*, const channels::ShadowedRicianParams*>{"SR", &sc.cfg.sr},
                           {"SE1", &sc.cfg.se1},
                           {"SJE1", &sc.cfg.sje1}})
        sr[name] = {p->b, p->omega, p->m};
    std::map<std::string, OptDraft> opt;
    for (auto [name, p] : {std::pair<const char*, const channels::OpticalLinkParams*>{"D", &sc.cfg.d},
                           {"E2", &sc.cfg.e2}})
        opt[name] = {p->alpha, p->beta, p->xi, p->mu, p->r};
    bool mu_D_explicit = false, mu_E2_explicit = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, "", "expected 'key = value'");
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string val = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ConfigError(lineno, "", "empty key");
        if (key != "note") {
            if (auto it = seen.find(key); it != seen.end())
                throw ConfigError(lineno, key, "duplicate key (first set on line " + std::to_string(it->second) + ")");
            seen[key] = lineno;
        }
        if (val.empty()) throw ConfigError(lineno, key, "missing value");
        if (!source.empty() && key != "note") sc.cfg.notes.push_back(source + ": " + key + " = " + val);

        auto num = [&] { return to_double(val, lineno, key); };
        auto pos = [&] {
            double v = num();
            if (!(v > 0.0)) throw ConfigError(lineno, key, "must be > 0");
            return v;
        };

        if (key == "note") {
            sc.cfg.notes.push_back(val);
        } else if (key == "power.gS_db") {
            pw.gS = db_to_linear(num());
        } else if (key == "power.gS") {
            pw.gS = pos();
        } else if (key == "power.gSJ_db") {
            pw.gSJ = db_to_linear(num());
        } else if (key == "power.gSJ") {
            pw.gSJ = pos();
        } else if (key == "power.gI_db") {
            pw.gI = db_to_linear(num());
        } else if (key == "power.gI") {
            pw.gI = pos();
        } else if (key == "power.gth_db") {
            pw.gth = db_to_linear(num());
        } else if (key == "power.gth") {
            pw.gth = pos();
        } else if (key == "power.jammer_on") {
            pw.jammer_on = to_bool(val, lineno, key);
        } else if (key == "power.sigma_S") {
            sc.sigma_S = pos();
        } else if (key == "power.sigma_SJ") {
            sc.sigma_SJ = pos();
        } else if (key == "power.eps_I") {
            sc.eps_I = pos();
        } else if (key == "rayleigh.SP.lambda") {
            sc.cfg.sp.lambda = pos();
        } else if (key == "rayleigh.SJP.lambda") {
            sc.cfg.sjp.lambda = pos();
        } else if (key.rfind("sr.", 0) == 0) {
            size_t dot = key.find('.', 3);
            std::string link = dot == std::string::npos ? "" : key.substr(3, dot - 3);
            std::string field = dot == std::string::npos ? "" : key.substr(dot + 1);
            auto it = sr.find(link);
            if (it == sr.end()) throw ConfigError(lineno, key, "unknown key");
            auto& d = it->second;
            if (field == "b") d.b = pos();
            else if (field == "omega") d.omega = pos();
            else if (field == "m") {
                double v = num();
                if (v != std::floor(v)) throw ConfigError(lineno, key, "m must be an integer (got " + val + ")");
                d.m = to_int(val, lineno, key);
                if (d.m < 1) throw ConfigError(lineno, key, "m must be >= 1");
            } else throw ConfigError(lineno, key, "unknown key");
            d.touched = true;
        } else if (key.rfind("optical.", 0) == 0) {
            size_t dot = key.find('.', 8);
            std::string link = dot == std::string::npos ? "" : key.substr(8, dot - 8);
            std::string field = dot == std::string::npos ? "" : key.substr(dot + 1);
            auto it = opt.find(link);
            if (it == opt.end()) throw ConfigError(lineno, key, "unknown key");
            auto& d = it->second;
            bool is_D = link == "D";
            channels::OpticalLinkParams& meta = is_D ? sc.cfg.d : sc.cfg.e2;
            if (field == "alpha") d.alpha = pos(), d.touched = true;
            else if (field == "beta") d.beta = pos(), d.touched = true;
            else if (field == "xi") d.xi = pos(), d.touched = true;
            else if (field == "mu_db" || field == "mu") {
                d.mu = field == "mu" ? pos() : db_to_linear(num());
                d.touched = true;
                (is_D ? mu_D_explicit : mu_E2_explicit) = true;
            } else if (field == "r") {
                d.r = to_int(val, lineno, key);
                if (d.r != 1 && d.r != 2) throw ConfigError(lineno, key, "r must be 1 or 2");
                d.touched = true;
            } else if (field == "varrho") {
                (is_D ? sc.varrho_D : sc.varrho_E2) = pos();
            } else if (field == "eta" || field == "omega_Z" || field == "P_R" || field == "N") {
                double v = pos();
                (field == "eta" ? meta.eta : field == "omega_Z" ? meta.omega_Z : field == "P_R" ? meta.P_R : meta.N)
                    .emplace(v);
            } else throw ConfigError(lineno, key, "unknown key");
        } else {
            throw ConfigError(lineno, key, "unknown key");
        }
    }

    // An explicit value drops a tie inherited from the base; both in one
    // document is a conflict.
    auto untie = [&](std::optional<double>& tie, const char* tie_key, bool explicit_value, const char* value_key) {
        if (!explicit_value) return;
        if (seen.count(tie_key))
            throw ConfigError(seen[tie_key], tie_key, std::string("conflicts with ") + value_key);
        tie.reset();
    };
    auto given = [&](const char* a, const char* b) { return seen.count(a) + seen.count(b) > 0; };
    untie(sc.sigma_S, "power.sigma_S", given("power.gS", "power.gS_db"), "power.gS");
    untie(sc.sigma_SJ, "power.sigma_SJ", given("power.gSJ", "power.gSJ_db"), "power.gSJ");
    untie(sc.eps_I, "power.eps_I", given("power.gth", "power.gth_db"), "power.gth");
    untie(sc.varrho_D, "optical.D.varrho", mu_D_explicit, "optical.D.mu");
    untie(sc.varrho_E2, "optical.E2.varrho", mu_E2_explicit, "optical.E2.mu");

    auto rebuild_sr = [&](const char* name, channels::ShadowedRicianParams& p) {
        const auto& d = sr[name];
        if (!d.touched) return;
        try {
            p = channels::ShadowedRicianParams::make(d.b, d.m, d.omega);
        } catch (const std::exception& e) {
            throw ConfigError(0, std::string("sr.") + name, e.what());
        }
    };
    rebuild_sr("SR", sc.cfg.sr);
    rebuild_sr("SE1", sc.cfg.se1);
    rebuild_sr("SJE1", sc.cfg.sje1);
    auto rebuild_opt = [&](const char* name, channels::OpticalLinkParams& p) {
        const auto& d = opt[name];
        if (!d.touched) return;
        auto keep = p;
        try {
            p = channels::OpticalLinkParams::make(d.alpha, d.beta, d.xi, d.mu, d.r);
        } catch (const std::exception& e) {
            throw ConfigError(0, std::string("optical.") + name, e.what());
        }
        p.eta = keep.eta, p.omega_Z = keep.omega_Z, p.P_R = keep.P_R, p.N = keep.N;
        for (const auto& s : p.perturbations) sc.cfg.notes.push_back(std::string("optical.") + name + ": " + s);
    };
    rebuild_opt("D", sc.cfg.d);
    rebuild_opt("E2", sc.cfg.e2);

    sc.apply_ties();
    try {
        sc.cfg.validate();
    } catch (const channels::ParameterError& e) {
        throw ConfigError(0, "", e.what());
    }
    return sc;
}

NetworkConfig parse_config(std::string_view text) { return parse_scenario(text).cfg; }

std::string serialize_config(const Scenario& sc) {
    const auto& c = sc.cfg;
    std::ostringstream o;
    // dB form when it reproduces the linear value exactly, linear otherwise.
    auto snr = [&](const std::string& key, double v) {
        double db = linear_to_db(v);
        std::string s = fmt(db);
        if (db_to_linear(std::strtod(s.c_str(), nullptr)) == v)
            o << key << "_db = " << s << "\n";
        else
            o << key << " = " << fmt(v) << "\n";
    };
    for (const auto& n : c.notes) o << "note = " << n << "\n";
    if (sc.sigma_S) o << "power.sigma_S = " << fmt(*sc.sigma_S) << "\n";
    else snr("power.gS", c.power.gS);
    if (sc.sigma_SJ) o << "power.sigma_SJ = " << fmt(*sc.sigma_SJ) << "\n";
    else snr("power.gSJ", c.power.gSJ);
    snr("power.gI", c.power.gI);
    if (sc.eps_I) o << "power.eps_I = " << fmt(*sc.eps_I) << "\n";
    else snr("power.gth", c.power.gth);
    o << "power.jammer_on = " << (c.power.jammer_on ? "true" : "false") << "\n";
    o << "rayleigh.SP.lambda = " << fmt(c.sp.lambda) << "\n";
    o << "rayleigh.SJP.lambda = " << fmt(c.sjp.lambda) << "\n";
    for (auto [name, p] : {std::pair<const char*, const channels::ShadowedRicianParams*>{"SR", &c.sr},
                           {"SE1", &c.se1},
                           {"SJE1", &c.sje1}}) {
        o << "sr." << name << ".b = " << fmt(p->b) << "\n";
        o << "sr." << name << ".m = " << p->m << "\n";
        o << "sr." << name << ".omega = " << fmt(p->omega) << "\n";
    }
    for (auto [name, p, varrho] :
         {std::tuple<const char*, const channels::OpticalLinkParams*, std::optional<double>>{"D", &c.d, sc.varrho_D},
          {"E2", &c.e2, sc.varrho_E2}}) {
        std::string k = std::string("optical.") + name;
        o << k << ".alpha = " << fmt(p->alpha) << "\n";
        o << k << ".beta = " << fmt(p->beta) << "\n";
        o << k << ".xi = " << fmt(p->xi) << "\n";
        if (varrho) o << k << ".varrho = " << fmt(*varrho) << "\n";
        else snr(k + ".mu", p->mu);
        o << k << ".r = " << p->r << "\n";
        if (p->eta) o << k << ".eta = " << fmt(*p->eta) << "\n";
        if (p->omega_Z) o << k << ".omega_Z = " << fmt(*p->omega_Z) << "\n";
        if (p->P_R) o << k << ".P_R = " << fmt(*p->P_R) << "\n";
        if (p->N) o << k << ".N = " << fmt(*p->N) << "\n";
    }
    return o.str();
}

Scenario load_scenario_file(const std::string& path, const Scenario& base) {
    std::ifstream f(path);
    if (!f) throw ConfigError(0, "", "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str(), base);
}

Scenario load_preset(const std::string& name) {
    std::string path = std::string(HSTCN_PRESET_DIR) + "/" + name + ".cfg";
    std::ifstream f(path);
    if (!f) throw ConfigError(0, "", "unknown preset '" + name + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str(), {}, "preset " + name);
}

}  // namespace hstcn::cli
