#include "hstcn/analytic.hpp"
#include "hstcn/cli.hpp"
#include "hstcn/montecarlo.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace hstcn::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct ParamInfo {
    SweepParam p;
    const char* name;
    bool db;
};

constexpr ParamInfo kParams[] = {
    {SweepParam::gI, "gI", true},          {SweepParam::gS, "gS", true},
    {SweepParam::gSJ, "gSJ", true},        {SweepParam::mu_D, "mu_D", true},
    {SweepParam::omega_X, "Omega_X", false}, {SweepParam::b_X, "b_X", false},
    {SweepParam::gth, "gth", true},
};

std::string num(double v) {
    char buf[40];
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

SweepParam parse_sweep_param(const std::string& name) {
    for (const auto& i : kParams)
        if (name == i.name) return i.p;
    // Loose spellings.
    if (name == "gamma_I" || name == "gi") return SweepParam::gI;
    if (name == "gamma_S" || name == "gs") return SweepParam::gS;
    if (name == "gamma_SJ" || name == "gsj") return SweepParam::gSJ;
    if (name == "muD" || name == "mu_d") return SweepParam::mu_D;
    if (name == "omega_X" || name == "Omega" || name == "omega") return SweepParam::omega_X;
    if (name == "b" || name == "bX") return SweepParam::b_X;
    if (name == "gamma_th") return SweepParam::gth;
    throw ConfigError(0, "sweep", "unknown sweep parameter '" + name + "'");
}

const char* sweep_param_name(SweepParam p) {
    for (const auto& i : kParams)
        if (i.p == p) return i.name;
    return "?";
}

bool sweep_param_is_db(SweepParam p) {
    for (const auto& i : kParams)
        if (i.p == p) return i.db;
    return false;
}

void set_sweep_param(Scenario& sc, SweepParam p, double value) {
    auto& c = sc.cfg;
    auto remake_sr = [&](double* b, double* omega) {
        for (auto* l : {&c.sr, &c.se1, &c.sje1})
            *l = channels::ShadowedRicianParams::make(b ? *b : l->b, l->m, omega ? *omega : l->omega);
    };
    switch (p) {
        case SweepParam::gI: c.power.gI = db_to_linear(value); break;
        case SweepParam::gS: c.power.gS = db_to_linear(value), sc.sigma_S.reset(); break;
        case SweepParam::gSJ: c.power.gSJ = db_to_linear(value), sc.sigma_SJ.reset(); break;
        case SweepParam::mu_D: c.d.mu = db_to_linear(value), sc.varrho_D.reset(); break;
        case SweepParam::gth: c.power.gth = db_to_linear(value), sc.eps_I.reset(); break;
        case SweepParam::omega_X:
            if (!(value > 0.0)) throw ConfigError(0, "Omega_X", "must be > 0");
            remake_sr(nullptr, &value);
            break;
        case SweepParam::b_X:
            if (!(value > 0.0)) throw ConfigError(0, "b_X", "must be > 0");
            remake_sr(&value, nullptr);
            break;
    }
    sc.apply_ties();
}

void SweepSpec::validate() const {
    if (!(start <= stop)) throw ConfigError(0, "sweep", "start must be <= stop");
    if (!(step > 0.0)) throw ConfigError(0, "sweep", "step must be > 0");
    if (jammer_modes.empty()) throw ConfigError(0, "jammer", "no jammer mode selected");
    if (paths.empty()) throw ConfigError(0, "paths", "no evaluation path selected");
    if (n_samples == 0 && std::find(paths.begin(), paths.end(), Path::mc) != paths.end())
        throw ConfigError(0, "samples", "must be > 0");
}

std::vector<double> SweepSpec::grid() const {
    validate();
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw ConfigError(0, "sweep", "more than 100000 points");
    std::vector<double> g;
    for (long i = 0; i < count; ++i) {
        double v = start + static_cast<double>(i) * step;
        double snapped = std::round(v * 1e9) / 1e9;
        g.push_back(std::abs(v - snapped) < 1e-12 * std::max(1.0, std::abs(v)) ? snapped : v);
    }
    return g;
}

SweepSpec parse_sweep_arg(const std::string& arg) {
    size_t eq = arg.find('=');
    if (eq == std::string::npos) throw ConfigError(0, "sweep", "expected param=start:stop:step");
    SweepSpec s;
    s.param = parse_sweep_param(arg.substr(0, eq));
    std::string rest = arg.substr(eq + 1);
    double v[3];
    size_t at = 0;
    for (int i = 0; i < 3; ++i) {
        size_t colon = rest.find(':', at);
        if ((i < 2) != (colon != std::string::npos))
            throw ConfigError(0, "sweep", "expected param=start:stop:step");
        std::string tok = rest.substr(at, i < 2 ? colon - at : std::string::npos);
        char* end = nullptr;
        v[i] = std::strtod(tok.c_str(), &end);
        if (tok.empty() || *end != '\0') throw ConfigError(0, "sweep", "bad number '" + tok + "'");
        at = colon + 1;
    }
    s.start = v[0], s.stop = v[1], s.step = v[2];
    s.validate();
    return s;
}

SweepResult run_sweep(const SweepSpec& spec, const Scenario& sc,
                      const std::function<void(const SweepRow&)>& on_row) {
    using clock = std::chrono::steady_clock;
    const auto t_start = clock::now();
    const std::string started = utc_now();
    auto grid = spec.grid();
    auto has = [&](Path p) { return std::find(spec.paths.begin(), spec.paths.end(), p) != spec.paths.end(); };

    SweepResult out;
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (double value : grid) {
        Scenario point = sc;
        std::string set_error;
        try {
            set_sweep_param(point, spec.param, value);
            point.cfg.validate();
        } catch (const std::exception& e) {
            set_error = e.what();
        }
        for (bool jam : spec.jammer_modes) {
            auto t0 = clock::now();
            SweepRow row;
            row.param = sweep_param_name(spec.param);
            row.value = value;
            row.jammer = jam;
            NetworkConfig cfg = point.cfg;
            cfg.power.jammer_on = jam;
            if (!set_error.empty()) {
                row.errors.push_back("config: " + set_error);
            } else {
                if (has(Path::mc)) {
                    try {
                        auto e = montecarlo::estimate_ip(cfg, spec.n_samples, spec.seed, spec.workers);
                        row.ip_mc = e.value, row.ci_lo = e.ci_low, row.ci_hi = e.ci_high;
                        row.n = e.n, row.seed = e.seed;
                    } catch (const std::exception& e) {
                        row.errors.push_back(std::string("mc: ") + e.what());
                    }
                }
                if (has(Path::lemma1)) {
                    try {
                        auto e = analytic::ip_lemma1(cfg);
                        row.ip_lemma1 = e.value, row.lemma1_error = e.error;
                    } catch (const std::exception& e) {
                        row.errors.push_back(std::string("lemma1: ") + e.what());
                    }
                }
                if (has(Path::closed)) {
                    try {
                        auto e = analytic::ip_closed_form(cfg);
                        row.ip_closed = e.value, row.closed_error = e.error, row.closed_raw = e.raw;
                        for (auto& n : e.notes) row.notes.push_back("closed: " + n);
                    } catch (const std::exception& e) {
                        row.errors.push_back(std::string("closed: ") + e.what());
                    }
                }
                if (has(Path::asymptotic)) {
                    if (!jam) {
                        row.notes.push_back("asymptotic: not defined without the jammer");
                    } else {
                        try {
                            row.ip_asymptotic = analytic::ip_asymptotic(cfg).value;
                        } catch (const std::exception& e) {
                            row.errors.push_back(std::string("asymptotic: ") + e.what());
                        }
                    }
                }
            }
            row.elapsed_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();

            nlohmann::ordered_json pj;
            pj["value"] = value;
            pj["jammer"] = jam ? "on" : "off";
            pj["errors"] = row.errors;
            pj["notes"] = row.notes;
            if (row.closed_error) pj["closed_error_estimate"] = *row.closed_error;
            if (row.closed_raw) pj["closed_raw"] = *row.closed_raw;
            if (row.lemma1_error) pj["lemma1_error_estimate"] = *row.lemma1_error;
            points.push_back(std::move(pj));
            if (on_row) on_row(row);
            out.rows.push_back(std::move(row));
        }
    }

    nlohmann::ordered_json m;
    m["artifact_version"] = kVersion;
    m["started_utc"] = started;
    m["wall_seconds"] = std::chrono::duration<double>(clock::now() - t_start).count();
    m["seed"] = spec.seed;
    m["n_samples"] = spec.n_samples;
    nlohmann::ordered_json sj;
    sj["param"] = sweep_param_name(spec.param);
    sj["unit"] = sweep_param_is_db(spec.param) ? "dB" : "linear";
    sj["start"] = spec.start, sj["stop"] = spec.stop, sj["step"] = spec.step;
    std::vector<std::string> jm, ps;
    for (bool j : spec.jammer_modes) jm.push_back(j ? "on" : "off");
    for (Path p : spec.paths) ps.push_back(path_name(p));
    sj["jammer"] = jm;
    sj["paths"] = ps;
    m["sweep"] = sj;
    m["config"] = serialize_config(sc);
    m["overrides"] = sc.cfg.notes;
    m["points"] = points;
    out.manifest_json = m.dump(2) + "\n";
    return out;
}

std::string csv_header() {
    return "param,value,jammer,ip_mc,ci_lo,ci_hi,ip_lemma1,ip_closed,ip_asymptotic,n,seed,elapsed_ms";
}

std::string csv_line(const SweepRow& r) {
    auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
    auto opt_u = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", r.elapsed_ms);
    std::ostringstream o;
    o << r.param << ',' << num(r.value) << ',' << (r.jammer ? "on" : "off") << ',' << opt(r.ip_mc) << ','
      << opt(r.ci_lo) << ',' << opt(r.ci_hi) << ',' << opt(r.ip_lemma1) << ',' << opt(r.ip_closed) << ','
      << opt(r.ip_asymptotic) << ',' << opt_u(r.n) << ',' << opt_u(r.seed) << ',' << ms;
    return o.str();
}

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string s = csv_header() + "\r\n";
    for (const auto& r : rows) s += csv_line(r) + "\r\n";
    return s;
}

std::vector<SweepRow> parse_csv(std::string_view text) {
    std::vector<SweepRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1) {
            if (line != csv_header()) throw ConfigError(1, "", "unexpected CSV header");
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> f;
        size_t at = 0;
        while (true) {
            size_t c = line.find(',', at);
            f.push_back(line.substr(at, c == std::string::npos ? std::string::npos : c - at));
            if (c == std::string::npos) break;
            at = c + 1;
        }
        if (f.size() != 12) throw ConfigError(lineno, "", "expected 12 fields");
        auto d = [&](int i) -> std::optional<double> {
            if (f[i].empty()) return std::nullopt;
            char* end = nullptr;
            double v = std::strtod(f[i].c_str(), &end);
            if (*end != '\0') throw ConfigError(lineno, "", "bad number '" + f[i] + "'");
            return v;
        };
        auto u = [&](int i) -> std::optional<std::uint64_t> {
            if (f[i].empty()) return std::nullopt;
            return std::stoull(f[i]);
        };
        SweepRow r;
        r.param = f[0];
        if (!d(1)) throw ConfigError(lineno, "value", "missing");
        r.value = *d(1);
        if (f[2] != "on" && f[2] != "off") throw ConfigError(lineno, "jammer", "expected on/off");
        r.jammer = f[2] == "on";
        r.ip_mc = d(3), r.ci_lo = d(4), r.ci_hi = d(5), r.ip_lemma1 = d(6), r.ip_closed = d(7);
        r.ip_asymptotic = d(8);
        r.n = u(9), r.seed = u(10);
        r.elapsed_ms = d(11).value_or(0.0);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace hstcn::cli
