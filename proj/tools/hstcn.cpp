// Command-line front end: single evaluations, sweeps, plots, self test.

#include "hstcn/analytic.hpp"
#include "hstcn/cli.hpp"
#include "hstcn/montecarlo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hstcn;

namespace {

struct Options {
    std::string config, preset, jammer = "both", sweep, out, in, paths;
    std::uint64_t seed = montecarlo::kDefaultSeed;
    std::uint64_t samples = 1000000;
    unsigned workers = 0;
};

class EvalFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "Config file (flat key = value)");
    sub->add_option("--preset", o.preset, "Named preset applied before --config, e.g. tied_ratios");
    sub->add_option("--seed", o.seed, "Monte Carlo seed");
    sub->add_option("--samples", o.samples, "Monte Carlo sample count");
    sub->add_option("--jammer", o.jammer, "on, off or both")->check(CLI::IsMember({"on", "off", "both"}));
    sub->add_option("--sweep", o.sweep, "param=start:stop:step (dB for SNR-like params)");
    sub->add_option("--out", o.out, "Output file");
    sub->add_option("--workers", o.workers, "Monte Carlo threads (0: all cores)")->envname("HSTCN_WORKERS");
}

cli::Scenario load(const Options& o) {
    cli::Scenario sc = o.preset.empty() ? cli::Scenario{} : cli::load_preset(o.preset);
    if (!o.config.empty()) sc = cli::load_scenario_file(o.config, sc);
    return sc;
}

std::vector<bool> modes(const Options& o) {
    if (o.jammer == "on") return {true};
    if (o.jammer == "off") return {false};
    return {true, false};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw EvalFailure("cannot write '" + path + "'");
    f << text;
}

int run_sweep_cmd(const Options& o, std::vector<Path> paths) {
    auto spec = cli::parse_sweep_arg(o.sweep);
    spec.jammer_modes = modes(o);
    spec.paths = std::move(paths);
    spec.n_samples = o.samples;
    spec.seed = o.seed;
    spec.workers = o.workers;
    auto sc = load(o);
    std::cerr << cli::csv_header() << "\n";
    auto res = cli::run_sweep(spec, sc, [](const cli::SweepRow& r) {
        std::cerr << cli::csv_line(r) << "\n";
        for (const auto& e : r.errors) std::cerr << "  error: " << e << "\n";
    });
    std::string csv = cli::to_csv(res.rows);
    if (o.out.empty()) {
        std::cout << csv;
    } else {
        write_text(o.out, csv);
        write_text(o.out + ".manifest.json", res.manifest_json);
        std::cerr << "wrote " << o.out << " and " << o.out << ".manifest.json\n";
    }
    for (const auto& r : res.rows)
        if (!r.errors.empty()) return 1;
    return 0;
}

nlohmann::ordered_json estimate_json(const IPEstimate& e, bool jam) {
    nlohmann::ordered_json j;
    j["jammer"] = jam ? "on" : "off";
    j["path"] = path_name(e.path);
    j["ip"] = e.value;
    if (e.path == Path::mc) {
        j["ci95"] = {e.ci_low, e.ci_high};
        j["ci99"] = {e.ci99_low, e.ci99_high};
        j["n"] = e.n;
        j["seed"] = e.seed;
    } else {
        j["error_estimate"] = e.error;
        if (e.path != Path::lemma1) j["raw"] = e.raw;
    }
    j["notes"] = e.notes;
    return j;
}

int run_single(const Options& o, Path path) {
    if (!o.sweep.empty()) return run_sweep_cmd(o, {path});
    auto sc = load(o);
    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    for (bool jam : modes(o)) {
        NetworkConfig cfg = sc.cfg;
        cfg.power.jammer_on = jam;
        IPEstimate e;
        switch (path) {
            case Path::mc: e = montecarlo::estimate_ip(cfg, o.samples, o.seed, o.workers); break;
            case Path::lemma1: e = analytic::ip_lemma1(cfg); break;
            case Path::closed: e = analytic::ip_closed_form(cfg); break;
            case Path::asymptotic: e = analytic::ip_asymptotic(cfg); break;
        }
        std::printf("%-10s jammer=%-3s ip=%.6f", path_name(path), jam ? "on" : "off", e.value);
        if (path == Path::mc)
            std::printf("  95%% CI [%.6f, %.6f]  n=%llu seed=%llu", e.ci_low, e.ci_high,
                        static_cast<unsigned long long>(e.n), static_cast<unsigned long long>(e.seed));
        else
            std::printf("  err~%.1e", e.error);
        std::printf("\n");
        all.push_back(estimate_json(e, jam));
    }
    if (!o.out.empty()) write_text(o.out, all.dump(2) + "\n");
    return 0;
}

int run_validate(const Options& o) {
    auto sc = load(o);
    bool ok = true;
    std::printf("%-6s %-10s %-10s %-10s %-23s %-10s %s\n", "jammer", "closed", "lemma1", "mc", "mc 99% CI", "|c-l|",
                "verdict");
    for (bool jam : modes(o)) {
        NetworkConfig cfg = sc.cfg;
        cfg.power.jammer_on = jam;
        auto c = analytic::ip_closed_form(cfg);
        auto l = analytic::ip_lemma1(cfg);
        auto m = montecarlo::estimate_ip(cfg, o.samples, o.seed, o.workers);
        double gap = std::abs(c.value - l.value);
        bool agree = gap <= std::max(0.01 * l.value, 2e-3);
        bool in_ci = m.ci99_low <= c.value && c.value <= m.ci99_high;
        ok = ok && agree && in_ci;
        std::printf("%-6s %-10.6f %-10.6f %-10.6f [%.6f, %.6f] %-10.2e %s\n", jam ? "on" : "off", c.value, l.value,
                    m.value, m.ci99_low, m.ci99_high, gap,
                    agree && in_ci ? "ok" : (!agree ? "analytic paths disagree" : "closed form outside MC CI"));
    }
    return ok ? 0 : 1;
}

int run_sample(const Options& o) {
    auto sc = load(o);
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::binary);
        if (!file) throw EvalFailure("cannot write '" + o.out + "'");
        os = &file;
    }
    auto& out = *os;
    out << "i,g_SP,g_SJP,g_SR,g_SE1,g_SJE1,gamma_D,gamma_E2,gamma_R,gamma_E1_jammer_off,gamma_E1_jammer_on\r\n";
    out.precision(17);
    NetworkConfig off = sc.cfg, on = sc.cfg;
    off.power.jammer_on = false;
    on.power.jammer_on = true;
    for (std::uint64_t i = 0; i < o.samples; ++i) {
        rng::Stream s(o.seed, i);
        auto g = montecarlo::draw_gains(sc.cfg, s);
        auto a = system::to_snr(off.power, g), b = system::to_snr(on.power, g);
        out << i << ',' << g.g_SP << ',' << g.g_SJP << ',' << g.g_SR << ',' << g.g_SE1 << ',' << g.g_SJE1 << ','
            << g.gamma_D << ',' << g.gamma_E2 << ',' << a.gamma_R << ',' << a.gamma_E1 << ',' << b.gamma_E1 << "\r\n";
    }
    return 0;
}

int run_selftest(const Options& o) {
    cli::SelftestOptions so;
    so.seed = o.seed;
    so.workers = o.workers;
    bool ok = true;
    for (const auto& c : cli::run_selftest(so)) {
        std::printf("[%s] %-40s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        ok = ok && c.pass;
    }
    std::printf("%s\n", ok ? "selftest passed" : "selftest FAILED");
    return ok ? 0 : 1;
}

int run_plot(const Options& o) {
    if (o.in.empty()) throw cli::ConfigError(0, "input", "plot needs a CSV file");
    if (o.out.empty()) throw cli::ConfigError(0, "out", "plot needs --out");
    std::ifstream f(o.in, std::ios::binary);
    if (!f) throw cli::ConfigError(0, "input", "cannot open '" + o.in + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    cli::emit_plot(cli::parse_csv(ss.str()), o.out);
    return 0;
}

std::vector<Path> parse_paths(const std::string& s) {
    if (s.empty()) return {Path::mc, Path::lemma1, Path::closed, Path::asymptotic};
    std::vector<Path> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "mc") out.push_back(Path::mc);
        else if (tok == "lemma1") out.push_back(Path::lemma1);
        else if (tok == "closed") out.push_back(Path::closed);
        else if (tok == "asymptotic") out.push_back(Path::asymptotic);
        else throw cli::ConfigError(0, "paths", "unknown path '" + tok + "'");
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intercept probability of a jammer-assisted cognitive hybrid satellite-terrestrial network"};
    app.require_subcommand(1);
    Options o;
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate");
    auto* l1 = app.add_subcommand("lemma1", "Nested-quadrature evaluation");
    auto* cf = app.add_subcommand("closed", "Closed-form evaluation");
    auto* as = app.add_subcommand("asymptotic", "High-gI asymptote (jammer on only)");
    auto* sw = app.add_subcommand("sweep", "Parameter sweep across evaluation paths, CSV output");
    auto* va = app.add_subcommand("validate", "Three-way comparison report");
    auto* sa = app.add_subcommand("sample", "Dump raw channel draws as CSV");
    auto* st = app.add_subcommand("selftest", "Special functions, sampler KS tests, reduced agreement check");
    auto* pl = app.add_subcommand("plot", "SVG from a sweep CSV");
    for (auto* s : {mc, l1, cf, as, sw, va, sa, st, pl}) add_common(s, o);
    sw->add_option("--paths", o.paths, "Comma list of mc,lemma1,closed,asymptotic");
    pl->add_option("input", o.in, "Sweep CSV")->required();
    va->get_option("--samples")->default_val(1000000);
    st->get_option("--samples")->description("ignored; the self test uses 1e5");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*mc) return run_single(o, Path::mc);
        if (*l1) return run_single(o, Path::lemma1);
        if (*cf) return run_single(o, Path::closed);
        if (*as) return run_single(o, Path::asymptotic);
        if (*sw) {
            if (o.sweep.empty()) throw cli::ConfigError(0, "sweep", "sweep needs --sweep param=start:stop:step");
            return run_sweep_cmd(o, parse_paths(o.paths));
        }
        if (*va) return run_validate(o);
        if (*sa) return run_sample(o);
        if (*st) return run_selftest(o);
        if (*pl) return run_plot(o);
    } catch (const std::invalid_argument& e) {
        // ConfigError, ParameterError and ModeError all land here.
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "evaluation failed: %s\n", e.what());
        return 1;
    }
    return 0;
}
