#pragma once

#include "hstcn/config.hpp"
#include "hstcn/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hstcn::cli {

/// Malformed document or constraint violation. `line` is 0 when the
/// problem is not tied to one line.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(int line, std::string key, const std::string& msg);
    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

/// A config plus ratios held fixed while a sweep moves gI or gS.
/// Preset files use these to pin sigma_S, sigma_SJ, eps_I and the optical
/// ratios gS / mu.
struct Scenario {
    NetworkConfig cfg = NetworkConfig::defaults();
    std::optional<double> sigma_S, sigma_SJ, eps_I, varrho_D, varrho_E2;

    /// Re-derives gS, gSJ, gth, mu_D, mu_E2 from gI and the ratios.
    void apply_ties();
};

/// Flat `key = value` document, `#` comments. Keys not present keep the
/// value in `base`. Every key read from a document with a non-empty
/// `source` is also recorded in cfg.notes.
Scenario parse_scenario(std::string_view text, const Scenario& base = {}, const std::string& source = "");
NetworkConfig parse_config(std::string_view text);
std::string serialize_config(const Scenario& sc);

Scenario load_scenario_file(const std::string& path, const Scenario& base = {});
/// Named preset from the preset directory, e.g. "tied_ratios".
Scenario load_preset(const std::string& name);

// ---- sweeps

enum class SweepParam { gI, gS, gSJ, mu_D, omega_X, b_X, gth };

SweepParam parse_sweep_param(const std::string& name);
const char* sweep_param_name(SweepParam p);
bool sweep_param_is_db(SweepParam p);
/// Sets the parameter (dB for SNR-like ones) and re-applies ties.
void set_sweep_param(Scenario& sc, SweepParam p, double value);

struct SweepSpec {
    SweepParam param = SweepParam::gI;
    double start = 0.0, stop = 0.0, step = 1.0;
    std::vector<bool> jammer_modes{true, false};
    std::vector<Path> paths{Path::mc, Path::lemma1, Path::closed, Path::asymptotic};
    std::uint64_t n_samples = 1000000;
    std::uint64_t seed = 20240601;
    unsigned workers = 0;

    void validate() const;
    std::vector<double> grid() const;
};

/// Parses "param=start:stop:step".
SweepSpec parse_sweep_arg(const std::string& arg);

struct SweepRow {
    std::string param;
    double value = 0.0;
    bool jammer = true;
    std::optional<double> ip_mc, ci_lo, ci_hi, ip_lemma1, ip_closed, ip_asymptotic;
    std::optional<std::uint64_t> n, seed;
    double elapsed_ms = 0.0;

    // Manifest only.
    std::vector<std::string> errors;
    std::vector<std::string> notes;
    std::optional<double> closed_error, lemma1_error, closed_raw;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::string manifest_json;
};

/// One row per (grid point x jammer mode), ascending in the parameter.
/// Evaluator failures are recorded on the row and the sweep continues.
SweepResult run_sweep(const SweepSpec& spec, const Scenario& sc,
                      const std::function<void(const SweepRow&)>& on_row = {});

std::string csv_header();
std::string csv_line(const SweepRow& r);
std::string to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(std::string_view text);

// ---- plots

class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// SVG with one panel per jammer mode: MC markers with 95% whiskers and
/// one polyline per analytic path. Byte-deterministic in `rows`.
std::string render_svg(const std::vector<SweepRow>& rows);
void emit_plot(const std::vector<SweepRow>& rows, const std::string& path);

// ---- self test

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Kolmogorov-Smirnov statistic of `xs` (sorted in place) against `cdf`.
double ks_statistic(std::vector<double>& xs, const std::function<double(double)>& cdf);
/// Asymptotic p-value P(D_n > d) from the Kolmogorov distribution.
double ks_pvalue(double d, std::size_t n);
/// KS test of n draws (sample i uses Stream(seed, i)); passes when the
/// p-value is at least `alpha`.
CheckResult ks_check(const std::string& name, const std::function<double(rng::Stream&)>& draw,
                     const std::function<double(double)>& cdf, std::size_t n, std::uint64_t seed,
                     double alpha = 0.01);

std::vector<CheckResult> check_specfun();
std::vector<CheckResult> check_samplers(std::uint64_t seed, std::size_t n = 100000);
std::vector<CheckResult> check_three_way(std::uint64_t seed, std::uint64_t n = 100000, unsigned workers = 0);

struct SelftestOptions {
    std::uint64_t seed = 20240601;
    std::uint64_t n_mc = 100000;
    unsigned workers = 0;
};
std::vector<CheckResult> run_selftest(const SelftestOptions& opt = {});

}  // namespace hstcn::cli
