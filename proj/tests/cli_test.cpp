#include "hstcn/analytic.hpp"
#include "hstcn/cli.hpp"
#include "hstcn/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <regex>

using namespace hstcn;
using namespace hstcn::cli;

namespace {

void expect_same(const NetworkConfig& a, const NetworkConfig& b) {
    EXPECT_EQ(a.power.gS, b.power.gS);
    EXPECT_EQ(a.power.gSJ, b.power.gSJ);
    EXPECT_EQ(a.power.gI, b.power.gI);
    EXPECT_EQ(a.power.gth, b.power.gth);
    EXPECT_EQ(a.power.jammer_on, b.power.jammer_on);
    EXPECT_EQ(a.sp.lambda, b.sp.lambda);
    EXPECT_EQ(a.sjp.lambda, b.sjp.lambda);
    for (auto [x, y] : {std::pair{&a.sr, &b.sr}, {&a.se1, &b.se1}, {&a.sje1, &b.sje1}}) {
        EXPECT_EQ(x->b, y->b);
        EXPECT_EQ(x->m, y->m);
        EXPECT_EQ(x->omega, y->omega);
        EXPECT_EQ(x->upsilon, y->upsilon);
    }
    for (auto [x, y] : {std::pair{&a.d, &b.d}, {&a.e2, &b.e2}}) {
        EXPECT_EQ(x->alpha, y->alpha);
        EXPECT_EQ(x->beta, y->beta);
        EXPECT_EQ(x->xi, y->xi);
        EXPECT_EQ(x->mu, y->mu);
        EXPECT_EQ(x->r, y->r);
    }
    EXPECT_EQ(a.notes, b.notes);
}

// Polyline points of one series in one panel.
std::vector<std::pair<double, double>> polyline(const std::string& svg, const std::string& jam, const std::string& cls) {
    size_t g = svg.find("data-jammer=\"" + jam + "\"");
    size_t end = svg.find("</g>", g);
    size_t p = svg.find("class=\"series " + cls + "\"", g);
    std::vector<std::pair<double, double>> out;
    if (p == std::string::npos || p > end) return out;
    size_t a = svg.find("points=\"", p) + 8, b = svg.find('"', a);
    std::istringstream in(svg.substr(a, b - a));
    std::string tok;
    while (in >> tok) {
        auto c = tok.find(',');
        out.push_back({std::stod(tok.substr(0, c)), std::stod(tok.substr(c + 1))});
    }
    return out;
}

int count(const std::string& s, const std::string& needle) {
    int n = 0;
    for (size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST(Config, EmptyDocumentGivesDefaults) {
    auto c = parse_config("");
    auto d = NetworkConfig::defaults();
    expect_same(c, d);
    EXPECT_NEAR(c.power.gS, 1e6, 1e-6);
    EXPECT_NEAR(c.power.gI, 7.943282347242815, 1e-12);
    EXPECT_NEAR(c.power.gth, 1.5848931924611136, 1e-12);
    EXPECT_NEAR(c.d.mu, 1e4, 1e-8);
    EXPECT_NEAR(c.e2.mu, 100.0, 1e-10);
    EXPECT_EQ(c.sr.m, 2);
    EXPECT_EQ(c.sr.b, 1.4);
    EXPECT_EQ(c.sr.omega, 3.0);
    EXPECT_EQ(c.sp.lambda, 0.8);
}

TEST(Config, DbFieldsConvertedOnce) {
    auto c = parse_config("power.gI_db = 20\n# comment\n\noptical.D.mu_db = 30\nsr.SE1.m = 3\n");
    EXPECT_NEAR(c.power.gI, 100.0, 1e-12);
    EXPECT_NEAR(c.d.mu, 1000.0, 1e-9);
    EXPECT_EQ(c.se1.m, 3);
    EXPECT_EQ(c.sr.m, 2);
}

TEST(Config, RoundTrip) {
    const char* doc =
        "power.gI_db = 13.7\npower.gth = 2.25\npower.jammer_on = false\nsr.SR.b = 6\nsr.SR.omega = 6\n"
        "sr.SJE1.m = 4\noptical.E2.mu_db = 17.3\noptical.D.alpha = 4.2\noptical.D.r = 2\nrayleigh.SJP.lambda = 1.1\n";
    Scenario a = parse_scenario(doc);
    std::string text = serialize_config(a);
    Scenario b = parse_scenario(text);
    expect_same(a.cfg, b.cfg);
    EXPECT_EQ(text, serialize_config(b));
}

TEST(Config, PresetRoundTripKeepsTies) {
    Scenario a = load_preset("tied_ratios");
    Scenario b = parse_scenario(serialize_config(a));
    expect_same(a.cfg, b.cfg);
    set_sweep_param(a, SweepParam::gI, 30.0);
    set_sweep_param(b, SweepParam::gI, 30.0);
    expect_same(a.cfg, b.cfg);
    EXPECT_NEAR(a.cfg.power.gS, 1000.0, 1e-9);
    EXPECT_NEAR(a.cfg.power.gth, 100.0, 1e-9);
    EXPECT_NEAR(a.cfg.d.mu, 1e6, 1e-3);
    EXPECT_NEAR(a.cfg.e2.mu, 1e5, 1e-4);
}

TEST(Config, PresetOverridesAreRecorded) {
    Scenario a = load_preset("tied_ratios");
    bool saw_note = false, saw_override = false;
    for (const auto& n : a.cfg.notes) {
        saw_note = saw_note || n.find("tied ratios replace the default") != std::string::npos;
        saw_override = saw_override || n == "preset tied_ratios: power.sigma_S = 1";
    }
    EXPECT_TRUE(saw_note);
    EXPECT_TRUE(saw_override);
}

TEST(Config, ExplicitValueDropsInheritedTie) {
    Scenario p = load_preset("tied_ratios");
    Scenario a = parse_scenario("power.gS_db = 50\n", p);
    EXPECT_FALSE(a.sigma_S.has_value());
    EXPECT_NEAR(a.cfg.power.gS, 1e5, 1e-6);
    EXPECT_THROW(parse_scenario("power.gS_db = 50\npower.sigma_S = 1\n"), ConfigError);
}

TEST(Config, NonIntegerMRejected) {
    try {
        parse_config("sr.SR.b = 2\nsr.SR.m = 2.5\n");
        FAIL() << "accepted m = 2.5";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.key(), "sr.SR.m");
        EXPECT_NE(std::string(e.what()).find("integer"), std::string::npos);
    }
}

TEST(Config, ErrorsCarryLineAndKey) {
    auto line_of = [](const char* doc) {
        try {
            parse_config(doc);
        } catch (const ConfigError& e) {
            return e.line();
        }
        return -1;
    };
    EXPECT_EQ(line_of("power.gI_db = 3\nthis is not a pair\n"), 2);
    EXPECT_EQ(line_of("\n\nnope.key = 1\n"), 3);
    EXPECT_EQ(line_of("power.gI_db = abc\n"), 1);
    EXPECT_EQ(line_of("rayleigh.SP.lambda = -1\n"), 1);
    EXPECT_EQ(line_of("power.gI_db = 1\npower.gI_db = 2\n"), 2);
    EXPECT_EQ(line_of("optical.D.r = 3\n"), 1);
}

TEST(Sweep, GridAndArgument) {
    auto s = parse_sweep_arg("gI=0:30:7.5");
    EXPECT_EQ(s.param, SweepParam::gI);
    EXPECT_EQ(s.grid(), (std::vector<double>{0.0, 7.5, 15.0, 22.5, 30.0}));
    auto t = parse_sweep_arg("Omega_X=1:2:0.1");
    EXPECT_EQ(t.grid().size(), 11u);
    EXPECT_DOUBLE_EQ(t.grid()[3], 1.3);
    EXPECT_THROW(parse_sweep_arg("gI=5:0:1"), ConfigError);
    EXPECT_THROW(parse_sweep_arg("gI=0:5:0"), ConfigError);
    EXPECT_THROW(parse_sweep_arg("nope=0:5:1"), ConfigError);
    EXPECT_THROW(parse_sweep_arg("gI=0:5"), ConfigError);
}

TEST(Sweep, SinglePointEqualsDirectCalls) {
    SweepSpec spec;
    spec.param = SweepParam::gSJ;
    spec.start = spec.stop = 10.0;
    spec.n_samples = 20000;
    spec.seed = 7;
    spec.workers = 1;
    spec.paths = {Path::mc, Path::closed, Path::asymptotic};
    auto res = run_sweep(spec, Scenario{});
    ASSERT_EQ(res.rows.size(), 2u);
    for (const auto& r : res.rows) {
        auto cfg = NetworkConfig::defaults();
        cfg.power.jammer_on = r.jammer;
        auto mc = montecarlo::estimate_ip(cfg, 20000, 7, 1);
        EXPECT_EQ(*r.ip_mc, mc.value);
        EXPECT_EQ(*r.ci_lo, mc.ci_low);
        EXPECT_EQ(*r.ip_closed, analytic::ip_closed_form(cfg).value);
        EXPECT_FALSE(r.ip_lemma1.has_value());
        EXPECT_EQ(r.ip_asymptotic.has_value(), r.jammer);
        EXPECT_TRUE(r.errors.empty());
    }
    EXPECT_TRUE(res.rows[0].jammer);
    EXPECT_FALSE(res.rows[1].jammer);
    auto line = csv_line(res.rows[1]);
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11);
    EXPECT_NE(line.find(",,"), std::string::npos);  // empty lemma1 and asymptotic fields
}

TEST(Sweep, DeterministicExceptTiming) {
    SweepSpec spec;
    spec.param = SweepParam::gI;
    spec.start = 0.0, spec.stop = 10.0, spec.step = 5.0;
    spec.n_samples = 5000;
    spec.paths = {Path::mc, Path::closed};
    auto a = run_sweep(spec, Scenario{}), b = run_sweep(spec, Scenario{});
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) {
        auto la = csv_line(a.rows[i]), lb = csv_line(b.rows[i]);
        EXPECT_EQ(la.substr(0, la.rfind(',')), lb.substr(0, lb.rfind(',')));
    }
    for (size_t i = 2; i < a.rows.size(); ++i) EXPECT_GT(a.rows[i].value, a.rows[i - 2].value);
}

TEST(Sweep, ErrorsAreRecordedPerRow) {
    SweepSpec spec;
    spec.param = SweepParam::gSJ;
    spec.start = 10.0, spec.stop = 10.0;
    spec.jammer_modes = {false};
    spec.paths = {Path::closed};
    Scenario sc;
    sc.cfg.d = channels::OpticalLinkParams::make(sc.cfg.d.alpha, sc.cfg.d.beta, sc.cfg.d.xi, sc.cfg.d.mu, 2);
    auto res = run_sweep(spec, sc);
    ASSERT_EQ(res.rows.size(), 1u);
    EXPECT_FALSE(res.rows[0].ip_closed.has_value());
    ASSERT_EQ(res.rows[0].errors.size(), 1u);
    EXPECT_NE(res.manifest_json.find("closed form requires r = 1"), std::string::npos);
}

TEST(Sweep, CsvParsesBack) {
    SweepRow r;
    r.param = "gI";
    r.value = 12.5;
    r.jammer = false;
    r.ip_closed = 0.123456789012345;
    r.ip_mc = 0.25, r.ci_lo = 0.2, r.ci_hi = 0.3, r.n = 100, r.seed = 9;
    r.elapsed_ms = 3.0;
    std::string csv = to_csv({r});
    EXPECT_EQ(csv.substr(0, csv.find("\r\n")), csv_header());
    auto back = parse_csv(csv);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].value, 12.5);
    EXPECT_EQ(*back[0].ip_closed, 0.123456789012345);
    EXPECT_FALSE(back[0].ip_lemma1.has_value());
    EXPECT_EQ(*back[0].seed, 9u);
}

TEST(Plot, TwoPointsGiveTwoMarkersPerSeries) {
    std::vector<SweepRow> rows;
    for (double v : {0.0, 10.0}) {
        SweepRow r;
        r.param = "gI";
        r.value = v;
        r.ip_mc = 0.5 - 0.01 * v, r.ci_lo = *r.ip_mc - 0.01, r.ci_hi = *r.ip_mc + 0.01;
        r.ip_closed = r.ip_lemma1 = r.ip_asymptotic = *r.ip_mc;
        rows.push_back(r);
    }
    auto svg = render_svg(rows);
    EXPECT_EQ(count(svg, "class=\"marker mc\""), 2);
    EXPECT_EQ(count(svg, "class=\"marker closed\""), 2);
    EXPECT_EQ(count(svg, "class=\"marker lemma1\""), 2);
    EXPECT_EQ(count(svg, "class=\"marker asymptotic\""), 2);
    EXPECT_EQ(count(svg, "class=\"whisker\""), 2);
    EXPECT_EQ(svg, render_svg(rows));
    EXPECT_THROW(render_svg({}), PlotError);
}

TEST(Plot, DescendingSweepParsesBackDescending) {
    SweepSpec spec;
    spec.param = SweepParam::gSJ;
    spec.start = 0.0, spec.stop = 30.0, spec.step = 10.0;
    spec.paths = {Path::closed};
    auto res = run_sweep(spec, Scenario{});
    auto svg = render_svg(parse_csv(to_csv(res.rows)));
    EXPECT_EQ(svg, render_svg(res.rows));
    for (const char* jam : {"on", "off"}) {
        auto pts = polyline(svg, jam, "closed");
        ASSERT_EQ(pts.size(), 4u);
        for (size_t i = 1; i < pts.size(); ++i) {
            EXPECT_GT(pts[i].first, pts[i - 1].first);
            EXPECT_GE(pts[i].second, pts[i - 1].second - 0.01);  // SVG y grows downwards
        }
    }
}

TEST(Selftest, StableAcrossSeeds) {
    // The special-function checks are seed-free.
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        for (const auto& c : check_samplers(seed, 20000)) EXPECT_TRUE(c.pass) << seed << " " << c.name << " " << c.detail;
        for (const auto& c : check_three_way(seed)) EXPECT_TRUE(c.pass) << seed << " " << c.name << " " << c.detail;
    }
}

TEST(Selftest, SpecialFunctionChecksPass) {
    for (const auto& c : check_specfun()) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
}
