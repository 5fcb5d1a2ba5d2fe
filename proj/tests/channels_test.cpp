#include "hstcn/channels.hpp"
#include "hstcn/cli.hpp"
#include "hstcn/config.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace hstcn;
using namespace hstcn::channels;

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

ShadowedRicianParams table_sr() { return ShadowedRicianParams::make(1.4, 2, 3.0); }
OpticalLinkParams table_D() { return OpticalLinkParams::make(6.1096, 1.0794, 1.1227, 1e4); }

}  // namespace

// Frozen values from tests/oracles/channels_oracle.py.
TEST(ShadowedRician, OracleValues) {
    auto p = table_sr();
    struct Case { double x, pdf, cdf; };
    for (auto c : {Case{0.5, 0.14320751850959361733, 0.073663454156708432481},
                   Case{2.0, 0.11880782245427356425, 0.27003494351515576783},
                   Case{10.0, 0.033236413488549756424, 0.82299274418470470513}}) {
        EXPECT_NEAR(sr_pdf(p, c.x) / c.pdf, 1.0, 1e-13);
        EXPECT_NEAR(sr_cdf(p, c.x) / c.cdf, 1.0, 1e-13);
    }
}

TEST(ShadowedRician, PolynomialAndConfluentFormsAgree) {
    for (int m : {1, 2, 3, 5}) {
        auto p = ShadowedRicianParams::make(0.9, m, 2.5);
        for (double x : {0.01, 0.4, 3.0, 25.0}) EXPECT_NEAR(sr_pdf(p, x) / sr_pdf_confluent(p, x), 1.0, 1e-12);
    }
}

TEST(ShadowedRician, NormalisedWithMeanTwoBPlusOmega) {
    for (auto [b, m, om] : {std::tuple{1.4, 2, 3.0}, {6.0, 2, 6.0}, {0.5, 4, 1.0}}) {
        auto p = ShadowedRicianParams::make(b, m, om);
        double mass = 0.0, mean = 0.0;
        for (double lo = 0.0; lo < 400.0; lo += 4.0) {
            mass += GK::integrate([&](double x) { return sr_pdf(p, x); }, lo, lo + 4.0, 8, 1e-13);
            mean += GK::integrate([&](double x) { return x * sr_pdf(p, x); }, lo, lo + 4.0, 8, 1e-13);
        }
        EXPECT_NEAR(mass, 1.0, 1e-10);
        EXPECT_NEAR(mean, 2.0 * b + om, 1e-8);
        // cdf is the integral of the pdf
        EXPECT_NEAR(sr_cdf(p, 3.0), GK::integrate([&](double x) { return sr_pdf(p, x); }, 0.0, 3.0, 8, 1e-14), 1e-12);
    }
}

TEST(ShadowedRician, RejectsBadParameters) {
    EXPECT_THROW(ShadowedRicianParams::make(-1.0, 2, 3.0), ParameterError);
    EXPECT_THROW(ShadowedRicianParams::make(1.0, 0, 3.0), ParameterError);
    EXPECT_THROW(ShadowedRicianParams::make(1.0, 2, 0.0), ParameterError);
}

TEST(ShadowedRician, SampleMean) {
    auto p = table_sr();
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        rng::Stream s(3, i);
        sum += sr_sample(p, s);
    }
    EXPECT_NEAR(sum / n, 2.0 * p.b + p.omega, 0.05);
}

TEST(GammaGamma, OracleValues) {
    auto p = table_D();
    struct Case { double r, pdf, cdf; };
    for (auto c : {Case{0.1, 0.0001245061719001786905, 0.15304175148344033943},
                   Case{1.0, 0.000028778947120378979859, 0.68093031583118804546},
                   Case{3.0, 4.6369713586784175887e-6, 0.92956767878928412811}}) {
        double z = c.r * p.mu;
        EXPECT_NEAR(gg_snr_pdf(p, z) / c.pdf, 1.0, 1e-8) << c.r;
        EXPECT_NEAR(gg_snr_cdf(p, z) / c.cdf, 1.0, 1e-8) << c.r;
    }
}

TEST(GammaGamma, TailOracleValues) {
    auto p = table_D();
    for (auto [r, ccdf] : {std::pair{10.0, 0.0018197600829708588}, {30.0, 1.8482178367620384e-6},
                           {100.0, 6.1299820610822837e-13}}) {
        EXPECT_NEAR(gg_snr_ccdf(p, r * p.mu) / ccdf, 1.0, 1e-8) << r;
        EXPECT_NEAR(gg_snr_cdf(p, r * p.mu), 1.0 - ccdf, 1e-15) << r;
    }
    EXPECT_NEAR(gg_snr_ccdf(p, 0.1 * p.mu), 1.0 - 0.15304175148344033943, 1e-12);
}

TEST(GammaGamma, MeanIsMu) {
    // mu is the mean SNR for r = 1 by construction of the sampler.
    auto p = table_D();
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        rng::Stream s(9, i);
        sum += gg_snr_sample(p, s);
    }
    EXPECT_NEAR(sum / n / p.mu, 1.0, 0.01);
}

TEST(GammaGamma, CdfIntegratesPdf) {
    auto p = table_D();
    for (double r : {0.3, 1.0, 2.0}) {
        double a = 0.05 * p.mu, b = r * p.mu;
        double integral = GK::integrate([&](double z) { return gg_snr_pdf(p, z); }, a, b, 8, 1e-12);
        EXPECT_NEAR(gg_snr_cdf(p, b) - gg_snr_cdf(p, a), integral, 1e-9);
    }
}

TEST(GammaGamma, IntensityModulationMatchesRootRoute) {
    auto p = OpticalLinkParams::make(6.1096, 1.0794, 1.1227, 1e4, 2);
    for (double r : {0.01, 0.2, 1.0, 4.0, 20.0})
        EXPECT_NEAR(gg_snr_cdf(p, r * p.mu), gg_snr_cdf_by_root(p, r * p.mu), 1e-8) << r;
}

TEST(GammaGamma, IntegerGapsArePerturbedAndRecorded) {
    auto p = OpticalLinkParams::make(4.0, 2.0, 1.1227, 1e3);
    EXPECT_FALSE(p.perturbations.empty());
    EXPECT_NE(p.alpha, 4.0);
    auto q = table_D();
    EXPECT_TRUE(q.perturbations.empty());
}

TEST(Exponential, CdfAndSampler) {
    RayleighGainParams p{0.8};
    EXPECT_NEAR(rayleigh_gain_cdf(p, 1.0), 1.0 - std::exp(-0.8), 1e-15);
    EXPECT_NEAR(rayleigh_gain_pdf(p, 1.0), 0.8 * std::exp(-0.8), 1e-15);
    EXPECT_EQ(rayleigh_gain_cdf(p, -1.0), 0.0);
}

// KS against the analytic laws; n = 1e5 at the 1% level.
TEST(Samplers, KolmogorovSmirnov) {
    auto sr = ShadowedRicianParams::make(0.9, 3, 1.7);
    auto r = cli::ks_check("sr", [&](rng::Stream& s) { return sr_sample(sr, s); },
                           [&](double x) { return sr_cdf(sr, x); }, 100000, 77);
    EXPECT_TRUE(r.pass) << r.detail;
    RayleighGainParams ex{1.3};
    r = cli::ks_check("exp", [&](rng::Stream& s) { return rayleigh_gain_sample(ex, s); },
                      [&](double x) { return rayleigh_gain_cdf(ex, x); }, 100000, 77);
    EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Samplers, KsDetectsWrongLaw) {
    auto sr = table_sr();
    auto other = ShadowedRicianParams::make(1.5, 2, 3.0);
    auto r = cli::ks_check("sr-mismatch", [&](rng::Stream& s) { return sr_sample(other, s); },
                           [&](double x) { return sr_cdf(sr, x); }, 100000, 77);
    EXPECT_FALSE(r.pass) << r.detail;
}

TEST(Kolmogorov, PValue) {
    // 1% critical value of sqrt(n) D is 1.6276.
    const std::size_t n = 100000;
    EXPECT_NEAR(cli::ks_pvalue(1.6276 / std::sqrt(double(n)), n), 0.01, 5e-4);
    EXPECT_NEAR(cli::ks_pvalue(1.3581 / std::sqrt(double(n)), n), 0.05, 2e-3);
    EXPECT_NEAR(cli::ks_pvalue(0.0, n), 1.0, 0.0);
}
