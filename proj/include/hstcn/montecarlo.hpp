#pragma once

#include "hstcn/config.hpp"
#include "hstcn/rng.hpp"

#include <array>
#include <cstdint>

namespace hstcn::montecarlo {

constexpr std::uint64_t kDefaultSeed = 20240601;

/// All seven gains of one sample, always in the order g_SP, g_SJP, g_SR,
/// g_SE1, g_SJE1, gamma_D, gamma_E2. The jammer links are drawn even with
/// the jammer off so both modes see common random numbers.
system::GainDraw draw_gains(const NetworkConfig& cfg, rng::Stream& s);
system::SnrDraw draw_snrs(const NetworkConfig& cfg, rng::Stream& s);

/// 0 when the sample is intercepted, otherwise the index 1..6 of the
/// ordering event (E1: e1>=e2>=t, E2: e2>=e1>=t, E3: t>=e2>=e1,
/// E4: t>=e1>=e2, E5: e2>=t>=e1, E6: the rest).
int classify_event(const system::SnrDraw& s, double gth);

struct EventProbs {
    std::array<double, 6> p{};
    std::array<std::uint64_t, 6> count{};
    double sum = 0.0;
    std::uint64_t n = 0;
};

struct Interval {
    double low, high;
};
Interval wilson(std::uint64_t hits, std::uint64_t n, double z);

/// `workers` = 0 picks the hardware concurrency.
IPEstimate estimate_ip(const NetworkConfig& cfg, std::uint64_t n, std::uint64_t seed = kDefaultSeed,
                       unsigned workers = 0);
EventProbs estimate_event_probs(const NetworkConfig& cfg, std::uint64_t n,
                                std::uint64_t seed = kDefaultSeed, unsigned workers = 0);

}  // namespace hstcn::montecarlo
