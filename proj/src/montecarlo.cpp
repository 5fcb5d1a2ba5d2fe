#include "hstcn/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace hstcn::montecarlo {

system::GainDraw draw_gains(const NetworkConfig& cfg, rng::Stream& s) {
    system::GainDraw g;
    g.g_SP = channels::rayleigh_gain_sample(cfg.sp, s);
    g.g_SJP = channels::rayleigh_gain_sample(cfg.sjp, s);
    g.g_SR = channels::sr_sample(cfg.sr, s);
    g.g_SE1 = channels::sr_sample(cfg.se1, s);
    g.g_SJE1 = channels::sr_sample(cfg.sje1, s);
    g.gamma_D = system::snr_optical(cfg.d, s);
    g.gamma_E2 = system::snr_optical(cfg.e2, s);
    return g;
}

system::SnrDraw draw_snrs(const NetworkConfig& cfg, rng::Stream& s) {
    return system::to_snr(cfg.power, draw_gains(cfg, s));
}

int classify_event(const system::SnrDraw& s, double gth) {
    if (system::intercepted(s, gth)) return 0;
    const double e1 = s.gamma_E1, e2 = s.gamma_E2, t = gth;
    if (e1 >= e2 && e2 >= t) return 1;
    if (e2 >= e1 && e1 >= t) return 2;
    if (t >= e2 && e2 >= e1) return 3;
    if (t >= e1 && e1 >= e2) return 4;
    if (e2 >= t && t >= e1) return 5;
    return 6;
}

Interval wilson(std::uint64_t hits, std::uint64_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    double nn = static_cast<double>(n), p = hits / nn, z2 = z * z;
    double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
    double half = z / (1 + z2 / nn) * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

unsigned resolve_workers(unsigned workers, std::uint64_t n) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));
}

// Runs body(i, counts) over i in [0, n) on contiguous chunks and adds up the
// per-worker count arrays; integer sums make the result schedule-free.
template <std::size_t K, class Body>
std::array<std::uint64_t, K> parallel_count(std::uint64_t n, unsigned workers, Body body) {
    workers = resolve_workers(workers, n);
    std::vector<std::array<std::uint64_t, K>> partial(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = n * w / workers, hi = n * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
            std::array<std::uint64_t, K> c{};
            for (std::uint64_t i = lo; i < hi; ++i) body(i, c);
            partial[w] = c;
        });
    }
    for (auto& t : pool) t.join();
    std::array<std::uint64_t, K> total{};
    for (const auto& c : partial)
        for (std::size_t k = 0; k < K; ++k) total[k] += c[k];
    return total;
}

}  // namespace

IPEstimate estimate_ip(const NetworkConfig& cfg, std::uint64_t n, std::uint64_t seed, unsigned workers) {
    auto counts = parallel_count<1>(n, workers, [&](std::uint64_t i, std::array<std::uint64_t, 1>& c) {
        rng::Stream s(seed, i);
        c[0] += system::intercepted(draw_snrs(cfg, s), cfg.power.gth);
    });
    IPEstimate e;
    e.path = Path::mc;
    e.n = n;
    e.seed = seed;
    e.value = n ? static_cast<double>(counts[0]) / n : 0.0;
    auto i95 = wilson(counts[0], n, 1.959963984540054);
    auto i99 = wilson(counts[0], n, 2.5758293035489004);
    e.ci_low = std::min(i95.low, e.value), e.ci_high = std::max(i95.high, e.value);
    e.ci99_low = std::min(i99.low, e.value), e.ci99_high = std::max(i99.high, e.value);
    e.raw = e.value;
    e.evaluated_at_gI = cfg.power.gI;
    return e;
}

EventProbs estimate_event_probs(const NetworkConfig& cfg, std::uint64_t n, std::uint64_t seed,
                                unsigned workers) {
    auto counts = parallel_count<7>(n, workers, [&](std::uint64_t i, std::array<std::uint64_t, 7>& c) {
        rng::Stream s(seed, i);
        ++c[classify_event(draw_snrs(cfg, s), cfg.power.gth)];
    });
    EventProbs ep;
    ep.n = n;
    std::uint64_t secure = 0;
    for (int k = 0; k < 6; ++k) {
        ep.count[k] = counts[k + 1];
        ep.p[k] = n ? static_cast<double>(counts[k + 1]) / n : 0.0;
        secure += counts[k + 1];
    }
    ep.sum = n ? static_cast<double>(secure) / n : 0.0;
    return ep;
}

}  // namespace hstcn::montecarlo
