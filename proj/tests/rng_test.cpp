#include "hstcn/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace hstcn::rng;

// Known-answer vectors published with the Random123 reference code.
TEST(Philox, KnownAnswers) {
    using A4 = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Stream, ReproducibleAndDisjoint) {
    Stream a(5, 17), b(5, 17), c(5, 18), d(6, 17);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 64; ++i) {
        auto x = a();
        EXPECT_EQ(x, b());
        seen.insert(x);
        seen.insert(c());
        seen.insert(d());
    }
    EXPECT_EQ(seen.size(), 3u * 64u);
}

TEST(Stream, UniformOpenInterval) {
    Stream s(1, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double u = s.uniform_open();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}
