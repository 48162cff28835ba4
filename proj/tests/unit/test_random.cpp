#include <cmath>
#include <cstdint>
#include <set>

#include <gtest/gtest.h>

#include "putvar/random.hpp"

using putvar::RandomStream;

// Known-answer vectors from the Random123 distribution (kat_vectors, philox4x32 10 rounds).
TEST(Philox, KnownAnswers) {
    using C = std::array<std::uint32_t, 4>;
    using K = std::array<std::uint32_t, 2>;
    EXPECT_EQ(putvar::philox4x32(C{0, 0, 0, 0}, K{0, 0}),
              (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(putvar::philox4x32(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                 K{0xffffffff, 0xffffffff}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(putvar::philox4x32(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                 K{0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, SameTripleSameDraw) {
    const RandomStream a{42, 7};
    const RandomStream b{42, 7};
    for (std::uint64_t i : {0ULL, 1ULL, 999ULL, 1ULL << 40}) {
        EXPECT_EQ(a.uniforms(i), b.uniforms(i));
        EXPECT_EQ(a.normals(i), b.normals(i));
    }
}

TEST(RandomStream, DistinctSeedsAndStreamsDiffer) {
    const RandomStream base{42, 7};
    std::set<double> firsts;
    for (const RandomStream s : {base, RandomStream{43, 7}, RandomStream{42, 8},
                                 RandomStream{7, 42}}) {
        firsts.insert(s.uniforms(0)[0]);
    }
    EXPECT_EQ(firsts.size(), 4u);
}

TEST(RandomStream, UniformsInHalfOpenUnitInterval) {
    const RandomStream s{1, 0};
    double sum = 0.0;
    constexpr int n = 100'000;
    for (int i = 0; i < n; ++i) {
        for (double u : s.uniforms(i)) {
            ASSERT_GT(u, 0.0);
            ASSERT_LE(u, 1.0);
            sum += u;
        }
    }
    EXPECT_NEAR(sum / (2.0 * n), 0.5, 5 * std::sqrt(1.0 / 12.0 / (2.0 * n)));
}

TEST(RandomStream, NormalMoments) {
    const RandomStream s{2024, 3};
    constexpr int n = 200'000;
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0, cross = 0;
    for (int i = 0; i < n; ++i) {
        const auto z = s.normals(i);
        ASSERT_TRUE(std::isfinite(z[0]) && std::isfinite(z[1]));
        cross += z[0] * z[1];
        for (double x : z) {
            m1 += x;
            m2 += x * x;
            m3 += x * x * x;
            m4 += x * x * x * x;
        }
    }
    const double m = 2.0 * n;
    EXPECT_NEAR(m1 / m, 0.0, 5 / std::sqrt(m));
    EXPECT_NEAR(m2 / m, 1.0, 5 * std::sqrt(2.0 / m));
    EXPECT_NEAR(m3 / m, 0.0, 5 * std::sqrt(15.0 / m));
    EXPECT_NEAR(m4 / m, 3.0, 5 * std::sqrt(96.0 / m));
    EXPECT_NEAR(cross / n, 0.0, 5 / std::sqrt(static_cast<double>(n)));
}

TEST(RandomStream, PurposeNamespacesAreDisjoint) {
    using namespace putvar::streams;
    const auto a = for_purpose(5, kVarEstimation);
    const auto b = for_purpose(5, kBacktest);
    const auto c = for_purpose(5, kVarEstimation, 1);
    EXPECT_NE(a, b);
    EXPECT_NE(a, c);
    EXPECT_EQ(a.seed, 5u);
    EXPECT_NE(a.uniforms(0), b.uniforms(0));
}
