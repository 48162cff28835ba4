#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "putvar/errors.hpp"
#include "putvar/normal.hpp"

using putvar::std_normal_cdf;
using putvar::std_normal_pdf;
using putvar::std_normal_quantile;

namespace {

// Reference values computed with 40-digit mpmath.
struct CdfCase {
    double x;
    double phi;
};
constexpr CdfCase kCdfTable[] = {
    {-8.0, 6.2209605742717841235e-16}, {-3.5, 0.00023262907903552503635},
    {-1.0, 0.15865525393145705141},    {0.3, 0.61791142218895263307},
    {1.6449, 0.9500047825316537},      {2.2, 0.98609655248650139569},
    {6.0, 0.99999999901341235496},
};

struct QuantileCase {
    double p;
    double x;
};
constexpr QuantileCase kQuantileTable[] = {
    {1e-10, -6.3613409024040562047}, {0.001, -3.0902323061678135415},
    {0.3, -0.52440051270804078404},  {0.95, 1.6448536269514727149},
    {0.999, 3.0902323061678135415},
};

} // namespace

TEST(NormalCdf, CentreAndSaturation) {
    EXPECT_EQ(std_normal_cdf(0.0), 0.5);
    EXPECT_NEAR(std_normal_cdf(40.0), 1.0, 1e-12);
    EXPECT_NEAR(std_normal_cdf(-40.0), 0.0, 1e-12);
}

TEST(NormalCdf, MatchesHighPrecisionTable) {
    for (const auto& c : kCdfTable) {
        EXPECT_NEAR(std_normal_cdf(c.x), c.phi, 1e-12) << "x = " << c.x;
        // Relative accuracy in the lower tail too.
        if (c.phi < 1e-3) {
            EXPECT_NEAR(std_normal_cdf(c.x) / c.phi, 1.0, 1e-12);
        }
    }
}

TEST(NormalCdf, SymmetryAndMonotone) {
    double prev = 0.0;
    for (double x = -9.0; x <= 9.0; x += 0.01) {
        const double p = std_normal_cdf(x);
        EXPECT_NEAR(p + std_normal_cdf(-x), 1.0, 1e-15);
        EXPECT_GE(p, prev);
        prev = p;
    }
}

TEST(NormalCdf, NanPropagates) {
    EXPECT_TRUE(std::isnan(std_normal_cdf(std::numeric_limits<double>::quiet_NaN())));
}

TEST(NormalPdf, PeakValue) {
    EXPECT_NEAR(std_normal_pdf(0.0), 0.3989422804014327, 1e-16);
    EXPECT_DOUBLE_EQ(std_normal_pdf(1.3), std_normal_pdf(-1.3));
}

TEST(NormalQuantile, MatchesHighPrecisionTable) {
    for (const auto& c : kQuantileTable) {
        EXPECT_NEAR(std_normal_quantile(c.p), c.x, 1e-12 * std::max(1.0, std::abs(c.x)))
            << "p = " << c.p;
    }
    EXPECT_EQ(std_normal_quantile(0.5), 0.0);
}

TEST(NormalQuantile, RoundTripsThroughCdf) {
    for (double x = -6.0; x <= 6.0; x += 0.05) {
        const double p = std_normal_cdf(x);
        // Near p = 1 the rounding of p itself limits recoverable accuracy.
        const double conditioning = 4 * std::numeric_limits<double>::epsilon() / std_normal_pdf(x);
        EXPECT_NEAR(std_normal_quantile(p), x, 1e-9 + (x > 0 ? conditioning : 0.0)) << "x = " << x;
    }
    for (double p = 0.005; p < 1.0; p += 0.005) {
        EXPECT_NEAR(std_normal_cdf(std_normal_quantile(p)), p, 1e-14) << "p = " << p;
    }
}

TEST(NormalQuantile, RejectsOutsideOpenInterval) {
    EXPECT_THROW(std_normal_quantile(0.0), putvar::DomainError);
    EXPECT_THROW(std_normal_quantile(1.0), putvar::DomainError);
    EXPECT_THROW(std_normal_quantile(-0.1), putvar::DomainError);
    EXPECT_THROW(std_normal_quantile(std::numeric_limits<double>::quiet_NaN()),
                 putvar::DomainError);
}
