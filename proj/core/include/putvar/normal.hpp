#pragma once

namespace putvar {

/// Standard normal density.
double std_normal_pdf(double x) noexcept;

/// Standard normal CDF, absolute error below 1e-15 over the real line.
/// Saturates to exactly 0 / 1 far in the tails; NaN propagates.
double std_normal_cdf(double x) noexcept;

/// Inverse of std_normal_cdf on (0, 1).
/// Throws DomainError for p outside the open unit interval.
double std_normal_quantile(double p);

} // namespace putvar
