#pragma once

namespace ellcov {

/// Standard normal CDF.
double normal_cdf(double x);

/// 1 - Phi(x), accurate in the upper tail.
double normal_upper_tail(double x);

/// Inverse standard normal CDF for q in (0, 1); throws std::domain_error otherwise.
/// Wichura's AS 241 rational approximation followed by one Newton step.
double normal_quantile(double q);

}  // namespace ellcov
