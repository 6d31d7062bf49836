#pragma once

#include "ellcov/data_matrix.hpp"
#include "ellcov/ustat.hpp"

namespace ellcov {

inline constexpr Index kBruteForceMaxRows = 30;

/// Literal nested loops over pairwise-distinct index tuples, with every inner product
/// evaluated directly from the rows. O(n^4 p); rejects samples with more than
/// kBruteForceMaxRows rows. Used as the ground truth for the Gram-based estimators.
TraceEstimates brute_force_estimates(const DataMatrix& sample1, const DataMatrix& sample2);

double brute_force_u(const DataMatrix& sample);
double brute_force_v(const DataMatrix& sample1, const DataMatrix& sample2);

}  // namespace ellcov
