#pragma once

// U-statistic estimators of tr(S1^2), tr(S2^2) and tr(S1 S2) computed from Gram
// matrices in O(n^2 p). The sums over pairwise-distinct index tuples are reduced to
// Frobenius norms, row sums and diagonals of the Gram blocks by inclusion-exclusion.

#include "ellcov/data_matrix.hpp"

#include <Eigen/Dense>

namespace ellcov {

/// Kernel selection. Both variants compute every Gram entry with the same fixed-order
/// inner product, so their results are bit-identical.
enum class Execution { Serial, Parallel };

struct GramBlock {
  Eigen::MatrixXd self1;  ///< X1 X1^T
  Eigen::MatrixXd self2;  ///< X2 X2^T
  Eigen::MatrixXd cross;  ///< X1 X2^T
  Eigen::VectorXd diag1, diag2;
  Eigen::VectorXd row_sums1, row_sums2;
  Eigen::VectorXd cross_row_sums;  ///< length n1
  Eigen::VectorXd cross_col_sums;  ///< length n2
};

struct TraceEstimates {
  double u1 = 0.0;  ///< estimate of tr(S1^2)
  double u2 = 0.0;  ///< estimate of tr(S2^2)
  double v = 0.0;   ///< estimate of tr(S1 S2)
  double t = 0.0;   ///< u1 + u2 - 2 v
};

Eigen::MatrixXd self_gram(const DataMatrix& x, Execution exec = Execution::Parallel);
Eigen::MatrixXd cross_gram(const DataMatrix& x1, const DataMatrix& x2,
                           Execution exec = Execution::Parallel);

/// All three Gram blocks plus cached diagonals and row sums.
/// Throws DimensionMismatch when the column counts differ.
GramBlock gram(const DataMatrix& sample1, const DataMatrix& sample2,
               Execution exec = Execution::Parallel);

/// U-statistic for tr(S^2) from a self-Gram matrix. Requires n >= 4.
double u_from_gram(const Eigen::MatrixXd& g);

/// U-statistic for tr(S1 S2) from a cross-Gram matrix. Requires n1, n2 >= 2.
double v_from_cross_gram(const Eigen::MatrixXd& h);

/// The estimators are invariant to shifting either sample, so these entry points subtract
/// each sample's column means before forming the Gram matrices (less cancellation when
/// the location dominates the spread).
double u_statistic(const DataMatrix& sample, Execution exec = Execution::Parallel);
double v_statistic(const DataMatrix& sample1, const DataMatrix& sample2,
                   Execution exec = Execution::Parallel);

/// One Gram pass shared by all three estimators.
TraceEstimates t_statistic(const DataMatrix& sample1, const DataMatrix& sample2,
                           Execution exec = Execution::Parallel);

/// Single assembly point for T = u1 + u2 - 2 v.
TraceEstimates assemble(double u1, double u2, double v);

}  // namespace ellcov
