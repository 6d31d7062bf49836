#include "ellcov/ustat.hpp"

#include "ellcov/errors.hpp"
#include "ellcov/numeric.hpp"
#include "ellcov/parallel.hpp"

namespace ellcov {

namespace {

void require_same_dimension(const char* context, const DataMatrix& a, const DataMatrix& b) {
  if (a.cols() != b.cols()) {
    throw DimensionMismatch(context, a.rows(), a.cols(), b.rows(), b.cols());
  }
}

void self_gram_serial(const RowMatrix& x, Eigen::MatrixXd& g) {
  const Index n = x.rows();
  const Index p = x.cols();
  for (Index j = 0; j < n; ++j) {
    const double* xj = x.data() + j * p;
    for (Index k = j; k < n; ++k) {
      const double v = fixed_order_dot(xj, x.data() + k * p, p);
      g(j, k) = v;
      g(k, j) = v;
    }
  }
}

void self_gram_parallel(const RowMatrix& x, Eigen::MatrixXd& g) {
  const Index n = x.rows();
  const Index p = x.cols();
  // Row j owns entries (j, k >= j) and their mirrors; no two iterations write the same cell.
#pragma omp parallel for schedule(dynamic, 8) num_threads(worker_count())
  for (Index j = 0; j < n; ++j) {
    const double* xj = x.data() + j * p;
    for (Index k = j; k < n; ++k) {
      const double v = fixed_order_dot(xj, x.data() + k * p, p);
      g(j, k) = v;
      g(k, j) = v;
    }
  }
}

void cross_gram_serial(const RowMatrix& x1, const RowMatrix& x2, Eigen::MatrixXd& h) {
  const Index p = x1.cols();
  for (Index i = 0; i < x1.rows(); ++i) {
    const double* xi = x1.data() + i * p;
    for (Index j = 0; j < x2.rows(); ++j) h(i, j) = fixed_order_dot(xi, x2.data() + j * p, p);
  }
}

void cross_gram_parallel(const RowMatrix& x1, const RowMatrix& x2, Eigen::MatrixXd& h) {
  const Index p = x1.cols();
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (Index i = 0; i < x1.rows(); ++i) {
    const double* xi = x1.data() + i * p;
    for (Index j = 0; j < x2.rows(); ++j) h(i, j) = fixed_order_dot(xi, x2.data() + j * p, p);
  }
}

Eigen::VectorXd row_sums(const Eigen::MatrixXd& m) {
  Eigen::VectorXd out(m.rows());
  for (Index i = 0; i < m.rows(); ++i) {
    CompensatedSum s;
    for (Index j = 0; j < m.cols(); ++j) s.add(m(i, j));
    out(i) = s.value();
  }
  return out;
}

Eigen::VectorXd col_sums(const Eigen::MatrixXd& m) {
  Eigen::VectorXd out(m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    CompensatedSum s;
    for (Index i = 0; i < m.rows(); ++i) s.add(m(i, j));
    out(j) = s.value();
  }
  return out;
}

// The estimators are exactly invariant to a shift of either sample, so removing the
// column means first costs nothing statistically and keeps the Gram entries on the scale
// of the spread rather than the location.
DataMatrix centered(const DataMatrix& x) {
  const Index n = x.rows();
  const Index p = x.cols();
  RowMatrix m = x.values();
  for (Index j = 0; j < p; ++j) {
    CompensatedSum s;
    for (Index i = 0; i < n; ++i) s.add(m(i, j));
    const double mean = s.value() / static_cast<double>(n);
    for (Index i = 0; i < n; ++i) m(i, j) -= mean;
  }
  return DataMatrix(std::move(m));
}

}  // namespace

Eigen::MatrixXd self_gram(const DataMatrix& x, Execution exec) {
  Eigen::MatrixXd g(x.rows(), x.rows());
  if (exec == Execution::Parallel) {
    self_gram_parallel(x.values(), g);
  } else {
    self_gram_serial(x.values(), g);
  }
  return g;
}

Eigen::MatrixXd cross_gram(const DataMatrix& x1, const DataMatrix& x2, Execution exec) {
  require_same_dimension("cross_gram", x1, x2);
  Eigen::MatrixXd h(x1.rows(), x2.rows());
  if (exec == Execution::Parallel) {
    cross_gram_parallel(x1.values(), x2.values(), h);
  } else {
    cross_gram_serial(x1.values(), x2.values(), h);
  }
  return h;
}

GramBlock gram(const DataMatrix& sample1, const DataMatrix& sample2, Execution exec) {
  require_same_dimension("gram", sample1, sample2);
  GramBlock b;
  b.self1 = self_gram(sample1, exec);
  b.self2 = self_gram(sample2, exec);
  b.cross = cross_gram(sample1, sample2, exec);
  b.diag1 = b.self1.diagonal();
  b.diag2 = b.self2.diagonal();
  b.row_sums1 = row_sums(b.self1);
  b.row_sums2 = row_sums(b.self2);
  b.cross_row_sums = row_sums(b.cross);
  b.cross_col_sums = col_sums(b.cross);
  return b;
}

double u_from_gram(const Eigen::MatrixXd& g) {
  const Index n = g.rows();
  if (n < 4) {
    throw InsufficientObservations("insufficient observations for (n)_4 normalization", n, 4);
  }
  // With r_k the off-diagonal row sums of G:
  //   A = sum*_{j,k} G_jk^2
  //   B = sum*_{j,k,l} G_jk G_kl    = sum_k r_k^2 - A
  //   C = sum*_{j,k,l,m} G_jk G_lm  = (sum_k r_k)^2 - 4 sum_k r_k^2 + 2 A
  CompensatedSum a_sum, r_sum, r2_sum;
  for (Index k = 0; k < n; ++k) {
    CompensatedSum rk;
    for (Index j = 0; j < n; ++j) {
      if (j == k) continue;
      const double v = g(j, k);
      rk.add(v);
      a_sum.add(v * v);
    }
    const double r = rk.value();
    r_sum.add(r);
    r2_sum.add(r * r);
  }
  const long double a = a_sum.value();
  const long double r2 = r2_sum.value();
  const long double s1 = r_sum.value();
  const long double b = r2 - a;
  const long double c = s1 * s1 - 4.0L * r2 + 2.0L * a;

  const long double u = a / falling_factorial(n, 2) - 2.0L * b / falling_factorial(n, 3) +
                        c / falling_factorial(n, 4);
  return static_cast<double>(u);
}

double v_from_cross_gram(const Eigen::MatrixXd& h) {
  const Index n1 = h.rows();
  const Index n2 = h.cols();
  if (n1 < 2) throw InsufficientObservations("sample 1 too small for the cross estimator", n1, 2);
  if (n2 < 2) throw InsufficientObservations("sample 2 too small for the cross estimator", n2, 2);

  // F = ||H||_F^2, rho = row sums, c = column sums, S = total.
  //   sum_j sum*_{k,l} H_lj H_kj     = sum c^2 - F
  //   sum_i sum*_{k,l} H_il H_ik     = sum rho^2 - F
  //   sum*_{i,k} sum*_{j,l} H_ij H_kl = S^2 - sum rho^2 - sum c^2 + F
  CompensatedSum f_sum, rho2_sum, total;
  for (Index i = 0; i < n1; ++i) {
    CompensatedSum rho;
    for (Index j = 0; j < n2; ++j) {
      const double v = h(i, j);
      rho.add(v);
      f_sum.add(v * v);
    }
    const double r = rho.value();
    rho2_sum.add(r * r);
    total.add(r);
  }
  CompensatedSum c2_sum;
  for (Index j = 0; j < n2; ++j) {
    CompensatedSum c;
    for (Index i = 0; i < n1; ++i) c.add(h(i, j));
    const double cv = c.value();
    c2_sum.add(cv * cv);
  }
  const long double f = f_sum.value();
  const long double rho2 = rho2_sum.value();
  const long double c2 = c2_sum.value();
  const long double s = total.value();
  const long double dn1 = static_cast<long double>(n1);
  const long double dn2 = static_cast<long double>(n2);

  const long double v = f / (dn1 * dn2) - (c2 - f) / (dn1 * dn2 * (dn1 - 1)) -
                        (rho2 - f) / (dn1 * dn2 * (dn2 - 1)) +
                        (s * s - rho2 - c2 + f) / (dn1 * (dn1 - 1) * dn2 * (dn2 - 1));
  return static_cast<double>(v);
}

double u_statistic(const DataMatrix& sample, Execution exec) {
  if (sample.rows() < 4) {
    throw InsufficientObservations("insufficient observations for (n)_4 normalization",
                                   sample.rows(), 4);
  }
  return u_from_gram(self_gram(centered(sample), exec));
}

double v_statistic(const DataMatrix& sample1, const DataMatrix& sample2, Execution exec) {
  require_same_dimension("v_statistic", sample1, sample2);
  return v_from_cross_gram(cross_gram(centered(sample1), centered(sample2), exec));
}

TraceEstimates assemble(double u1, double u2, double v) {
  return TraceEstimates{u1, u2, v, u1 + u2 - 2.0 * v};
}

TraceEstimates t_statistic(const DataMatrix& sample1, const DataMatrix& sample2,
                           Execution exec) {
  require_same_dimension("t_statistic", sample1, sample2);
  if (sample1.rows() < 4) {
    throw InsufficientObservations("insufficient observations for (n)_4 normalization",
                                   sample1.rows(), 4);
  }
  if (sample2.rows() < 4) {
    throw InsufficientObservations("insufficient observations for (n)_4 normalization",
                                   sample2.rows(), 4);
  }
  const GramBlock b = gram(centered(sample1), centered(sample2), exec);
  return assemble(u_from_gram(b.self1), u_from_gram(b.self2), v_from_cross_gram(b.cross));
}

}  // namespace ellcov
