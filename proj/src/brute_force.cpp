#include "ellcov/brute_force.hpp"

#include "ellcov/errors.hpp"

#include <stdexcept>
#include <string>

namespace ellcov {

namespace {

long double inner(std::span<const double> a, std::span<const double> b) {
  long double s = 0.0L;
  for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<long double>(a[k]) * b[k];
  return s;
}

void guard(const DataMatrix& x) {
  if (x.rows() > kBruteForceMaxRows) {
    throw std::invalid_argument("brute-force oracle limited to " +
                                std::to_string(kBruteForceMaxRows) + " rows, got " +
                                std::to_string(x.rows()));
  }
}

}  // namespace

double brute_force_u(const DataMatrix& x) {
  guard(x);
  const Index n = x.rows();
  if (n < 4) {
    throw InsufficientObservations("insufficient observations for (n)_4 normalization", n, 4);
  }
  long double pairs = 0.0L, triples = 0.0L, quads = 0.0L;
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      if (k == j) continue;
      const long double jk = inner(x.row(j), x.row(k));
      pairs += jk * jk;
      for (Index l = 0; l < n; ++l) {
        if (l == j || l == k) continue;
        triples += jk * inner(x.row(k), x.row(l));
        for (Index m = 0; m < n; ++m) {
          if (m == j || m == k || m == l) continue;
          quads += jk * inner(x.row(l), x.row(m));
        }
      }
    }
  }
  const long double dn = static_cast<long double>(n);
  const long double n2 = dn * (dn - 1);
  const long double n3 = n2 * (dn - 2);
  const long double n4 = n3 * (dn - 3);
  return static_cast<double>(pairs / n2 - 2.0L * triples / n3 + quads / n4);
}

double brute_force_v(const DataMatrix& x1, const DataMatrix& x2) {
  guard(x1);
  guard(x2);
  if (x1.cols() != x2.cols()) {
    throw DimensionMismatch("brute_force_v", x1.rows(), x1.cols(), x2.rows(), x2.cols());
  }
  const Index n1 = x1.rows();
  const Index n2 = x2.rows();
  if (n1 < 2 || n2 < 2) {
    throw InsufficientObservations("cross estimator needs two rows per sample",
                                   n1 < n2 ? n1 : n2, 2);
  }
  long double t1 = 0.0L, t2 = 0.0L, t3 = 0.0L, t4 = 0.0L;
  for (Index j = 0; j < n1; ++j) {
    for (Index k = 0; k < n2; ++k) {
      const long double v = inner(x1.row(j), x2.row(k));
      t1 += v * v;
    }
  }
  // sum*_{k,l <= n1} sum_{j <= n2} x_l^(1)' x_j^(2) x_j^(2)' x_k^(1)
  for (Index k = 0; k < n1; ++k) {
    for (Index l = 0; l < n1; ++l) {
      if (k == l) continue;
      for (Index j = 0; j < n2; ++j) {
        t2 += inner(x1.row(l), x2.row(j)) * inner(x2.row(j), x1.row(k));
      }
    }
  }
  // sum*_{k,l <= n2} sum_{j <= n1} x_l^(2)' x_j^(1) x_j^(1)' x_k^(2)
  for (Index k = 0; k < n2; ++k) {
    for (Index l = 0; l < n2; ++l) {
      if (k == l) continue;
      for (Index j = 0; j < n1; ++j) {
        t3 += inner(x2.row(l), x1.row(j)) * inner(x1.row(j), x2.row(k));
      }
    }
  }
  // sum*_{i,k <= n1} sum*_{j,l <= n2} (x_i^(1)' x_j^(2)) (x_k^(1)' x_l^(2))
  for (Index i = 0; i < n1; ++i) {
    for (Index k = 0; k < n1; ++k) {
      if (i == k) continue;
      for (Index j = 0; j < n2; ++j) {
        for (Index l = 0; l < n2; ++l) {
          if (j == l) continue;
          t4 += inner(x1.row(i), x2.row(j)) * inner(x1.row(k), x2.row(l));
        }
      }
    }
  }
  const long double a = static_cast<long double>(n1);
  const long double b = static_cast<long double>(n2);
  return static_cast<double>(t1 / (a * b) - t2 / (a * b * (a - 1)) - t3 / (b * a * (b - 1)) +
                             t4 / (a * (a - 1) * b * (b - 1)));
}

TraceEstimates brute_force_estimates(const DataMatrix& x1, const DataMatrix& x2) {
  return assemble(brute_force_u(x1), brute_force_u(x2), brute_force_v(x1, x2));
}

}  // namespace ellcov
