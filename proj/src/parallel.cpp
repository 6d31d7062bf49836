#include "ellcov/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace ellcov {

int worker_count() {
  if (const char* env = std::getenv("ELLCOV_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

}  // namespace ellcov
