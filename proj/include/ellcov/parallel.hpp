#pragma once

namespace ellcov {

/// Worker count for OpenMP regions: ELLCOV_THREADS when set to a positive integer,
/// otherwise the OpenMP default.
int worker_count();

}  // namespace ellcov
