#pragma once

// Replicate-parallel kernels.
//
// A Monte Carlo experiment is a map r -> row(r) over replicate indices where
// each row depends on r alone (its random numbers come from counter stream r).
// `Backend::serial` is the plain reference loop; `Backend::openmp` splits the
// index range across threads. Every row lands in its own preallocated slot, so
// the two backends produce bit-identical output for any worker count.

#include <cstddef>
#include <span>
#include <vector>

#include <omp.h>

namespace trimcusum {

enum class Backend { serial, openmp };

struct Execution {
  Backend backend = Backend::openmp;
  /// OpenMP thread count; 0 uses the runtime default.
  int workers = 0;

  static Execution serial() { return {Backend::serial, 1}; }
  static Execution threads(int workers) { return {Backend::openmp, workers}; }
};

/// Per-thread buffers reused across replicates.
struct ReplicateScratch {
  std::vector<double> sample;
  std::vector<double> work;
  std::vector<double> order;
};

/// Fills a count x width row-major table with kernel(r, scratch, row).
template <typename Kernel>
std::vector<double> map_replicate_rows(std::size_t count, std::size_t width, Kernel&& kernel,
                                       const Execution& exec) {
  std::vector<double> table(count * width);
  if (exec.backend == Backend::serial) {
    ReplicateScratch scratch;
    for (std::size_t r = 0; r < count; ++r) {
      kernel(r, scratch, std::span<double>(table.data() + r * width, width));
    }
    return table;
  }

  const int threads = exec.workers > 0 ? exec.workers : omp_get_max_threads();
  const auto signed_count = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel num_threads(threads)
  {
    ReplicateScratch scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < signed_count; ++r) {
      const auto ur = static_cast<std::size_t>(r);
      kernel(ur, scratch, std::span<double>(table.data() + ur * width, width));
    }
  }
  return table;
}

/// Scalar form: out[r] = kernel(r, scratch).
template <typename Kernel>
std::vector<double> map_replicates(std::size_t count, Kernel&& kernel, const Execution& exec) {
  return map_replicate_rows(
      count, 1,
      [&](std::size_t r, ReplicateScratch& scratch, std::span<double> row) {
        row[0] = kernel(r, scratch);
      },
      exec);
}

}  // namespace trimcusum
