#pragma once

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shapemotion {

enum class ExecMode { Sequential, Parallel };

/// Execution policy threaded through every data-parallel kernel. Sequential
/// mode is the reference implementation; parallel mode splits work across
/// OpenMP threads and must reproduce the sequential results bit for bit.
struct ExecPolicy {
  ExecMode mode = ExecMode::Sequential;
  int workers = 0;  // 0 = all hardware threads

  bool parallel() const { return mode == ExecMode::Parallel; }

  int threads() const {
#ifdef _OPENMP
    return workers > 0 ? workers : omp_get_num_procs();
#else
    return 1;
#endif
  }
};

inline ExecPolicy seq_policy() { return {}; }
inline ExecPolicy par_policy(int workers = 0) { return {ExecMode::Parallel, workers}; }

/// Runs fn(i) for i in [0, count). Iterations must be independent.
template <typename Fn>
void for_rows(const ExecPolicy& exec, int count, Fn&& fn) {
#ifdef _OPENMP
  if (exec.parallel()) {
#pragma omp parallel for num_threads(exec.threads()) schedule(static)
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
#endif
  for (int i = 0; i < count; ++i) fn(i);
}

/// Row-wise reduction: row_fn(i) returns the partial sum of row i. Partials
/// are accumulated in row order in both modes, so the result is bit-identical
/// regardless of mode and worker count.
template <typename Fn>
double sum_rows(const ExecPolicy& exec, int count, Fn&& row_fn) {
#ifdef _OPENMP
  if (exec.parallel()) {
    std::vector<double> partial(static_cast<std::size_t>(count));
#pragma omp parallel for num_threads(exec.threads()) schedule(static)
    for (int i = 0; i < count; ++i) partial[i] = row_fn(i);
    double total = 0.0;
    for (int i = 0; i < count; ++i) total += partial[i];
    return total;
  }
#endif
  double total = 0.0;
  for (int i = 0; i < count; ++i) total += row_fn(i);
  return total;
}

/// Row-wise max, same ordering contract as sum_rows.
template <typename Fn>
double max_rows(const ExecPolicy& exec, int count, Fn&& row_fn) {
#ifdef _OPENMP
  if (exec.parallel()) {
    std::vector<double> partial(static_cast<std::size_t>(count));
#pragma omp parallel for num_threads(exec.threads()) schedule(static)
    for (int i = 0; i < count; ++i) partial[i] = row_fn(i);
    double best = 0.0;
    for (int i = 0; i < count; ++i) best = partial[i] > best ? partial[i] : best;
    return best;
  }
#endif
  double best = 0.0;
  for (int i = 0; i < count; ++i) {
    const double v = row_fn(i);
    best = v > best ? v : best;
  }
  return best;
}

}  // namespace shapemotion
