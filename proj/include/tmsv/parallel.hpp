#pragma once
// Thin OpenMP shims.  All reductions are written as "fill per-index partials,
// then fold serially in a fixed order", so results are bit-identical for any
// thread count (including the serial build).
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tmsv {

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class F>
void parallel_for(std::int64_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

// Streaming compensated accumulator (Kahan) for fixed-order inner loops.
struct KahanAcc {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Fixed-order compensated (Kahan) fold of a precomputed partial array.
inline double kahan_fold(const std::vector<double>& partial) {
  double acc = 0.0, carry = 0.0;
  for (double p : partial) {
    double y = p - carry;
    double t = acc + y;
    carry = (t - acc) - y;
    acc = t;
  }
  return acc;
}

// Sum slab_term(i) for i in [0, n).  Each term is computed in parallel;
// the fold order is the index order regardless of thread count.
template <class F>
double indexed_sum(std::int64_t n, F&& slab_term) {
  std::vector<double> partial(static_cast<std::size_t>(n));
  parallel_for(n, [&](std::int64_t i) { partial[static_cast<std::size_t>(i)] = slab_term(i); });
  return kahan_fold(partial);
}

}  // namespace tmsv
