#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include <omp.h>

namespace nsshock::reduce {

/// Chunk length of the fixed partition.  Results depend on this value but not
/// on the thread count.
inline constexpr std::size_t kChunk = 256;

inline double pairwise(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise(x, half) + pairwise(x + half, n - half);
}

/// Sum of term(0..n-1): each fixed chunk is summed left to right, the chunk
/// partials are combined by a pairwise tree.  The serial and OpenMP paths
/// perform the same floating point operations.
template <class Term>
double deterministic_sum(std::size_t n, Term&& term, bool parallel = true) {
  if (n == 0) return 0.0;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  auto chunk_sum = [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(n, begin + kChunk);
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    partial[c] = s;
  };
  if (parallel && chunks > 1) {
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < chunks; ++c) chunk_sum(c);
  } else {
    for (std::size_t c = 0; c < chunks; ++c) chunk_sum(c);
  }
  return pairwise(partial.data(), partial.size());
}

template <class Term>
double deterministic_max(std::size_t n, Term&& term) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, term(i));
  return m;
}

}  // namespace nsshock::reduce
