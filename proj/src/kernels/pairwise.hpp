#pragma once

#include <cstddef>

namespace vortexlab::kernels::detail {

// Pairwise summation of term(i) for i in [begin, end). Split point is the
// midpoint, so the association order depends only on the range.
template <class Term>
double pairwise(const Term& term, std::size_t begin, std::size_t end) {
  const std::size_t n = end - begin;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = begin + n / 2;
  return pairwise(term, begin, mid) + pairwise(term, mid, end);
}

inline std::size_t block_count(std::size_t n, std::size_t block) {
  return (n + block - 1) / block;
}

}  // namespace vortexlab::kernels::detail
