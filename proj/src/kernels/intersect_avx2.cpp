#include <immintrin.h>

#include "tagnet/kernels.hpp"

namespace tagnet::kernels::detail {

// Block-wise all-pairs compare: an 8-lane block of `a` is tested against all
// eight rotations of an 8-lane block of `b`, then whichever block has the
// smaller last element advances. Inputs are duplicate-free, so each match is
// seen in exactly one block pair.
std::size_t intersect_count_avx2(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                                 std::size_t nb) {
  std::size_t i = 0, j = 0, count = 0;
  const __m256i rot1 = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 0);
  while (i + 8 <= na && j + 8 <= nb) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
    __m256i hit = _mm256_cmpeq_epi32(va, vb);
    for (int r = 1; r < 8; ++r) {
      vb = _mm256_permutevar8x32_epi32(vb, rot1);
      hit = _mm256_or_si256(hit, _mm256_cmpeq_epi32(va, vb));
    }
    count += static_cast<std::size_t>(_mm_popcnt_u32(
        static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(hit)))));
    const std::uint32_t a_last = a[i + 7];
    const std::uint32_t b_last = b[j + 7];
    if (a_last <= b_last) i += 8;
    if (b_last <= a_last) j += 8;
  }
  return count + intersect_count_scalar(a + i, na - i, b + j, nb - j);
}

}  // namespace tagnet::kernels::detail
