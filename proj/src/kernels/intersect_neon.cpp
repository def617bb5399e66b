#include <arm_neon.h>

#include "tagnet/kernels.hpp"

namespace tagnet::kernels::detail {

// Same scheme as the AVX2 variant with 4-lane blocks.
std::size_t intersect_count_neon(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                                 std::size_t nb) {
  std::size_t i = 0, j = 0, count = 0;
  while (i + 4 <= na && j + 4 <= nb) {
    const uint32x4_t va = vld1q_u32(a + i);
    const uint32x4_t vb = vld1q_u32(b + j);
    uint32x4_t hit = vceqq_u32(va, vb);
    hit = vorrq_u32(hit, vceqq_u32(va, vextq_u32(vb, vb, 1)));
    hit = vorrq_u32(hit, vceqq_u32(va, vextq_u32(vb, vb, 2)));
    hit = vorrq_u32(hit, vceqq_u32(va, vextq_u32(vb, vb, 3)));
    count += vaddvq_u32(vshrq_n_u32(hit, 31));
    const std::uint32_t a_last = a[i + 3];
    const std::uint32_t b_last = b[j + 3];
    if (a_last <= b_last) i += 4;
    if (b_last <= a_last) j += 4;
  }
  return count + intersect_count_scalar(a + i, na - i, b + j, nb - j);
}

}  // namespace tagnet::kernels::detail
