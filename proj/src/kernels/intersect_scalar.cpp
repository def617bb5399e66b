#include "tagnet/kernels.hpp"

namespace tagnet::kernels::detail {

std::size_t intersect_count_scalar(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                                   std::size_t nb) {
  std::size_t i = 0, j = 0, count = 0;
  while (i < na && j < nb) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace tagnet::kernels::detail
