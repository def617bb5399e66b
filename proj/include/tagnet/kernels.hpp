#pragma once

// Sorted-set intersection counting, the inner loop of triangle and
// clustering computations. A scalar reference and vector variants are
// compiled side by side; the widest one the running CPU supports is picked
// on first use.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tagnet::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

// Variants compiled into this binary that the current CPU can execute.
std::vector<Isa> available_isas();

Isa active_isa();

// Overrides the dispatch choice; throws InvalidArgument if `isa` is not
// available. Intended for tests and benchmarks.
void force_isa(Isa isa);
void reset_isa();

// |a ∩ b| for strictly increasing sequences.
std::size_t intersect_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// Explicit variant; `isa` must be available.
std::size_t intersect_count(Isa isa, std::span<const std::uint32_t> a,
                            std::span<const std::uint32_t> b);

namespace detail {
std::size_t intersect_count_scalar(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                                   std::size_t nb);
std::size_t intersect_count_avx2(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                                 std::size_t nb);
std::size_t intersect_count_neon(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                                 std::size_t nb);
}  // namespace detail

}  // namespace tagnet::kernels
