#include <atomic>

#include "tagnet/error.hpp"
#include "tagnet/kernels.hpp"

namespace tagnet::kernels {

namespace {

using Fn = std::size_t (*)(const std::uint32_t*, std::size_t, const std::uint32_t*, std::size_t);

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(TAGNET_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
    case Isa::neon:
#if defined(TAGNET_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Fn function_for(Isa isa) {
  switch (isa) {
#if defined(TAGNET_HAVE_AVX2)
    case Isa::avx2:
      return &detail::intersect_count_avx2;
#endif
#if defined(TAGNET_HAVE_NEON)
    case Isa::neon:
      return &detail::intersect_count_neon;
#endif
    default:
      return &detail::intersect_count_scalar;
  }
}

Isa best_isa() {
  if (cpu_has(Isa::avx2)) return Isa::avx2;
  if (cpu_has(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{best_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (cpu_has(isa)) out.push_back(isa);
  }
  return out;
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!cpu_has(isa)) throw InvalidArgument("ISA " + std::string(isa_name(isa)) + " not available");
  selected().store(isa, std::memory_order_relaxed);
}

void reset_isa() { selected().store(best_isa(), std::memory_order_relaxed); }

std::size_t intersect_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return function_for(active_isa())(a.data(), a.size(), b.data(), b.size());
}

std::size_t intersect_count(Isa isa, std::span<const std::uint32_t> a,
                            std::span<const std::uint32_t> b) {
  if (!cpu_has(isa)) throw InvalidArgument("ISA " + std::string(isa_name(isa)) + " not available");
  return function_for(isa)(a.data(), a.size(), b.data(), b.size());
}

}  // namespace tagnet::kernels
