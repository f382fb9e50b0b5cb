#include <atomic>
#include <cstdlib>
#include <cstring>

#include "simtile/errors.hpp"
#include "simtile/kernels.hpp"

namespace simtile::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(SIMTILE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("SIMTILE_ISA")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::Avx2;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

// -1: no override; otherwise the forced Isa value.
std::atomic<int> forced{-1};

}  // namespace

bool available(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

const char* name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const KernelTable& table(Isa isa) {
  if (!available(isa)) throw InvalidArgument(std::string("kernel ISA unavailable: ") + name(isa));
#if defined(SIMTILE_HAVE_AVX2)
  if (isa == Isa::Avx2) return avx2::kTable;
#endif
  return scalar::kTable;
}

Isa active_isa() {
  static const Isa detected = detect();
  const int f = forced.load();
  return f < 0 ? detected : static_cast<Isa>(f);
}

const KernelTable& active() { return table(active_isa()); }

void force_isa(Isa isa) {
  if (!available(isa)) throw InvalidArgument(std::string("kernel ISA unavailable: ") + name(isa));
  forced.store(static_cast<int>(isa));
}

void clear_forced_isa() { forced.store(-1); }

}  // namespace simtile::kernels
