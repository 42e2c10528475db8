#include <atomic>
#include <cstdlib>
#include <string>

#include "mmfs/error.hpp"
#include "mmfs/simd/kernels.hpp"

namespace mmfs::simd {
namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(MMFS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(MMFS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa startup_choice() {
  if (const char* env = std::getenv("MMFS_FORCE_SCALAR"); env != nullptr && std::string(env) == "1") {
    return Isa::Scalar;
  }
  if (cpu_supports(Isa::Avx2)) return Isa::Avx2;
  if (cpu_supports(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{&table_for(startup_choice())};
  return ptr;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

bool is_available(Isa isa) { return cpu_supports(isa); }

const KernelTable& table_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw InvalidArgument("kernel variant '" + std::string(to_string(isa)) + "' is not available");
  }
  switch (isa) {
#if defined(MMFS_HAVE_AVX2)
    case Isa::Avx2:
      return avx2::table();
#endif
#if defined(MMFS_HAVE_NEON)
    case Isa::Neon:
      return neon::table();
#endif
    default:
      return scalar::table();
  }
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void force(Isa isa) { current().store(&table_for(isa), std::memory_order_release); }

void reset() { current().store(&table_for(startup_choice()), std::memory_order_release); }

ScopedIsa::ScopedIsa(Isa isa) : previous_(active().isa) { force(isa); }

ScopedIsa::~ScopedIsa() { force(previous_); }

}  // namespace mmfs::simd
