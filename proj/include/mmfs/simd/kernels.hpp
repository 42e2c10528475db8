#pragma once

// Data-parallel inner loops used by the dense linear algebra.
//
// Every kernel has a portable scalar reference implementation and, where the
// build and the running CPU allow it, a vectorized variant. The variant is
// picked once at startup (see active()) and can be overridden for testing or
// with MMFS_FORCE_SCALAR=1 in the environment. Vectorized variants reorder
// floating-point sums, so results agree with the reference to rounding, not
// bit-for-bit.

#include <cstddef>
#include <string_view>
#include <vector>

namespace mmfs::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // (x, y) <- (c x - s y, s x + c y), a plane rotation applied in place
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
  // max_i |x[i]|
  double (*max_abs)(const double* x, std::size_t n);
};

namespace scalar {
const KernelTable& table();
}

#if defined(MMFS_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

#if defined(MMFS_HAVE_NEON)
namespace neon {
const KernelTable& table();
}
#endif

// Variants compiled into this binary and supported by the running CPU.
std::vector<Isa> available();

bool is_available(Isa isa);

// Table for a specific variant; throws InvalidArgument if unavailable.
const KernelTable& table_for(Isa isa);

// Currently selected table.
const KernelTable& active();

// Select a variant process-wide. Intended for tests and benchmarks; not
// meant to be toggled while other threads are computing.
void force(Isa isa);

// Restore the startup choice.
void reset();

// RAII override used by the equivalence tests.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa);
  ~ScopedIsa();
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

}  // namespace mmfs::simd
