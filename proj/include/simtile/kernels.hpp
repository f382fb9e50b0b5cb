#pragma once

// Batch margin kernels behind every Monte Carlo loop. Points travel in
// structure-of-arrays blocks: pts[j][k] is coordinate j of point k.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// one. Both evaluate the same expression tree in the same order without
// fused multiply-add, so their outputs are bitwise identical; the dispatcher
// picks one at runtime.

#include <cstddef>
#include <cstdint>

namespace simtile::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  // out[i][k] = scale * (sum_j m[i*cols + j] * in[j][k]) + shift[i], summed left to right.
  void (*affine)(const double* m, std::size_t rows, std::size_t cols, double scale,
                 const double* shift, const double* const* in, double* const* out, std::size_t n);
  // margin[k] = min(margin[k], offset - sum_j normal[j] * pts[j][k]).
  void (*halfspace_min)(const double* normal, double offset, std::size_t dim,
                        const double* const* pts, double* margin, std::size_t n);
  // margin[k] = min(1 - (hypot2(x0, x1) + sum_{j>=2} xj), min_{j>=2} xj), hypot2 = sqrt(x0*x0 + x1*x1).
  void (*cone_spindle)(std::size_t dim, const double* const* pts, double* margin, std::size_t n);
  // acc[k] = min(acc[k], v[k]).
  void (*min_into)(double* acc, const double* v, std::size_t n);
  // code[k] = 0 Inside (m > tol), 1 Boundary (m >= -tol), 2 Outside.
  void (*classify)(const double* margin, double tol, std::uint8_t* code, std::size_t n);
};

bool available(Isa isa);
const char* name(Isa isa);
const KernelTable& table(Isa isa);

// Best available ISA unless overridden by force_isa or SIMTILE_ISA=scalar|avx2.
Isa active_isa();
const KernelTable& active();
void force_isa(Isa isa);
void clear_forced_isa();

namespace scalar {
extern const KernelTable kTable;
}
#if defined(SIMTILE_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif

}  // namespace simtile::kernels
