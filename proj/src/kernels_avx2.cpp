#include <immintrin.h>

#include <cmath>

#include "simtile/kernels.hpp"

// Compiled with -mavx2 only (no -mfma): mul and add stay separate so every
// lane rounds exactly like the scalar reference.

namespace simtile::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

// min(a, b) with the scalar convention `a < b ? a : b`.
inline __m256d lane_min(__m256d a, __m256d b) { return _mm256_min_pd(a, b); }

void affine(const double* m, std::size_t rows, std::size_t cols, double scale, const double* shift,
            const double* const* in, double* const* out, std::size_t n) {
  const __m256d vscale = _mm256_set1_pd(scale);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = m + i * cols;
    const __m256d vshift = _mm256_set1_pd(shift[i]);
    std::size_t k = 0;
    for (; k + kLanes <= n; k += kLanes) {
      __m256d acc = _mm256_mul_pd(_mm256_set1_pd(row[0]), _mm256_loadu_pd(in[0] + k));
      for (std::size_t j = 1; j < cols; ++j) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(row[j]), _mm256_loadu_pd(in[j] + k)));
      }
      _mm256_storeu_pd(out[i] + k, _mm256_add_pd(_mm256_mul_pd(vscale, acc), vshift));
    }
    for (; k < n; ++k) {
      double acc = row[0] * in[0][k];
      for (std::size_t j = 1; j < cols; ++j) acc = acc + row[j] * in[j][k];
      out[i][k] = scale * acc + shift[i];
    }
  }
}

void halfspace_min(const double* normal, double offset, std::size_t dim, const double* const* pts,
                   double* margin, std::size_t n) {
  const __m256d voff = _mm256_set1_pd(offset);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(normal[j]), _mm256_loadu_pd(pts[j] + k)));
    }
    const __m256d slack = _mm256_sub_pd(voff, acc);
    _mm256_storeu_pd(margin + k, lane_min(slack, _mm256_loadu_pd(margin + k)));
  }
  for (; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) acc = acc + normal[j] * pts[j][k];
    const double slack = offset - acc;
    margin[k] = slack < margin[k] ? slack : margin[k];
  }
}

void cone_spindle(std::size_t dim, const double* const* pts, double* margin, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d x0 = _mm256_loadu_pd(pts[0] + k);
    const __m256d x1 = _mm256_loadu_pd(pts[1] + k);
    __m256d sum = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(x0, x0), _mm256_mul_pd(x1, x1)));
    for (std::size_t j = 2; j < dim; ++j) sum = _mm256_add_pd(sum, _mm256_loadu_pd(pts[j] + k));
    __m256d m = _mm256_sub_pd(one, sum);
    for (std::size_t j = 2; j < dim; ++j) m = lane_min(_mm256_loadu_pd(pts[j] + k), m);
    _mm256_storeu_pd(margin + k, m);
  }
  for (; k < n; ++k) {
    const double x0 = pts[0][k];
    const double x1 = pts[1][k];
    double sum = std::sqrt(x0 * x0 + x1 * x1);
    for (std::size_t j = 2; j < dim; ++j) sum = sum + pts[j][k];
    double m = 1.0 - sum;
    for (std::size_t j = 2; j < dim; ++j) m = pts[j][k] < m ? pts[j][k] : m;
    margin[k] = m;
  }
}

void min_into(double* acc, const double* v, std::size_t n) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    _mm256_storeu_pd(acc + k, lane_min(_mm256_loadu_pd(v + k), _mm256_loadu_pd(acc + k)));
  }
  for (; k < n; ++k) acc[k] = v[k] < acc[k] ? v[k] : acc[k];
}

void classify(const double* margin, double tol, std::uint8_t* code, std::size_t n) {
  const __m256d vtol = _mm256_set1_pd(tol);
  const __m256d vneg = _mm256_set1_pd(-tol);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d m = _mm256_loadu_pd(margin + k);
    const int inside = _mm256_movemask_pd(_mm256_cmp_pd(m, vtol, _CMP_GT_OQ));
    const int boundary = _mm256_movemask_pd(_mm256_cmp_pd(m, vneg, _CMP_GE_OQ));
    for (std::size_t l = 0; l < kLanes; ++l) {
      code[k + l] = (inside >> l) & 1 ? 0 : ((boundary >> l) & 1 ? 1 : 2);
    }
  }
  for (; k < n; ++k) code[k] = margin[k] > tol ? 0 : (margin[k] >= -tol ? 1 : 2);
}

}  // namespace

const KernelTable kTable{affine, halfspace_min, cone_spindle, min_into, classify};

}  // namespace simtile::kernels::avx2
