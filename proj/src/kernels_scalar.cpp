#include <algorithm>
#include <cmath>

#include "simtile/kernels.hpp"

namespace simtile::kernels::scalar {
namespace {

void affine(const double* m, std::size_t rows, std::size_t cols, double scale, const double* shift,
            const double* const* in, double* const* out, std::size_t n) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = m + i * cols;
    for (std::size_t k = 0; k < n; ++k) {
      double acc = row[0] * in[0][k];
      for (std::size_t j = 1; j < cols; ++j) acc = acc + row[j] * in[j][k];
      out[i][k] = scale * acc + shift[i];
    }
  }
}

void halfspace_min(const double* normal, double offset, std::size_t dim, const double* const* pts,
                   double* margin, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) acc = acc + normal[j] * pts[j][k];
    const double slack = offset - acc;
    margin[k] = slack < margin[k] ? slack : margin[k];
  }
}

void cone_spindle(std::size_t dim, const double* const* pts, double* margin, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
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
  for (std::size_t k = 0; k < n; ++k) acc[k] = v[k] < acc[k] ? v[k] : acc[k];
}

void classify(const double* margin, double tol, std::uint8_t* code, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    code[k] = margin[k] > tol ? 0 : (margin[k] >= -tol ? 1 : 2);
  }
}

}  // namespace

const KernelTable kTable{affine, halfspace_min, cone_spindle, min_into, classify};

}  // namespace simtile::kernels::scalar
