#include "simtile/sampling.hpp"

#include <cmath>
#include <numbers>

#include "simtile/errors.hpp"
#include "simtile/kernels.hpp"

namespace simtile {

UniformBlock::UniformBlock(int dim)
    : dim_(dim), storage_(static_cast<std::size_t>(dim) * kBlockSize), rows_(dim) {
  for (int j = 0; j < dim; ++j) rows_[j] = storage_.data() + j * kBlockSize;
}

void UniformBlock::fill(const CounterRng& rng, const Box& box, std::uint64_t begin, std::size_t n) {
  if (n > kBlockSize) throw InvalidArgument("UniformBlock::fill: block too large");
  require_same_dim(box.dim(), dim_, "UniformBlock box");
  n_ = n;
  for (int j = 0; j < dim_; ++j) {
    double* row = storage_.data() + j * kBlockSize;
    const double lo = box.lo[j];
    const double width = box.hi[j] - box.lo[j];
    for (std::size_t k = 0; k < n; ++k) row[k] = lo + width * rng.uniform(begin + k, j);
  }
}

Vector UniformBlock::point(std::size_t k) const {
  Vector x(dim_);
  for (int j = 0; j < dim_; ++j) x[j] = rows_[j][k];
  return x;
}

VolumeEstimate volume(const Body& body, std::int64_t samples, std::uint64_t seed, double tol) {
  if (samples < 1) throw InvalidArgument("volume: samples must be >= 1");
  const Box& box = body.bounding_box();
  const CounterRng rng(seed);
  const std::size_t total = static_cast<std::size_t>(samples);
  std::vector<std::int64_t> hits(chunk_count(total, kBlockSize), 0);
  parallel_chunks(total, kBlockSize, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    UniformBlock block(body.dim());
    block.fill(rng, box, begin, end - begin);
    double margin[kBlockSize];
    std::uint8_t code[kBlockSize];
    body.margins(block.rows(), block.size(), margin);
    kernels::active().classify(margin, tol, code, block.size());
    std::int64_t h = 0;
    for (std::size_t k = 0; k < block.size(); ++k) h += code[k] != 2;
    hits[chunk] = h;
  });
  std::int64_t h = 0;
  for (auto c : hits) h += c;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(h) / n;
  const double bv = box.volume();
  return VolumeEstimate{bv * p, bv * std::sqrt(p * (1.0 - p) / n), samples};
}

std::vector<Vector> sample_directions(int dim, int m, std::uint64_t seed) {
  if (dim < 1 || m < 1) throw InvalidArgument("sample_directions: bad arguments");
  const CounterRng rng(seed);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(m));
  if (dim == 1) {
    for (int k = 0; k < m; ++k) out.push_back(Vector::Constant(1, k % 2 == 0 ? 1.0 : -1.0));
    return out;
  }
  if (dim == 2) {
    const double phase = rng.uniform(0, 0);
    for (int k = 0; k < m; ++k) {
      const double angle = 2.0 * std::numbers::pi * (k + phase) / m;
      Vector d(2);
      d << std::cos(angle), std::sin(angle);
      out.push_back(std::move(d));
    }
    return out;
  }
  for (int k = 0; k < m; ++k) {
    Vector d(dim);
    do {
      for (int j = 0; j < dim; ++j) d[j] = rng.normal(static_cast<std::uint64_t>(k), j);
    } while (d.norm() < 1e-12);
    out.push_back(d.normalized());
  }
  return out;
}

int count_clusters(const std::vector<Vector>& points, double delta) {
  std::vector<Vector> centroid;
  std::vector<int> size;
  for (const auto& p : points) {
    int best = -1;
    double best_d = delta;
    for (std::size_t c = 0; c < centroid.size(); ++c) {
      const double d = (centroid[c] - p).norm();
      if (d <= best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    if (best < 0) {
      centroid.push_back(p);
      size.push_back(1);
    } else {
      ++size[best];
      centroid[best] += (p - centroid[best]) / size[best];
    }
  }
  return static_cast<int>(centroid.size());
}

namespace {

int witness_clusters(const Body& body, int m, double delta, std::uint64_t seed) {
  std::vector<Vector> witnesses;
  witnesses.reserve(static_cast<std::size_t>(m));
  for (const auto& d : sample_directions(body.dim(), m, seed)) {
    witnesses.push_back(support(body, d).witness);
  }
  return count_clusters(witnesses, delta);
}

}  // namespace

ExtremalEstimate estimate_extremal_points(const Body& body, int m, double delta, std::uint64_t seed) {
  if (m < body.dim() + 1) throw InvalidArgument("estimate_extremal_points: m must be >= dim + 1");
  if (!(delta > 0.0)) throw InvalidArgument("estimate_extremal_points: delta must be positive");
  ExtremalEstimate e;
  e.directions_sampled = m;
  e.clusters = witness_clusters(body, m, delta, seed);
  e.refined_clusters = witness_clusters(body, 2 * m, delta, seed);
  e.saturated = std::abs(e.refined_clusters - e.clusters) < 0.05 * e.clusters;
  return e;
}

}  // namespace simtile
