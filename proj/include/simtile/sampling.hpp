#pragma once

#include <cstdint>
#include <vector>

#include "simtile/body.hpp"
#include "simtile/random.hpp"

namespace simtile {

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;  // box volume times the binomial standard error of the hit fraction
  std::int64_t samples = 0;
};

// Hit-or-miss over the body's bounding box; a hit is any non-Outside sample.
VolumeEstimate volume(const Body& body, std::int64_t samples, std::uint64_t seed,
                      double tol = kDefaultTol);

struct ExtremalEstimate {
  int directions_sampled = 0;
  int clusters = 0;
  bool saturated = false;
  int refined_clusters = 0;  // cluster count at twice the directions
};

// Support witnesses over m quasi-uniform directions, clustered at radius
// delta; saturated when doubling m moves the count by less than 5%.
ExtremalEstimate estimate_extremal_points(const Body& body, int m, double delta, std::uint64_t seed);

// Unit directions: equispaced angles with a seeded phase in 2-D, normalized
// Gaussians otherwise.
std::vector<Vector> sample_directions(int dim, int m, std::uint64_t seed);

// Greedy centroid-linkage clustering in input order.
int count_clusters(const std::vector<Vector>& points, double delta);

// Structure-of-arrays block of uniform points in a box, for the sample
// indices [begin, begin + n). Lane j of sample i is coordinate j.
class UniformBlock {
 public:
  explicit UniformBlock(int dim);
  void fill(const CounterRng& rng, const Box& box, std::uint64_t begin, std::size_t n);
  const double* const* rows() const { return rows_.data(); }
  std::size_t size() const { return n_; }
  Vector point(std::size_t k) const;

 private:
  int dim_;
  std::size_t n_ = 0;
  std::vector<double> storage_;
  std::vector<const double*> rows_;
};

}  // namespace simtile
