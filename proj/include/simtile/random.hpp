#pragma once

#include <cstdint>
#include <functional>

namespace simtile {

// Counter-based random stream: the value for (seed, index, lane) is a pure
// function of its arguments, so any partition of the index range across
// workers reproduces the sequential draw exactly.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t bits(std::uint64_t index, std::uint64_t lane) const {
    return mix(key_ ^ mix(index * 0x9e3779b97f4a7c15ULL + lane));
  }
  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t index, std::uint64_t lane) const {
    return static_cast<double>(bits(index, lane) >> 11) * 0x1.0p-53;
  }
  // Standard normal via Box-Muller on two derived lanes.
  double normal(std::uint64_t index, std::uint64_t lane) const;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
};

// Worker count for sample loops. 0 means "hardware concurrency". The
// SIMTILE_THREADS environment variable seeds the default.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(chunk_begin, chunk_end, chunk_id) over a fixed chunking of
// [0, total) that depends only on `total` and `chunk`, never on the worker
// count. Chunks are distributed across workers; callers reduce per-chunk
// results in chunk order.
std::size_t chunk_count(std::size_t total, std::size_t chunk);
void parallel_chunks(std::size_t total, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace simtile
