#include "simtile/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simtile/errors.hpp"
#include "simtile/kernels.hpp"
#include "simtile/random.hpp"
#include "simtile/sampling.hpp"

namespace simtile {

Tiling::Tiling(Body ambient, std::vector<Tile> tiles)
    : ambient_(std::move(ambient)), tiles_(std::move(tiles)) {
  if (tiles_.empty()) throw InvalidArgument("tiling needs at least one tile");
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    const Tile& t = tiles_[i];
    require_same_dim(t.body.dim(), ambient_.dim(), "tile");
    if (!t.tagged()) continue;
    const Similarity& f = *t.similarity_to_ambient;
    require_same_dim(f.dim(), ambient_.dim(), "tile tag");
    if (!(f.scale() < 1.0)) {
      throw InvalidArgument("tile " + std::to_string(i) + ": similarity ratio must be < 1");
    }
    if (!t.body.structurally_equal(Body::image(f, ambient_), 1e-9)) {
      throw InvalidArgument("tile " + std::to_string(i) +
                            ": body is not the image of the ambient under its tag");
    }
  }
}

Tiling Tiling::trivial(const Body& ambient) { return Tiling(ambient, {Tile{ambient, std::nullopt}}); }

bool Tiling::is_trivial() const {
  return tiles_.size() == 1 && tiles_.front().body.structurally_equal(ambient_);
}

std::optional<std::size_t> Tiling::first_tagged() const {
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    if (tiles_[i].tagged()) return i;
  }
  return std::nullopt;
}

namespace {

struct ChunkTally {
  std::int64_t ambient_hits = 0;
  std::int64_t ambient_inside = 0;
  std::int64_t orphans = 0;
  std::vector<std::int64_t> tile_hits;
  std::vector<std::int64_t> pair_inside;  // upper triangle, i < j
};

}  // namespace

ValidationReport validate_tiling(const Tiling& tiling, std::int64_t samples, std::uint64_t seed,
                                 const ValidationThresholds& thresholds, double tol) {
  if (samples < 1000) throw InvalidArgument("validate_tiling: samples must be >= 1000");
  const std::size_t m = tiling.size();
  Box box = tiling.ambient().bounding_box();
  for (const auto& t : tiling.tiles()) box = box.hull(t.body.bounding_box());

  const CounterRng rng(seed);
  const std::size_t total = static_cast<std::size_t>(samples);
  std::vector<ChunkTally> tallies(chunk_count(total, kBlockSize));
  parallel_chunks(total, kBlockSize, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    const kernels::KernelTable& k = kernels::active();
    const std::size_t n = end - begin;
    UniformBlock block(tiling.dim());
    block.fill(rng, box, begin, n);
    double margin[kBlockSize];
    std::uint8_t ambient_code[kBlockSize];
    std::vector<std::uint8_t> tile_code(m * kBlockSize);
    tiling.ambient().margins(block.rows(), n, margin);
    k.classify(margin, tol, ambient_code, n);
    for (std::size_t i = 0; i < m; ++i) {
      tiling.tiles()[i].body.margins(block.rows(), n, margin);
      k.classify(margin, tol, tile_code.data() + i * kBlockSize, n);
    }
    ChunkTally tally;
    tally.tile_hits.assign(m, 0);
    tally.pair_inside.assign(m * m, 0);
    std::vector<std::size_t> inside;
    for (std::size_t s = 0; s < n; ++s) {
      bool in_some_tile = false;
      inside.clear();
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint8_t c = tile_code[i * kBlockSize + s];
        if (c != 2) {
          ++tally.tile_hits[i];
          in_some_tile = true;
        }
        if (c == 0) inside.push_back(i);
      }
      if (ambient_code[s] != 2) ++tally.ambient_hits;
      if (ambient_code[s] == 0) {
        ++tally.ambient_inside;
        if (!in_some_tile) ++tally.orphans;
        for (std::size_t a = 0; a < inside.size(); ++a) {
          for (std::size_t b = a + 1; b < inside.size(); ++b) ++tally.pair_inside[inside[a] * m + inside[b]];
        }
      }
    }
    tallies[chunk] = std::move(tally);
  });

  ChunkTally sum;
  sum.tile_hits.assign(m, 0);
  sum.pair_inside.assign(m * m, 0);
  for (const auto& t : tallies) {
    sum.ambient_hits += t.ambient_hits;
    sum.ambient_inside += t.ambient_inside;
    sum.orphans += t.orphans;
    for (std::size_t i = 0; i < m; ++i) sum.tile_hits[i] += t.tile_hits[i];
    for (std::size_t i = 0; i < m * m; ++i) sum.pair_inside[i] += t.pair_inside[i];
  }

  ValidationReport r;
  r.seed = seed;
  r.samples = samples;
  r.proper = tiling.proper();
  r.orphan_points = sum.orphans;
  std::int64_t tile_total = 0;
  for (auto h : sum.tile_hits) tile_total += h;
  if (sum.ambient_hits > 0) {
    r.volume_gap = std::abs(static_cast<double>(sum.ambient_hits - tile_total)) /
                   static_cast<double>(sum.ambient_hits);
  } else {
    r.volume_gap = tile_total > 0 ? 1.0 : 0.0;
  }
  std::int64_t worst_pair = 0;
  for (auto c : sum.pair_inside) worst_pair = std::max(worst_pair, c);
  r.max_overlap_fraction =
      sum.ambient_inside > 0 ? static_cast<double>(worst_pair) / static_cast<double>(sum.ambient_inside)
                             : 0.0;
  r.covered = sum.ambient_hits > 0 && r.volume_gap < thresholds.volume_gap &&
              r.orphan_points == 0 && r.max_overlap_fraction < thresholds.overlap;
  return r;
}

}  // namespace simtile
