// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "simtile/constructions.hpp"
#include "simtile/examples.hpp"
#include "simtile/random.hpp"
#include "simtile/sampling.hpp"
#include "simtile/serialize.hpp"
#include "simtile/slice.hpp"

using namespace simtile;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  failures += !o.pass;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " --" << o.detail.str()
            << std::endl;
}

// --- criterion 6 oracles: polytopes whose vertex count is known by construction

Matrix random_rotation(int n, const CounterRng& rng, std::uint64_t stream) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal(stream * 100 + i, j);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, n);
}

// Box with jittered side lengths, rotated and shifted: 2^n vertices.
Body perturbed_box(int n, const CounterRng& rng, std::uint64_t stream) {
  const Matrix R = random_rotation(n, rng, stream);
  std::vector<Halfspace> hs;
  for (int j = 0; j < n; ++j) {
    const Vector u = R.col(j);
    hs.push_back(Halfspace::from(u, 0.5 + 0.3 * rng.uniform(stream, 10 + j)));
    hs.push_back(Halfspace::from(-u, 0.5 + 0.3 * rng.uniform(stream, 20 + j)));
  }
  return Body::polytope(std::move(hs));
}

// Simplex on jittered regular-ish vertices: n + 1 vertices.
Body random_simplex(int n, const CounterRng& rng, std::uint64_t stream) {
  std::vector<Vector> v;
  for (int i = 0; i <= n; ++i) {
    Vector p = Vector::Zero(n);
    if (i < n) p[i] = 1.0;
    else p = Vector::Constant(n, -0.6);
    for (int j = 0; j < n; ++j) p[j] += 0.15 * (rng.uniform(stream * 50 + i, j) - 0.5);
    v.push_back(p);
  }
  const Matrix R = random_rotation(n, rng, stream + 7);
  for (auto& p : v) p = R * p;
  std::vector<Halfspace> hs;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<Vector> face;
    for (int i = 0; i <= n; ++i) {
      if (i != skip) face.push_back(v[i]);
    }
    Matrix d(n - 1, n);
    for (int k = 1; k < n; ++k) d.row(k - 1) = (face[k] - face[0]).transpose();
    Eigen::FullPivLU<Matrix> lu(d);
    Vector normal = lu.kernel().col(0).normalized();
    double offset = normal.dot(face[0]);
    if (normal.dot(v[skip]) > offset) {
      normal = -normal;
      offset = -offset;
    }
    hs.push_back(Halfspace::from(normal, offset));
  }
  return Body::polytope(std::move(hs));
}

// --- criterion 7 helpers

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_cli(const std::string& args, const fs::path& cwd, int* code) {
  const std::string cmd = "cd '" + cwd.string() + "' && '" + std::string(SIMTILE_CLI_PATH) + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

}  // namespace

int main() {
  report(1, "sharpness family validity (n = 3..6, 1e6 samples) and volume identity for n = 3", [](Outcome& o) {
    for (int n = 3; n <= 6; ++n) {
      const auto t0 = Clock::now();
      const Tiling t = cone_spindle_tiling(n);
      const ValidationReport r = validate_tiling(t, 1000000, 1000 + n);
      const double secs = seconds_since(t0);
      o.detail << " n=" << n << " gap=" << r.volume_gap << " overlap=" << r.max_overlap_fraction
               << " orphans=" << r.orphan_points << " t=" << secs << "s;";
      o.require(r.covered, "covered n=" + std::to_string(n));
      o.require(r.volume_gap < 0.01, "volume_gap n=" + std::to_string(n));
      o.require(r.max_overlap_fraction < 0.01, "overlap n=" + std::to_string(n));
      o.require(secs < 30.0, "runtime n=" + std::to_string(n));
    }
    const Tiling t3 = cone_spindle_tiling(3);
    double sum = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < t3.size(); ++i) {
      const VolumeEstimate v = volume(t3.tiles()[i].body, 1000000, 77 + i);
      sum += v.value;
      var += v.std_error * v.std_error;
    }
    const double se = std::sqrt(var);
    const double exact = std::numbers::pi / 3.0;
    o.detail << " sum_vol=" << sum << " pi/3=" << exact << " se=" << se;
    o.require(std::abs(sum - exact) < 3.0 * se, "volume identity within 3 se");
  });

  report(2, "tip-simplex dimension law", [](Outcome& o) {
    for (int n = 3; n <= 6; ++n) {
      const TipSimplex s = tip_simplex(designated_tilings(cone_spindle_tiling(n)));
      o.detail << " n=" << n << " dim=" << s.affine_dim << (s.nondegenerate_for ? " nondeg" : " deg") << ";";
      o.require(s.affine_dim == n - 3, "affine_dim n-3 at n=" + std::to_string(n));
      o.require(!s.nondegenerate_for, "nondegenerate_for absent at n=" + std::to_string(n));
    }
    const TipSimplex q = tip_simplex({quarter_square_tiling(0)});
    o.detail << " quarter-square nondegenerate_for=" << (q.nondegenerate_for ? *q.nondegenerate_for : -1) << ";";
    o.require(q.nondegenerate_for == 2, "quarter-square 2-D case");
    const TipSimplex c = tip_simplex(designated_tilings(cube_octant_tiling()));
    o.detail << " cube-octants dim=" << c.affine_dim
             << " nondegenerate_for=" << (c.nondegenerate_for ? *c.nondegenerate_for : -1);
    o.require(c.affine_dim == 1 && c.nondegenerate_for == 3, "synthetic 3-D fixture");
  });

  report(3, "homothety normalization of the rotated fixture", [](Outcome& o) {
    const Tiling t = rotated_similar_tile_fixture();
    const auto t0 = Clock::now();
    const NormalizeResult r = normalize_to_homothety(t, 0);
    const double secs = seconds_since(t0);
    const Similarity& tag = *r.tiling.tiles()[r.tile_index].similarity_to_ambient;
    const double rot_err = max_abs_diff(tag.rotation(), Matrix::Identity(2, 2));
    const double fp_err = (fixed_point(tag) - fixed_point(*t.tiles()[0].similarity_to_ambient)).norm();
    const ValidationReport before = validate_tiling(t, 1000000, 5);
    const ValidationReport after = validate_tiling(r.tiling, 1000000, 5);
    o.detail << " rotation_err=" << rot_err << " ratio=" << tag.scale() << " fixed_point_err=" << fp_err
             << " depth=" << r.depth << " period=" << r.rotation_period << " tiles=" << r.tiling.size()
             << " covered=" << after.covered << " t=" << secs << "s";
    o.require(rot_err < 1e-8, "rotation = I");
    o.require(tag.scale() > 0.0 && tag.scale() < 1.0, "ratio in (0,1)");
    o.require(fp_err < 1e-7, "fixed point displacement");
    o.require(before.covered && after.covered, "re-validates");
    o.require(secs < 5.0, "runtime");
  });

  report(4, "fixed-point relocation on the two-corner square fixtures", [](Outcome& o) {
    const std::vector<Tiling> anchors = {quarter_square_tiling(0), quarter_square_tiling(3)};
    const CounterRng rng(2024);
    int reached = 0;
    int max_steps = 0;
    for (int i = 0; i < 50; ++i) {
      const double s = rng.uniform(i, 0);
      const Vector target = Vector::Constant(2, s);
      const MoveResult r = move_fixed_point(anchors, target, 1e-3, 60);
      max_steps = std::max(max_steps, r.steps);
      const Similarity& tag = *r.tiling.tiles()[r.tile_index].similarity_to_ambient;
      reached += (r.fixed_point - target).norm() < 1e-3 && r.steps <= 60 && tag.is_homothety(1e-8) &&
                 tag.scale() > 0.0 && tag.scale() < 1.0;
    }
    o.detail << " reached=" << reached << "/50 max_steps=" << max_steps << ";";
    o.require(reached == 50, "all 50 targets");
    const Vector third = Vector::Constant(2, 1.0 / 3.0);
    const MoveResult r = move_fixed_point(anchors, third, 1e-9, 60);
    // Closed form for f1 o f2: ((1 - l1) p1 + l1 (1 - l2) p2) / (1 - l1 l2).
    const Vector oracle = (0.5 * Vector::Zero(2) + 0.25 * Vector::Ones(2)) / 0.75;
    const double err = (r.fixed_point - oracle).norm();
    o.detail << " (1/3,1/3): steps=" << r.steps << " err=" << err;
    o.require(r.steps == 1 && err < 1e-9 && (oracle - third).norm() < 1e-15, "(1/3,1/3) in one step");
  });

  report(5, "slice consistency on cone_spindle_tiling(4) through the tip midpoint", [](Outcome& o) {
    const Tiling t = cone_spindle_tiling(4);
    Vector mid(4);
    mid << 0, 0, 0.5, 0.5;
    const CounterRng rng(55);
    int validated = 0;
    int tagged_checks = 0;
    double worst_fp = 0.0;
    double worst_overlap = 0.0;
    auto check_plane = [&](const Hyperplane& h, std::uint64_t seed) {
      const SliceResult r = slice_tiling(t, h, 1000, seed);
      const ValidationReport v = validate_tiling(r.tiling, 200000, seed, {0.01, 0.02});
      worst_overlap = std::max(worst_overlap, v.max_overlap_fraction);
      bool ok = v.covered && v.max_overlap_fraction < 0.02;
      // Every tag whose fixed point lies on H must reappear as a tagged slice tile.
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& tag = t.tiles()[i].similarity_to_ambient;
        if (!tag || std::abs(r.chart.hyperplane().signed_distance(fixed_point(*tag))) > 1e-9) continue;
        bool found = false;
        for (std::size_t k = 0; k < r.tiling.size(); ++k) {
          if (r.sources.size() <= k || r.sources[k] != i || !r.tiling.tiles()[k].tagged()) continue;
          const double err = (fixed_point(*r.tiling.tiles()[k].similarity_to_ambient) -
                              r.chart.to_chart(fixed_point(*tag))).norm();
          worst_fp = std::max(worst_fp, err);
          found = err < 1e-8;
        }
        ++tagged_checks;
        ok = ok && found;
      }
      return ok;
    };
    for (int i = 0; i < 20; ++i) {
      Vector n(4);
      for (int j = 0; j < 4; ++j) n[j] = rng.normal(i, j);
      validated += check_plane(Hyperplane::through(n, mid), 300 + i);
    }
    // Planes containing the tip segment exercise the tagged case.
    int containing = 0;
    for (int i = 0; i < 5; ++i) {
      Vector n(4);
      double rho = 0.0;
      double c = 0.0;
      for (std::uint64_t k = 0;; ++k) {
        n << rng.normal(100 + i, 4 * k), rng.normal(100 + i, 4 * k + 1), 0, 0;
        c = rng.normal(100 + i, 4 * k + 2);
        rho = n.head(2).norm();
        if (rho > 1.1 * std::abs(c)) break;
      }
      n[2] = c;
      n[3] = c;
      containing += check_plane(Hyperplane::through(n, mid), 400 + i);
    }
    o.detail << " generic validated=" << validated << "/20 containing validated=" << containing
             << "/5 tagged_checks=" << tagged_checks << " worst_fixed_point_err=" << worst_fp
             << " worst_overlap=" << worst_overlap;
    o.require(validated == 20, "generic planes validate");
    o.require(containing == 5 && tagged_checks >= 10, "tagged homothetic slice tiles");
  });

  report(6, "polytope-vs-curved discrimination by extremal-point saturation", [](Outcome& o) {
    const CounterRng rng(606);
    int good = 0;
    for (int i = 0; i < 10; ++i) {
      const int n = 2 + i % 3;
      const bool box = i % 2 == 0;
      const Body p = box ? perturbed_box(n, rng, i) : random_simplex(n, rng, i);
      const int expected = box ? (1 << n) : n + 1;
      const ExtremalEstimate e = estimate_extremal_points(p, 512, 1e-3, 60 + i);
      o.detail << " " << (box ? "box" : "simplex") << n << ":" << e.clusters << "/" << expected
               << (e.saturated ? "s" : "u") << ";";
      good += e.saturated && e.clusters == expected;
    }
    o.require(good == 10, "10 random polytopes saturate with exact vertex counts");
    const Body disk = Body::cone_spindle(2);
    const Body cone = Body::cone_spindle(3);
    for (int m : {512, 1024}) {
      const ExtremalEstimate d = estimate_extremal_points(disk, m, 1e-3, 0);
      const ExtremalEstimate c = estimate_extremal_points(cone, m, 1e-3, 0);
      o.detail << " disk " << d.clusters << "->" << d.refined_clusters << " cone " << c.clusters << "->"
               << c.refined_clusters << ";";
      o.require(!d.saturated, "disk unsaturated at " + std::to_string(m));
      o.require(!c.saturated, "cone unsaturated at " + std::to_string(m));
    }
  });

  report(7, "determinism of every seeded command across runs and thread counts", [](Outcome& o) {
    const fs::path root = fs::temp_directory_path() / "simtile_acceptance";
    fs::remove_all(root);
    const std::vector<std::string> commands = {
        "example cone-spindle --dim 4 -o t.json",
        "example quarter-square --corner 0 -o q0.json",
        "example quarter-square --corner 3 -o q3.json",
        "example rotated-fixture -o r.json",
        "validate t.json --samples 300000 --seed 11",
        "iterate q0.json --tile 0 -o it.json",
        "meet q0.json q3.json -o m.json",
        "normalize r.json --tile 0 -o n.json",
        "move-fixpoint q0.json q3.json --target 0.61,0.61 --eps 1e-3 -o mv.json",
        "tip-simplex t.json t.json --tags 0,1",
        "slice t.json --normal 0.8,-0.3,0.5,0.2 --offset 0.35 -o s.json --cloud s.csv --resolution 64",
        "extremal t.json --tile 0 --directions 256 --delta 1e-3 --seed 4",
    };
    const std::vector<std::string> variants = {"", "", "--threads 1 ", "--threads 4 "};
    std::vector<std::string> transcripts;
    for (std::size_t v = 0; v < variants.size(); ++v) {
      const fs::path dir = root / std::to_string(v);
      fs::create_directories(dir);
      std::string transcript;
      for (const auto& c : commands) {
        int code = 0;
        transcript += c + "\n" + run_cli(variants[v] + c, dir, &code) + "exit " + std::to_string(code) + "\n";
        o.require(code == 0, "'" + c + "' exited " + std::to_string(code));
      }
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) transcript += f.filename().string() + "\n" + slurp(f);
      transcripts.push_back(std::move(transcript));
    }
    bool same = true;
    for (const auto& t : transcripts) same = same && t == transcripts.front();
    o.detail << " commands=" << commands.size() << " runs=" << variants.size()
             << " transcript_bytes=" << transcripts.front().size();
    o.require(same, "byte-identical transcripts");
    fs::remove_all(root);
  });

  return failures == 0 ? 0 : 1;
}
