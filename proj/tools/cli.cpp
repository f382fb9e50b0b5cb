#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

#include "simtile/constructions.hpp"
#include "simtile/errors.hpp"
#include "simtile/examples.hpp"
#include "simtile/random.hpp"
#include "simtile/sampling.hpp"
#include "simtile/serialize.hpp"
#include "simtile/slice.hpp"

namespace simtile::cli {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;

struct Options {
  int threads = 0;
  std::uint64_t seed = 0;

  std::string kind;
  int dim = 3;
  int corner = 0;
  std::string output;

  std::vector<std::string> inputs;
  std::int64_t samples = 1000000;
  double volume_gap = 0.01;
  double overlap = 0.01;
  int tile = 0;
  bool tile_set = false;
  std::int64_t interior_samples = 1000;
  double eps_max = 1.0;
  int probes = 4096;
  std::vector<double> target;
  double eps = 1e-3;
  int max_steps = 60;
  std::vector<int> tags;
  bool require_nondegenerate = false;
  std::vector<double> normal;
  double offset = 0.0;
  std::string cloud;
  int resolution = 256;
  int directions = 512;
  double delta = 1e-3;
};

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

std::size_t tile_index(const Options& o) {
  if (o.tile < 0) throw InvalidArgument("--tile must be >= 0");
  return static_cast<std::size_t>(o.tile);
}

void emit_tiling(const Options& o, const Tiling& t, Json& summary, std::ostream& out) {
  if (o.output.empty()) {
    summary["tiling"] = to_json(t);
  } else {
    write_tiling(o.output, t);
    summary["written"] = o.output;
  }
  summary["tiles"] = t.size();
  out << dump(summary);
}

int cmd_example(const Options& o, std::ostream& out) {
  Tiling t = [&] {
    if (o.kind == "cone-spindle") return cone_spindle_tiling(o.dim);
    if (o.kind == "quarter-square") return quarter_square_tiling(o.corner);
    if (o.kind == "rotated-fixture") return rotated_similar_tile_fixture();
    return cube_octant_tiling();
  }();
  Json summary;
  summary["example"] = o.kind;
  emit_tiling(o, t, summary, out);
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Tiling t = read_tiling(o.inputs.at(0));
  const ValidationReport r = validate_tiling(t, o.samples, o.seed, {o.volume_gap, o.overlap});
  out << dump(to_json(r));
  return r.covered && r.proper ? kOk : kInvalid;
}

int cmd_iterate(const Options& o, std::ostream& out) {
  const Tiling t = iterate_tiling(read_tiling(o.inputs.at(0)), tile_index(o));
  Json summary;
  emit_tiling(o, t, summary, out);
  return kOk;
}

int cmd_meet(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 2) throw InvalidArgument("meet takes exactly two tilings");
  const Tiling t = meet_tilings(read_tiling(o.inputs[0]), read_tiling(o.inputs[1]), o.interior_samples, o.seed);
  Json summary;
  emit_tiling(o, t, summary, out);
  return kOk;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  const NormalizeResult r =
      normalize_to_homothety(read_tiling(o.inputs.at(0)), tile_index(o), {o.eps_max, o.probes, o.seed});
  const Similarity& tag = *r.tiling.tiles()[r.tile_index].similarity_to_ambient;
  Json summary;
  summary["tile_index"] = r.tile_index;
  summary["ratio"] = tag.scale();
  summary["fixed_point"] = to_json(fixed_point(tag));
  summary["eps"] = r.eps;
  summary["radius"] = r.radius;
  summary["stretch"] = r.stretch;
  summary["depth"] = r.depth;
  summary["rotation_period"] = r.rotation_period;
  summary["interior_fixed_point"] = r.interior_fixed_point;
  emit_tiling(o, r.tiling, summary, out);
  return kOk;
}

int cmd_move(const Options& o, std::ostream& out) {
  std::vector<Tiling> tilings;
  for (const auto& p : o.inputs) tilings.push_back(read_tiling(p));
  const MoveResult r = move_fixed_point(tilings, to_vector(o.target), o.eps, o.max_steps, o.interior_samples);
  Json summary;
  summary["tile_index"] = r.tile_index;
  summary["fixed_point"] = to_json(r.fixed_point);
  summary["steps"] = r.steps;
  summary["corrected"] = r.corrected;
  emit_tiling(o, r.tiling, summary, out);
  return kOk;
}

int cmd_tip(const Options& o, std::ostream& out) {
  std::vector<Tiling> tilings;
  for (const auto& p : o.inputs) tilings.push_back(read_tiling(p));
  TipSimplex s;
  if (o.tags.empty()) {
    s = tip_simplex(tilings);
  } else {
    if (o.tags.size() != tilings.size()) throw InvalidArgument("--tags needs one index per tiling");
    std::vector<std::size_t> idx;
    for (int t : o.tags) {
      if (t < 0) throw InvalidArgument("--tags entries must be >= 0");
      idx.push_back(static_cast<std::size_t>(t));
    }
    s = tip_simplex(tilings, idx);
  }
  out << dump(to_json(s));
  return o.require_nondegenerate && !s.nondegenerate_for ? kInvalid : kOk;
}

int cmd_slice(const Options& o, std::ostream& out) {
  const Tiling t = read_tiling(o.inputs.at(0));
  const SliceResult r = slice_tiling(t, Hyperplane::from(to_vector(o.normal), o.offset), o.interior_samples, o.seed);
  if (!o.cloud.empty()) {
    std::ofstream f(o.cloud, std::ios::binary);
    if (!f) throw Error("cannot write '" + o.cloud + "'");
    write_cloud_csv(f, slice_cloud(r.tiling, o.resolution, o.seed), r.tiling.dim());
  }
  Json summary;
  summary["chart"] = to_json(r.chart);
  summary["proper"] = r.proper;
  summary["sources"] = r.sources;
  if (!o.cloud.empty()) summary["cloud"] = o.cloud;
  emit_tiling(o, r.tiling, summary, out);
  return kOk;
}

int cmd_extremal(const Options& o, std::ostream& out) {
  const Tiling t = read_tiling(o.inputs.at(0));
  const Body& body = o.tile_set ? t.tiles().at(tile_index(o)).body : t.ambient();
  const ExtremalEstimate e = estimate_extremal_points(body, o.directions, o.delta, o.seed);
  Json j;
  j["directions_sampled"] = e.directions_sampled;
  j["clusters"] = e.clusters;
  j["refined_clusters"] = e.refined_clusters;
  j["saturated"] = e.saturated;
  out << dump(j);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Tilings with tiles similar to the whole body", "simtile"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads for sampling loops (0 = default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "Seed for all randomized steps");

  auto* example = app.add_subcommand("example", "Write an example tiling");
  example->add_option("kind", o.kind)->required()->check(
      CLI::IsMember({"cone-spindle", "quarter-square", "rotated-fixture", "cube-octants"}));
  example->add_option("--dim", o.dim, "Dimension of the cone spindle");
  example->add_option("--corner", o.corner, "Tagged corner of the quarter square (0..3)");
  example->add_option("-o,--output", o.output);

  auto* validate = app.add_subcommand("validate", "Monte Carlo check of a tiling");
  validate->add_option("path", o.inputs)->required()->expected(1);
  validate->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  validate->add_option("--seed", o.seed);
  validate->add_option("--volume-gap", o.volume_gap);
  validate->add_option("--overlap", o.overlap);

  auto* iterate = app.add_subcommand("iterate", "Replace a similar tile by the scaled tiling");
  iterate->add_option("path", o.inputs)->required()->expected(1);
  iterate->add_option("--tile", o.tile)->required();
  iterate->add_option("-o,--output", o.output);

  auto* meet = app.add_subcommand("meet", "Pairwise intersections of two tilings");
  meet->add_option("paths", o.inputs)->required()->expected(2);
  meet->add_option("--interior-samples", o.interior_samples);
  meet->add_option("--seed", o.seed);
  meet->add_option("-o,--output", o.output);

  auto* normalize = app.add_subcommand("normalize", "Turn a similar tile into a homothetic one");
  normalize->add_option("path", o.inputs)->required()->expected(1);
  normalize->add_option("--tile", o.tile)->required();
  normalize->add_option("--eps-max", o.eps_max);
  normalize->add_option("--probes", o.probes);
  normalize->add_option("--seed", o.seed);
  normalize->add_option("-o,--output", o.output);

  auto* move = app.add_subcommand("move-fixpoint", "Move a homothetic tile's fixed point to a target");
  move->add_option("paths", o.inputs)->required()->expected(1, 64);
  move->add_option("--target", o.target)->required()->delimiter(',');
  move->add_option("--eps", o.eps)->required();
  move->add_option("--max-steps", o.max_steps);
  move->add_option("--interior-samples", o.interior_samples);
  move->add_option("-o,--output", o.output);

  auto* tip = app.add_subcommand("tip-simplex", "Fixed points of the designated tags");
  tip->add_option("paths", o.inputs)->required()->expected(1, 64);
  tip->add_option("--tags", o.tags, "Tile index per tiling")->delimiter(',');
  tip->add_flag("--require-nondegenerate", o.require_nondegenerate);

  auto* slice = app.add_subcommand("slice", "Induced tiling on a hyperplane");
  slice->add_option("path", o.inputs)->required()->expected(1);
  slice->add_option("--normal", o.normal)->required()->delimiter(',');
  slice->add_option("--offset", o.offset)->required();
  slice->add_option("--samples", o.interior_samples, "Interior search budget per tile");
  slice->add_option("--seed", o.seed);
  slice->add_option("-o,--output", o.output);
  slice->add_option("--cloud", o.cloud, "CSV of boundary points per slice tile");
  slice->add_option("--resolution", o.resolution)->check(CLI::PositiveNumber);

  auto* extremal = app.add_subcommand("extremal", "Support-witness cluster count");
  extremal->add_option("path", o.inputs)->required()->expected(1);
  extremal->add_option("--tile", o.tile)->each([&](const std::string&) { o.tile_set = true; });
  extremal->add_option("--directions", o.directions)->required()->check(CLI::PositiveNumber);
  extremal->add_option("--delta", o.delta)->required();
  extremal->add_option("--seed", o.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "simtile: " << e.what() << "\n";
    return kUsage;
  }

  if (o.threads > 0) set_thread_count(o.threads);
  try {
    if (example->parsed()) return cmd_example(o, out);
    if (validate->parsed()) return cmd_validate(o, out);
    if (iterate->parsed()) return cmd_iterate(o, out);
    if (meet->parsed()) return cmd_meet(o, out);
    if (normalize->parsed()) return cmd_normalize(o, out);
    if (move->parsed()) return cmd_move(o, out);
    if (tip->parsed()) return cmd_tip(o, out);
    if (slice->parsed()) return cmd_slice(o, out);
    if (extremal->parsed()) return cmd_extremal(o, out);
  } catch (const EmptySlice& e) {
    err << "simtile: empty slice: " << e.what() << "\n";
    return kInvalid;
  } catch (const DegenerateSlice& e) {
    err << "simtile: degenerate slice: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "simtile: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace simtile::cli
