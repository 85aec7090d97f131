#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "confplan/annulus_planner.hpp"
#include "confplan/braid.hpp"
#include "confplan/disc3_planner.hpp"
#include "confplan/io.hpp"
#include "confplan/probes.hpp"
#include "confplan/svg.hpp"

namespace confplan::cli {

namespace {

struct PlanArgs {
  std::string surface;
  std::string start;
  std::string goal;
  std::size_t samples = 1024;
  std::string svg;
  std::string json;
};

struct BraidArgs {
  int n = 0;
  std::string word;
  bool linking = false;
  std::optional<int> hub;
  std::string conjugate;
};

struct RandomArgs {
  std::string surface;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct PartitionArgs {
  std::string surface;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

bool write_file(const std::string& file, const std::string& text, std::ostream& err) {
  std::ofstream f(file);
  if (!f) {
    err << "error: cannot write '" << file << "'\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

template <class Move>
int report_plan(const PathPlan<Move>& path, const Configuration<typename Move::point_type>& x,
                const Configuration<typename Move::point_type>& y, const std::string& stratum, const PlanArgs& a,
                std::ostream& out, std::ostream& err) {
  Tolerances tol;
  tol.n_time_samples = std::max<std::size_t>(a.samples, 2);
  const auto v = validate_path(path, x, y, tol);
  out << "stratum: " << stratum << "\n";
  out << "segments: " << path.segments().size() << "\n";
  for (const auto& s : path.segments()) out << "  " << s.label << " (" << s.move.kind_name() << ")\n";
  out << "endpoints: " << (v.endpoints_ok ? "exact" : "MISMATCH") << "\n";
  out << "min separation: " << v.min_separation << " over " << v.samples << " samples\n";
  out << "max step displacement: " << v.max_step_displacement << "\n";
  out << "valid: " << (v.ok() ? "yes" : "no") << "\n";

  if (!a.json.empty() || !a.svg.empty()) {
    const auto sampled = io::sample(path, tol.n_time_samples);
    if (!a.json.empty() && !write_file(a.json, io::export_path(sampled, stratum, io::segments_json(path)).dump(1) + "\n", err))
      return kInputError;
    if (!a.svg.empty() && !write_file(a.svg, svg::render(sampled, stratum), err)) return kInputError;
  }
  return v.ok() ? kOk : kValidationFailure;
}

int run_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  Surface surface;
  io::ConfigDocument start, goal;
  try {
    surface = io::parse_surface(a.surface);
    start = io::read_config(a.start);
    goal = io::read_config(a.goal);
    if (start.surface != surface || goal.surface != surface)
      throw Error(ErrorCode::InvalidArgument, "configuration files do not match --surface");
    if (start.points.size() != goal.points.size())
      throw Error(ErrorCode::SizeMismatch, "start and goal differ in the number of points");
    if (surface == Surface::Disc && start.points.size() != 3)
      throw Error(ErrorCode::SizeMismatch, "the disc planner handles exactly three points");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  out << "surface: " << io::surface_name(surface) << "\n";
  out << "n: " << start.points.size() << "\n";
  if (surface == Surface::Annulus) {
    annulus::Config x, y;
    try {
      x = io::to_annulus(start);
      y = io::to_annulus(goal);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    }
    try {
      const auto p = annulus::plan(x, y);
      out << "iterations: " << p.trace.iterations << "\n";
      return report_plan(p.path, x, y, p.stratum.to_string(), a, out, err);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kValidationFailure;
    }
  }
  disc3::Config x, y;
  try {
    x = io::to_plane(start);
    y = io::to_plane(goal);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  try {
    const auto p = disc3::plan(x, y);
    return report_plan(p.path, x, y, p.stratum.to_string(), a, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

int run_braid(const BraidArgs& a, std::ostream& out, std::ostream& err) {
  braid::BraidWord b, g;
  try {
    if (a.n < 1) throw Error(ErrorCode::InvalidArgument, "--n must be positive");
    b = braid::BraidWord::parse(a.n, a.word);
    if (!a.conjugate.empty()) g = braid::BraidWord::parse(a.n, a.conjugate);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const auto perm = braid::permutation_of(b);
  out << "word: " << b.to_string() << "\n";
  out << "strands: " << b.strands() << "\n";
  out << "permutation:";
  for (int p : perm) out << ' ' << p + 1;
  out << "\n";
  const bool pure = braid::is_pure(b);
  out << "pure: " << (pure ? "yes" : "no") << "\n";

  const bool needs_pure = a.linking || a.hub || !a.conjugate.empty();
  if (needs_pure && !pure) {
    err << "error: " << Error(ErrorCode::NotPure, "linking numbers need a pure braid").what() << "\n";
    return kNotPure;
  }
  try {
    if (a.linking) {
      const auto m = braid::linking_matrix(b);
      out << "linking: " << m.to_string() << "\n";
      out << "commutator subgroup: " << (m.is_zero() ? "yes" : "no") << "\n";
    }
    if (a.hub) out << "hub(" << *a.hub << "): " << (braid::hub_property(b, *a.hub) ? "true" : "false") << "\n";
    if (!a.conjugate.empty()) {
      const auto img = braid::conjugation_image(b, g);
      out << "conjugate: " << braid::conjugate(b, g).to_string() << "\n";
      out << "linking of conjugate: " << img.direct.to_string() << "\n";
      out << "relabeled linking: " << img.relabeled.to_string() << "\n";
      out << "conjugation check: " << (img.agree() ? "agree" : "DISAGREE") << "\n";
      if (!img.agree()) return kValidationFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

int run_random(const RandomArgs& a, std::ostream& out, std::ostream& err) {
  io::ConfigDocument doc;
  try {
    const Surface s = io::parse_surface(a.surface);
    if (a.n < 1) throw Error(ErrorCode::InvalidArgument, "--n must be positive");
    doc = s == Surface::Annulus ? io::from_configuration(random_annulus_configuration(a.n, a.seed))
                                : io::from_configuration(random_disc_configuration(a.n, a.seed));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const std::string text = io::write_config(doc);
  if (a.out.empty()) {
    out << text;
    return kOk;
  }
  return write_file(a.out, text, err) ? kOk : kInputError;
}

int run_partition(const PartitionArgs& a, std::ostream& out, std::ostream& err) {
  Surface s;
  try {
    s = io::parse_surface(a.surface);
    if (a.n < 1) throw Error(ErrorCode::InvalidArgument, "--n must be positive");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const std::size_t n = s == Surface::Disc ? 3 : a.n;
  const auto rep = probes::partition_check(s, n, a.trials, a.seed);
  out << "surface: " << io::surface_name(s) << "\n";
  out << "n: " << n << "\n";
  out << "trials: " << rep.trials << "\n";
  for (const auto& [label, count] : rep.histogram) out << "  " << label << ": " << count << "\n";
  out << "distinct labels: " << rep.distinct_labels() << "\n";
  out << "unlabeled: " << rep.unlabeled << "\n";
  if (s == Surface::Annulus) out << "out of range: " << rep.out_of_range << "\n";
  return rep.unlabeled == 0 && rep.out_of_range == 0 ? kOk : kValidationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Motion planners on configuration spaces of the annulus and the disc"};
  app.name("confplan");
  app.require_subcommand(1);

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Plan a path between two configurations");
  plan->add_option("--surface", pa.surface, "annulus | disc")->required();
  plan->add_option("--start", pa.start, "start configuration (JSON)")->required();
  plan->add_option("--goal", pa.goal, "goal configuration (JSON)")->required();
  plan->add_option("--samples", pa.samples, "validation and export samples")->check(CLI::Range(2, 1 << 24));
  plan->add_option("--svg", pa.svg, "write a trajectory plot");
  plan->add_option("--json", pa.json, "write the sampled path and segment list");

  BraidArgs ba;
  auto* braid_cmd = app.add_subcommand("braid", "Braid word invariants");
  braid_cmd->add_option("--n", ba.n, "number of strands")->required();
  braid_cmd->add_option("--word", ba.word, "word such as \"s1 s2^-1 s1\"")->required();
  braid_cmd->add_flag("--linking", ba.linking, "print the linking matrix");
  braid_cmd->add_option("--hub", ba.hub, "test the hub property for k");
  braid_cmd->add_option("--conjugate", ba.conjugate, "check the conjugation relabeling against this word");

  RandomArgs ra;
  auto* random = app.add_subcommand("random", "Seeded random configuration");
  random->add_option("--surface", ra.surface, "annulus | disc")->required();
  random->add_option("--n", ra.n, "number of points")->required();
  random->add_option("--seed", ra.seed, "seed")->required();
  random->add_option("--out", ra.out, "output file (default: stdout)");

  PartitionArgs qa;
  auto* partition = app.add_subcommand("partition", "Stratum histogram over random pairs");
  partition->add_option("--surface", qa.surface, "annulus | disc")->required();
  partition->add_option("--n", qa.n, "number of points (disc: 3)")->default_val(3);
  partition->add_option("--trials", qa.trials, "number of pairs")->default_val(10000);
  partition->add_option("--seed", qa.seed, "seed")->default_val(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (plan->parsed()) return run_plan(pa, out, err);
  if (braid_cmd->parsed()) return run_braid(ba, out, err);
  if (random->parsed()) return run_random(ra, out, err);
  return run_partition(qa, out, err);
}

}  // namespace confplan::cli
