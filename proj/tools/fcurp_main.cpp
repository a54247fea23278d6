#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fcurp/bench.hpp"
#include "fcurp/bnb_backend.hpp"
#include "fcurp/errors.hpp"
#include "fcurp/heuristic.hpp"
#include "fcurp/instancegen.hpp"
#include "fcurp/json_io.hpp"
#include "fcurp/milp_model.hpp"
#include "fcurp/oracle.hpp"
#include "fcurp/render.hpp"
#include "fcurp/site_selection.hpp"
#include "fcurp/solve.hpp"
#include "fcurp/verify.hpp"

namespace fs = std::filesystem;
using namespace fcurp;

namespace {

struct StageOne {
  DiscretizedRoad dr;
  SiteSelection sel;
  RoutingGraph graph;
};

// Runs stage one, or rebuilds it from a previously saved site set.
StageOne stage_one(const Instance& in, const std::string& sites_path) {
  StageOne s{discretize_road(in), {}, {}};
  s.sel = sites_path.empty()
              ? select_sites(s.dr, in.targets)
              : selection_from_site_set(s.dr, load_site_set(sites_path), in.targets);
  s.graph = make_routing_graph(in, s.dr, s.sel);
  return s;
}

std::string summary_line(const RouteSolution& sol) {
  std::ostringstream os;
  os.precision(10);  // costs must survive a parse round trip
  os << "status=" << to_string(sol.status) << " producer=" << sol.producer;
  if (sol.status == SolveStatus::Optimal || sol.status == SolveStatus::Feasible) {
    os << " cost=" << sol.cost;
    double g = gap_percent(sol.cost, sol.bound);
    if (std::isfinite(g)) os << " gap=" << g << '%';
  }
  if (sol.bound) os << " bound=" << *sol.bound;
  os << " time=" << sol.wall_time_s << "s cuts=" << sol.cuts_added;
  return os.str();
}

int exit_for(const RouteSolution& sol) {
  return sol.status == SolveStatus::Optimal || sol.status == SolveStatus::Feasible ? 0 : 1;
}

// Recovers grid size and network name from generator-style file names
// ({kind}-n{grid}-...); anything else counts its targets and reads "custom".
void tag_from_filename(BenchInstance& bi, const std::string& stem) {
  bi.network = "custom";
  bi.grid_n = static_cast<int>(std::lround(std::sqrt(double(bi.instance.targets.size()))));
  std::size_t dash = stem.find('-');
  if (dash == std::string::npos || dash + 2 >= stem.size() || stem[dash + 1] != 'n') return;
  std::size_t end = stem.find('-', dash + 1);
  try {
    int grid = std::stoi(stem.substr(dash + 2, end - dash - 2));
    bi.network = stem.substr(0, dash);
    bi.grid_n = grid;
  } catch (const std::exception&) {
  }
}

struct GenArgs {
  GenConfig cfg;
  std::string out = ".";
};

int cmd_gen(const GenArgs& a) {
  for (const std::string& path : write_suite(a.cfg, a.out)) std::cout << path << '\n';
  return 0;
}

int cmd_sites(const std::string& instance, const std::string& out) {
  Instance in = load_instance(instance);
  DiscretizedRoad dr = discretize_road(in);
  SiteSelection sel = select_sites(dr, in.targets);
  SiteSetFile sf = make_site_set(dr, sel);
  if (!out.empty()) save_site_set(sf, out);
  std::cout << "selected " << sf.sites.size() << " of " << dr.sites.size()
            << " candidate sites\n";
  return 0;
}

struct SolveArgs {
  std::string instance;
  std::string sites;
  std::string out;
  std::string formulation = "node";
  bool warm = false;
  double time_limit = 7200;
  double gap = 0.01;
};

int cmd_solve(const SolveArgs& a) {
  Instance in = load_instance(a.instance);
  StageOne s = stage_one(in, a.sites);
  std::optional<RouteSolution> warm;
  if (a.warm) warm = heuristic_solve(s.graph, in.U, in.R);
  MilpModel model = a.formulation == "edge" ? build_edge_model(s.graph, in.U, in.R)
                                            : build_node_model(s.graph, in.U, in.R);
  BnbBackend backend;
  RouteSolution sol =
      solve_with_cuts(model, backend, a.time_limit, warm ? &*warm : nullptr, a.gap);
  if (!a.out.empty()) save_solution(sol, a.out);
  std::cout << summary_line(sol) << '\n';
  return exit_for(sol);
}

int cmd_heuristic(const SolveArgs& a) {
  Instance in = load_instance(a.instance);
  StageOne s = stage_one(in, a.sites);
  RouteSolution sol = heuristic_solve(s.graph, in.U, in.R);
  if (!a.out.empty()) save_solution(sol, a.out);
  std::cout << summary_line(sol) << '\n';
  return exit_for(sol);
}

int cmd_oracle(const SolveArgs& a) {
  Instance in = load_instance(a.instance);
  StageOne s = stage_one(in, a.sites);
  RouteSolution sol = brute_force_opt(s.graph, in.U, in.R);
  if (!a.out.empty()) save_solution(sol, a.out);
  std::cout << summary_line(sol) << '\n';
  return exit_for(sol);
}

struct VerifyArgs {
  std::string instance;
  std::string sites;
  std::string solution;
};

int cmd_verify(const VerifyArgs& a) {
  Instance in = load_instance(a.instance);
  StageOne s = stage_one(in, a.sites);
  RouteSolution sol = load_solution(a.solution);
  VerificationReport rep = verify_solution(in, s.dr, s.sel, sol);
  if (rep.ok()) {
    std::cout << "OK: solution verified, cost " << sol.cost << '\n';
    return 0;
  }
  for (const std::string& v : rep.violations) std::cerr << "violation: " << v << '\n';
  return 1;
}

struct BenchArgs {
  std::vector<std::string> files;
  std::string dir;
  std::vector<std::string> strategies;
  std::string out;
  std::string summary;
  std::string external_dir;
  double time_limit = 7200;
  double gap = 0.01;
  int workers = 1;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<std::string> files = a.files;
  if (!a.dir.empty()) {
    std::vector<std::string> found;
    for (const auto& entry : fs::directory_iterator(a.dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        found.push_back(entry.path().string());
    std::sort(found.begin(), found.end());
    files.insert(files.end(), found.begin(), found.end());
  }
  if (files.empty()) {
    std::cerr << "bench requires at least one instance file or --dir\n";
    return 2;
  }
  std::vector<BenchInstance> instances;
  instances.reserve(files.size());
  for (const std::string& f : files) {
    BenchInstance bi;
    bi.id = fs::path(f).filename().string();
    bi.instance = load_instance(f);
    tag_from_filename(bi, fs::path(f).stem().string());
    if (!a.external_dir.empty()) {
      fs::path ext = fs::path(a.external_dir) / (fs::path(f).stem().string() + ".solution.json");
      if (fs::exists(ext)) bi.external_solution = ext.string();
    }
    instances.push_back(std::move(bi));
  }
  std::vector<BenchRecord> records =
      run_suite(instances, a.strategies, a.time_limit, a.gap, a.workers);
  std::string csv = records_to_csv(records);
  if (a.out.empty())
    std::cout << csv;
  else
    write_file(a.out, csv);
  if (!a.summary.empty()) write_file(a.summary, aggregate_to_csv(aggregate(records)));
  return 0;
}

struct RenderArgs {
  std::string instance;
  std::string sites;
  std::string solution;
  std::string out;
  double scale = 32;
};

int cmd_render(const RenderArgs& a) {
  Instance in = load_instance(a.instance);
  std::optional<SiteSetFile> sf;
  if (!a.sites.empty()) sf = load_site_set(a.sites);
  std::optional<RouteSolution> sol;
  if (!a.solution.empty()) sol = load_solution(a.solution);
  RenderStyle style;
  style.scale = a.scale;
  write_file(a.out, render_svg(in, sf ? &*sf : nullptr, sol ? &*sol : nullptr, style));
  std::cout << "wrote " << a.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planning toolkit for fuel-constrained UAV routing with a mobile refueling "
               "station"};
  app.require_subcommand(1);
  int code = 0;

  GenArgs gen;
  auto* cgen = app.add_subcommand("gen", "Generate seeded instance files");
  cgen->add_option("--out", gen.out, "Output directory")->capture_default_str();
  cgen->add_option("--grid", gen.cfg.grid_n, "Targets form a grid x grid layout")
      ->check(CLI::Range(1, 50))
      ->capture_default_str();
  cgen->add_option("--env", gen.cfg.env_side, "Environment side, km")->capture_default_str();
  cgen->add_option("-U,--fuel", gen.cfg.U, "UAV travel budget per sortie, km")
      ->capture_default_str();
  cgen->add_option("-R,--rv-range", gen.cfg.R, "RV road travel per sortie, km")
      ->capture_default_str();
  cgen->add_option("--delta", gen.cfg.delta, "Road discretization step, km")
      ->capture_default_str();
  cgen->add_option("--network", gen.cfg.network, "Road network shape")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, NetworkKind>{{"dense", NetworkKind::Dense},
                                             {"sparse", NetworkKind::Sparse}}))
      ->capture_default_str();
  cgen->add_option("--targets", gen.cfg.targets, "Target placement within cells")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, TargetMode>{{"uniform", TargetMode::Uniform},
                                            {"centers", TargetMode::Centers}}))
      ->capture_default_str();
  cgen->add_option("--count", gen.cfg.instances_per_config, "Instances to write")
      ->check(CLI::Range(1, 10000))
      ->capture_default_str();
  cgen->add_option("--seed", gen.cfg.seed, "Seed for all randomness")->capture_default_str();
  cgen->callback([&] { code = cmd_gen(gen); });

  std::string sites_instance, sites_out;
  auto* csites = app.add_subcommand("sites", "Select refueling sites (stage one)");
  csites->add_option("--instance", sites_instance, "Instance JSON")->required();
  csites->add_option("--out", sites_out, "Site-set JSON to write");
  csites->callback([&] { code = cmd_sites(sites_instance, sites_out); });

  auto add_solve_io = [](CLI::App* cmd, SolveArgs& a) {
    cmd->add_option("--instance", a.instance, "Instance JSON")->required();
    cmd->add_option("--sites", a.sites, "Reuse a saved site set instead of stage one");
    cmd->add_option("--out", a.out, "Solution JSON to write");
  };

  SolveArgs solve;
  auto* csolve = app.add_subcommand("solve", "Solve the joint routing problem exactly");
  add_solve_io(csolve, solve);
  csolve->add_option("--formulation", solve.formulation, "MILP formulation")
      ->check(CLI::IsMember({"node", "edge"}))
      ->capture_default_str();
  csolve->add_flag("--warm", solve.warm, "Seed the search with the repair heuristic");
  csolve->add_option("--time-limit", solve.time_limit, "Seconds")->capture_default_str();
  csolve->add_option("--gap", solve.gap, "Relative gap target, fraction")
      ->capture_default_str();
  csolve->callback([&] { code = cmd_solve(solve); });

  SolveArgs heur;
  auto* cheur = app.add_subcommand("heuristic", "Construct and repair a tour");
  add_solve_io(cheur, heur);
  cheur->callback([&] { code = cmd_heuristic(heur); });

  SolveArgs oracle;
  auto* coracle = app.add_subcommand("oracle", "Exhaustive search on tiny instances");
  add_solve_io(coracle, oracle);
  coracle->callback([&] { code = cmd_oracle(oracle); });

  VerifyArgs verify;
  auto* cverify = app.add_subcommand("verify", "Re-check a solution independently");
  cverify->add_option("--instance", verify.instance, "Instance JSON")->required();
  cverify->add_option("--sites", verify.sites, "Site set the solution refers to");
  cverify->add_option("--solution", verify.solution, "Solution JSON")->required();
  cverify->callback([&] { code = cmd_verify(verify); });

  BenchArgs bench;
  auto* cbench = app.add_subcommand("bench", "Run the strategy matrix over a suite");
  cbench->add_option("files", bench.files, "Instance JSON files");
  cbench->add_option("--dir", bench.dir, "Directory of instance JSON files");
  cbench->add_option("--strategies", bench.strategies, "Comma-separated strategy names")
      ->delimiter(',')
      ->required();
  cbench->add_option("--out", bench.out, "Records CSV path (stdout when omitted)");
  cbench->add_option("--summary", bench.summary, "Aggregate CSV path");
  cbench->add_option("--external-dir", bench.external_dir,
                     "Directory of <instance>.solution.json files for the external strategy");
  cbench->add_option("--time-limit", bench.time_limit, "Seconds per solve")
      ->capture_default_str();
  cbench->add_option("--gap", bench.gap, "Relative gap target, fraction")
      ->capture_default_str();
  cbench->add_option("--workers", bench.workers, "Parallel instance workers")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  cbench->callback([&] { code = cmd_bench(bench); });

  RenderArgs render;
  auto* crender = app.add_subcommand("render", "Draw an instance or solution as SVG");
  crender->add_option("--instance", render.instance, "Instance JSON")->required();
  crender->add_option("--sites", render.sites, "Site-set JSON");
  crender->add_option("--solution", render.solution, "Solution JSON");
  crender->add_option("--out", render.out, "SVG file to write")->required();
  crender->add_option("--scale", render.scale, "Pixels per km")->capture_default_str();
  crender->callback([&] { code = cmd_render(render); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const UncoverableTarget& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const FrontierExhausted& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const DisconnectedRoad& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const TooLarge& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return code;
}
