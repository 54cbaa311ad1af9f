// hullcheck: convex hull membership, LP feasibility, benchmarks and
// visibility diagnostics from the command line.

#include "hullcheck/bench.hpp"
#include "hullcheck/instances.hpp"
#include "hullcheck/io.hpp"
#include "hullcheck/report.hpp"
#include "hullcheck/visibility.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace hullcheck;

namespace {

struct RunArgs {
  std::string points, query, lp_a, lp_b, out, trace_out;
  std::string mode = "membership";
  std::string variant = "triangle";
  std::string pivot_rule = "first";
  std::string family = "feasible";
  double eps = 1e-3;
  double eps0 = 1e-2;
  double big_m = 0.0;
  double mu_cap = 1024.0;
  int k = 3;
  int t = 4;
  std::int64_t max_iters = 10'000'000;
  std::int64_t refresh_period = 1000;
  std::uint64_t seed = 0;
  Index m = 2;
  Index n = 4;
  bool halving = false;
  bool wall_clock = false;
};

struct BenchArgs {
  std::string variants = "triangle,greedy";
  std::string family = "feasible";
  std::string pivot_rule = "first";
  std::string out, trace_dir;
  int instances = 10;
  Index m = 10;
  Index n = 50;
  double eps = 1e-3;
  int k = 3;
  int t = 4;
  std::int64_t max_iters = 10'000'000;
  std::uint64_t seed = 1;
  bool wall_clock = false;
};

struct ProbeArgs {
  std::string points, query, out;
  double eps = 1e-3;
  std::int64_t samples = 100'000;
  std::uint64_t seed = 1;
  bool inside = false;
};

struct GenerateArgs {
  std::string family = "feasible";
  std::string points_out, query_out;
  Index m = 2;
  Index n = 4;
  std::uint64_t seed = 1;
  std::uint64_t index = 0;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int do_run(const RunArgs& a) {
  RunConfig cfg;
  cfg.mode = parse_mode(a.mode);
  cfg.variant = parse_variant(a.variant);
  cfg.tol.eps = a.eps;
  cfg.tol.pivot_rule = parse_pivot_rule(a.pivot_rule);
  cfg.tol.max_iters = a.max_iters;
  cfg.tol.refresh_period = a.refresh_period;
  cfg.tol.k_faces = a.k;
  cfg.tol.t_inner = a.t;
  cfg.eps0 = a.eps0;
  cfg.big_m = a.big_m;
  cfg.mu_cap = a.mu_cap;
  cfg.seed = a.seed;
  cfg.halving = a.halving;
  cfg.wall_clock = a.wall_clock;

  RunInputs in;
  if (cfg.mode == Mode::Membership || cfg.mode == Mode::Balls) {
    if (!a.points.empty()) {
      if (a.query.empty()) throw InputError("--points requires --query");
      in.points = read_points(a.points);
      in.query = read_query(a.query, in.points->dim());
    } else {
      Instance inst = make_instance(a.family, a.m, a.n, a.seed, 0);
      in.points = std::move(inst.points);
      in.query = std::move(inst.query);
    }
  } else {
    if (a.lp_a.empty() || a.lp_b.empty()) throw InputError("LP modes need --lp-a and --lp-b");
    in.lp = read_lp(a.lp_a, a.lp_b);
  }

  RunOutput out = execute(cfg, in);
  emit(a.out, dump_report(out.report));
  if (!a.trace_out.empty()) write_text(a.trace_out, trace_csv(out.stats));
  return out.exit_code;
}

int do_bench(const BenchArgs& a) {
  BenchConfig cfg;
  cfg.variants.clear();
  for (const auto& v : split_list(a.variants)) cfg.variants.push_back(parse_variant(v));
  cfg.family = a.family;
  cfg.instances = a.instances;
  cfg.m = a.m;
  cfg.n = a.n;
  cfg.tol.eps = a.eps;
  cfg.tol.pivot_rule = parse_pivot_rule(a.pivot_rule);
  cfg.tol.max_iters = a.max_iters;
  cfg.tol.k_faces = a.k;
  cfg.tol.t_inner = a.t;
  cfg.seed = a.seed;
  cfg.wall_clock = a.wall_clock;
  cfg.threads = bench_threads_from_env();
  if (!a.trace_dir.empty()) cfg.trace_dir = a.trace_dir;
  emit(a.out, bench_csv(run_bench(cfg)));
  return kFeasible;
}

int do_probe(const ProbeArgs& a) {
  const PointSet s = read_points(a.points);
  const Vector p = read_query(a.query, s.dim());
  const VisibilityReport r = visibility_probe(s, p, a.eps, a.samples, a.seed, a.inside);
  nlohmann::ordered_json j;
  j["schema"] = "hullcheck/1";
  j["kind"] = "visibility";
  j["samples"] = r.samples;
  j["accepted"] = r.accepted;
  j["witnesses"] = r.witnesses;
  j["theta_star_sampled"] = r.theta_star_sampled;
  j["nu_sampled"] = r.nu_sampled;
  j["phi_star_sampled"] = r.phi_star_sampled;
  j["lambda_star_sampled"] = r.lambda_star_sampled;
  emit(a.out, dump_report(j));
  return kFeasible;
}

int do_generate(const GenerateArgs& a) {
  const Instance inst = make_instance(a.family, a.m, a.n, a.seed, a.index);
  emit(a.points_out, points_csv(inst.points));
  if (!a.query_out.empty()) write_text(a.query_out, row_csv(inst.query));
  return kFeasible;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex hull membership with verifiable certificates"};
  app.require_subcommand(1);

  RunArgs run;
  auto* cmd_run = app.add_subcommand("run", "Solve one membership, LP or balls instance");
  cmd_run->add_option("--points", run.points, "Points CSV with a '# dim=m' header");
  cmd_run->add_option("--query", run.query, "Query point CSV (one row)");
  cmd_run->add_option("--lp-a", run.lp_a, "LP matrix A, one row per line");
  cmd_run->add_option("--lp-b", run.lp_b, "LP right-hand side b, one row");
  cmd_run->add_option("--mode", run.mode, "membership | lp_norecession | lp_boundedM | lp_doubling | balls");
  cmd_run->add_option("--variant", run.variant, "triangle | virtual | avta | delta_k | greedy");
  cmd_run->add_option("--pivot-rule", run.pivot_rule,
                      "first | best | strict-first | strict-best | strategy-i | strategy-iv");
  cmd_run->add_option("--eps", run.eps, "Relative accuracy (floor of the halving schedule)");
  cmd_run->add_option("--eps0", run.eps0, "LP residual accuracy");
  cmd_run->add_option("--k", run.k, "Face budget of delta_k");
  cmd_run->add_option("--t", run.t, "Inner iteration budget of avta");
  cmd_run->add_option("--max-iters", run.max_iters, "Iteration cap");
  cmd_run->add_option("--refresh-period", run.refresh_period, "Steps between coefficient refreshes");
  cmd_run->add_option("--big-m", run.big_m, "Bound M for lp_boundedM");
  cmd_run->add_option("--mu-cap", run.mu_cap, "Largest mu tried by lp_doubling");
  cmd_run->add_option("--seed", run.seed, "Instance seed when no --points is given");
  cmd_run->add_option("--family", run.family, "Generated family: feasible | infeasible | square-ball");
  cmd_run->add_option("--m", run.m, "Generated dimension");
  cmd_run->add_option("--n", run.n, "Generated point count");
  cmd_run->add_option("--out", run.out, "Report path (default stdout)");
  cmd_run->add_option("--trace-out", run.trace_out, "Gap trace CSV path");
  cmd_run->add_flag("--halving", run.halving, "Run eps = 0.5, 0.25, ... down to --eps");
  cmd_run->add_flag("--wall-clock", run.wall_clock, "Record wall time (reports stop being byte-stable)");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Compare variants on generated instances");
  cmd_bench->add_option("--variants", bench.variants, "Comma-separated variants");
  cmd_bench->add_option("--family", bench.family, "feasible | infeasible | square-ball");
  cmd_bench->add_option("--instances", bench.instances, "Number of instances");
  cmd_bench->add_option("--m", bench.m, "Dimension");
  cmd_bench->add_option("--n", bench.n, "Point count");
  cmd_bench->add_option("--eps", bench.eps, "Relative accuracy");
  cmd_bench->add_option("--pivot-rule", bench.pivot_rule, "Pivot rule");
  cmd_bench->add_option("--k", bench.k, "Face budget of delta_k");
  cmd_bench->add_option("--t", bench.t, "Inner budget of avta");
  cmd_bench->add_option("--max-iters", bench.max_iters, "Iteration cap");
  cmd_bench->add_option("--seed", bench.seed, "Base seed");
  cmd_bench->add_option("--out", bench.out, "CSV path (default stdout)");
  cmd_bench->add_option("--trace-dir", bench.trace_dir, "Directory for per-run trace CSVs");
  cmd_bench->add_flag("--wall-clock", bench.wall_clock, "Fill the wall_ms column");

  ProbeArgs probe;
  auto* cmd_probe = app.add_subcommand("probe", "Sample visibility constants");
  cmd_probe->add_option("--points", probe.points, "Points CSV")->required();
  cmd_probe->add_option("--query", probe.query, "Query CSV")->required();
  cmd_probe->add_option("--eps", probe.eps, "Exclusion radius relative to R");
  cmd_probe->add_option("--samples", probe.samples, "Number of draws");
  cmd_probe->add_option("--seed", probe.seed, "Sampling seed");
  cmd_probe->add_flag("--inside", probe.inside, "Fail if a draw has no pivot");
  cmd_probe->add_option("--out", probe.out, "Report path (default stdout)");

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Write a generated instance");
  cmd_gen->add_option("--family", gen.family, "feasible | infeasible | square-ball");
  cmd_gen->add_option("--m", gen.m, "Dimension");
  cmd_gen->add_option("--n", gen.n, "Point count");
  cmd_gen->add_option("--seed", gen.seed, "Base seed");
  cmd_gen->add_option("--index", gen.index, "Instance index under the base seed");
  cmd_gen->add_option("--points-out", gen.points_out, "Points CSV path (default stdout)");
  cmd_gen->add_option("--query-out", gen.query_out, "Query CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*cmd_run) return do_run(run);
    if (*cmd_bench) return do_bench(bench);
    if (*cmd_probe) return do_probe(probe);
    if (*cmd_gen) return do_generate(gen);
  } catch (const InputError& e) {
    std::cerr << "hullcheck: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "hullcheck: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "hullcheck: internal error: " << e.what() << '\n';
    return kInconclusive;
  }
  return kInputError;
}
