#include "hullcheck/bench.hpp"

#include "hullcheck/instances.hpp"
#include "hullcheck/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

namespace hullcheck {

int bench_threads_from_env() {
  const char* raw = std::getenv("HULLCHECK_THREADS");
  if (!raw) return 1;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 256));
}

namespace {

BenchRow run_one(const BenchConfig& config, const Instance& inst, int index, VariantKind variant) {
  BenchRow row;
  row.instance = index;
  row.variant = variant;
  row.family = inst.family;
  row.m = inst.points.dim();
  row.n = inst.points.count();

  Tolerances tol = config.tol;
  if (variant == VariantKind::DeltaK) tol.k_faces = static_cast<int>(std::min<Index>(tol.k_faces, row.n));
  const auto started = std::chrono::steady_clock::now();
  MembershipOutcome out = run_membership(variant, inst.points, inst.query, tol);
  if (config.wall_clock) {
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }

  switch (out.verdict) {
  case MembershipOutcome::Verdict::Approx: row.verdict = "feasible"; break;
  case MembershipOutcome::Verdict::Witness: row.verdict = "infeasible"; break;
  case MembershipOutcome::Verdict::Inconclusive: row.verdict = "inconclusive"; break;
  }
  row.iterations = out.stats.iterations;
  row.pivot_scans = out.stats.pivot_scans;
  row.initial_gap = out.stats.gap_series.front();
  row.final_gap = out.stats.gap_series.back();
  row.radius = out.stats.radius;
  row.observed_nu = out.stats.observed_nu;
  row.observed_c = out.stats.observed_c;

  if (inst.family == "square-ball") {
    const double rho = inst.query(0);
    double r_min = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < inst.points.count(); ++j) {
      r_min = std::min(r_min, std::sqrt(squared_distance(inst.points.point(j), inst.query)));
    }
    const double ratio = row.initial_gap / (tol.eps * r_min);
    const double per_step = std::log1p(rho * rho / (row.radius * row.radius));
    row.envelope = ratio > 1.0 ? 2.0 * std::log(ratio) / per_step + 1.0 : 1.0;
  }
  row.stats = std::move(out.stats);
  return row;
}

std::string opt_number(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string finite_or_empty(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

} // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.instances < 1) throw std::invalid_argument("bench: instances must be positive");
  if (config.variants.empty()) throw std::invalid_argument("bench: no variants selected");
  config.tol.validate();

  struct Task {
    int instance;
    VariantKind variant;
  };
  std::vector<Task> tasks;
  for (int i = 0; i < config.instances; ++i) {
    for (VariantKind v : config.variants) tasks.push_back({i, v});
  }

  std::vector<std::optional<Instance>> instances(static_cast<std::size_t>(config.instances));
  for (int i = 0; i < config.instances; ++i) {
    instances[static_cast<std::size_t>(i)] =
        make_instance(config.family, config.m, config.n, config.seed, static_cast<std::uint64_t>(i));
  }

  std::vector<BenchRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      try {
        const Task& t = tasks[k];
        rows[k] = run_one(config, *instances[static_cast<std::size_t>(t.instance)], t.instance, t.variant);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    if (a.instance != b.instance) return a.instance < b.instance;
    return to_string(a.variant) < to_string(b.variant);
  });

  if (config.trace_dir) {
    std::filesystem::create_directories(*config.trace_dir);
    for (const auto& row : rows) {
      write_text(*config.trace_dir /
                     ("trace_" + std::to_string(row.instance) + "_" + std::string(to_string(row.variant)) + ".csv"),
                 trace_csv(row.stats));
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "instance,variant,family,m,n,verdict,iterations,pivot_scans,wall_ms,initial_gap,"
                    "final_gap,radius,observed_nu,observed_c,envelope\n";
  for (const auto& r : rows) {
    out += std::to_string(r.instance) + ',' + std::string(to_string(r.variant)) + ',' + r.family + ',' +
           std::to_string(r.m) + ',' + std::to_string(r.n) + ',' + r.verdict + ',' +
           std::to_string(r.iterations) + ',' + std::to_string(r.pivot_scans) + ',' + opt_number(r.wall_ms) +
           ',' + format_double(r.initial_gap) + ',' + format_double(r.final_gap) + ',' +
           format_double(r.radius) + ',' + format_double(r.observed_nu) + ',' +
           finite_or_empty(r.observed_c) + ',' + opt_number(r.envelope) + '\n';
  }
  return out;
}

} // namespace hullcheck
