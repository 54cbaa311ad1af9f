#pragma once

#include "hullcheck/report.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hullcheck {

struct BenchConfig {
  std::vector<VariantKind> variants{VariantKind::Triangle, VariantKind::Greedy};
  std::string family = "feasible"; // see make_instance
  int instances = 10;
  Index m = 10;
  Index n = 50;
  Tolerances tol;
  std::uint64_t seed = 1;
  bool wall_clock = false;
  int threads = 1;
  std::optional<std::filesystem::path> trace_dir;
};

struct BenchRow {
  int instance = 0;
  VariantKind variant = VariantKind::Triangle;
  std::string family;
  Index m = 0;
  Index n = 0;
  std::string verdict;
  std::int64_t iterations = 0;
  std::int64_t pivot_scans = 0;
  std::optional<double> wall_ms;
  double initial_gap = 0.0;
  double final_gap = 0.0;
  double radius = 0.0;
  double observed_nu = 0.0;
  double observed_c = 0.0;
  /// square-ball family: 2 ln(delta0 / (eps r_min)) / ln(1 + rho^2/R^2) + 1
  std::optional<double> envelope;
  RunStats stats;
};

/// Threads from HULLCHECK_THREADS (>= 1), or 1 when unset or invalid.
int bench_threads_from_env();

/// Rows sorted by (instance, variant). Trace files, when requested, are named
/// trace_<instance>_<variant>.csv.
std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_csv(const std::vector<BenchRow>& rows);

} // namespace hullcheck
