#pragma once

// Run configuration, solver dispatch, and the "hullcheck/1" JSON report.

#include "hullcheck/lp.hpp"
#include "hullcheck/variants.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hullcheck {

enum class Mode : std::uint8_t { Membership, LpNoRecession, LpBoundedM, LpDoubling, Balls };
enum class VariantKind : std::uint8_t { Triangle, Virtual, Avta, DeltaK, Greedy };

std::string_view to_string(Mode mode);
std::string_view to_string(VariantKind variant);
Mode parse_mode(std::string_view name);
VariantKind parse_variant(std::string_view name);

/// Process exit codes.
enum ExitCode : int { kFeasible = 0, kInfeasible = 1, kInconclusive = 2, kInputError = 3 };

struct RunConfig {
  Mode mode = Mode::Membership;
  VariantKind variant = VariantKind::Triangle;
  Tolerances tol;
  double eps0 = 1e-2;
  double big_m = 0.0;
  double mu_cap = 1024.0;
  std::uint64_t seed = 0;
  bool halving = false;
  bool wall_clock = false;
};

/// Outcome of one membership run under any variant.
struct MembershipOutcome {
  enum class Verdict : std::uint8_t { Approx, Witness, Inconclusive } verdict = Verdict::Inconclusive;
  std::optional<Certificate> certificate;        // all variants except virtual
  std::optional<VirtualOutcome> virtual_outcome; // virtual only
  RunStats stats;
  std::optional<Iterate> final_iterate;
};

MembershipOutcome run_membership(VariantKind variant, const PointSet& s, const Vector& p,
                                 const Tolerances& tol, const SolveOptions& options = {});

struct HalvingRound {
  double eps = 0.0;
  std::int64_t iterations = 0;
  MembershipOutcome::Verdict verdict = MembershipOutcome::Verdict::Inconclusive;
};

struct HalvingOutcome {
  MembershipOutcome final;
  std::vector<HalvingRound> rounds;
  std::int64_t total_iterations = 0;
};

/// Runs at eps = 0.5, 0.25, ... and finally at tol.eps (the floor), stopping at
/// the first witness or inconclusive round. Triangle rounds warm-start from the
/// previous iterate.
HalvingOutcome halving_membership(VariantKind variant, const PointSet& s, const Vector& p,
                                  const Tolerances& tol);

struct RunInputs {
  std::optional<PointSet> points;
  std::optional<Vector> query;
  std::optional<LpInstance> lp;
};

struct RunOutput {
  int exit_code = kInconclusive;
  nlohmann::ordered_json report;
  RunStats stats; // series for the trace file (last solve)
};

/// Dispatches on config.mode. Throws InputError / std::invalid_argument for
/// unusable inputs; the caller maps those to kInputError.
RunOutput execute(const RunConfig& config, const RunInputs& inputs);

nlohmann::ordered_json vector_json(const Vector& v);
nlohmann::ordered_json certificate_json(const Certificate& cert);
nlohmann::ordered_json stats_json(const RunStats& stats);

/// CSV with columns iter,gap,pivot_index,pivot_angle; row 0 has empty pivot fields.
std::string trace_csv(const RunStats& stats);

/// Pretty-printed JSON with a trailing newline.
std::string dump_report(const nlohmann::ordered_json& report);

} // namespace hullcheck
