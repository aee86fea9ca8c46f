#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erkit/model.hpp"
#include "erkit/ratio.hpp"
#include "erkit/similarity.hpp"

namespace erkit {

/// RR = 1 - |C| / |Omega|. Exact rational; throws on an empty universe or
/// when the candidate set exceeds it.
Ratio reduction_ratio(std::uint64_t candidate_count, std::uint64_t omega_size);

/// PC = |C intersect Omega_M| / |Omega_M|, duplicates coverage under
/// canonical pair equality. Throws on empty ground truth.
Ratio pairs_completeness(const CandidateSet& candidates, const GroundTruth& gt);

/// PQ = |C intersect Omega_M| / |C|; undefined (nullopt) for an empty
/// candidate set rather than 0.
std::optional<Ratio> pairs_quality(const CandidateSet& candidates, const GroundTruth& gt);

/// Harmonic mean 2ab/(a+b), 0 when a + b == 0. Inputs must lie in [0,1].
double f_measure(double a, double b);

/// RR against a baseline method's candidate set instead of Omega; negative
/// when the method generates more pairs than the baseline.
Ratio relative_rr(std::uint64_t candidate_count, std::uint64_t baseline_count);

std::uint64_t intersection_count(const CandidateSet& candidates, const GroundTruth& gt);

struct BlockingCounts {
  std::uint64_t candidates = 0;
  std::uint64_t omega = 0;
  std::uint64_t hits = 0;          // |C intersect Omega_M|
  std::uint64_t ground_truth = 0;  // |Omega_M|
};

struct BlockingReport {
  Ratio rr;
  std::optional<Ratio> pc;       // absent without ground truth
  std::optional<Ratio> pq;       // absent for empty C (undefined by definition)
  std::optional<Ratio> f_pc_rr;
  std::optional<Ratio> f_pc_pq;
  std::optional<Ratio> relative_rr;
  BlockingCounts counts;

  std::string to_json() const;
};

/// Computes every blocking metric in exact arithmetic. `gt` may be null
/// (coverage metrics omitted); `baseline_count` may be null (relative RR
/// omitted).
BlockingReport blocking_report(const CandidateSet& candidates, std::uint64_t omega_size,
                               const GroundTruth* gt,
                               const std::uint64_t* baseline_count = nullptr);

/// How indeterminate decisions enter precision/recall: as predicted
/// negatives (default) or excluded from the determinate universe entirely.
enum class IndeterminatePolicy { AsNegative, Exclude };

std::string_view indeterminate_policy_name(IndeterminatePolicy p);
IndeterminatePolicy indeterminate_policy_from_name(std::string_view name);

struct MatchReport {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::optional<Ratio> precision;  // undefined when nothing was predicted positive
  std::optional<Ratio> recall;
  std::optional<Ratio> f1;

  std::string to_json() const;
};

/// Precision/recall over the decision list. False negatives count
/// ground-truth pairs predicted negative plus ground-truth pairs the
/// blocking step never surfaced, so recall can never exceed PC. Accuracy is
/// deliberately not computed. Decisions must cover the candidate set
/// exactly (one each, none outside it).
MatchReport match_metrics(const std::vector<MatchDecision>& decisions, const GroundTruth& gt,
                          const CandidateSet& candidates,
                          IndeterminatePolicy policy = IndeterminatePolicy::AsNegative);

/// One (parameter, metric-a, metric-b) sweep row.
struct CurvePoint {
  double param = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct CurveTable {
  std::string param_name;
  std::string a_name;
  std::string b_name;
  std::vector<CurvePoint> rows;  // sorted by param

  std::string to_csv() const;
};

/// Sorts sweep rows by parameter; requires at least two points (a single
/// point is not a curve).
CurveTable curve_points(std::string param_name, std::string a_name, std::string b_name,
                        std::vector<CurvePoint> rows);

}  // namespace erkit
