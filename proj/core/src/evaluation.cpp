#include "erkit/evaluation.hpp"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace erkit {

using nlohmann::json;

Ratio reduction_ratio(std::uint64_t candidate_count, std::uint64_t omega_size) {
  if (omega_size == 0) throw Error("reduction ratio undefined for an empty pair universe");
  if (candidate_count > omega_size) {
    throw Error("candidate set larger than the pair universe");
  }
  return Ratio::from_counts(omega_size - candidate_count, omega_size);
}

std::uint64_t intersection_count(const CandidateSet& candidates, const GroundTruth& gt) {
  // Iterate the smaller set.
  if (gt.matches.size() <= candidates.size()) {
    std::uint64_t hits = 0;
    for (const EntityPair& p : gt.matches) hits += candidates.contains(p) ? 1 : 0;
    return hits;
  }
  std::uint64_t hits = 0;
  for (const EntityPair& p : candidates.pairs()) hits += gt.matches.count(p);
  return hits;
}

Ratio pairs_completeness(const CandidateSet& candidates, const GroundTruth& gt) {
  if (gt.matches.empty()) throw Error("pairs completeness undefined for empty ground truth");
  return Ratio::from_counts(intersection_count(candidates, gt), gt.matches.size());
}

std::optional<Ratio> pairs_quality(const CandidateSet& candidates, const GroundTruth& gt) {
  if (candidates.empty()) return std::nullopt;
  return Ratio::from_counts(intersection_count(candidates, gt), candidates.size());
}

double f_measure(double a, double b) {
  if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) {
    throw Error("f-measure inputs must lie in [0,1]");
  }
  if (a + b == 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

Ratio relative_rr(std::uint64_t candidate_count, std::uint64_t baseline_count) {
  if (baseline_count == 0) throw Error("relative RR undefined for an empty baseline");
  // 1 - |C| / |baseline|; may be negative.
  return Ratio(static_cast<std::int64_t>(baseline_count) -
                   static_cast<std::int64_t>(candidate_count),
               static_cast<std::int64_t>(baseline_count));
}

namespace {

json ratio_json(const Ratio& r) {
  return json{{"value", r.to_double()},
              {"num", r.num()},
              {"den", r.den()},
              {"decimal", r.to_decimal()}};
}

json optional_ratio_json(const std::optional<Ratio>& r) {
  if (!r) return nullptr;
  return ratio_json(*r);
}

}  // namespace

BlockingReport blocking_report(const CandidateSet& candidates, std::uint64_t omega_size,
                               const GroundTruth* gt, const std::uint64_t* baseline_count) {
  BlockingReport report;
  report.counts.candidates = candidates.size();
  report.counts.omega = omega_size;
  report.rr = reduction_ratio(candidates.size(), omega_size);
  if (gt != nullptr) {
    report.counts.ground_truth = gt->matches.size();
    report.counts.hits = intersection_count(candidates, *gt);
    report.pc = pairs_completeness(candidates, *gt);
    report.pq = pairs_quality(candidates, *gt);
    report.f_pc_rr = Ratio::f_measure(*report.pc, report.rr);
    if (report.pq) report.f_pc_pq = Ratio::f_measure(*report.pc, *report.pq);
  }
  if (baseline_count != nullptr) {
    report.relative_rr = relative_rr(candidates.size(), *baseline_count);
  }
  return report;
}

std::string BlockingReport::to_json() const {
  json j;
  j["counts"] = {{"candidates", counts.candidates},
                 {"omega", counts.omega},
                 {"hits", counts.hits},
                 {"ground_truth", counts.ground_truth}};
  j["rr"] = ratio_json(rr);
  j["pc"] = optional_ratio_json(pc);
  j["pq"] = optional_ratio_json(pq);
  j["f_pc_rr"] = optional_ratio_json(f_pc_rr);
  j["f_pc_pq"] = optional_ratio_json(f_pc_pq);
  j["relative_rr"] = optional_ratio_json(relative_rr);
  return j.dump(2);
}

std::string_view indeterminate_policy_name(IndeterminatePolicy p) {
  return p == IndeterminatePolicy::AsNegative ? "as_negative" : "exclude";
}

IndeterminatePolicy indeterminate_policy_from_name(std::string_view name) {
  if (name == "as_negative") return IndeterminatePolicy::AsNegative;
  if (name == "exclude") return IndeterminatePolicy::Exclude;
  throw ConfigError("unknown indeterminate policy: " + std::string(name));
}

MatchReport match_metrics(const std::vector<MatchDecision>& decisions, const GroundTruth& gt,
                          const CandidateSet& candidates, IndeterminatePolicy policy) {
  std::set<EntityPair> seen;
  for (const MatchDecision& d : decisions) {
    if (!candidates.contains(d.pair)) {
      throw Error("decision for pair outside the candidate set: " + d.pair.left + " / " +
                  d.pair.right);
    }
    if (!seen.insert(d.pair).second) {
      throw Error("duplicate decision for pair " + d.pair.left + " / " + d.pair.right);
    }
  }
  if (seen.size() != candidates.size()) {
    throw Error("decisions do not cover the candidate set: " + std::to_string(seen.size()) +
                " of " + std::to_string(candidates.size()));
  }

  MatchReport report;
  for (const MatchDecision& d : decisions) {
    bool is_match = gt.matches.count(d.pair) > 0;
    switch (d.label) {
      case MatchLabel::Duplicate:
        if (is_match) ++report.tp;
        else ++report.fp;
        break;
      case MatchLabel::NonDuplicate:
        if (is_match) ++report.fn;
        break;
      case MatchLabel::Indeterminate:
        // AsNegative folds these into the negatives; Exclude drops the
        // pair from the determinate universe entirely.
        if (policy == IndeterminatePolicy::AsNegative && is_match) ++report.fn;
        break;
    }
  }
  // Ground-truth pairs the blocking step never surfaced are false negatives:
  // the similarity step had no chance to recover them.
  for (const EntityPair& p : gt.matches) {
    if (!candidates.contains(p)) ++report.fn;
  }

  if (report.tp + report.fp > 0) {
    report.precision = Ratio::from_counts(report.tp, report.tp + report.fp);
  }
  if (report.tp + report.fn > 0) {
    report.recall = Ratio::from_counts(report.tp, report.tp + report.fn);
  }
  if (report.precision && report.recall) {
    report.f1 = Ratio::f_measure(*report.precision, *report.recall);
  }
  return report;
}

std::string MatchReport::to_json() const {
  json j;
  j["tp"] = tp;
  j["fp"] = fp;
  j["fn"] = fn;
  j["precision"] = optional_ratio_json(precision);
  j["recall"] = optional_ratio_json(recall);
  j["f1"] = optional_ratio_json(f1);
  return j.dump(2);
}

CurveTable curve_points(std::string param_name, std::string a_name, std::string b_name,
                        std::vector<CurvePoint> rows) {
  if (rows.size() < 2) throw Error("a curve needs at least two sweep points");
  std::sort(rows.begin(), rows.end(),
            [](const CurvePoint& x, const CurvePoint& y) { return x.param < y.param; });
  return CurveTable{std::move(param_name), std::move(a_name), std::move(b_name),
                    std::move(rows)};
}

std::string CurveTable::to_csv() const {
  std::string out = param_name + "," + a_name + "," + b_name + "\n";
  char buf[128];
  for (const CurvePoint& p : rows) {
    std::snprintf(buf, sizeof(buf), "%g,%.6f,%.6f\n", p.param, p.a, p.b);
    out += buf;
  }
  return out;
}

}  // namespace erkit
