#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "erkit/model.hpp"

namespace erkit {

/// Sentinel for a feature slot whose inputs were missing, whose function
/// did not apply to the field's datatype, or whose evaluation failed.
inline constexpr double kMissingFeature = -1.0;

/// A primitive comparator: takes two present literals and returns a score
/// in [0,1], or kMissingFeature when evaluation fails. All library
/// functions are symmetric and score equal present values as 1.
struct FeatureFunction {
  std::string name;
  std::set<Datatype> applicable;
  std::function<double(const Literal&, const Literal&)> evaluate;
};

/// The fixed default library, in order: exact match (1/0), normalized
/// Levenshtein similarity, Jaccard token overlap, Soundex equality (1/0),
/// scaled numeric similarity (numeric-parsable inputs only). m = 5.
std::vector<FeatureFunction> feature_library();

/// Subset of the default library selected by name, keeping library order.
/// Throws ConfigError on unknown names.
std::vector<FeatureFunction> feature_library(const std::vector<std::string>& names);

/// Classic 4-character American Soundex of the first alphabetic token;
/// empty string when the input contains no ASCII letter.
std::string soundex(std::string_view word);

/// m*n feature vector in field-major layout: all m functions for field 1,
/// then field 2, and so on. Missing inputs and inapplicable functions
/// occupy their slot with kMissingFeature, so the length is always m*n.
struct FeatureVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

FeatureVector vectorize(const EntityPair& pair, const Dataset& d1, const Dataset& d2,
                        const std::vector<FeatureFunction>& library);

enum class SpecKind { Threshold, TwoThreshold, LearnedLinear };

std::string_view spec_kind_name(SpecKind kind);
SpecKind spec_kind_from_name(std::string_view name);

/// A link specification function: scores a pair's feature vector in [0,1]
/// and hardens the score into a duplicate / non-duplicate decision.
///
/// Threshold kinds score by the mean of non-sentinel entries (optionally
/// weighted via rule_weights); the learned kind scores by a logistic over
/// the affine combination with sentinel entries contributing zero.
struct LinkSpec {
  SpecKind kind = SpecKind::Threshold;
  double threshold = 0.5;  // Threshold
  double lower = 0.0;      // TwoThreshold
  double upper = 0.0;

  std::vector<double> weights;  // LearnedLinear, length m*n
  double bias = 0.0;

  /// Optional per-slot weights for the rule-based mean aggregate; empty
  /// means uniform.
  std::vector<double> rule_weights;

  /// Provenance of a learned model, used to validate inputs at load time.
  std::vector<std::string> function_names;
  std::vector<std::string> schema;

  static LinkSpec make_threshold(double t);
  static LinkSpec make_two_threshold(double lower, double upper);
};

/// Scores a vector under the spec; result clamped to [0,1]. An all-sentinel
/// vector scores 0 (no evidence); `no_evidence` reports that case.
double score(const LinkSpec& spec, const FeatureVector& v, bool* no_evidence = nullptr);

enum class MatchLabel { Duplicate, NonDuplicate, Indeterminate };

std::string_view match_label_name(MatchLabel label);
MatchLabel match_label_from_name(std::string_view name);

struct MatchDecision {
  EntityPair pair;
  double score = 0.0;
  MatchLabel label = MatchLabel::NonDuplicate;
};

/// Thresholds use strictly-greater comparison: under a single threshold t a
/// pair is a duplicate iff score > t; under two thresholds it is a
/// duplicate iff score > upper, a non-duplicate iff score <= lower, and
/// indeterminate otherwise (flagged for review).
MatchDecision decide(const LinkSpec& spec, double scored, const EntityPair& pair);

struct LabeledPair {
  EntityPair pair;
  bool is_duplicate = false;
};

/// Mean log-loss of a logistic-linear model over sentinel-zeroed vectors.
double log_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                const std::vector<double>& weights, double bias);

/// Analytic gradient of log_loss with respect to weights and bias.
void log_loss_gradient(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const std::vector<double>& weights, double bias,
                       std::vector<double>* grad_weights, double* grad_bias);

struct TrainResult {
  LinkSpec spec;
  double final_loss = 0.0;
};

/// Logistic regression by full-batch gradient descent on log-loss, starting
/// from zero weights; deterministic for a given seed. Requires at least one
/// positive and one negative example.
TrainResult train_linear(const std::vector<LabeledPair>& training, const Dataset& d1,
                         const Dataset& d2, const std::vector<FeatureFunction>& library,
                         int epochs, double learning_rate, std::uint64_t seed);

/// Model (de)serialization; the JSON carries weights, bias, function names
/// and schema.
std::string link_spec_to_json(const LinkSpec& spec);
LinkSpec link_spec_from_json(const std::string& text);

struct SimilarityOutput {
  std::vector<MatchDecision> decisions;    // one per candidate, sorted by pair
  std::vector<EntityPair> duplicates;      // C_D
  std::vector<EntityPair> non_duplicates;  // C_ND
  std::vector<EntityPair> review;          // indeterminate, flagged for manual review
  std::size_t no_evidence_pairs = 0;
};

/// Applies the link specification to every candidate pair and partitions
/// the set into C_D, C_ND and the review queue. Vectorization and scoring
/// parallelize over pairs; the output never depends on worker count.
SimilarityOutput apply_similarity(const CandidateSet& candidates, const LinkSpec& spec,
                                  const Dataset& d1, const Dataset& d2,
                                  const std::vector<FeatureFunction>& library,
                                  int workers = 1);

}  // namespace erkit
