#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erkit/blocking.hpp"
#include "erkit/evaluation.hpp"
#include "erkit/ingest.hpp"
#include "erkit/model.hpp"
#include "erkit/similarity.hpp"

namespace erkit {

struct InputConfig {
  std::string path;
  InputFormat format = InputFormat::Csv;
  PropertyMap property_map;
  EntityOptions entity_options;  // label property, optional type filter
};

enum class BlockingMethod { Traditional, SortedNeighborhood, Canopies, MinHash };

std::string_view blocking_method_name(BlockingMethod m);
BlockingMethod blocking_method_from_name(std::string_view name);

struct BlockingConfig {
  BlockingMethod method = BlockingMethod::Traditional;
  BlockingKeySpec key;            // traditional + sorted neighborhood
  std::size_t window = 4;         // sorted neighborhood
  CanopyParams canopy;            // canopies
  CanopyOptions canopy_options;
  MinHashParams minhash;          // minhash
  std::string feature_field;      // canopies + minhash
  std::size_t max_block_size = 0; // traditional purge cap, 0 = off
};

struct SimilarityConfig {
  std::vector<std::string> functions;  // empty selects the full library
  SpecKind kind = SpecKind::Threshold;
  double threshold = 0.5;
  double lower = 0.0;
  double upper = 0.0;
  std::string model_path;     // learned_linear
  std::string training_path;  // `train` subcommand input
  int epochs = 200;
  double learning_rate = 0.5;
};

struct EvaluationConfig {
  std::string ground_truth_path;  // empty disables evaluation
  IndeterminatePolicy indeterminate = IndeterminatePolicy::AsNegative;
  std::optional<std::string> baseline_candidates_path;
};

/// One declarative file drives the whole ingest -> blocking -> similarity
/// -> evaluation workflow. The JSON dialect is documented in the README and
/// versioned through the manifest.
struct PipelineConfig {
  int version = 1;
  PairMode mode = PairMode::Bilateral;
  InputConfig d1;
  InputConfig d2;  // ignored in dedup mode
  BlockingConfig blocking;
  SimilarityConfig similarity;
  EvaluationConfig evaluation;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  int workers = 1;
  bool streaming = false;

  static PipelineConfig from_json(const std::string& text);
  static PipelineConfig from_json_file(const std::string& path);
  std::string to_json() const;

  /// Fail-fast validation: referenced paths must exist, parameters must
  /// satisfy the owning module's invariants. Runs before any stage.
  void validate() const;
};

struct RunPaths {
  std::string candidates;
  std::string decisions;
  std::string review;
  std::string blocking_report;
  std::string match_report;
  std::string manifest;
};

struct RunOutcome {
  RunPaths paths;
  BlockingResult blocking;
  SimilarityOutput similarity;
  std::optional<BlockingReport> blocking_metrics;
  std::optional<MatchReport> match_metrics;
};

/// Executes the two-step workflow and writes candidates, decisions, review
/// queue, reports and a manifest into the output directory. A failing stage
/// throws with a stage-tagged message and leaves its unfinished output with
/// a .partial suffix.
RunOutcome run_pipeline(const PipelineConfig& config);

/// Trains the learned-linear link specification from the configured
/// training pairs and writes the model JSON to `model_path`.
TrainResult run_training(const PipelineConfig& config, const std::string& model_path);

/// Sweeps one blocking or threshold parameter, one pipeline run per value
/// (threshold sweeps reuse cached scores and re-decide only). Produces
/// (param, PC, RR) rows for blocking parameters and
/// (threshold, precision, recall) rows for threshold sweeps.
CurveTable run_sweep(const PipelineConfig& config, const std::string& param,
                     const std::vector<double>& values);

}  // namespace erkit
