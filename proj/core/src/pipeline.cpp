#include "erkit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>

#include <nlohmann/json.hpp>

#include "erkit/io.hpp"
#include "erkit/text.hpp"
#include "erkit/version.hpp"

namespace erkit {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view blocking_method_name(BlockingMethod m) {
  switch (m) {
    case BlockingMethod::Traditional: return "traditional";
    case BlockingMethod::SortedNeighborhood: return "sorted_neighborhood";
    case BlockingMethod::Canopies: return "canopies";
    case BlockingMethod::MinHash: return "minhash";
  }
  return "traditional";
}

BlockingMethod blocking_method_from_name(std::string_view name) {
  if (name == "traditional") return BlockingMethod::Traditional;
  if (name == "sorted_neighborhood") return BlockingMethod::SortedNeighborhood;
  if (name == "canopies") return BlockingMethod::Canopies;
  if (name == "minhash") return BlockingMethod::MinHash;
  throw ConfigError("unknown blocking method: " + std::string(name));
}

namespace {

KeyTransform transform_from_name(std::string_view name) {
  if (name == "tokens") return KeyTransform::Tokens;
  if (name == "year") return KeyTransform::Year;
  if (name == "first_chars") return KeyTransform::FirstChars;
  if (name == "exact") return KeyTransform::Exact;
  if (name == "concat") return KeyTransform::ConcatGroup;
  throw ConfigError("unknown key transform: " + std::string(name));
}

std::string transform_name(KeyTransform t) {
  switch (t) {
    case KeyTransform::Tokens: return "tokens";
    case KeyTransform::Year: return "year";
    case KeyTransform::FirstChars: return "first_chars";
    case KeyTransform::Exact: return "exact";
    case KeyTransform::ConcatGroup: return "concat";
  }
  return "tokens";
}

ConcatOp concat_op_from_name(std::string_view name) {
  if (name == "initials") return ConcatOp::Initials;
  if (name == "first_chars") return ConcatOp::FirstChars;
  if (name == "year") return ConcatOp::Year;
  if (name == "exact") return ConcatOp::Exact;
  throw ConfigError("unknown concat op: " + std::string(name));
}

std::string concat_op_name(ConcatOp op) {
  switch (op) {
    case ConcatOp::Initials: return "initials";
    case ConcatOp::FirstChars: return "first_chars";
    case ConcatOp::Year: return "year";
    case ConcatOp::Exact: return "exact";
  }
  return "exact";
}

BlockingKeySpec key_from_json(const json& j) {
  BlockingKeySpec key;
  key.single_value = j.value("single_value", false);
  for (const json& cj : j.at("clauses")) {
    KeyClause clause;
    clause.transform = transform_from_name(cj.at("transform").get<std::string>());
    if (clause.transform == KeyTransform::ConcatGroup) {
      for (const json& pj : cj.at("parts")) {
        ConcatPart part;
        part.field = pj.at("field").get<std::string>();
        part.op = concat_op_from_name(pj.at("op").get<std::string>());
        part.k = pj.value("k", 1);
        clause.parts.push_back(std::move(part));
      }
    } else {
      clause.field = cj.at("field").get<std::string>();
      clause.k = cj.value("k", 1);
      clause.year_from_end = cj.value("scan", std::string("leading")) == "trailing";
    }
    key.clauses.push_back(std::move(clause));
  }
  return key;
}

json key_to_json(const BlockingKeySpec& key) {
  json clauses = json::array();
  for (const KeyClause& clause : key.clauses) {
    json cj;
    cj["transform"] = transform_name(clause.transform);
    if (clause.transform == KeyTransform::ConcatGroup) {
      json parts = json::array();
      for (const ConcatPart& part : clause.parts) {
        json pj;
        pj["field"] = part.field;
        pj["op"] = concat_op_name(part.op);
        if (part.op == ConcatOp::FirstChars) pj["k"] = part.k;
        parts.push_back(std::move(pj));
      }
      cj["parts"] = std::move(parts);
    } else {
      cj["field"] = clause.field;
      if (clause.transform == KeyTransform::FirstChars) cj["k"] = clause.k;
      if (clause.transform == KeyTransform::Year && clause.year_from_end) {
        cj["scan"] = "trailing";
      }
    }
    clauses.push_back(std::move(cj));
  }
  return json{{"single_value", key.single_value}, {"clauses", std::move(clauses)}};
}

InputConfig input_from_json(const json& j) {
  InputConfig in;
  in.path = j.at("path").get<std::string>();
  in.format = input_format_from_name(j.at("format").get<std::string>());
  if (j.contains("property_map")) {
    std::map<std::string, std::string> renames;
    for (const auto& [src, dst] : j.at("property_map").items()) {
      renames[src] = dst.get<std::string>();
    }
    in.property_map = PropertyMap(std::move(renames));
  }
  in.entity_options.label_property = j.value("label_property", std::string());
  if (j.contains("type_filter")) {
    const json& tf = j.at("type_filter");
    in.entity_options.type_property = tf.at("property").get<std::string>();
    for (const json& v : tf.at("values")) {
      in.entity_options.type_values.insert(v.get<std::string>());
    }
  }
  return in;
}

json input_to_json(const InputConfig& in) {
  json j;
  j["path"] = in.path;
  j["format"] = std::string(input_format_name(in.format));
  if (!in.property_map.empty()) {
    json pm = json::object();
    for (const auto& [src, dst] : in.property_map.renames()) pm[src] = dst;
    j["property_map"] = std::move(pm);
  }
  if (!in.entity_options.label_property.empty()) {
    j["label_property"] = in.entity_options.label_property;
  }
  if (in.entity_options.type_filter_enabled()) {
    j["type_filter"] = {{"property", in.entity_options.type_property},
                        {"values", in.entity_options.type_values}};
  }
  return j;
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    PipelineConfig c;
    c.version = j.value("version", 1);
    if (c.version != ERKIT_CONFIG_VERSION) {
      throw ConfigError("unsupported config version " + std::to_string(c.version));
    }
    c.mode = pair_mode_from_name(j.value("mode", std::string("bilateral")));
    c.d1 = input_from_json(j.at("inputs").at("d1"));
    if (c.mode == PairMode::Bilateral) {
      c.d2 = input_from_json(j.at("inputs").at("d2"));
    }

    const json& bj = j.at("blocking");
    c.blocking.method = blocking_method_from_name(bj.at("method").get<std::string>());
    if (bj.contains("key")) c.blocking.key = key_from_json(bj.at("key"));
    c.blocking.window = bj.value("window", std::size_t{4});
    c.blocking.max_block_size = bj.value("max_block_size", std::size_t{0});
    c.blocking.feature_field = bj.value("feature_field", std::string());
    if (bj.contains("canopy")) {
      const json& cj = bj.at("canopy");
      c.blocking.canopy.tight = cj.at("tight").get<double>();
      c.blocking.canopy.loose = cj.at("loose").get<double>();
      std::string dist = cj.value("distance", std::string("jaccard_tokens"));
      if (dist == "jaccard_tokens") {
        c.blocking.canopy.distance = CanopyDistance::JaccardTokens;
      } else if (dist == "normalized_levenshtein") {
        c.blocking.canopy.distance = CanopyDistance::NormalizedLevenshtein;
      } else {
        throw ConfigError("unknown canopy distance: " + dist);
      }
      c.blocking.canopy_options.random_seeding = cj.value("random_seeding", false);
    }
    if (bj.contains("minhash")) {
      const json& mj = bj.at("minhash");
      c.blocking.minhash.num_hashes = mj.value("num_hashes", 256);
      c.blocking.minhash.bands = mj.value("bands", 32);
      c.blocking.minhash.rows_per_band = mj.value("rows_per_band", 8);
    }

    if (j.contains("similarity")) {
      const json& sj = j.at("similarity");
      if (sj.contains("functions")) {
        c.similarity.functions = sj.at("functions").get<std::vector<std::string>>();
      }
      const json& spec = sj.at("spec");
      c.similarity.kind = spec_kind_from_name(spec.at("kind").get<std::string>());
      switch (c.similarity.kind) {
        case SpecKind::Threshold:
          c.similarity.threshold = spec.at("threshold").get<double>();
          break;
        case SpecKind::TwoThreshold:
          c.similarity.lower = spec.at("lower").get<double>();
          c.similarity.upper = spec.at("upper").get<double>();
          break;
        case SpecKind::LearnedLinear:
          c.similarity.model_path = spec.at("model").get<std::string>();
          break;
      }
      if (sj.contains("training")) {
        const json& tj = sj.at("training");
        c.similarity.training_path = tj.value("pairs", std::string());
        c.similarity.epochs = tj.value("epochs", 200);
        c.similarity.learning_rate = tj.value("learning_rate", 0.5);
      }
    }

    if (j.contains("evaluation")) {
      const json& ej = j.at("evaluation");
      c.evaluation.ground_truth_path = ej.value("ground_truth", std::string());
      c.evaluation.indeterminate =
          indeterminate_policy_from_name(ej.value("indeterminate", std::string("as_negative")));
      if (ej.contains("baseline_candidates")) {
        c.evaluation.baseline_candidates_path = ej.at("baseline_candidates").get<std::string>();
      }
    }

    c.seed = j.value("seed", std::uint64_t{0});
    c.output_dir = j.value("output_dir", std::string("out"));
    c.workers = j.value("workers", 1);
    c.streaming = j.value("streaming", false);
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config structure: ") + e.what());
  }
}

PipelineConfig PipelineConfig::from_json_file(const std::string& path) {
  return from_json(read_file(path));
}

std::string PipelineConfig::to_json() const {
  json j;
  j["version"] = version;
  j["mode"] = std::string(pair_mode_name(mode));
  json inputs;
  inputs["d1"] = input_to_json(d1);
  if (mode == PairMode::Bilateral) inputs["d2"] = input_to_json(d2);
  j["inputs"] = std::move(inputs);

  json bj;
  bj["method"] = std::string(blocking_method_name(blocking.method));
  if (!blocking.key.clauses.empty()) bj["key"] = key_to_json(blocking.key);
  if (blocking.method == BlockingMethod::SortedNeighborhood) bj["window"] = blocking.window;
  if (blocking.max_block_size > 0) bj["max_block_size"] = blocking.max_block_size;
  if (!blocking.feature_field.empty()) bj["feature_field"] = blocking.feature_field;
  if (blocking.method == BlockingMethod::Canopies) {
    bj["canopy"] = {{"tight", blocking.canopy.tight},
                    {"loose", blocking.canopy.loose},
                    {"distance", blocking.canopy.distance == CanopyDistance::JaccardTokens
                                     ? "jaccard_tokens"
                                     : "normalized_levenshtein"},
                    {"random_seeding", blocking.canopy_options.random_seeding}};
  }
  if (blocking.method == BlockingMethod::MinHash) {
    bj["minhash"] = {{"num_hashes", blocking.minhash.num_hashes},
                     {"bands", blocking.minhash.bands},
                     {"rows_per_band", blocking.minhash.rows_per_band}};
  }
  j["blocking"] = std::move(bj);

  json sj;
  if (!similarity.functions.empty()) sj["functions"] = similarity.functions;
  json spec;
  spec["kind"] = std::string(spec_kind_name(similarity.kind));
  switch (similarity.kind) {
    case SpecKind::Threshold: spec["threshold"] = similarity.threshold; break;
    case SpecKind::TwoThreshold:
      spec["lower"] = similarity.lower;
      spec["upper"] = similarity.upper;
      break;
    case SpecKind::LearnedLinear: spec["model"] = similarity.model_path; break;
  }
  sj["spec"] = std::move(spec);
  if (!similarity.training_path.empty()) {
    sj["training"] = {{"pairs", similarity.training_path},
                      {"epochs", similarity.epochs},
                      {"learning_rate", similarity.learning_rate}};
  }
  j["similarity"] = std::move(sj);

  if (!evaluation.ground_truth_path.empty() || evaluation.baseline_candidates_path) {
    json ej;
    if (!evaluation.ground_truth_path.empty()) {
      ej["ground_truth"] = evaluation.ground_truth_path;
    }
    ej["indeterminate"] = std::string(indeterminate_policy_name(evaluation.indeterminate));
    if (evaluation.baseline_candidates_path) {
      ej["baseline_candidates"] = *evaluation.baseline_candidates_path;
    }
    j["evaluation"] = std::move(ej);
  }

  j["seed"] = seed;
  j["output_dir"] = output_dir;
  j["workers"] = workers;
  j["streaming"] = streaming;
  return j.dump(2);
}

void PipelineConfig::validate() const {
  auto require_file = [](const std::string& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string(what) + " path is empty");
    if (!fs::exists(path)) {
      throw ConfigError(std::string(what) + " does not exist: " + path);
    }
  };
  require_file(d1.path, "input d1");
  if (mode == PairMode::Bilateral) require_file(d2.path, "input d2");

  switch (blocking.method) {
    case BlockingMethod::Traditional:
      if (blocking.key.clauses.empty()) throw ConfigError("traditional blocking needs a key");
      break;
    case BlockingMethod::SortedNeighborhood:
      if (!blocking.key.single_value) {
        throw ConfigError("sorted neighborhood needs a single-value key");
      }
      if (blocking.window < 2) throw ConfigError("window must be at least 2");
      break;
    case BlockingMethod::Canopies:
      blocking.canopy.validate();
      if (blocking.feature_field.empty()) {
        throw ConfigError("canopies needs a feature_field");
      }
      break;
    case BlockingMethod::MinHash:
      blocking.minhash.validate();
      if (blocking.feature_field.empty()) {
        throw ConfigError("minhash needs a feature_field");
      }
      break;
  }
  if (blocking.max_block_size == 1) {
    throw ConfigError("block purge cap must be at least 2");
  }

  switch (similarity.kind) {
    case SpecKind::Threshold:
      LinkSpec::make_threshold(similarity.threshold);
      break;
    case SpecKind::TwoThreshold:
      LinkSpec::make_two_threshold(similarity.lower, similarity.upper);
      break;
    case SpecKind::LearnedLinear:
      require_file(similarity.model_path, "model");
      break;
  }
  feature_library(similarity.functions);

  if (!evaluation.ground_truth_path.empty()) {
    require_file(evaluation.ground_truth_path, "ground truth");
  }
  if (evaluation.baseline_candidates_path) {
    require_file(*evaluation.baseline_candidates_path, "baseline candidates");
  }
  if (workers < 1) throw ConfigError("workers must be at least 1");
}

namespace {

[[noreturn]] void stage_fail(const char* stage, const std::exception& e) {
  throw Error(std::string("[") + stage + "] " + e.what());
}

struct LoadedInputs {
  Dataset d1;
  Dataset d2;
};

LoadedInputs load_inputs(const PipelineConfig& config) {
  LoadedInputs io;
  io.d1 = load_dataset(config.d1.path, config.d1.format, config.d1.property_map,
                       config.d1.entity_options, "d1");
  if (config.mode == PairMode::Bilateral) {
    io.d2 = load_dataset(config.d2.path, config.d2.format, config.d2.property_map,
                         config.d2.entity_options, "d2");
    if (io.d1.schema() != io.d2.schema()) {
      throw Error("datasets are not structurally homogeneous after mapping; schemas differ");
    }
  } else {
    io.d2 = io.d1;
  }
  return io;
}

MinHashParams seeded_minhash(const PipelineConfig& config) {
  MinHashParams p = config.blocking.minhash;
  p.seed = config.seed;
  return p;
}

BlockingResult run_blocking(const PipelineConfig& config, const Dataset& d1, const Dataset& d2,
                            const PairSink* sink) {
  switch (config.blocking.method) {
    case BlockingMethod::Traditional: {
      TraditionalOptions opts;
      opts.max_block_size = config.blocking.max_block_size;
      return traditional_block(config.blocking.key, d1, d2, config.mode, opts, sink);
    }
    case BlockingMethod::SortedNeighborhood:
      return sorted_neighborhood(config.blocking.key, config.blocking.window, d1, d2,
                                 config.mode, sink);
    case BlockingMethod::Canopies: {
      CanopyOptions opts = config.blocking.canopy_options;
      opts.seed = config.seed;
      return canopies(config.blocking.canopy, d1, d2, config.mode,
                      config.blocking.feature_field, opts, sink);
    }
    case BlockingMethod::MinHash:
      return minhash_lsh(seeded_minhash(config), d1, d2, config.mode,
                         config.blocking.feature_field, config.workers, sink);
  }
  throw Error("unreachable blocking method");
}

LinkSpec build_spec(const PipelineConfig& config) {
  switch (config.similarity.kind) {
    case SpecKind::Threshold:
      return LinkSpec::make_threshold(config.similarity.threshold);
    case SpecKind::TwoThreshold:
      return LinkSpec::make_two_threshold(config.similarity.lower, config.similarity.upper);
    case SpecKind::LearnedLinear:
      return link_spec_from_json(read_file(config.similarity.model_path));
  }
  throw Error("unreachable spec kind");
}

std::uint64_t fnv_config_hash(const std::string& canonical) { return fnv1a64(canonical); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json manifest_json(const PipelineConfig& config) {
  json j;
  j["tool"] = "erkit";
  j["version"] = ERKIT_VERSION;
  j["config_version"] = ERKIT_CONFIG_VERSION;
  j["config_hash"] = hex64(fnv_config_hash(config.to_json()));
  j["config"] = json::parse(config.to_json());
  j["seed"] = config.seed;
  j["workers"] = config.workers;
  j["streaming"] = config.streaming;
  auto now = std::chrono::system_clock::now().time_since_epoch();
  j["created_at_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  return j;
}

/// Sorts a partition vector; blocking emits them in candidate order already,
/// but the contract is canonical output regardless of provenance.
void sort_pairs(std::vector<EntityPair>& pairs) { std::sort(pairs.begin(), pairs.end()); }

}  // namespace

RunOutcome run_pipeline(const PipelineConfig& config) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    stage_fail("config", e);
  }

  fs::create_directories(config.output_dir);
  auto out_path = [&](const char* name) {
    return (fs::path(config.output_dir) / name).string();
  };

  RunOutcome outcome;
  outcome.paths = RunPaths{out_path("candidates.tsv"), out_path("decisions.tsv"),
                           out_path("review.tsv"),     out_path("blocking_report.json"),
                           out_path("match_report.json"), out_path("manifest.json")};

  LoadedInputs inputs;
  try {
    inputs = load_inputs(config);
  } catch (const std::exception& e) {
    stage_fail("ingest", e);
  }

  LinkSpec spec;
  std::vector<FeatureFunction> library;
  try {
    spec = build_spec(config);
    library = feature_library(config.similarity.functions);
  } catch (const std::exception& e) {
    stage_fail("similarity", e);
  }

  // Streaming mode pipes pairs into the similarity step as blocking emits
  // them; the same pair may be scored several times, and the decision map
  // deduplicates. Non-streaming classifies the materialized candidate set.
  if (config.streaming) {
    AtomicFile candidates_file(outcome.paths.candidates);
    try {
      std::map<EntityPair, MatchDecision> decided;
      PairSink sink = [&](const EntityPair& pair) {
        FeatureVector v = vectorize(pair, inputs.d1, inputs.d2, library);
        bool no_evidence = false;
        double s = score(spec, v, &no_evidence);
        decided.emplace(pair, decide(spec, s, pair));
      };
      outcome.blocking = run_blocking(config, inputs.d1, inputs.d2, &sink);
      outcome.similarity.decisions.reserve(decided.size());
      for (auto& [pair, decision] : decided) {
        outcome.similarity.decisions.push_back(decision);
        switch (decision.label) {
          case MatchLabel::Duplicate: outcome.similarity.duplicates.push_back(pair); break;
          case MatchLabel::NonDuplicate:
            outcome.similarity.non_duplicates.push_back(pair);
            break;
          case MatchLabel::Indeterminate: outcome.similarity.review.push_back(pair); break;
        }
      }
      candidates_file.write(candidates_to_tsv(outcome.blocking.candidates));
      candidates_file.commit();
    } catch (const std::exception& e) {
      stage_fail("blocking", e);
    }
  } else {
    try {
      AtomicFile candidates_file(outcome.paths.candidates);
      outcome.blocking = run_blocking(config, inputs.d1, inputs.d2, nullptr);
      candidates_file.write(candidates_to_tsv(outcome.blocking.candidates));
      candidates_file.commit();
    } catch (const std::exception& e) {
      stage_fail("blocking", e);
    }
    try {
      outcome.similarity = apply_similarity(outcome.blocking.candidates, spec, inputs.d1,
                                            inputs.d2, library, config.workers);
    } catch (const std::exception& e) {
      stage_fail("similarity", e);
    }
  }

  try {
    AtomicFile decisions_file(outcome.paths.decisions);
    decisions_file.write(decisions_to_tsv(outcome.similarity.decisions));
    decisions_file.commit();
    AtomicFile review_file(outcome.paths.review);
    review_file.write(review_to_tsv(outcome.similarity.decisions));
    review_file.commit();
  } catch (const std::exception& e) {
    stage_fail("similarity", e);
  }

  try {
    std::uint64_t omega = exhaustive_pair_count(inputs.d1, inputs.d2, config.mode);
    std::optional<GroundTruth> gt;
    std::optional<std::uint64_t> baseline;
    if (!config.evaluation.ground_truth_path.empty()) {
      gt = ground_truth_from_tsv(read_file(config.evaluation.ground_truth_path));
    }
    if (config.evaluation.baseline_candidates_path) {
      baseline = candidates_from_tsv(read_file(*config.evaluation.baseline_candidates_path))
                     .size();
    }
    if (omega > 0) {
      outcome.blocking_metrics =
          blocking_report(outcome.blocking.candidates, omega, gt ? &*gt : nullptr,
                          baseline ? &*baseline : nullptr);
    }

    json blocking_json;
    blocking_json["run"] = json::parse(outcome.blocking.meta.to_json());
    blocking_json["metrics"] = outcome.blocking_metrics
                                   ? json::parse(outcome.blocking_metrics->to_json())
                                   : json(nullptr);
    AtomicFile blocking_file(outcome.paths.blocking_report);
    blocking_file.write(blocking_json.dump(2) + "\n");
    blocking_file.commit();

    if (gt && !gt->matches.empty()) {
      outcome.match_metrics =
          match_metrics(outcome.similarity.decisions, *gt, outcome.blocking.candidates,
                        config.evaluation.indeterminate);
      // Recall can never exceed pairs completeness (count level: TP <= hits).
      if (outcome.blocking_metrics &&
          outcome.match_metrics->tp > outcome.blocking_metrics->counts.hits) {
        throw Error("internal invariant violated: TP exceeds |C intersect GT|");
      }
      AtomicFile match_file(outcome.paths.match_report);
      match_file.write(outcome.match_metrics->to_json() + "\n");
      match_file.commit();
    }
  } catch (const std::exception& e) {
    stage_fail("evaluation", e);
  }

  try {
    AtomicFile manifest_file(outcome.paths.manifest);
    manifest_file.write(manifest_json(config).dump(2) + "\n");
    manifest_file.commit();
  } catch (const std::exception& e) {
    stage_fail("manifest", e);
  }

  sort_pairs(outcome.similarity.duplicates);
  sort_pairs(outcome.similarity.non_duplicates);
  sort_pairs(outcome.similarity.review);
  return outcome;
}

TrainResult run_training(const PipelineConfig& config, const std::string& model_path) {
  if (config.similarity.training_path.empty()) {
    throw ConfigError("no training pairs configured");
  }
  LoadedInputs inputs = load_inputs(config);
  std::vector<LabeledPair> training =
      labeled_pairs_from_tsv(read_file(config.similarity.training_path));
  std::vector<FeatureFunction> library = feature_library(config.similarity.functions);
  TrainResult result = train_linear(training, inputs.d1, inputs.d2, library,
                                    config.similarity.epochs, config.similarity.learning_rate,
                                    config.seed);
  AtomicFile model_file(model_path);
  model_file.write(link_spec_to_json(result.spec) + "\n");
  model_file.commit();
  return result;
}

CurveTable run_sweep(const PipelineConfig& config, const std::string& param,
                     const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("sweep requires a non-empty value list");
  if (config.evaluation.ground_truth_path.empty()) {
    throw ConfigError("sweep requires a ground truth for its metrics");
  }

  if (param == "threshold") {
    if (config.similarity.kind != SpecKind::Threshold) {
      throw ConfigError("threshold sweep requires a threshold link spec");
    }
    // Scores do not depend on the threshold, so one scoring pass feeds every
    // sweep point; only the decision step reruns.
    LoadedInputs inputs = load_inputs(config);
    GroundTruth gt = ground_truth_from_tsv(read_file(config.evaluation.ground_truth_path));
    BlockingResult blocked = run_blocking(config, inputs.d1, inputs.d2, nullptr);
    std::vector<FeatureFunction> library = feature_library(config.similarity.functions);
    LinkSpec probe = LinkSpec::make_threshold(0.0);
    SimilarityOutput scored = apply_similarity(blocked.candidates, probe, inputs.d1,
                                               inputs.d2, library, config.workers);

    std::vector<CurvePoint> rows;
    for (double t : values) {
      LinkSpec spec = LinkSpec::make_threshold(t);
      std::vector<MatchDecision> decisions;
      decisions.reserve(scored.decisions.size());
      for (const MatchDecision& d : scored.decisions) {
        decisions.push_back(decide(spec, d.score, d.pair));
      }
      MatchReport report = match_metrics(decisions, gt, blocked.candidates,
                                         config.evaluation.indeterminate);
      rows.push_back(CurvePoint{t, report.precision ? report.precision->to_double() : 0.0,
                                report.recall ? report.recall->to_double() : 0.0});
    }
    return curve_points("threshold", "precision", "recall", std::move(rows));
  }

  auto apply_param = [&](PipelineConfig& c, double value) {
    if (param == "window") {
      c.blocking.window = static_cast<std::size_t>(value);
    } else if (param == "loose") {
      c.blocking.canopy.loose = value;
    } else if (param == "tight") {
      c.blocking.canopy.tight = value;
    } else if (param == "max_block_size") {
      c.blocking.max_block_size = static_cast<std::size_t>(value);
    } else if (param == "bands") {
      int bands = static_cast<int>(value);
      if (bands < 1 || c.blocking.minhash.num_hashes % bands != 0) {
        throw ConfigError("bands must divide num_hashes");
      }
      c.blocking.minhash.bands = bands;
      c.blocking.minhash.rows_per_band = c.blocking.minhash.num_hashes / bands;
    } else {
      throw ConfigError("unrecognized sweep parameter: " + param);
    }
  };

  LoadedInputs inputs = load_inputs(config);
  GroundTruth gt = ground_truth_from_tsv(read_file(config.evaluation.ground_truth_path));
  std::uint64_t omega = exhaustive_pair_count(inputs.d1, inputs.d2, config.mode);
  if (omega == 0) throw ConfigError("sweep requires non-empty inputs");

  std::vector<CurvePoint> rows;
  for (double value : values) {
    PipelineConfig point_config = config;
    apply_param(point_config, value);
    BlockingResult blocked = run_blocking(point_config, inputs.d1, inputs.d2, nullptr);
    BlockingReport report = blocking_report(blocked.candidates, omega, &gt, nullptr);
    rows.push_back(CurvePoint{value, report.pc ? report.pc->to_double() : 0.0,
                              report.rr.to_double()});
  }
  return curve_points(param, "pc", "rr", std::move(rows));
}

}  // namespace erkit
