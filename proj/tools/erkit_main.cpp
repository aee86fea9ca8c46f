// Command-line front end for the entity resolution toolkit: one subcommand
// per pipeline stage plus `run` (the full two-step workflow), `sweep` and a
// synthetic corpus generator.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erkit/corpus.hpp"
#include "erkit/evaluation.hpp"
#include "erkit/io.hpp"
#include "erkit/pipeline.hpp"
#include "erkit/version.hpp"

namespace fs = std::filesystem;
using namespace erkit;

namespace {

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> output_dir;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Override the config seed");
  cmd->add_option("--workers", flags.workers, "Worker threads (never changes results)");
  cmd->add_option("--output-dir", flags.output_dir, "Override the config output directory");
}

PipelineConfig load_config(const std::string& path, const CommonFlags& flags) {
  PipelineConfig config = PipelineConfig::from_json_file(path);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.workers) config.workers = *flags.workers;
  if (flags.output_dir) config.output_dir = *flags.output_dir;
  return config;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  return values;
}

PropertyMap parse_map_flags(const std::vector<std::string>& entries) {
  std::map<std::string, std::string> renames;
  for (const std::string& entry : entries) {
    std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--map expects SOURCE=TARGET, got \"" + entry + "\"");
    }
    renames[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  return PropertyMap(std::move(renames));
}

int cmd_ingest(const std::string& input, const std::string& format_name,
               const std::vector<std::string>& map_entries, const std::string& label,
               const std::string& output, bool summary) {
  EntityOptions options;
  options.label_property = label;
  Dataset dataset = load_dataset(input, input_format_from_name(format_name),
                                 parse_map_flags(map_entries), options);
  if (!output.empty()) {
    write_file(output, write_csv(dataset));
  }
  if (summary || output.empty()) {
    std::cout << "dataset " << dataset.name() << ": " << dataset.size() << " entities, "
              << dataset.schema().size() << " fields\n";
    for (const std::string& field : dataset.schema()) std::cout << "  " << field << "\n";
  }
  return 0;
}

int cmd_generate(std::size_t entities, double fraction, const std::string& ops_csv,
                 std::uint64_t seed, const std::string& output_dir) {
  SyntheticCorpusSpec spec;
  spec.num_entities = entities;
  spec.duplicate_fraction = fraction;
  spec.seed = seed;
  std::stringstream ss(ops_csv);
  std::string op;
  while (std::getline(ss, op, ',')) {
    if (!op.empty()) spec.ops.insert(corruption_op_from_name(op));
  }

  SyntheticCorpus corpus = generate_corpus(spec);
  fs::create_directories(output_dir);
  write_file((fs::path(output_dir) / "d1.csv").string(), write_csv(corpus.d1));
  write_file((fs::path(output_dir) / "d2.csv").string(), write_csv(corpus.d2));
  write_file((fs::path(output_dir) / "gt.tsv").string(), ground_truth_to_tsv(corpus.gt));
  std::cout << "wrote " << corpus.d1.size() << "+" << corpus.d2.size() << " entities, "
            << corpus.gt.matches.size() << " ground-truth pairs to " << output_dir << "\n";
  return 0;
}

int cmd_run(const PipelineConfig& config) {
  RunOutcome outcome = run_pipeline(config);
  std::cout << "candidates: " << outcome.blocking.candidates.size() << "\n"
            << "duplicates: " << outcome.similarity.duplicates.size() << "\n"
            << "review:     " << outcome.similarity.review.size() << "\n";
  if (outcome.similarity.no_evidence_pairs > 0) {
    std::cerr << "warning: " << outcome.similarity.no_evidence_pairs
              << " pair(s) had no usable feature values and scored 0\n";
  }
  if (outcome.blocking_metrics) {
    std::cout << "rr: " << outcome.blocking_metrics->rr.to_decimal(6);
    if (outcome.blocking_metrics->pc) {
      std::cout << "  pc: " << outcome.blocking_metrics->pc->to_decimal(6);
    }
    std::cout << "\n";
  }
  if (outcome.match_metrics) {
    std::cout << "tp/fp/fn: " << outcome.match_metrics->tp << "/" << outcome.match_metrics->fp
              << "/" << outcome.match_metrics->fn << "\n";
  }
  std::cout << "outputs in " << config.output_dir << "\n";
  return 0;
}

int cmd_block(const PipelineConfig& config) {
  // Blocking-only run: reuse the pipeline with a permissive threshold so the
  // similarity stage is a no-op pass-through, then keep only its artifacts.
  RunOutcome outcome = run_pipeline(config);
  std::cout << "candidates: " << outcome.blocking.candidates.size() << " -> "
            << outcome.paths.candidates << "\n";
  return 0;
}

int cmd_train(const PipelineConfig& config, const std::string& model_out) {
  TrainResult result = run_training(config, model_out);
  std::cout << "trained " << result.spec.weights.size() << " weights, final loss "
            << result.final_loss << " -> " << model_out << "\n";
  return 0;
}

int cmd_match(const PipelineConfig& config, const std::string& candidates_path) {
  Dataset d1 = load_dataset(config.d1.path, config.d1.format, config.d1.property_map,
                            config.d1.entity_options, "d1");
  Dataset d2 = config.mode == PairMode::Bilateral
                   ? load_dataset(config.d2.path, config.d2.format, config.d2.property_map,
                                  config.d2.entity_options, "d2")
                   : d1;
  CandidateSet candidates = candidates_from_tsv(read_file(candidates_path));
  LinkSpec spec;
  switch (config.similarity.kind) {
    case SpecKind::Threshold:
      spec = LinkSpec::make_threshold(config.similarity.threshold);
      break;
    case SpecKind::TwoThreshold:
      spec = LinkSpec::make_two_threshold(config.similarity.lower, config.similarity.upper);
      break;
    case SpecKind::LearnedLinear:
      spec = link_spec_from_json(read_file(config.similarity.model_path));
      break;
  }
  SimilarityOutput out =
      apply_similarity(candidates, spec, d1, d2, feature_library(config.similarity.functions),
                       config.workers);
  fs::create_directories(config.output_dir);
  write_file((fs::path(config.output_dir) / "decisions.tsv").string(),
             decisions_to_tsv(out.decisions));
  write_file((fs::path(config.output_dir) / "review.tsv").string(),
             review_to_tsv(out.decisions));
  std::cout << out.duplicates.size() << " duplicates, " << out.review.size()
            << " flagged for review\n";
  return 0;
}

int cmd_evaluate(const PipelineConfig& config, const std::string& candidates_path,
                 const std::string& decisions_path) {
  if (config.evaluation.ground_truth_path.empty()) {
    throw ConfigError("evaluate requires evaluation.ground_truth in the config");
  }
  Dataset d1 = load_dataset(config.d1.path, config.d1.format, config.d1.property_map,
                            config.d1.entity_options, "d1");
  Dataset d2 = config.mode == PairMode::Bilateral
                   ? load_dataset(config.d2.path, config.d2.format, config.d2.property_map,
                                  config.d2.entity_options, "d2")
                   : d1;
  GroundTruth gt = ground_truth_from_tsv(read_file(config.evaluation.ground_truth_path));
  CandidateSet candidates = candidates_from_tsv(read_file(candidates_path));
  std::uint64_t omega = exhaustive_pair_count(d1, d2, config.mode);
  std::optional<std::uint64_t> baseline;
  if (config.evaluation.baseline_candidates_path) {
    baseline =
        candidates_from_tsv(read_file(*config.evaluation.baseline_candidates_path)).size();
  }
  BlockingReport report =
      blocking_report(candidates, omega, &gt, baseline ? &*baseline : nullptr);
  fs::create_directories(config.output_dir);
  write_file((fs::path(config.output_dir) / "blocking_report.json").string(),
             report.to_json() + "\n");
  std::cout << report.to_json() << "\n";

  if (!decisions_path.empty()) {
    std::vector<MatchDecision> decisions = decisions_from_tsv(read_file(decisions_path));
    MatchReport match =
        match_metrics(decisions, gt, candidates, config.evaluation.indeterminate);
    write_file((fs::path(config.output_dir) / "match_report.json").string(),
               match.to_json() + "\n");
    std::cout << match.to_json() << "\n";
  }
  return 0;
}

int cmd_sweep(const PipelineConfig& config, const std::string& param,
              const std::string& values_csv, const std::string& output) {
  CurveTable table = run_sweep(config, param, parse_values(values_csv));
  std::string csv = table.to_csv();
  if (!output.empty()) {
    write_file(output, csv);
    std::cout << table.rows.size() << " sweep points -> " << output << "\n";
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"erkit - two-step entity resolution over personal knowledge graphs"};
  app.set_version_flag("--version", ERKIT_VERSION);
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Parse a dataset and write normalized CSV");
  std::string in_path, in_format = "csv", in_label, in_output;
  std::vector<std::string> in_map;
  bool in_summary = false;
  ingest->add_option("--input", in_path, "Input file")->required();
  ingest->add_option("--format", in_format, "csv or ntriples");
  ingest->add_option("--map", in_map, "Property rename SOURCE=TARGET (repeatable)");
  ingest->add_option("--label", in_label, "Property/column used as the entity label");
  ingest->add_option("--output", in_output, "Normalized CSV output path");
  ingest->add_flag("--summary", in_summary, "Print schema and entity count");

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a synthetic corpus");
  std::size_t gen_entities = 100;
  double gen_fraction = 0.3;
  std::string gen_ops = "typo,initialism";
  std::uint64_t gen_seed = 0;
  std::string gen_out = "corpus";
  generate->add_option("--entities", gen_entities, "Entities per dataset");
  generate->add_option("--duplicate-fraction", gen_fraction, "Fraction of D1 duplicated in D2");
  generate->add_option("--ops", gen_ops,
                       "Corruptions: typo,token-drop,initialism,year-only-dob");
  generate->add_option("--seed", gen_seed, "Generator seed");
  generate->add_option("--output-dir", gen_out, "Output directory");

  // config-driven subcommands
  std::string config_path;
  CommonFlags flags;

  auto* run = app.add_subcommand("run", "Run the full two-step pipeline from a config");
  run->add_option("--config", config_path, "Pipeline config JSON")->required();
  bool run_streaming = false;
  run->add_flag("--streaming", run_streaming,
                "Pipe pairs straight into the similarity step (no materialized set)");
  add_common(run, flags);

  auto* block = app.add_subcommand("block", "Run ingest + blocking only");
  block->add_option("--config", config_path, "Pipeline config JSON")->required();
  add_common(block, flags);

  auto* train = app.add_subcommand("train", "Train the learned-linear link specification");
  train->add_option("--config", config_path, "Pipeline config JSON")->required();
  std::string train_model_out = "model.json";
  train->add_option("--model-out", train_model_out, "Where to write the model JSON");
  add_common(train, flags);

  auto* match = app.add_subcommand("match", "Apply the link specification to candidates");
  match->add_option("--config", config_path, "Pipeline config JSON")->required();
  std::string match_candidates;
  match->add_option("--candidates", match_candidates, "Candidate TSV")->required();
  add_common(match, flags);

  auto* evaluate = app.add_subcommand("evaluate", "Score candidates/decisions against truth");
  evaluate->add_option("--config", config_path, "Pipeline config JSON")->required();
  std::string eval_candidates, eval_decisions;
  evaluate->add_option("--candidates", eval_candidates, "Candidate TSV")->required();
  evaluate->add_option("--decisions", eval_decisions, "Decision TSV (optional)");
  add_common(evaluate, flags);

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and emit curve data");
  sweep->add_option("--config", config_path, "Pipeline config JSON")->required();
  std::string sweep_param, sweep_values, sweep_output;
  sweep->add_option("--param", sweep_param, "window|threshold|loose|tight|max_block_size|bands")
      ->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->add_option("--output", sweep_output, "Curve CSV path");
  add_common(sweep, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      return cmd_ingest(in_path, in_format, in_map, in_label, in_output, in_summary);
    }
    if (*generate) {
      return cmd_generate(gen_entities, gen_fraction, gen_ops, gen_seed, gen_out);
    }
    if (*run) {
      PipelineConfig config = load_config(config_path, flags);
      if (run_streaming) config.streaming = true;
      return cmd_run(config);
    }
    if (*block) return cmd_block(load_config(config_path, flags));
    if (*train) return cmd_train(load_config(config_path, flags), train_model_out);
    if (*match) return cmd_match(load_config(config_path, flags), match_candidates);
    if (*evaluate) {
      return cmd_evaluate(load_config(config_path, flags), eval_candidates, eval_decisions);
    }
    if (*sweep) {
      return cmd_sweep(load_config(config_path, flags), sweep_param, sweep_values,
                       sweep_output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
