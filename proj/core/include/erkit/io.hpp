#pragma once

#include <string>
#include <vector>

#include "erkit/model.hpp"
#include "erkit/similarity.hpp"

namespace erkit {

/// Candidate sets: two-column TSV (left-URI <TAB> right-URI), sorted, no
/// header. Ground truth uses the same format.
std::string candidates_to_tsv(const CandidateSet& candidates);
CandidateSet candidates_from_tsv(const std::string& text, std::string source_method = "file");

std::string ground_truth_to_tsv(const GroundTruth& gt);
GroundTruth ground_truth_from_tsv(const std::string& text);

/// Decisions: left, right, score (6 decimals), label.
std::string decisions_to_tsv(const std::vector<MatchDecision>& decisions);
std::vector<MatchDecision> decisions_from_tsv(const std::string& text);

/// Review queue: left, right, score (6 decimals).
std::string review_to_tsv(const std::vector<MatchDecision>& decisions);

/// Training pairs: left, right, 1|0.
std::vector<LabeledPair> labeled_pairs_from_tsv(const std::string& text);
std::string labeled_pairs_to_tsv(const std::vector<LabeledPair>& pairs);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Writes to `path + ".partial"` and renames into place on commit(). An
/// aborted stage leaves the .partial file behind for inspection.
class AtomicFile {
 public:
  explicit AtomicFile(std::string path);
  void write(const std::string& content);
  void commit();

 private:
  std::string path_;
  bool written_ = false;
};

}  // namespace erkit
