#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "erkit/model.hpp"

namespace erkit {

enum class KeyTransform { Tokens, Year, FirstChars, Exact, ConcatGroup };

/// Sub-extractor of a concat-group clause; the outputs of all parts are
/// concatenated into a single BKV (the Sorted Neighborhood sorting key).
enum class ConcatOp { Initials, FirstChars, Year, Exact };

struct ConcatPart {
  std::string field;
  ConcatOp op = ConcatOp::Exact;
  int k = 1;  // FirstChars only
};

struct KeyClause {
  std::string field;  // unused for ConcatGroup
  KeyTransform transform = KeyTransform::Tokens;
  int k = 1;                   // FirstChars only
  bool year_from_end = false;  // Year scan direction
  std::vector<ConcatPart> parts;
};

/// Declarative blocking key: the union of all clause outputs, with the
/// guarantee that the result is never empty (entities whose clauses all
/// produce nothing fall back to their own id as the single BKV).
struct BlockingKeySpec {
  std::vector<KeyClause> clauses;
  /// Requires exactly one concat-group clause, yielding exactly one BKV
  /// per entity; mandatory for Sorted Neighborhood.
  bool single_value = false;

  void validate(const Dataset& dataset) const;
};

/// BKV set of one entity. Missing fields contribute nothing; an empty
/// union falls back to {entity.id}.
std::set<std::string> apply_key(const BlockingKeySpec& key, const Entity& entity,
                                const Dataset& dataset);

/// An inverted-index bucket: one blocking key value and the entities whose
/// BKV set contains it. The tag is 0 for D1 and 1 for D2 (always 0 in
/// dedup mode).
struct Block {
  std::string bkv;
  std::vector<std::pair<int, std::string>> members;  // (dataset tag, entity id)
};

/// Skew elimination: drops every block with more members than
/// `max_block_size` before pair emission. Returns the survivors; the purge
/// count lands in `purged` when given.
std::vector<Block> block_purge(std::vector<Block> blocks, std::size_t max_block_size,
                               std::size_t* purged = nullptr);

/// Per-run metadata serialized next to the candidate set.
struct BlockingMeta {
  std::string method;
  std::map<std::string, std::string> params;
  std::map<std::size_t, std::size_t> block_size_histogram;
  std::size_t purged_blocks = 0;
  std::size_t skipped_entities = 0;  // MinHash entities with empty token sets
  std::vector<std::pair<double, double>> lsh_curve;  // (jaccard, P[candidate])
  std::map<std::string, double> lsh_sensitivity;     // r, s, p_r, p_s

  std::string to_json() const;
};

struct BlockingResult {
  CandidateSet candidates;
  BlockingMeta meta;
};

/// Receives candidate pairs as they are generated. The same pair may be
/// delivered several times (once per co-occurrence); set semantics are the
/// caller's job. Used by the pipeline's streaming mode.
using PairSink = std::function<void(const EntityPair&)>;

struct TraditionalOptions {
  std::size_t max_block_size = 0;  // 0 disables purging
};

/// Simple indexing: entities sharing at least one BKV share a block; every
/// co-occurring (bilateral / unordered) pair becomes a candidate.
BlockingResult traditional_block(const BlockingKeySpec& key, const Dataset& d1,
                                 const Dataset& d2, PairMode mode,
                                 const TraditionalOptions& options = {},
                                 const PairSink* sink = nullptr);

std::vector<Block> build_blocks(const BlockingKeySpec& key, const Dataset& d1,
                                const Dataset& d2, PairMode mode);

/// Sorted Neighborhood: records (pooled across both datasets in bilateral
/// mode) are sorted by their single BKV, ties broken by dataset tag then
/// entity id, and a window of size w >= 2 is slid one record at a time,
/// pairing everything inside it. A window larger than the pool degenerates
/// to all pairs of the pool.
BlockingResult sorted_neighborhood(const BlockingKeySpec& key, std::size_t window,
                                   const Dataset& d1, const Dataset& d2, PairMode mode,
                                   const PairSink* sink = nullptr);

enum class CanopyDistance { JaccardTokens, NormalizedLevenshtein };

/// Thresholds for canopy clustering; requires 0 <= tight <= loose.
struct CanopyParams {
  double tight = 0.0;
  double loose = 0.0;
  CanopyDistance distance = CanopyDistance::JaccardTokens;

  void validate() const;
};

struct CanopyOptions {
  /// Dedup seeding is ascending-id by default so runs are reproducible;
  /// this flag restores random seed choice, driven by `seed`.
  bool random_seeding = false;
  std::uint64_t seed = 0;
};

/// The canopies produced by one run, before pair emission. Exposed so the
/// coverage and nesting properties can be checked directly.
std::vector<Block> build_canopies(const CanopyParams& params, const Dataset& d1,
                                  const Dataset& d2, PairMode mode,
                                  const std::string& feature_field,
                                  const CanopyOptions& options = {});

/// Instance-based blocking: repeatedly seed a canopy, pull in every
/// remaining entity closer than `loose`, and retire the seed plus everything
/// closer than `tight`. Bilateral mode seeds exclusively from the smaller
/// dataset (ties: lexicographically smaller name) in ascending id order,
/// which makes the run deterministic.
BlockingResult canopies(const CanopyParams& params, const Dataset& d1, const Dataset& d2,
                        PairMode mode, const std::string& feature_field,
                        const CanopyOptions& options = {}, const PairSink* sink = nullptr);

/// Banded MinHash parameters; bands * rows_per_band must equal num_hashes.
struct MinHashParams {
  int num_hashes = 256;
  int bands = 32;
  int rows_per_band = 8;
  std::uint64_t seed = 0;

  void validate() const;
};

/// MinHash signature of a token set under seed-derived universal hashes.
/// Exposed so signature agreement can be measured against exact Jaccard.
std::vector<std::uint64_t> minhash_signature(const std::set<std::string>& tokens,
                                             const MinHashParams& params);

/// P(candidate | jaccard = x) = 1 - (1 - x^rows)^bands for the banded family.
double lsh_candidate_probability(double jaccard, int rows_per_band, int bands);

/// LSH blocking over lowercased tokens of `feature_field`: entities sharing
/// any full band bucket are paired. Entities with empty token sets receive
/// no signature and participate in no pair (counted in the metadata).
BlockingResult minhash_lsh(const MinHashParams& params, const Dataset& d1, const Dataset& d2,
                           PairMode mode, const std::string& feature_field, int workers = 1,
                           const PairSink* sink = nullptr);

/// Distance used by canopies; exposed for tests.
double canopy_distance(CanopyDistance kind, const std::optional<Literal>& a,
                       const std::optional<Literal>& b);

}  // namespace erkit
