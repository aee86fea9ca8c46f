#include "erkit/blocking.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include <nlohmann/json.hpp>

#include "erkit/text.hpp"
#include "parallel.hpp"

namespace erkit {

using nlohmann::json;

namespace {

std::string concat_part_value(const ConcatPart& part, const Literal& value) {
  switch (part.op) {
    case ConcatOp::Initials: {
      std::string out;
      for (const std::string& tok : tokenize_lower(value.lexical)) out.push_back(tok.front());
      return out;
    }
    case ConcatOp::FirstChars:
      return value.lexical.substr(0, static_cast<std::size_t>(part.k));
    case ConcatOp::Year:
      return extract_year(value.lexical).value_or("");
    case ConcatOp::Exact:
      return value.lexical;
  }
  return "";
}

void apply_clause(const KeyClause& clause, const Entity& entity, const Dataset& dataset,
                  std::set<std::string>& out) {
  if (clause.transform == KeyTransform::ConcatGroup) {
    std::string bkv;
    for (const ConcatPart& part : clause.parts) {
      const auto& value = dataset.field_of(entity, part.field);
      if (value) bkv += concat_part_value(part, *value);
    }
    if (!bkv.empty()) out.insert(std::move(bkv));
    return;
  }

  const auto& value = dataset.field_of(entity, clause.field);
  if (!value) return;
  switch (clause.transform) {
    case KeyTransform::Tokens:
      for (std::string& tok : tokenize(value->lexical)) out.insert(std::move(tok));
      break;
    case KeyTransform::Year:
      if (auto year = extract_year(value->lexical, clause.year_from_end)) {
        out.insert(std::move(*year));
      }
      break;
    case KeyTransform::FirstChars:
      if (!value->lexical.empty()) {
        out.insert(value->lexical.substr(0, static_cast<std::size_t>(clause.k)));
      }
      break;
    case KeyTransform::Exact:
      if (!value->lexical.empty()) out.insert(value->lexical);
      break;
    case KeyTransform::ConcatGroup:
      break;  // handled above
  }
}

}  // namespace

void BlockingKeySpec::validate(const Dataset& dataset) const {
  if (clauses.empty()) throw ConfigError("blocking key has no clauses");
  std::size_t concat_clauses = 0;
  for (const KeyClause& clause : clauses) {
    if (clause.transform == KeyTransform::ConcatGroup) {
      ++concat_clauses;
      if (clause.parts.empty()) throw ConfigError("concat-group clause has no parts");
      for (const ConcatPart& part : clause.parts) {
        if (!dataset.field_index(part.field)) {
          throw ConfigError("blocking key references unknown field \"" + part.field + "\"");
        }
        if (part.op == ConcatOp::FirstChars && part.k < 1) {
          throw ConfigError("first-chars part requires k >= 1");
        }
      }
    } else {
      if (!dataset.field_index(clause.field)) {
        throw ConfigError("blocking key references unknown field \"" + clause.field + "\"");
      }
      if (clause.transform == KeyTransform::FirstChars && clause.k < 1) {
        throw ConfigError("first-chars clause requires k >= 1");
      }
    }
  }
  if (single_value && (clauses.size() != 1 || concat_clauses != 1)) {
    throw ConfigError("single-value mode requires exactly one concat-group clause");
  }
}

std::set<std::string> apply_key(const BlockingKeySpec& key, const Entity& entity,
                                const Dataset& dataset) {
  std::set<std::string> bkvs;
  for (const KeyClause& clause : key.clauses) {
    apply_clause(clause, entity, dataset, bkvs);
  }
  if (bkvs.empty()) bkvs.insert(entity.id);  // a blocking key never returns an empty set
  return bkvs;
}

std::vector<Block> build_blocks(const BlockingKeySpec& key, const Dataset& d1,
                                const Dataset& d2, PairMode mode) {
  key.validate(d1);
  if (mode == PairMode::Bilateral) key.validate(d2);

  std::map<std::string, std::vector<std::pair<int, std::string>>> index;
  auto add_all = [&](const Dataset& d, int tag) {
    for (const Entity& e : d.entities()) {
      for (const std::string& bkv : apply_key(key, e, d)) {
        index[bkv].emplace_back(tag, e.id);
      }
    }
  };
  add_all(d1, 0);
  if (mode == PairMode::Bilateral) add_all(d2, 1);

  std::vector<Block> blocks;
  blocks.reserve(index.size());
  for (auto& [bkv, members] : index) {
    blocks.push_back(Block{bkv, std::move(members)});
  }
  return blocks;
}

std::vector<Block> block_purge(std::vector<Block> blocks, std::size_t max_block_size,
                               std::size_t* purged) {
  if (max_block_size < 2) throw ConfigError("block purge cap must be at least 2");
  std::size_t count = 0;
  std::vector<Block> kept;
  kept.reserve(blocks.size());
  for (Block& b : blocks) {
    if (b.members.size() > max_block_size) {
      ++count;
    } else {
      kept.push_back(std::move(b));
    }
  }
  if (purged != nullptr) *purged = count;
  return kept;
}

namespace {

void emit_pair(PairMode mode, const std::pair<int, std::string>& a,
               const std::pair<int, std::string>& b, CandidateSet& out, const PairSink* sink) {
  EntityPair pair = mode == PairMode::Bilateral
                        ? EntityPair{a.first == 0 ? a.second : b.second,
                                     a.first == 0 ? b.second : a.second}
                        : canonicalize_pair(a.second, b.second, PairMode::Dedup);
  if (sink != nullptr) (*sink)(pair);
  out.insert(std::move(pair));
}

// All within-block pairs: cross-dataset only in bilateral mode, all
// unordered pairs in dedup mode.
void emit_block_pairs(const Block& block, PairMode mode, CandidateSet& out,
                      const PairSink* sink) {
  const auto& m = block.members;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (mode == PairMode::Bilateral && m[i].first == m[j].first) continue;
      emit_pair(mode, m[i], m[j], out, sink);
    }
  }
}

std::map<std::size_t, std::size_t> size_histogram(const std::vector<Block>& blocks) {
  std::map<std::size_t, std::size_t> hist;
  for (const Block& b : blocks) ++hist[b.members.size()];
  return hist;
}

void check_dedup_inputs(const Dataset& d1, const Dataset& d2, PairMode mode) {
  if (mode == PairMode::Dedup && d1.name() != d2.name()) {
    throw ConfigError("dedup mode expects the same dataset on both sides");
  }
}

}  // namespace

BlockingResult traditional_block(const BlockingKeySpec& key, const Dataset& d1,
                                 const Dataset& d2, PairMode mode,
                                 const TraditionalOptions& options, const PairSink* sink) {
  check_dedup_inputs(d1, d2, mode);
  std::vector<Block> blocks = build_blocks(key, d1, d2, mode);

  BlockingResult result;
  result.meta.method = "traditional";
  result.meta.block_size_histogram = size_histogram(blocks);
  if (options.max_block_size > 0) {
    blocks = block_purge(std::move(blocks), options.max_block_size, &result.meta.purged_blocks);
    result.meta.params["max_block_size"] = std::to_string(options.max_block_size);
  }

  result.candidates = CandidateSet("traditional");
  for (const Block& b : blocks) {
    emit_block_pairs(b, mode, result.candidates, sink);
  }
  return result;
}

BlockingResult sorted_neighborhood(const BlockingKeySpec& key, std::size_t window,
                                   const Dataset& d1, const Dataset& d2, PairMode mode,
                                   const PairSink* sink) {
  check_dedup_inputs(d1, d2, mode);
  if (!key.single_value) {
    throw ConfigError("sorted neighborhood requires a single-value blocking key");
  }
  if (window < 2) throw ConfigError("sorted neighborhood requires a window of at least 2");
  key.validate(d1);
  if (mode == PairMode::Bilateral) key.validate(d2);

  struct Record {
    std::string bkv;
    int tag;
    std::string id;
  };
  std::vector<Record> records;
  auto add_all = [&](const Dataset& d, int tag) {
    for (const Entity& e : d.entities()) {
      std::set<std::string> bkvs = apply_key(key, e, d);
      records.push_back(Record{*bkvs.begin(), tag, e.id});
    }
  };
  add_all(d1, 0);
  if (mode == PairMode::Bilateral) add_all(d2, 1);

  std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    return std::tie(a.bkv, a.tag, a.id) < std::tie(b.bkv, b.tag, b.id);
  });

  BlockingResult result;
  result.meta.method = "sorted_neighborhood";
  result.meta.params["window"] = std::to_string(window);
  result.candidates = CandidateSet("sorted_neighborhood");

  // The union over all window positions of within-window pairs is exactly
  // the pairs at most window-1 positions apart.
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::size_t limit = std::min(records.size(), i + window);
    for (std::size_t j = i + 1; j < limit; ++j) {
      if (mode == PairMode::Bilateral && records[i].tag == records[j].tag) continue;
      emit_pair(mode, {records[i].tag, records[i].id}, {records[j].tag, records[j].id},
                result.candidates, sink);
    }
  }
  return result;
}

void CanopyParams::validate() const {
  if (tight < 0.0) throw ConfigError("canopy tight threshold must be non-negative");
  if (loose < tight) throw ConfigError("canopy loose threshold must be >= tight");
}

double canopy_distance(CanopyDistance kind, const std::optional<Literal>& a,
                       const std::optional<Literal>& b) {
  std::string_view lex_a = a ? std::string_view(a->lexical) : std::string_view();
  std::string_view lex_b = b ? std::string_view(b->lexical) : std::string_view();
  if (kind == CanopyDistance::NormalizedLevenshtein) {
    std::size_t max_len = std::max(lex_a.size(), lex_b.size());
    if (max_len == 0) return 0.0;
    return static_cast<double>(levenshtein(lex_a, lex_b)) / static_cast<double>(max_len);
  }
  std::set<std::string> ta = token_set_lower(lex_a);
  std::set<std::string> tb = token_set_lower(lex_b);
  if (ta.empty() && tb.empty()) return 0.0;
  std::size_t inter = 0;
  for (const std::string& t : ta) inter += tb.count(t);
  std::size_t uni = ta.size() + tb.size() - inter;
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<Block> build_canopies(const CanopyParams& params, const Dataset& d1,
                                  const Dataset& d2, PairMode mode,
                                  const std::string& feature_field,
                                  const CanopyOptions& options) {
  params.validate();
  check_dedup_inputs(d1, d2, mode);
  if (!d1.field_index(feature_field) ||
      (mode == PairMode::Bilateral && !d2.field_index(feature_field))) {
    throw ConfigError("canopy feature field \"" + feature_field + "\" not in schema");
  }

  struct Item {
    int tag;
    const Entity* entity;
    const Dataset* dataset;
  };
  std::vector<Item> items;
  for (const Entity& e : d1.entities()) items.push_back({0, &e, &d1});
  if (mode == PairMode::Bilateral) {
    for (const Entity& e : d2.entities()) items.push_back({1, &e, &d2});
  }
  // Ascending entity id gives a deterministic iteration order everywhere;
  // the tag breaks ties when both datasets contain the same URI.
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.entity->id, a.tag) < std::tie(b.entity->id, b.tag);
  });

  auto distance = [&](const Item& a, const Item& b) {
    return canopy_distance(params.distance, a.dataset->field_of(*a.entity, feature_field),
                           b.dataset->field_of(*b.entity, feature_field));
  };

  // Seed order: dedup iterates over remaining entities; bilateral draws
  // exclusively from the smaller dataset (ties: lexicographically smaller
  // dataset name).
  int seed_tag = 0;
  if (mode == PairMode::Bilateral) {
    if (d2.size() < d1.size() || (d2.size() == d1.size() && d2.name() < d1.name())) {
      seed_tag = 1;
    }
  }

  std::vector<bool> removed(items.size(), false);
  std::vector<Block> out;
  std::mt19937_64 rng(options.seed);

  auto next_seed = [&]() -> std::optional<std::size_t> {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (removed[i]) continue;
      if (mode == PairMode::Bilateral && items[i].tag != seed_tag) continue;
      eligible.push_back(i);
      if (!(mode == PairMode::Dedup && options.random_seeding)) break;  // first = ascending id
    }
    if (eligible.empty()) return std::nullopt;
    if (mode == PairMode::Dedup && options.random_seeding) {
      std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
      return eligible[pick(rng)];
    }
    return eligible.front();
  };

  while (auto seed = next_seed()) {
    std::size_t s = *seed;
    Block canopy;
    canopy.bkv = items[s].entity->id;  // canopies are identified by their seed
    canopy.members.emplace_back(items[s].tag, items[s].entity->id);
    std::vector<std::size_t> tight_removals;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i == s || removed[i]) continue;
      double d = distance(items[s], items[i]);
      if (d < params.loose) {
        canopy.members.emplace_back(items[i].tag, items[i].entity->id);
        if (d < params.tight) tight_removals.push_back(i);
      }
    }
    removed[s] = true;
    for (std::size_t i : tight_removals) removed[i] = true;
    out.push_back(std::move(canopy));
  }
  return out;
}

BlockingResult canopies(const CanopyParams& params, const Dataset& d1, const Dataset& d2,
                        PairMode mode, const std::string& feature_field,
                        const CanopyOptions& options, const PairSink* sink) {
  std::vector<Block> canopy_blocks =
      build_canopies(params, d1, d2, mode, feature_field, options);

  BlockingResult result;
  result.meta.method = "canopies";
  result.meta.params["tight"] = std::to_string(params.tight);
  result.meta.params["loose"] = std::to_string(params.loose);
  result.meta.params["distance"] = params.distance == CanopyDistance::JaccardTokens
                                       ? "jaccard_tokens"
                                       : "normalized_levenshtein";
  result.meta.params["feature_field"] = feature_field;
  result.meta.block_size_histogram = size_histogram(canopy_blocks);
  result.candidates = CandidateSet("canopies");
  for (const Block& canopy : canopy_blocks) {
    emit_block_pairs(canopy, mode, result.candidates, sink);
  }
  return result;
}

void MinHashParams::validate() const {
  if (num_hashes < 1 || bands < 1 || rows_per_band < 1) {
    throw ConfigError("minhash parameters must be positive");
  }
  if (bands * rows_per_band != num_hashes) {
    throw ConfigError("minhash requires bands * rows_per_band == num_hashes");
  }
}

namespace {

// Universal hash family over a Mersenne-prime field: h(x) = (a*x + b) mod p.
constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;

std::uint64_t mod_mersenne61(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kMersenne61);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

struct HashCoeffs {
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
};

HashCoeffs derive_coeffs(int num_hashes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> da(1, kMersenne61 - 1);
  std::uniform_int_distribution<std::uint64_t> db(0, kMersenne61 - 1);
  HashCoeffs c;
  c.a.reserve(num_hashes);
  c.b.reserve(num_hashes);
  for (int i = 0; i < num_hashes; ++i) {
    c.a.push_back(da(rng));
    c.b.push_back(db(rng));
  }
  return c;
}

std::vector<std::uint64_t> signature_with(const HashCoeffs& coeffs,
                                          const std::set<std::string>& tokens) {
  std::size_t n = coeffs.a.size();
  std::vector<std::uint64_t> sig(n, ~0ULL);
  for (const std::string& tok : tokens) {
    std::uint64_t base = fnv1a64(tok) % kMersenne61;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t h = mod_mersenne61(
          static_cast<unsigned __int128>(coeffs.a[i]) * base + coeffs.b[i]);
      if (h < sig[i]) sig[i] = h;
    }
  }
  return sig;
}

}  // namespace

std::vector<std::uint64_t> minhash_signature(const std::set<std::string>& tokens,
                                             const MinHashParams& params) {
  params.validate();
  return signature_with(derive_coeffs(params.num_hashes, params.seed), tokens);
}

double lsh_candidate_probability(double jaccard, int rows_per_band, int bands) {
  return 1.0 - std::pow(1.0 - std::pow(jaccard, rows_per_band), bands);
}

BlockingResult minhash_lsh(const MinHashParams& params, const Dataset& d1, const Dataset& d2,
                           PairMode mode, const std::string& feature_field, int workers,
                           const PairSink* sink) {
  params.validate();
  check_dedup_inputs(d1, d2, mode);
  if (!d1.field_index(feature_field) ||
      (mode == PairMode::Bilateral && !d2.field_index(feature_field))) {
    throw ConfigError("minhash feature field \"" + feature_field + "\" not in schema");
  }

  struct Item {
    int tag;
    const Entity* entity;
    std::set<std::string> tokens;
    std::vector<std::uint64_t> signature;
  };
  std::vector<Item> items;
  auto add_all = [&](const Dataset& d, int tag) {
    for (const Entity& e : d.entities()) {
      const auto& value = d.field_of(e, feature_field);
      items.push_back(
          {tag, &e, value ? token_set_lower(value->lexical) : std::set<std::string>(), {}});
    }
  };
  add_all(d1, 0);
  if (mode == PairMode::Bilateral) add_all(d2, 1);

  HashCoeffs coeffs = derive_coeffs(params.num_hashes, params.seed);
  detail::parallel_chunks(items.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (!items[i].tokens.empty()) {
        items[i].signature = signature_with(coeffs, items[i].tokens);
      }
    }
  });

  BlockingResult result;
  result.meta.method = "minhash";
  result.meta.params["num_hashes"] = std::to_string(params.num_hashes);
  result.meta.params["bands"] = std::to_string(params.bands);
  result.meta.params["rows_per_band"] = std::to_string(params.rows_per_band);
  result.meta.params["feature_field"] = feature_field;
  result.candidates = CandidateSet("minhash");

  for (double x = 0.0; x <= 1.0 + 1e-9; x += 0.05) {
    double sim = std::min(x, 1.0);
    result.meta.lsh_curve.emplace_back(
        sim, lsh_candidate_probability(sim, params.rows_per_band, params.bands));
  }
  // Sensitivity endpoints of the banded family, reported at reference
  // Jaccard distances r = 0.1 and s = 0.9.
  result.meta.lsh_sensitivity["r"] = 0.1;
  result.meta.lsh_sensitivity["s"] = 0.9;
  result.meta.lsh_sensitivity["p_r"] =
      lsh_candidate_probability(0.9, params.rows_per_band, params.bands);
  result.meta.lsh_sensitivity["p_s"] =
      lsh_candidate_probability(0.1, params.rows_per_band, params.bands);

  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].signature.empty()) {
      ++result.meta.skipped_entities;
      continue;
    }
    for (int band = 0; band < params.bands; ++band) {
      std::string key(sizeof(int), '\0');
      std::memcpy(key.data(), &band, sizeof(int));
      key.append(reinterpret_cast<const char*>(items[i].signature.data() +
                                               band * params.rows_per_band),
                 sizeof(std::uint64_t) * params.rows_per_band);
      buckets[key].push_back(i);
    }
  }

  for (const auto& [key, member_ids] : buckets) {
    ++result.meta.block_size_histogram[member_ids.size()];
    for (std::size_t i = 0; i < member_ids.size(); ++i) {
      for (std::size_t j = i + 1; j < member_ids.size(); ++j) {
        const Item& a = items[member_ids[i]];
        const Item& b = items[member_ids[j]];
        if (mode == PairMode::Bilateral && a.tag == b.tag) continue;
        emit_pair(mode, {a.tag, a.entity->id}, {b.tag, b.entity->id}, result.candidates, sink);
      }
    }
  }
  return result;
}

std::string BlockingMeta::to_json() const {
  json j;
  j["method"] = method;
  j["params"] = params;
  json hist = json::object();
  for (const auto& [size, count] : block_size_histogram) {
    hist[std::to_string(size)] = count;
  }
  j["block_size_histogram"] = hist;
  j["purged_blocks"] = purged_blocks;
  j["skipped_entities"] = skipped_entities;
  if (!lsh_curve.empty()) {
    json curve = json::array();
    for (const auto& [x, p] : lsh_curve) curve.push_back({{"jaccard", x}, {"p", p}});
    j["lsh_curve"] = curve;
    j["lsh_sensitivity"] = lsh_sensitivity;
  }
  return j.dump(2);
}

}  // namespace erkit
