#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "erkit/model.hpp"

namespace erkit {

/// Corruptions applied to injected duplicates, modeled on the kinds of
/// discrepancies seen between personal records: a character typo, a dropped
/// name token, initials replacing given names ("John K. Adams" ->
/// "J. K. Adams"), and a date of birth collapsed to its year.
enum class CorruptionOp { Typo, TokenDrop, Initialism, YearOnlyDob };

std::string_view corruption_op_name(CorruptionOp op);
CorruptionOp corruption_op_from_name(std::string_view name);

struct SyntheticCorpusSpec {
  std::size_t num_entities = 100;
  double duplicate_fraction = 0.3;  // in [0,1]
  std::set<CorruptionOp> ops;       // empty means exact copies
  std::uint64_t seed = 0;
};

struct SyntheticCorpus {
  Dataset d1;
  Dataset d2;
  GroundTruth gt;
};

/// Generates two person datasets (schema: city, dob, name, zipcode) plus an
/// exact ground truth. D2 contains round(num_entities * duplicate_fraction)
/// corrupted copies of D1 entities and fresh non-matches for the rest.
/// Deterministic for a given seed.
SyntheticCorpus generate_corpus(const SyntheticCorpusSpec& spec);

}  // namespace erkit
