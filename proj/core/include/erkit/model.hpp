#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "erkit/error.hpp"

namespace erkit {

enum class Datatype { String, Integer, Decimal, Date };

std::string_view datatype_name(Datatype t);
Datatype datatype_from_name(std::string_view name);

/// A typed literal value. The lexical form must parse under the tag:
/// integers are optionally signed digit strings, decimals add one optional
/// fraction part, dates are ISO-8601 calendar dates (leap years included).
struct Literal {
  std::string lexical;
  Datatype type = Datatype::String;

  /// Validating constructor; throws Error when the lexical form does not
  /// parse under `type`.
  static Literal make(std::string lexical, Datatype type = Datatype::String);

  bool operator==(const Literal&) const = default;
};

bool lexical_matches(std::string_view lexical, Datatype type);

/// One RDF statement. The object is either an IRI (string alternative) or a
/// Literal; blank nodes are rejected upstream at parse time.
struct Triple {
  std::string subject;
  std::string property;
  std::variant<std::string, Literal> object;

  bool object_is_iri() const { return std::holds_alternative<std::string>(object); }
  const std::string& object_iri() const { return std::get<std::string>(object); }
  const Literal& object_literal() const { return std::get<Literal>(object); }

  bool operator==(const Triple&) const = default;
};

/// A named instance under resolution. `values` is aligned index-for-index
/// with the owning Dataset's schema; a disengaged optional is an explicit
/// missing value.
struct Entity {
  std::string id;     // URI, unique within its dataset
  std::string label;  // mnemonic, empty when no label source is configured
  std::vector<std::optional<Literal>> values;
};

/// An ordered, structurally homogeneous collection of entities. The schema
/// (field names and their order) is fixed at construction; every entity must
/// carry exactly one optional value per field.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string name, std::vector<std::string> schema);

  void add_entity(Entity entity);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& schema() const { return schema_; }
  const std::vector<Entity>& entities() const { return entities_; }
  std::size_t size() const { return entities_.size(); }

  const Entity* find(std::string_view id) const;
  std::optional<std::size_t> field_index(std::string_view field) const;

  /// Value of `field` on `entity` (which must belong to this dataset);
  /// nullopt when missing or when the field does not exist.
  const std::optional<Literal>& field_of(const Entity& entity, std::string_view field) const;

  bool operator==(const Dataset& other) const {
    return name_ == other.name_ && schema_ == other.schema_ && entities_equal(other);
  }

 private:
  bool entities_equal(const Dataset& other) const;

  std::string name_;
  std::vector<std::string> schema_;
  std::vector<Entity> entities_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::size_t> field_pos_;
};

inline bool operator==(const Entity& a, const Entity& b) {
  return a.id == b.id && a.label == b.label && a.values == b.values;
}

/// Two-dataset resolution emits bilateral pairs (left from D1, right from
/// D2); deduplication emits unordered pairs canonicalized by byte order.
enum class PairMode { Bilateral, Dedup };

std::string_view pair_mode_name(PairMode mode);
PairMode pair_mode_from_name(std::string_view name);

/// Canonical ordered entity pair. In dedup mode left < right always holds,
/// so (a,b) and (b,a) can never coexist in a set.
struct EntityPair {
  std::string left;
  std::string right;

  auto operator<=>(const EntityPair&) const = default;
};

/// Builds the canonical pair for `mode`. Bilateral keeps the (D1, D2)
/// orientation; dedup orders byte-lexicographically and rejects self-pairs.
EntityPair canonicalize_pair(std::string_view a, std::string_view b, PairMode mode);

/// Deduplicated pair set produced by a blocking method (the set C).
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::string source_method) : source_method_(std::move(source_method)) {}

  /// Returns true when the pair was not already present.
  bool insert(EntityPair pair) { return pairs_.insert(std::move(pair)).second; }

  bool contains(const EntityPair& pair) const { return pairs_.count(pair) > 0; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  const std::set<EntityPair>& pairs() const { return pairs_; }
  const std::string& source_method() const { return source_method_; }

  /// Checks that every id resolves in the corresponding dataset; throws
  /// Error on the first violation. In dedup mode pass the dataset twice.
  void validate_against(const Dataset& d1, const Dataset& d2) const;

 private:
  std::set<EntityPair> pairs_;
  std::string source_method_;
};

/// Gold-standard matches (the set called Omega_M when scored against the
/// full cross product).
struct GroundTruth {
  std::set<EntityPair> matches;
};

/// Number of pairs in the exhaustive set without materializing it:
/// |D1|*|D2| bilateral, |D|*(|D|-1)/2 dedup.
std::uint64_t exhaustive_pair_count(const Dataset& d1, const Dataset& d2, PairMode mode);

struct ExhaustiveOptions {
  /// Materialization refuses beyond this many pairs; the exhaustive set is
  /// a desk-scale oracle, not a blocking method.
  std::uint64_t max_pairs = 1'000'000;
};

/// Materializes the full pair set Omega. Dedup mode expects the same
/// dataset passed twice. Throws Error when the guard cap is exceeded.
CandidateSet exhaustive_pairs(const Dataset& d1, const Dataset& d2, PairMode mode,
                              const ExhaustiveOptions& options = {});

}  // namespace erkit
