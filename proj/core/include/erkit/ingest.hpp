#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "erkit/model.hpp"

namespace erkit {

/// Static property-rename map standing in for ontology alignment
/// (e.g. DOB -> date_of_birth). Identity for unmapped names. Renames must
/// stay injective over the properties they are applied to; collisions are
/// rejected when the map is applied to a concrete triple set.
class PropertyMap {
 public:
  PropertyMap() = default;
  explicit PropertyMap(std::map<std::string, std::string> renames);

  const std::string& apply(const std::string& property) const;
  const std::map<std::string, std::string>& renames() const { return renames_; }
  bool empty() const { return renames_.empty(); }

 private:
  std::map<std::string, std::string> renames_;
};

/// Parses the supported N-Triples subset:
///   <subj-iri> <prop-iri> (<obj-iri> | "literal"[^^<type-iri>]) .
/// Comments (#) and blank lines are skipped. Escapes \" \\ \n \t are
/// decoded. Blank nodes and language tags raise UnsupportedFeatureError;
/// any other malformed line raises ParseError with its 1-based number.
std::vector<Triple> parse_ntriples(std::string_view text);

/// Inverse of parse_ntriples for supported features: literals are escaped
/// and datatype tags rendered as canonical XSD IRIs (plain for strings).
std::string serialize_ntriples(const std::vector<Triple>& triples);

/// Maps a datatype IRI to a tag by its local name (after the last '#', '/'
/// or ':'): integer/int/long -> Integer, decimal/double/float -> Decimal,
/// date -> Date, anything else -> String.
Datatype datatype_from_iri(std::string_view iri);

struct EntityOptions {
  /// Mapped property whose value becomes the entity label (the paper never
  /// fixes one; it must be configured). Empty disables labels.
  std::string label_property;
  /// When set, only subjects carrying a (type_property, one-of type_values)
  /// triple are materialized as entities.
  std::string type_property;
  std::set<std::string> type_values;

  bool type_filter_enabled() const { return !type_property.empty(); }
};

/// Builds a Dataset from parsed triples: one entity per distinct subject,
/// plus URI objects that never appear as subjects (all fields missing).
/// Property names go through `mapping`; the schema is the sorted set of
/// distinct mapped names; entities are sorted by subject URI. IRI objects
/// contribute their URI string as a string literal. Multiple values for one
/// property are joined with "|" in first-seen order.
Dataset triples_to_entities(const std::vector<Triple>& triples, const PropertyMap& mapping,
                            const EntityOptions& options = {}, std::string dataset_name = "");

/// RFC-4180-style CSV parser. The first row is the header and must contain
/// an `id` column; remaining columns form the schema in header order.
/// Empty cells become missing values; all values are string literals.
Dataset parse_csv(std::string_view text, const PropertyMap& mapping = {},
                  const EntityOptions& options = {}, std::string dataset_name = "");

/// Normalized CSV writer (id column first, schema order preserved,
/// RFC-4180 quoting). parse_csv(write_csv(d)) == d for CSV-typed datasets.
std::string write_csv(const Dataset& dataset);

enum class InputFormat { NTriples, Csv };

InputFormat input_format_from_name(std::string_view name);
std::string_view input_format_name(InputFormat format);

/// Reads and parses a dataset file. CSV keeps input row order; N-Triples
/// entities come out sorted by subject URI.
Dataset load_dataset(const std::string& path, InputFormat format,
                     const PropertyMap& mapping = {}, const EntityOptions& options = {},
                     std::string dataset_name = "");

}  // namespace erkit
