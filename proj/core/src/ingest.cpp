#include "erkit/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "erkit/text.hpp"

namespace erkit {

PropertyMap::PropertyMap(std::map<std::string, std::string> renames)
    : renames_(std::move(renames)) {
  std::set<std::string> targets;
  for (const auto& [src, dst] : renames_) {
    if (src.empty() || dst.empty()) throw ConfigError("property map with empty name");
    if (!targets.insert(dst).second) {
      throw ConfigError("property map is not injective: two sources rename to \"" + dst + "\"");
    }
  }
}

const std::string& PropertyMap::apply(const std::string& property) const {
  auto it = renames_.find(property);
  return it == renames_.end() ? property : it->second;
}

namespace {

struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool at_end() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
};

[[noreturn]] void fail(const LineCursor& c, const std::string& why) {
  throw ParseError(c.line, why + " in \"" + std::string(c.text) + "\"");
}

std::string parse_iri(LineCursor& c) {
  if (c.at_end() || c.peek() != '<') fail(c, "expected '<'");
  ++c.pos;
  std::size_t start = c.pos;
  while (!c.at_end() && c.peek() != '>') {
    if (c.peek() == ' ') fail(c, "space inside IRI");
    ++c.pos;
  }
  if (c.at_end()) fail(c, "unterminated IRI");
  std::string iri(c.text.substr(start, c.pos - start));
  ++c.pos;
  if (iri.empty()) fail(c, "empty IRI");
  return iri;
}

std::string parse_quoted(LineCursor& c) {
  // c.peek() == '"' on entry.
  ++c.pos;
  std::string out;
  while (!c.at_end()) {
    char ch = c.peek();
    if (ch == '"') {
      ++c.pos;
      return out;
    }
    if (ch == '\\') {
      ++c.pos;
      if (c.at_end()) fail(c, "dangling escape");
      switch (c.peek()) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        default: fail(c, std::string("unsupported escape \\") + c.peek());
      }
      ++c.pos;
      continue;
    }
    out.push_back(ch);
    ++c.pos;
  }
  fail(c, "unterminated literal");
}

void check_blank_node(const LineCursor& c) {
  if (c.text.substr(c.pos, 2) == "_:") {
    throw UnsupportedFeatureError(c.line, "blank nodes are not supported in \"" +
                                              std::string(c.text) + "\"");
  }
}

}  // namespace

Datatype datatype_from_iri(std::string_view iri) {
  std::size_t cut = iri.find_last_of("#/:");
  std::string_view local = cut == std::string_view::npos ? iri : iri.substr(cut + 1);
  std::string name = to_lower(local);
  if (name == "integer" || name == "int" || name == "long") return Datatype::Integer;
  if (name == "decimal" || name == "double" || name == "float") return Datatype::Decimal;
  if (name == "date") return Datatype::Date;
  return Datatype::String;
}

std::vector<Triple> parse_ntriples(std::string_view text) {
  std::vector<Triple> triples;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;

    LineCursor c{line, 0, line_no};
    c.skip_ws();
    if (!c.at_end() && c.peek() != '#') {
      check_blank_node(c);
      Triple t;
      t.subject = parse_iri(c);
      c.skip_ws();
      t.property = parse_iri(c);
      c.skip_ws();
      if (c.at_end()) fail(c, "missing object");
      check_blank_node(c);
      if (c.peek() == '<') {
        t.object = parse_iri(c);
      } else if (c.peek() == '"') {
        std::string lexical = parse_quoted(c);
        Datatype type = Datatype::String;
        if (c.text.substr(c.pos, 2) == "^^") {
          c.pos += 2;
          type = datatype_from_iri(parse_iri(c));
        } else if (!c.at_end() && c.peek() == '@') {
          throw UnsupportedFeatureError(c.line, "language tags are not supported in \"" +
                                                    std::string(c.text) + "\"");
        }
        if (!lexical_matches(lexical, type)) {
          throw ParseError(c.line, "literal \"" + lexical + "\" does not parse as " +
                                       std::string(datatype_name(type)));
        }
        t.object = Literal{std::move(lexical), type};
      } else {
        fail(c, "expected IRI or literal object");
      }
      c.skip_ws();
      if (c.at_end() || c.peek() != '.') fail(c, "missing terminating '.'");
      ++c.pos;
      c.skip_ws();
      if (!c.at_end() && c.peek() != '#') fail(c, "trailing content after '.'");
      triples.push_back(std::move(t));
    }

    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return triples;
}

namespace {

std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

std::string_view datatype_iri(Datatype t) {
  switch (t) {
    case Datatype::Integer: return "http://www.w3.org/2001/XMLSchema#integer";
    case Datatype::Decimal: return "http://www.w3.org/2001/XMLSchema#decimal";
    case Datatype::Date: return "http://www.w3.org/2001/XMLSchema#date";
    case Datatype::String: break;
  }
  return "";
}

}  // namespace

std::string serialize_ntriples(const std::vector<Triple>& triples) {
  std::string out;
  for (const Triple& t : triples) {
    out += '<';
    out += t.subject;
    out += "> <";
    out += t.property;
    out += "> ";
    if (t.object_is_iri()) {
      out += '<';
      out += t.object_iri();
      out += '>';
    } else {
      const Literal& lit = t.object_literal();
      out += '"';
      out += escape_literal(lit.lexical);
      out += '"';
      if (lit.type != Datatype::String) {
        out += "^^<";
        out += datatype_iri(lit.type);
        out += '>';
      }
    }
    out += " .\n";
  }
  return out;
}

Dataset triples_to_entities(const std::vector<Triple>& triples, const PropertyMap& mapping,
                            const EntityOptions& options, std::string dataset_name) {
  // Injectivity of the rename map over the properties actually present.
  std::map<std::string, std::string> seen_target;  // target -> first source
  for (const Triple& t : triples) {
    const std::string& mapped = mapping.apply(t.property);
    auto [it, fresh] = seen_target.emplace(mapped, t.property);
    if (!fresh && it->second != t.property) {
      throw ConfigError("property map collides \"" + it->second + "\" and \"" + t.property +
                        "\" onto \"" + mapped + "\"");
    }
  }

  // Resolvable instances: all subjects by default, or type-filtered ones.
  std::set<std::string> instances;
  if (options.type_filter_enabled()) {
    for (const Triple& t : triples) {
      if (t.property == options.type_property && t.object_is_iri() &&
          options.type_values.count(t.object_iri()) > 0) {
        instances.insert(t.subject);
      }
    }
  } else {
    for (const Triple& t : triples) instances.insert(t.subject);
    for (const Triple& t : triples) {
      if (t.object_is_iri()) instances.insert(t.object_iri());
    }
  }

  // field -> (subject -> joined value); join order is first-seen file order.
  std::set<std::string> field_names;
  std::map<std::string, std::map<std::string, Literal>> columns;
  for (const Triple& t : triples) {
    if (instances.count(t.subject) == 0) continue;
    const std::string& field = mapping.apply(t.property);
    field_names.insert(field);
    Literal value = t.object_is_iri() ? Literal{t.object_iri(), Datatype::String}
                                      : t.object_literal();
    auto& column = columns[field];
    auto [it, fresh] = column.emplace(t.subject, value);
    if (!fresh) {
      // Multi-valued property: flatten to one pipe-joined string literal.
      it->second = Literal{it->second.lexical + "|" + value.lexical, Datatype::String};
    }
  }

  std::vector<std::string> schema(field_names.begin(), field_names.end());  // sorted
  Dataset dataset(std::move(dataset_name), schema);

  std::optional<std::size_t> label_idx;
  if (!options.label_property.empty()) {
    label_idx = dataset.field_index(mapping.apply(options.label_property));
  }
  for (const std::string& id : instances) {  // std::set: sorted by subject URI
    Entity e;
    e.id = id;
    e.values.reserve(schema.size());
    for (const std::string& field : schema) {
      auto col = columns.find(field);
      if (col == columns.end()) {
        e.values.emplace_back(std::nullopt);
        continue;
      }
      auto cell = col->second.find(id);
      e.values.emplace_back(cell == col->second.end() ? std::optional<Literal>()
                                                      : std::optional<Literal>(cell->second));
    }
    if (label_idx && e.values[*label_idx]) e.label = e.values[*label_idx]->lexical;
    dataset.add_entity(std::move(e));
  }
  return dataset;
}

namespace {

// RFC-4180 field splitter; handles quoted fields with embedded commas,
// doubled quotes and newlines. Returns rows of raw cell strings.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool row_started = false;
  std::size_t line = 1;

  auto end_cell = [&] {
    row.push_back(std::move(cell));
    cell.clear();
  };
  auto end_row = [&] {
    end_cell();
    rows.push_back(std::move(row));
    row.clear();
    row_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        cell.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!cell.empty()) throw ParseError(line, "quote inside unquoted CSV cell");
        in_quotes = true;
        row_started = true;
        break;
      case ',':
        end_cell();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        break;
      default:
        cell.push_back(ch);
        row_started = true;
    }
  }
  if (in_quotes) throw ParseError(line, "unterminated quoted CSV cell");
  if (row_started || !cell.empty() || !row.empty()) end_row();
  return rows;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out += '"';
  return out;
}

}  // namespace

Dataset parse_csv(std::string_view text, const PropertyMap& mapping,
                  const EntityOptions& options, std::string dataset_name) {
  auto rows = split_csv(text);
  if (rows.empty()) throw ParseError(1, "CSV input has no header row");

  const auto& header = rows.front();
  std::vector<std::string> schema;
  std::optional<std::size_t> id_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "id") {
      if (id_col) throw ParseError(1, "duplicate id column");
      id_col = i;
    } else {
      schema.push_back(mapping.apply(header[i]));
    }
  }
  if (!id_col) throw ParseError(1, "CSV header has no id column");

  Dataset dataset(std::move(dataset_name), schema);
  std::optional<std::size_t> label_idx;
  if (!options.label_property.empty()) {
    label_idx = dataset.field_index(mapping.apply(options.label_property));
  }

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != header.size()) {
      throw ParseError(r + 1, "ragged row: expected " + std::to_string(header.size()) +
                                  " cells, got " + std::to_string(cells.size()));
    }
    Entity e;
    e.id = cells[*id_col];
    if (e.id.empty()) throw ParseError(r + 1, "empty id cell");
    e.values.reserve(schema.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i == *id_col) continue;
      if (cells[i].empty()) {
        e.values.emplace_back(std::nullopt);
      } else {
        e.values.emplace_back(Literal{cells[i], Datatype::String});
      }
    }
    if (label_idx && e.values[*label_idx]) e.label = e.values[*label_idx]->lexical;
    try {
      dataset.add_entity(std::move(e));
    } catch (const Error& err) {
      throw ParseError(r + 1, err.what());
    }
  }
  return dataset;
}

std::string write_csv(const Dataset& dataset) {
  std::string out = "id";
  for (const std::string& field : dataset.schema()) {
    out += ',';
    out += csv_quote(field);
  }
  out += '\n';
  for (const Entity& e : dataset.entities()) {
    out += csv_quote(e.id);
    for (const auto& value : e.values) {
      out += ',';
      if (value) out += csv_quote(value->lexical);
    }
    out += '\n';
  }
  return out;
}

InputFormat input_format_from_name(std::string_view name) {
  if (name == "ntriples" || name == "nt") return InputFormat::NTriples;
  if (name == "csv") return InputFormat::Csv;
  throw ConfigError("unknown input format: " + std::string(name));
}

std::string_view input_format_name(InputFormat format) {
  return format == InputFormat::NTriples ? "ntriples" : "csv";
}

Dataset load_dataset(const std::string& path, InputFormat format, const PropertyMap& mapping,
                     const EntityOptions& options, std::string dataset_name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();

  if (dataset_name.empty()) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    dataset_name = dot == std::string::npos ? base : base.substr(0, dot);
  }

  if (format == InputFormat::Csv) {
    return parse_csv(text, mapping, options, std::move(dataset_name));
  }
  return triples_to_entities(parse_ntriples(text), mapping, options, std::move(dataset_name));
}

}  // namespace erkit
