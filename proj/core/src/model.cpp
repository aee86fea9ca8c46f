#include "erkit/model.hpp"

#include <algorithm>
#include <charconv>

namespace erkit {

std::string_view datatype_name(Datatype t) {
  switch (t) {
    case Datatype::String: return "string";
    case Datatype::Integer: return "integer";
    case Datatype::Decimal: return "decimal";
    case Datatype::Date: return "date";
  }
  return "string";
}

Datatype datatype_from_name(std::string_view name) {
  if (name == "string") return Datatype::String;
  if (name == "integer") return Datatype::Integer;
  if (name == "decimal") return Datatype::Decimal;
  if (name == "date") return Datatype::Date;
  throw Error("unknown datatype tag: " + std::string(name));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  if (s[0] == '+' || s[0] == '-') s.remove_prefix(1);
  return all_digits(s);
}

bool valid_decimal(std::string_view s) {
  if (s.empty()) return false;
  if (s[0] == '+' || s[0] == '-') s.remove_prefix(1);
  std::size_t dot = s.find('.');
  if (dot == std::string_view::npos) return all_digits(s);
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = s.substr(dot + 1);
  if (whole.empty() && frac.empty()) return false;
  if (!whole.empty() && !all_digits(whole)) return false;
  if (!frac.empty() && !all_digits(frac)) return false;
  return true;
}

int days_in_month(int year, int month) {
  static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

bool valid_date(std::string_view s) {
  // ISO-8601 calendar date: YYYY-MM-DD.
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  if (!all_digits(s.substr(0, 4)) || !all_digits(s.substr(5, 2)) || !all_digits(s.substr(8, 2)))
    return false;
  int year = 0, month = 0, day = 0;
  std::from_chars(s.data(), s.data() + 4, year);
  std::from_chars(s.data() + 5, s.data() + 7, month);
  std::from_chars(s.data() + 8, s.data() + 10, day);
  if (month < 1 || month > 12) return false;
  return day >= 1 && day <= days_in_month(year, month);
}

}  // namespace

bool lexical_matches(std::string_view lexical, Datatype type) {
  switch (type) {
    case Datatype::String: return true;
    case Datatype::Integer: return valid_integer(lexical);
    case Datatype::Decimal: return valid_decimal(lexical);
    case Datatype::Date: return valid_date(lexical);
  }
  return false;
}

Literal Literal::make(std::string lexical, Datatype type) {
  if (!lexical_matches(lexical, type)) {
    throw Error("literal \"" + lexical + "\" does not parse as " +
                std::string(datatype_name(type)));
  }
  return Literal{std::move(lexical), type};
}

Dataset::Dataset(std::string name, std::vector<std::string> schema)
    : name_(std::move(name)), schema_(std::move(schema)) {
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    if (schema_[i].empty()) throw Error("dataset " + name_ + ": empty field name in schema");
    if (!field_pos_.emplace(schema_[i], i).second) {
      throw Error("dataset " + name_ + ": duplicate field \"" + schema_[i] + "\" in schema");
    }
  }
}

void Dataset::add_entity(Entity entity) {
  if (entity.id.empty()) throw Error("dataset " + name_ + ": entity with empty id");
  if (entity.values.size() != schema_.size()) {
    throw Error("dataset " + name_ + ": entity " + entity.id + " has " +
                std::to_string(entity.values.size()) + " values for a schema of " +
                std::to_string(schema_.size()));
  }
  if (!by_id_.emplace(entity.id, entities_.size()).second) {
    throw Error("dataset " + name_ + ": duplicate entity id " + entity.id);
  }
  entities_.push_back(std::move(entity));
}

const Entity* Dataset::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &entities_[it->second];
}

std::optional<std::size_t> Dataset::field_index(std::string_view field) const {
  auto it = field_pos_.find(std::string(field));
  if (it == field_pos_.end()) return std::nullopt;
  return it->second;
}

const std::optional<Literal>& Dataset::field_of(const Entity& entity,
                                                std::string_view field) const {
  static const std::optional<Literal> kNone;
  auto idx = field_index(field);
  if (!idx) return kNone;
  return entity.values[*idx];
}

bool Dataset::entities_equal(const Dataset& other) const {
  return entities_ == other.entities_;
}

std::string_view pair_mode_name(PairMode mode) {
  return mode == PairMode::Bilateral ? "bilateral" : "dedup";
}

PairMode pair_mode_from_name(std::string_view name) {
  if (name == "bilateral") return PairMode::Bilateral;
  if (name == "dedup") return PairMode::Dedup;
  throw Error("unknown pair mode: " + std::string(name));
}

EntityPair canonicalize_pair(std::string_view a, std::string_view b, PairMode mode) {
  if (a.empty() || b.empty()) throw Error("pair with empty entity id");
  if (mode == PairMode::Bilateral) return EntityPair{std::string(a), std::string(b)};
  if (a == b) throw Error("self-pair in dedup mode: " + std::string(a));
  if (b < a) std::swap(a, b);
  return EntityPair{std::string(a), std::string(b)};
}

void CandidateSet::validate_against(const Dataset& d1, const Dataset& d2) const {
  for (const EntityPair& p : pairs_) {
    if (d1.find(p.left) == nullptr) {
      throw Error("candidate pair references unknown left id " + p.left);
    }
    if (d2.find(p.right) == nullptr) {
      throw Error("candidate pair references unknown right id " + p.right);
    }
  }
}

std::uint64_t exhaustive_pair_count(const Dataset& d1, const Dataset& d2, PairMode mode) {
  if (mode == PairMode::Bilateral) {
    return static_cast<std::uint64_t>(d1.size()) * static_cast<std::uint64_t>(d2.size());
  }
  std::uint64_t n = d1.size();
  return n * (n - (n > 0 ? 1 : 0)) / 2;
}

CandidateSet exhaustive_pairs(const Dataset& d1, const Dataset& d2, PairMode mode,
                              const ExhaustiveOptions& options) {
  if (mode == PairMode::Dedup && d1.name() != d2.name()) {
    throw Error("dedup mode expects the same dataset on both sides");
  }
  std::uint64_t total = exhaustive_pair_count(d1, d2, mode);
  if (total > options.max_pairs) {
    throw Error("exhaustive set of " + std::to_string(total) +
                " pairs exceeds the oracle cap of " + std::to_string(options.max_pairs));
  }
  CandidateSet out("exhaustive");
  if (mode == PairMode::Bilateral) {
    for (const Entity& a : d1.entities()) {
      for (const Entity& b : d2.entities()) {
        out.insert(EntityPair{a.id, b.id});
      }
    }
  } else {
    const auto& entities = d1.entities();
    for (std::size_t i = 0; i < entities.size(); ++i) {
      for (std::size_t j = i + 1; j < entities.size(); ++j) {
        out.insert(canonicalize_pair(entities[i].id, entities[j].id, PairMode::Dedup));
      }
    }
  }
  return out;
}

}  // namespace erkit
