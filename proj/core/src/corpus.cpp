#include "erkit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <random>
#include <vector>

#include "erkit/text.hpp"

namespace erkit {

namespace {

const char* kFirstNames[] = {
    "John",  "Mary",   "James", "Linda",  "Robert", "Susan",  "Michael", "Karen",
    "David", "Nancy",  "Maria", "Peter",  "Anna",   "Thomas", "Laura",   "Paul",
    "Emma",  "Carlos", "Sofia", "Daniel", "Alice",  "Victor", "Elena",   "George",
};
const char* kMiddleNames[] = {
    "Lee", "Kay", "Ann", "Jay", "Max", "Rae", "Sam", "Joe", "Kim", "Van",
};
const char* kLastNames[] = {
    "Adams",  "Baker", "Clark",  "Davis",  "Evans",  "Foster", "Garcia", "Harris",
    "Irwin",  "Jones", "Keller", "Lopez",  "Miller", "Nguyen", "Olsen",  "Parker",
    "Quinn",  "Reyes", "Smith",  "Turner", "Ueda",   "Vargas", "Walker", "Young",
};
const char* kCities[] = {
    "Springfield", "Riverton", "Lakeside", "Fairview", "Greenville",
    "Bristol",     "Clinton",  "Georgetown", "Salem",  "Madison",
};

std::string make_name(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> first(0, std::size(kFirstNames) - 1);
  std::uniform_int_distribution<std::size_t> middle(0, std::size(kMiddleNames) - 1);
  std::uniform_int_distribution<std::size_t> last(0, std::size(kLastNames) - 1);
  std::uniform_int_distribution<int> has_middle(0, 2);
  std::string name = kFirstNames[first(rng)];
  if (has_middle(rng) == 0) {
    name += ' ';
    name += kMiddleNames[middle(rng)];
  }
  name += ' ';
  name += kLastNames[last(rng)];
  return name;
}

std::string make_dob(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> year(1940, 2009);
  std::uniform_int_distribution<int> month(1, 12);
  std::uniform_int_distribution<int> day(1, 28);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year(rng), month(rng), day(rng));
  return buf;
}

std::string make_zip(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> zip(10000, 99999);
  return std::to_string(zip(rng));
}

struct Person {
  std::string name;
  std::string dob;
  std::string zipcode;
  std::string city;
};

Person make_person(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> city(0, std::size(kCities) - 1);
  return Person{make_name(rng), make_dob(rng), make_zip(rng), kCities[city(rng)]};
}

void corrupt(Person& p, CorruptionOp op, std::mt19937_64& rng) {
  switch (op) {
    case CorruptionOp::Typo: {
      if (p.name.empty()) return;
      std::uniform_int_distribution<std::size_t> pos(0, p.name.size() - 1);
      std::uniform_int_distribution<int> letter(0, 25);
      std::size_t i = pos(rng);
      char replacement = static_cast<char>('a' + letter(rng));
      if (p.name[i] == replacement) replacement = replacement == 'z' ? 'a' : replacement + 1;
      p.name[i] = replacement;
      break;
    }
    case CorruptionOp::TokenDrop: {
      std::vector<std::string> tokens = tokenize(p.name);
      if (tokens.size() < 2) return;
      std::uniform_int_distribution<std::size_t> pick(0, tokens.size() - 2);
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(pick(rng)));
      std::string joined;
      for (const std::string& t : tokens) {
        if (!joined.empty()) joined += ' ';
        joined += t;
      }
      p.name = joined;
      break;
    }
    case CorruptionOp::Initialism: {
      std::vector<std::string> tokens = tokenize(p.name);
      if (tokens.size() < 2) return;
      std::string out;
      for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        out += tokens[i].substr(0, 1);
        out += ". ";
      }
      out += tokens.back();
      p.name = out;
      break;
    }
    case CorruptionOp::YearOnlyDob: {
      if (auto year = extract_year(p.dob)) p.dob = *year;
      break;
    }
  }
}

Entity to_entity(const std::string& id, const Person& p) {
  // Schema order: city, dob, name, zipcode (sorted, matching the N-Triples
  // convention so mixed-format configs line up).
  Entity e;
  e.id = id;
  e.label = p.name;
  e.values = {Literal{p.city, Datatype::String}, Literal{p.dob, Datatype::String},
              Literal{p.name, Datatype::String}, Literal{p.zipcode, Datatype::String}};
  return e;
}

std::string entity_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%06zu", prefix, i);
  return buf;
}

}  // namespace

std::string_view corruption_op_name(CorruptionOp op) {
  switch (op) {
    case CorruptionOp::Typo: return "typo";
    case CorruptionOp::TokenDrop: return "token-drop";
    case CorruptionOp::Initialism: return "initialism";
    case CorruptionOp::YearOnlyDob: return "year-only-dob";
  }
  return "typo";
}

CorruptionOp corruption_op_from_name(std::string_view name) {
  if (name == "typo") return CorruptionOp::Typo;
  if (name == "token-drop") return CorruptionOp::TokenDrop;
  if (name == "initialism") return CorruptionOp::Initialism;
  if (name == "year-only-dob") return CorruptionOp::YearOnlyDob;
  throw ConfigError("unknown corruption op: " + std::string(name));
}

SyntheticCorpus generate_corpus(const SyntheticCorpusSpec& spec) {
  if (spec.duplicate_fraction < 0.0 || spec.duplicate_fraction > 1.0) {
    throw ConfigError("duplicate fraction must lie in [0,1]");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<std::string> schema = {"city", "dob", "name", "zipcode"};

  SyntheticCorpus corpus;
  corpus.d1 = Dataset("d1", schema);
  corpus.d2 = Dataset("d2", schema);

  std::vector<Person> base;
  base.reserve(spec.num_entities);
  for (std::size_t i = 0; i < spec.num_entities; ++i) {
    Person p = make_person(rng);
    corpus.d1.add_entity(to_entity(entity_id("urn:d1:e", i), p));
    base.push_back(std::move(p));
  }

  std::size_t duplicates = static_cast<std::size_t>(
      std::llround(spec.duplicate_fraction * static_cast<double>(spec.num_entities)));
  std::vector<CorruptionOp> ops(spec.ops.begin(), spec.ops.end());

  for (std::size_t i = 0; i < duplicates; ++i) {
    Person p = base[i];
    if (!ops.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
      corrupt(p, ops[pick(rng)], rng);
    }
    std::string id = entity_id("urn:d2:e", i);
    corpus.gt.matches.insert(EntityPair{entity_id("urn:d1:e", i), id});
    corpus.d2.add_entity(to_entity(id, p));
  }
  for (std::size_t i = duplicates; i < spec.num_entities; ++i) {
    corpus.d2.add_entity(to_entity(entity_id("urn:d2:e", i), make_person(rng)));
  }
  return corpus;
}

}  // namespace erkit
