#include "erkit/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "erkit/text.hpp"
#include "parallel.hpp"

namespace erkit {

using nlohmann::json;

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

double exact_match_fn(const Literal& a, const Literal& b) {
  return a.lexical == b.lexical ? 1.0 : 0.0;
}

double levenshtein_fn(const Literal& a, const Literal& b) {
  std::size_t max_len = std::max(a.lexical.size(), b.lexical.size());
  if (max_len == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a.lexical, b.lexical)) /
                   static_cast<double>(max_len);
}

double jaccard_fn(const Literal& a, const Literal& b) {
  std::set<std::string> ta = token_set_lower(a.lexical);
  std::set<std::string> tb = token_set_lower(b.lexical);
  if (ta.empty() && tb.empty()) return 1.0;
  if (ta.empty() || tb.empty()) return 0.0;
  std::size_t inter = 0;
  for (const std::string& t : ta) inter += tb.count(t);
  return static_cast<double>(inter) / static_cast<double>(ta.size() + tb.size() - inter);
}

double soundex_fn(const Literal& a, const Literal& b) {
  std::string ca = soundex(a.lexical);
  std::string cb = soundex(b.lexical);
  if (ca.empty() || cb.empty()) return kMissingFeature;
  return ca == cb ? 1.0 : 0.0;
}

double numeric_fn(const Literal& a, const Literal& b) {
  auto va = parse_number(a.lexical);
  auto vb = parse_number(b.lexical);
  if (!va || !vb) return kMissingFeature;
  double denom = std::max({std::fabs(*va), std::fabs(*vb), 1.0});
  return clamp01(1.0 - std::fabs(*va - *vb) / denom);
}

const std::set<Datatype> kAllTypes = {Datatype::String, Datatype::Integer, Datatype::Decimal,
                                      Datatype::Date};

}  // namespace

std::string soundex(std::string_view word) {
  // Code the first alphabetic token only.
  std::size_t start = 0;
  while (start < word.size() && !std::isalpha(static_cast<unsigned char>(word[start]))) ++start;
  std::size_t end = start;
  while (end < word.size() && std::isalpha(static_cast<unsigned char>(word[end]))) ++end;
  if (start == end) return "";

  auto code_of = [](char c) -> char {
    switch (c) {
      case 'b': case 'f': case 'p': case 'v': return '1';
      case 'c': case 'g': case 'j': case 'k': case 'q': case 's': case 'x': case 'z': return '2';
      case 'd': case 't': return '3';
      case 'l': return '4';
      case 'm': case 'n': return '5';
      case 'r': return '6';
      default: return '0';  // vowels and h, w, y
    }
  };

  std::string token = to_lower(word.substr(start, end - start));
  std::string out;
  out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(token[0]))));
  char prev_code = code_of(token[0]);
  for (std::size_t i = 1; i < token.size() && out.size() < 4; ++i) {
    char c = token[i];
    char code = code_of(c);
    if (c == 'h' || c == 'w') continue;  // same codes across h/w merge
    if (code != '0' && code != prev_code) out.push_back(code);
    prev_code = code;
  }
  while (out.size() < 4) out.push_back('0');
  return out;
}

std::vector<FeatureFunction> feature_library() {
  return {
      {"exact", kAllTypes, exact_match_fn},
      {"levenshtein", {Datatype::String, Datatype::Date}, levenshtein_fn},
      {"jaccard", {Datatype::String}, jaccard_fn},
      {"soundex", {Datatype::String}, soundex_fn},
      {"numeric", {Datatype::String, Datatype::Integer, Datatype::Decimal}, numeric_fn},
  };
}

std::vector<FeatureFunction> feature_library(const std::vector<std::string>& names) {
  if (names.empty()) return feature_library();
  std::vector<FeatureFunction> all = feature_library();
  std::vector<FeatureFunction> out;
  for (const FeatureFunction& fn : all) {
    if (std::find(names.begin(), names.end(), fn.name) != names.end()) out.push_back(fn);
  }
  for (const std::string& name : names) {
    bool known = std::any_of(all.begin(), all.end(),
                             [&](const FeatureFunction& fn) { return fn.name == name; });
    if (!known) throw ConfigError("unknown feature function \"" + name + "\"");
  }
  return out;
}

FeatureVector vectorize(const EntityPair& pair, const Dataset& d1, const Dataset& d2,
                        const std::vector<FeatureFunction>& library) {
  const Entity* left = d1.find(pair.left);
  const Entity* right = d2.find(pair.right);
  if (left == nullptr) throw Error("unresolvable entity id " + pair.left);
  if (right == nullptr) throw Error("unresolvable entity id " + pair.right);
  if (d1.schema() != d2.schema()) {
    throw Error("datasets are not structurally homogeneous");
  }

  std::size_t n = d1.schema().size();
  std::size_t m = library.size();
  FeatureVector v;
  v.values.assign(m * n, kMissingFeature);
  for (std::size_t field = 0; field < n; ++field) {
    const auto& a = left->values[field];
    const auto& b = right->values[field];
    if (!a || !b) continue;  // footnote rule: missing either side -> sentinel
    for (std::size_t f = 0; f < m; ++f) {
      const FeatureFunction& fn = library[f];
      if (fn.applicable.count(a->type) == 0 || fn.applicable.count(b->type) == 0) continue;
      double value = fn.evaluate(*a, *b);
      v.values[field * m + f] = value == kMissingFeature ? kMissingFeature : clamp01(value);
    }
  }
  return v;
}

std::string_view spec_kind_name(SpecKind kind) {
  switch (kind) {
    case SpecKind::Threshold: return "threshold";
    case SpecKind::TwoThreshold: return "two_threshold";
    case SpecKind::LearnedLinear: return "learned_linear";
  }
  return "threshold";
}

SpecKind spec_kind_from_name(std::string_view name) {
  if (name == "threshold") return SpecKind::Threshold;
  if (name == "two_threshold") return SpecKind::TwoThreshold;
  if (name == "learned_linear") return SpecKind::LearnedLinear;
  throw ConfigError("unknown link spec kind: " + std::string(name));
}

LinkSpec LinkSpec::make_threshold(double t) {
  if (t < 0.0 || t > 1.0) throw ConfigError("threshold must lie in [0,1]");
  LinkSpec spec;
  spec.kind = SpecKind::Threshold;
  spec.threshold = t;
  return spec;
}

LinkSpec LinkSpec::make_two_threshold(double lower, double upper) {
  if (lower > upper) throw ConfigError("two-threshold spec requires lower <= upper");
  if (lower < 0.0 || upper > 1.0) throw ConfigError("thresholds must lie in [0,1]");
  LinkSpec spec;
  spec.kind = SpecKind::TwoThreshold;
  spec.lower = lower;
  spec.upper = upper;
  return spec;
}

namespace {

double sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

}  // namespace

double score(const LinkSpec& spec, const FeatureVector& v, bool* no_evidence) {
  if (no_evidence != nullptr) *no_evidence = false;

  if (spec.kind == SpecKind::LearnedLinear) {
    if (spec.weights.size() != v.size()) {
      throw Error("feature vector length " + std::to_string(v.size()) +
                  " does not match model dimensionality " + std::to_string(spec.weights.size()));
    }
    double z = spec.bias;
    for (std::size_t i = 0; i < v.size(); ++i) {
      double x = v.values[i] == kMissingFeature ? 0.0 : v.values[i];
      z += spec.weights[i] * x;
    }
    return clamp01(sigmoid(z));
  }

  if (!spec.rule_weights.empty() && spec.rule_weights.size() != v.size()) {
    throw Error("rule weight vector length does not match feature vector");
  }
  double weighted_sum = 0.0;
  double weight_total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.values[i] == kMissingFeature) continue;
    double w = spec.rule_weights.empty() ? 1.0 : spec.rule_weights[i];
    weighted_sum += w * v.values[i];
    weight_total += w;
  }
  if (weight_total == 0.0) {
    if (no_evidence != nullptr) *no_evidence = true;
    return 0.0;  // nothing to aggregate: no evidence
  }
  return clamp01(weighted_sum / weight_total);
}

std::string_view match_label_name(MatchLabel label) {
  switch (label) {
    case MatchLabel::Duplicate: return "duplicate";
    case MatchLabel::NonDuplicate: return "non-duplicate";
    case MatchLabel::Indeterminate: return "indeterminate";
  }
  return "non-duplicate";
}

MatchLabel match_label_from_name(std::string_view name) {
  if (name == "duplicate") return MatchLabel::Duplicate;
  if (name == "non-duplicate") return MatchLabel::NonDuplicate;
  if (name == "indeterminate") return MatchLabel::Indeterminate;
  throw Error("unknown match label: " + std::string(name));
}

MatchDecision decide(const LinkSpec& spec, double scored, const EntityPair& pair) {
  if (scored < 0.0 || scored > 1.0) throw Error("score outside [0,1]");
  MatchDecision d{pair, scored, MatchLabel::NonDuplicate};
  if (spec.kind == SpecKind::TwoThreshold) {
    if (scored > spec.upper) {
      d.label = MatchLabel::Duplicate;
    } else if (scored <= spec.lower) {
      d.label = MatchLabel::NonDuplicate;
    } else {
      d.label = MatchLabel::Indeterminate;
    }
  } else {
    d.label = scored > spec.threshold ? MatchLabel::Duplicate : MatchLabel::NonDuplicate;
  }
  return d;
}

double log_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                const std::vector<double>& weights, double bias) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = bias;
    for (std::size_t k = 0; k < weights.size(); ++k) z += weights[k] * x[i][k];
    // -log sigma(z) = softplus(-z); -log(1 - sigma(z)) = softplus(z).
    total += y[i] == 1 ? softplus(-z) : softplus(z);
  }
  return total / static_cast<double>(x.size());
}

void log_loss_gradient(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const std::vector<double>& weights, double bias,
                       std::vector<double>* grad_weights, double* grad_bias) {
  grad_weights->assign(weights.size(), 0.0);
  *grad_bias = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = bias;
    for (std::size_t k = 0; k < weights.size(); ++k) z += weights[k] * x[i][k];
    double err = sigmoid(z) - y[i];
    for (std::size_t k = 0; k < weights.size(); ++k) (*grad_weights)[k] += err * x[i][k];
    *grad_bias += err;
  }
  double inv = 1.0 / static_cast<double>(x.size());
  for (double& g : *grad_weights) g *= inv;
  *grad_bias *= inv;
}

TrainResult train_linear(const std::vector<LabeledPair>& training, const Dataset& d1,
                         const Dataset& d2, const std::vector<FeatureFunction>& library,
                         int epochs, double learning_rate, std::uint64_t seed) {
  (void)seed;  // zero initialization keeps training deterministic; the seed
               // is accepted for interface stability and recorded by callers
  if (epochs < 1) throw ConfigError("training requires epochs >= 1");
  if (learning_rate <= 0.0) throw ConfigError("training requires a positive learning rate");

  std::size_t positives = 0;
  for (const LabeledPair& lp : training) positives += lp.is_duplicate ? 1 : 0;
  if (positives == 0 || positives == training.size()) {
    throw Error("training set must contain at least one positive and one negative example");
  }

  std::vector<std::vector<double>> x;
  std::vector<int> y;
  x.reserve(training.size());
  y.reserve(training.size());
  for (const LabeledPair& lp : training) {
    FeatureVector v = vectorize(lp.pair, d1, d2, library);
    for (double& value : v.values) {
      if (value == kMissingFeature) value = 0.0;  // sentinel zeroed for the linear model
    }
    x.push_back(std::move(v.values));
    y.push_back(lp.is_duplicate ? 1 : 0);
  }
  std::size_t dim = x.front().size();
  for (const auto& row : x) {
    if (row.size() != dim) throw Error("feature vector dimension mismatch in training set");
  }

  std::vector<double> weights(dim, 0.0);
  double bias = 0.0;
  std::vector<double> grad(dim, 0.0);
  double grad_bias = 0.0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    log_loss_gradient(x, y, weights, bias, &grad, &grad_bias);
    for (std::size_t k = 0; k < dim; ++k) weights[k] -= learning_rate * grad[k];
    bias -= learning_rate * grad_bias;
  }

  TrainResult result;
  result.spec.kind = SpecKind::LearnedLinear;
  result.spec.weights = std::move(weights);
  result.spec.bias = bias;
  result.spec.threshold = 0.5;
  for (const FeatureFunction& fn : library) result.spec.function_names.push_back(fn.name);
  result.spec.schema = d1.schema();
  result.final_loss = log_loss(x, y, result.spec.weights, result.spec.bias);
  return result;
}

std::string link_spec_to_json(const LinkSpec& spec) {
  json j;
  j["kind"] = std::string(spec_kind_name(spec.kind));
  switch (spec.kind) {
    case SpecKind::Threshold:
      j["threshold"] = spec.threshold;
      break;
    case SpecKind::TwoThreshold:
      j["lower"] = spec.lower;
      j["upper"] = spec.upper;
      break;
    case SpecKind::LearnedLinear:
      j["weights"] = spec.weights;
      j["bias"] = spec.bias;
      j["threshold"] = spec.threshold;
      break;
  }
  if (!spec.rule_weights.empty()) j["rule_weights"] = spec.rule_weights;
  if (!spec.function_names.empty()) j["functions"] = spec.function_names;
  if (!spec.schema.empty()) j["schema"] = spec.schema;
  return j.dump(2);
}

LinkSpec link_spec_from_json(const std::string& text) {
  json j = json::parse(text);
  LinkSpec spec;
  spec.kind = spec_kind_from_name(j.at("kind").get<std::string>());
  switch (spec.kind) {
    case SpecKind::Threshold:
      spec = LinkSpec::make_threshold(j.at("threshold").get<double>());
      break;
    case SpecKind::TwoThreshold:
      spec = LinkSpec::make_two_threshold(j.at("lower").get<double>(),
                                          j.at("upper").get<double>());
      break;
    case SpecKind::LearnedLinear:
      spec.weights = j.at("weights").get<std::vector<double>>();
      spec.bias = j.at("bias").get<double>();
      spec.threshold = j.value("threshold", 0.5);
      break;
  }
  if (j.contains("rule_weights")) {
    spec.rule_weights = j.at("rule_weights").get<std::vector<double>>();
  }
  if (j.contains("functions")) {
    spec.function_names = j.at("functions").get<std::vector<std::string>>();
  }
  if (j.contains("schema")) spec.schema = j.at("schema").get<std::vector<std::string>>();
  return spec;
}

SimilarityOutput apply_similarity(const CandidateSet& candidates, const LinkSpec& spec,
                                  const Dataset& d1, const Dataset& d2,
                                  const std::vector<FeatureFunction>& library, int workers) {
  std::vector<const EntityPair*> pairs;
  pairs.reserve(candidates.size());
  for (const EntityPair& p : candidates.pairs()) pairs.push_back(&p);

  SimilarityOutput out;
  out.decisions.resize(pairs.size());
  std::vector<unsigned char> no_evidence(pairs.size(), 0);

  detail::parallel_chunks(pairs.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      FeatureVector v = vectorize(*pairs[i], d1, d2, library);
      bool empty_vector = false;
      double s = score(spec, v, &empty_vector);
      out.decisions[i] = decide(spec, s, *pairs[i]);
      no_evidence[i] = empty_vector ? 1 : 0;
    }
  });

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out.no_evidence_pairs += no_evidence[i];
    switch (out.decisions[i].label) {
      case MatchLabel::Duplicate: out.duplicates.push_back(*pairs[i]); break;
      case MatchLabel::NonDuplicate: out.non_duplicates.push_back(*pairs[i]); break;
      case MatchLabel::Indeterminate: out.review.push_back(*pairs[i]); break;
    }
  }
  return out;
}

}  // namespace erkit
