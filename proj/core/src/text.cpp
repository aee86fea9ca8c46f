#include "erkit/text.hpp"

#include <algorithm>

namespace erkit {

namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !is_ascii_alnum(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && is_ascii_alnum(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) tokens.emplace_back(s.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> tokenize_lower(std::string_view s) {
  std::vector<std::string> tokens = tokenize(s);
  for (std::string& t : tokens) t = to_lower(t);
  return tokens;
}

std::set<std::string> token_set_lower(std::string_view s) {
  std::set<std::string> out;
  for (std::string& t : tokenize_lower(s)) out.insert(std::move(t));
  return out;
}

std::optional<std::string> extract_year(std::string_view s, bool from_end) {
  std::optional<std::string> found;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !is_digit(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && is_digit(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t len = i - start;
    if (len >= 4) {
      if (from_end) {
        found = std::string(s.substr(i - 4, 4));  // keep scanning to find the last run
      } else {
        return std::string(s.substr(start, 4));
      }
    }
  }
  return found;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
    }
  }
  return row[b.size()];
}

}  // namespace erkit
