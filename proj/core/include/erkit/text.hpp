#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace erkit {

/// ASCII lowercase; bytes outside [A-Z] pass through unchanged.
std::string to_lower(std::string_view s);

/// Splits on runs of non-alphanumeric bytes, dropping empty tokens.
/// Case is preserved ("J. K. Adams" -> {"J", "K", "Adams"}).
std::vector<std::string> tokenize(std::string_view s);

/// tokenize() followed by ASCII lowercasing of every token.
std::vector<std::string> tokenize_lower(std::string_view s);

/// Lowercased token set, the representation used by Jaccard-style
/// comparisons in canopies, MinHash and the similarity library.
std::set<std::string> token_set_lower(std::string_view s);

/// Extracts a 4-digit year from a literal. Scans digit runs of length >= 4;
/// the default takes the first 4 digits of the first such run, `from_end`
/// takes the last 4 digits of the last one ("1998-03-02" and
/// "2nd March 1998" both yield "1998").
std::optional<std::string> extract_year(std::string_view s, bool from_end = false);

/// FNV-1a 64-bit hash. Used as the token base hash for MinHash so results
/// are stable across platforms and standard library versions.
std::uint64_t fnv1a64(std::string_view s);

/// Edit distance (insert/delete/substitute, unit costs).
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace erkit
