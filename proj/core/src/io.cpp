#include "erkit/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace erkit {

namespace {

std::vector<std::vector<std::string>> split_tsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line(text.data() + pos,
                          (eol == std::string::npos ? text.size() : eol) - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!line.empty()) {
      std::vector<std::string> cells;
      std::size_t start = 0;
      while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
          cells.emplace_back(line.substr(start));
          break;
        }
        cells.emplace_back(line.substr(start, tab - start));
        start = tab + 1;
      }
      rows.push_back(std::move(cells));
    }
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return rows;
}

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", score);
  return buf;
}

}  // namespace

std::string candidates_to_tsv(const CandidateSet& candidates) {
  std::string out;
  for (const EntityPair& p : candidates.pairs()) {
    out += p.left;
    out += '\t';
    out += p.right;
    out += '\n';
  }
  return out;
}

CandidateSet candidates_from_tsv(const std::string& text, std::string source_method) {
  CandidateSet out(std::move(source_method));
  std::size_t row_no = 0;
  for (const auto& cells : split_tsv(text)) {
    ++row_no;
    if (cells.size() != 2) throw ParseError(row_no, "expected two tab-separated URIs");
    out.insert(EntityPair{cells[0], cells[1]});
  }
  return out;
}

std::string ground_truth_to_tsv(const GroundTruth& gt) {
  std::string out;
  for (const EntityPair& p : gt.matches) {
    out += p.left;
    out += '\t';
    out += p.right;
    out += '\n';
  }
  return out;
}

GroundTruth ground_truth_from_tsv(const std::string& text) {
  GroundTruth gt;
  std::size_t row_no = 0;
  for (const auto& cells : split_tsv(text)) {
    ++row_no;
    if (cells.size() != 2) throw ParseError(row_no, "expected two tab-separated URIs");
    gt.matches.insert(EntityPair{cells[0], cells[1]});
  }
  return gt;
}

std::string decisions_to_tsv(const std::vector<MatchDecision>& decisions) {
  std::string out;
  for (const MatchDecision& d : decisions) {
    out += d.pair.left;
    out += '\t';
    out += d.pair.right;
    out += '\t';
    out += format_score(d.score);
    out += '\t';
    out += match_label_name(d.label);
    out += '\n';
  }
  return out;
}

std::vector<MatchDecision> decisions_from_tsv(const std::string& text) {
  std::vector<MatchDecision> out;
  std::size_t row_no = 0;
  for (const auto& cells : split_tsv(text)) {
    ++row_no;
    if (cells.size() != 4) {
      throw ParseError(row_no, "expected left, right, score, label");
    }
    MatchDecision d;
    d.pair = EntityPair{cells[0], cells[1]};
    try {
      d.score = std::stod(cells[2]);
    } catch (const std::exception&) {
      throw ParseError(row_no, "bad score \"" + cells[2] + "\"");
    }
    d.label = match_label_from_name(cells[3]);
    out.push_back(std::move(d));
  }
  return out;
}

std::string review_to_tsv(const std::vector<MatchDecision>& decisions) {
  std::string out;
  for (const MatchDecision& d : decisions) {
    if (d.label != MatchLabel::Indeterminate) continue;
    out += d.pair.left;
    out += '\t';
    out += d.pair.right;
    out += '\t';
    out += format_score(d.score);
    out += '\n';
  }
  return out;
}

std::vector<LabeledPair> labeled_pairs_from_tsv(const std::string& text) {
  std::vector<LabeledPair> out;
  std::size_t row_no = 0;
  for (const auto& cells : split_tsv(text)) {
    ++row_no;
    if (cells.size() != 3 || (cells[2] != "0" && cells[2] != "1")) {
      throw ParseError(row_no, "expected left, right, 0|1");
    }
    out.push_back(LabeledPair{EntityPair{cells[0], cells[1]}, cells[2] == "1"});
  }
  return out;
}

std::string labeled_pairs_to_tsv(const std::vector<LabeledPair>& pairs) {
  std::string out;
  for (const LabeledPair& lp : pairs) {
    out += lp.pair.left;
    out += '\t';
    out += lp.pair.right;
    out += '\t';
    out += lp.is_duplicate ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("failed writing " + path);
}

AtomicFile::AtomicFile(std::string path) : path_(std::move(path)) {}

void AtomicFile::write(const std::string& content) {
  write_file(path_ + ".partial", content);
  written_ = true;
}

void AtomicFile::commit() {
  if (!written_) throw Error("nothing written to " + path_);
  std::filesystem::rename(path_ + ".partial", path_);
}

}  // namespace erkit
