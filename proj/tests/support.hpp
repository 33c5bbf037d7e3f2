#pragma once

#include <string>
#include <utility>
#include <vector>

#include "titlekit/io.hpp"
#include "titlekit/titlekit.hpp"

namespace fixture {

inline std::string path(const std::string& rel) { return std::string(TITLEKIT_DATA) + "/" + rel; }

inline const titlekit::io::LexiconFile& english() {
  static const auto f = titlekit::io::load_lexicon(path("data/lexicon.en.json"));
  return f;
}

inline const titlekit::io::LexiconFile& japanese() {
  static const auto f = titlekit::io::load_lexicon(path("data/lexicon.ja.json"));
  return f;
}

inline const titlekit::MarkerLexicon& lexicon() { return english().lexicon; }
inline titlekit::OrderTemplate en() { return titlekit::find_template(english().templates, "en-paper"); }
inline titlekit::OrderTemplate ja() { return titlekit::find_template(japanese().templates, "ja-paper"); }

inline const std::vector<titlekit::PhraseBankEntry>& bank() {
  static const auto b = titlekit::io::load_bank(path("data/phrase_bank.json"));
  return b;
}

struct Golden {
  std::string mode;
  std::string source;
  std::vector<std::pair<std::string, std::string>> tags;
};

inline std::vector<Golden> golden() {
  std::vector<Golden> out;
  for (const auto& line : titlekit::io::read_lines(path("tests/data/golden.jsonl"))) {
    if (line.empty()) continue;
    auto j = titlekit::io::json::parse(line);
    Golden g{j["mode"], j["source"], {}};
    for (const auto& t : j["tags"]) g.tags.emplace_back(t[0], t[1]);
    out.push_back(std::move(g));
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> tag_pairs(const titlekit::TaggedTitle& t) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : t.components) out.emplace_back(titlekit::to_string(c.tag), c.text);
  return out;
}

inline titlekit::Component comp(titlekit::FunctionTag tag, std::string text, std::size_t start, std::size_t end) {
  return {tag, std::move(text), std::nullopt, {start, end}};
}

}  // namespace fixture
