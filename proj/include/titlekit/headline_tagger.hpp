#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "titlekit/core_model.hpp"
#include "titlekit/error.hpp"
#include "titlekit/lexical.hpp"

namespace titlekit {

struct VerbalCandidate {
  std::string text;
  Span span;
  bool is_verbal_noun = false;

  friend bool operator==(const VerbalCandidate&, const VerbalCandidate&) = default;
};

/// Evidence that a verbal is the behavior of the headline, strongest first.
struct BehaviorClues {
  bool adjacent_object = false;
  bool marker_adjacent = false;
  std::size_t start = 0;

  // Larger is better: object adjacency, then marker adjacency, then earlier.
  friend bool operator<(const BehaviorClues& a, const BehaviorClues& b) {
    return std::tuple(a.adjacent_object, a.marker_adjacent, b.start) <
           std::tuple(b.adjacent_object, b.marker_adjacent, a.start);
  }
};

/// Clue-driven tagger for newspaper headlines. Slot order is ignored so that
/// inverted or verb-less headlines still receive tags.
class HeadlineTagger {
 public:
  HeadlineTagger(MarkerLexicon lexicon, OrderTemplate tmpl = english_template())
      : lexicon_(std::move(lexicon)), template_(std::move(tmpl)), lexer_(lexicon_, template_) {}

  std::vector<VerbalCandidate> find_verbals(std::string_view headline) const {
    if (trim(headline).empty()) throw Error(ErrorKind::EmptyTitle, "headline is empty");
    return verbals_of(lexer_.scan(headline, true));
  }

  BehaviorClues clues(const VerbalCandidate& candidate, std::string_view headline) const {
    return clues_of(lexer_.scan(headline, true), candidate);
  }

  std::optional<VerbalCandidate> select_behavior(const std::vector<VerbalCandidate>& candidates,
                                                 std::string_view headline) const {
    if (candidates.empty()) return std::nullopt;
    auto scan = lexer_.scan(headline, true);
    const VerbalCandidate* best = &candidates.front();
    BehaviorClues best_clues = clues_of(scan, *best);
    for (const auto& c : candidates) {
      BehaviorClues cl = clues_of(scan, c);
      if (best_clues < cl) {
        best = &c;
        best_clues = cl;
      }
    }
    return *best;
  }

  TaggedTitle tag(std::string_view headline) const {
    if (trim(headline).empty()) throw Error(ErrorKind::EmptyTitle, "headline is empty");
    auto scan = lexer_.scan(headline, true);
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    const auto& units = scan.units;

    std::size_t b = none;
    if (auto chosen = select_behavior(verbals_of(scan), headline)) {
      for (std::size_t u = 0; u < units.size(); ++u)
        if (units[u].kind == UnitKind::Verbal && scan.span_of(units[u].first, units[u].last) == chosen->span) b = u;
    }

    std::size_t t = none;
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (units[u].kind != UnitKind::Technology) continue;
      if (t == none) {
        t = u;
        if (b == none) break;
      } else if (b != none && gap(units[u], units[b]) < gap(units[t], units[b])) {
        t = u;
      }
    }

    std::vector<bool> anchored(units.size(), false);
    std::vector<Component> comps;
    for (std::size_t u = 0; u < units.size(); ++u) {
      const Unit& unit = units[u];
      switch (unit.kind) {
        case UnitKind::Development: comps.push_back(detail::development_component(scan, lexer_, unit)); break;
        case UnitKind::MarkerPhrase: comps.push_back(detail::marker_component(scan, lexer_, unit)); break;
        case UnitKind::Organization:
          comps.push_back(detail::make_component(scan, FunctionTag::E, unit.first, unit.last));
          break;
        default:
          if (u == b) comps.push_back(detail::make_component(scan, FunctionTag::B, unit.first, unit.last));
          else if (u == t) comps.push_back(detail::make_component(scan, FunctionTag::T, unit.first, unit.last));
          else continue;
      }
      anchored[u] = true;
    }

    auto runs = detail::collect_runs(scan, anchored);
    std::optional<std::size_t> object;
    if (b != none) {
      for (std::size_t r = 0; r < runs.size() && !object; ++r)
        if (!runs[r].empty() && !runs[r].gain_only && runs[r].unit_begin > b) object = r;
      for (std::size_t r = runs.size(); r-- > 0 && !object;)
        if (!runs[r].empty() && !runs[r].gain_only && runs[r].unit_end <= b) object = r;
    }
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto& run = runs[r];
      if (run.empty()) continue;
      FunctionTag tag = run.gain_only ? FunctionTag::S : (object == r ? FunctionTag::O : FunctionTag::E);
      comps.push_back(detail::make_component(scan, tag, run.first, run.last));
    }
    detail::sort_by_span(comps);

    // Components beyond a tag's multiplicity fall to E.
    std::map<FunctionTag, std::size_t> seen;
    for (auto& c : comps)
      if (++seen[c.tag] > max_occurrences(c.tag)) c.tag = FunctionTag::E;

    return TaggedTitle{std::string(headline), std::move(comps), template_.id};
  }

  const MarkerLexicon& lexicon() const noexcept { return lexicon_; }

 private:
  static std::size_t gap(const Unit& a, const Unit& b) { return a.first > b.first ? a.first - b.first : b.first - a.first; }

  static bool is_verbal_noun(std::string_view word) {
    static constexpr std::string_view suffixes[] = {"tion", "sion", "ment", "ance", "ence", "ing", "al", "ure"};
    std::string w = to_lower(word);
    return std::any_of(std::begin(suffixes), std::end(suffixes), [&](std::string_view s) {
      return w.size() > s.size() && w.compare(w.size() - s.size(), s.size(), s) == 0;
    });
  }

  std::vector<VerbalCandidate> verbals_of(const Lexer::Scan& scan) const {
    std::vector<VerbalCandidate> out;
    for (const auto& u : scan.units) {
      if (u.kind != UnitKind::Verbal) continue;
      std::string text = scan.text_of(u.first, u.last);
      out.push_back({text, scan.span_of(u.first, u.last), is_verbal_noun(scan.tokens[u.last - 1].text)});
    }
    return out;
  }

  BehaviorClues clues_of(const Lexer::Scan& scan, const VerbalCandidate& c) const {
    BehaviorClues clues;
    clues.start = c.span.start;
    const auto& units = scan.units;
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (scan.span_of(units[u].first, units[u].last) != c.span) continue;
      std::size_t next = u + 1;
      while (next < units.size() && units[next].kind == UnitKind::Article) ++next;
      bool next_word = next < units.size() && (units[next].kind == UnitKind::Word || units[next].kind == UnitKind::Gain);
      bool prev_word = u > 0 && units[u - 1].kind == UnitKind::Word;
      clues.adjacent_object = next_word || prev_word;
      clues.marker_adjacent = (u + 1 < units.size() && units[u + 1].kind == UnitKind::MarkerPhrase) ||
                              (u > 0 && units[u - 1].kind == UnitKind::MarkerPhrase);
      break;
    }
    return clues;
  }

  MarkerLexicon lexicon_;
  OrderTemplate template_;
  Lexer lexer_;
};

inline std::vector<VerbalCandidate> find_verbals(std::string_view headline, const MarkerLexicon& lexicon) {
  return HeadlineTagger(lexicon).find_verbals(headline);
}

inline std::optional<VerbalCandidate> select_behavior(const std::vector<VerbalCandidate>& candidates,
                                                      std::string_view headline, const MarkerLexicon& lexicon) {
  return HeadlineTagger(lexicon).select_behavior(candidates, headline);
}

inline TaggedTitle tag_headline(std::string_view headline, const MarkerLexicon& lexicon) {
  return HeadlineTagger(lexicon).tag(headline);
}

}  // namespace titlekit
