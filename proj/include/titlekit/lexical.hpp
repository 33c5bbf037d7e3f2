#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "titlekit/core_model.hpp"
#include "titlekit/error.hpp"
#include "titlekit/text.hpp"

namespace titlekit {

/// A run of title text delimited by markers, technology-type words or
/// development phrases. marker_hit carries the cue text and the tag it hints.
struct Segment {
  std::string text;
  std::optional<std::pair<std::string, FunctionTag>> marker_hit;
  Span span;
};

enum class UnitKind {
  Development,
  MarkerPhrase,
  Technology,
  Verbal,
  Gain,
  Organization,
  Connective,
  Article,
  Word,
};

/// One lexical unit over tokens [first, last). For a MarkerPhrase the marker
/// occupies [marker_first, marker_last) and the hinted tag is M or P.
struct Unit {
  UnitKind kind = UnitKind::Word;
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t marker_first = 0;
  std::size_t marker_last = 0;
  FunctionTag hint = FunctionTag::E;
};

/// Lexicon compiled into phrase matchers against one order template.
class Lexer {
 public:
  Lexer(const MarkerLexicon& lexicon, const OrderTemplate& tmpl)
      : method_(lexicon.method_markers),
        purpose_(lexicon.purpose_markers),
        development_(lexicon.development_markers),
        technology_(lexicon.technology_type_words),
        verbal_(lexicon.verbal_nouns),
        gain_(lexicon.gain_words),
        organization_(lexicon.organization_names),
        connective_(tmpl.connectives),
        article_(tmpl.articles),
        position_(tmpl.marker_position) {}

  struct Scan {
    std::string_view source;
    std::vector<Token> tokens;
    std::vector<Unit> units;

    Span span_of(std::size_t first, std::size_t last) const {
      return {tokens[first].span.start, tokens[last - 1].span.end};
    }
    std::string text_of(std::size_t first, std::size_t last) const {
      Span s = span_of(first, last);
      return std::string(source.substr(s.start, s.size()));
    }
  };

  Scan scan(std::string_view source, bool recognize_organizations) const {
    Scan out{source, tokenize(source), {}};
    const auto& tokens = out.tokens;
    auto& units = out.units;
    bool development_seen = false;
    std::size_t i = 0;
    while (i < tokens.size()) {
      if (!development_seen) {
        if (std::size_t n = development_.match(tokens, i)) {
          units.push_back({UnitKind::Development, i, i + n});
          development_seen = true;
          i += n;
          continue;
        }
      }
      std::size_t nm = method_.match(tokens, i);
      std::size_t np = purpose_.match(tokens, i);
      if (nm || np) {
        std::size_t n = std::max(nm, np);
        FunctionTag hint = nm >= np ? FunctionTag::M : FunctionTag::P;
        if (open_marker_phrase(out, i, n, hint)) {
          i = units.back().last;
          continue;
        }
      }
      if (recognize_organizations) {
        if (std::size_t n = organization_.match(tokens, i)) {
          units.push_back({UnitKind::Organization, i, i + n});
          i += n;
          continue;
        }
      }
      if (std::size_t n = technology_.match(tokens, i)) {
        units.push_back({UnitKind::Technology, i, i + n});
        i += n;
        continue;
      }
      if (std::size_t n = verbal_.match(tokens, i)) {
        units.push_back({UnitKind::Verbal, i, i + n});
        i += n;
        continue;
      }
      UnitKind kind = UnitKind::Word;
      if (connective_.contains_word(tokens[i].text)) kind = UnitKind::Connective;
      else if (article_.contains_word(tokens[i].text)) kind = UnitKind::Article;
      else if (gain_.contains_word(tokens[i].text)) kind = UnitKind::Gain;
      units.push_back({kind, i, i + 1});
      ++i;
    }
    return out;
  }

  bool is_connective(std::string_view word) const { return connective_.contains_word(word); }
  bool is_gain(std::string_view word) const { return gain_.contains_word(word); }

  /// A method-marker phrase whose content is numeric or opens with a gain
  /// word describes a strong point, not a method ("by 1/10000").
  bool is_strong_point_phrase(const Scan& scan, const Unit& u) const {
    if (u.kind != UnitKind::MarkerPhrase || u.hint != FunctionTag::M) return false;
    auto [first, last] = content_range(u);
    if (first >= last) return false;
    const std::string& head = scan.tokens[position_ == MarkerPosition::Prefix ? first : last - 1].text;
    return has_digit(head) || gain_.contains_word(head);
  }

  /// Token range of a marker phrase without its marker.
  static std::pair<std::size_t, std::size_t> content_range(const Unit& u) {
    if (u.marker_first == u.first) return {u.marker_last, u.last};
    return {u.first, u.marker_first};
  }

  MarkerPosition marker_position() const noexcept { return position_; }

 private:
  // Prefix languages: the marker opens a phrase that runs to the next marker.
  // Suffix languages: the marker closes the free words collected since the
  // previous unit. Returns false when the marker has nothing to attach to.
  bool open_marker_phrase(Scan& scan, std::size_t i, std::size_t n, FunctionTag hint) const {
    const auto& tokens = scan.tokens;
    auto& units = scan.units;
    if (position_ == MarkerPosition::Prefix) {
      std::size_t j = i + n;
      while (j < tokens.size() && !method_.match(tokens, j) && !purpose_.match(tokens, j)) ++j;
      if (j == i + n) return false;
      units.push_back({UnitKind::MarkerPhrase, i, j, i, i + n, hint});
      return true;
    }
    std::size_t start = i;
    while (!units.empty() && is_free(units.back().kind)) {
      start = units.back().first;
      units.pop_back();
    }
    while (start < i && connective_.contains_word(tokens[start].text)) {
      units.push_back({UnitKind::Connective, start, start + 1});
      ++start;
    }
    if (start == i) return false;
    units.push_back({UnitKind::MarkerPhrase, start, i + n, i, i + n, hint});
    return true;
  }

  static bool is_free(UnitKind k) {
    return k == UnitKind::Word || k == UnitKind::Gain || k == UnitKind::Article || k == UnitKind::Connective;
  }

  PhraseMatcher method_, purpose_, development_, technology_, verbal_, gain_, organization_;
  PhraseMatcher connective_, article_;
  MarkerPosition position_;
};

namespace detail {

// Free units (words, connectives, unpicked candidates) between two anchored
// units. [first, last) is the token range left after trimming function words
// at the edges; it is empty when the run holds only function words.
struct Run {
  std::size_t first = 0;
  std::size_t last = 0;
  bool gain_only = false;
  // Untrimmed unit range [unit_begin, unit_end).
  std::size_t unit_begin = 0;
  std::size_t unit_end = 0;

  bool empty() const noexcept { return first == last; }
};

inline std::vector<Run> collect_runs(const Lexer::Scan& scan, const std::vector<bool>& anchored) {
  std::vector<Run> runs;
  const auto& units = scan.units;
  std::size_t u = 0;
  while (u < units.size()) {
    if (anchored[u]) {
      ++u;
      continue;
    }
    std::size_t begin = u;
    while (u < units.size() && !anchored[u]) ++u;
    std::size_t end = u;
    Run run;
    run.unit_begin = begin;
    run.unit_end = end;
    while (begin < end && units[begin].kind == UnitKind::Connective) ++begin;
    while (end > begin && (units[end - 1].kind == UnitKind::Connective || units[end - 1].kind == UnitKind::Article))
      --end;
    if (begin < end) {
      run.first = units[begin].first;
      run.last = units[end - 1].last;
      run.gain_only = true;
      for (std::size_t k = begin; k < end; ++k) {
        auto kind = units[k].kind;
        if (kind != UnitKind::Gain && kind != UnitKind::Connective && kind != UnitKind::Article)
          run.gain_only = false;
      }
    }
    runs.push_back(run);
  }
  return runs;
}

inline Component make_component(const Lexer::Scan& scan, FunctionTag tag, std::size_t first, std::size_t last) {
  return {tag, scan.text_of(first, last), std::nullopt, scan.span_of(first, last)};
}

// D keeps its head words; connectives at either edge ("Development of",
// "no kaihatsu") are separators.
inline Component development_component(const Lexer::Scan& scan, const Lexer& lexer, const Unit& u) {
  std::size_t first = u.first, last = u.last;
  while (first < last && lexer.is_connective(scan.tokens[first].text)) ++first;
  while (last > first && lexer.is_connective(scan.tokens[last - 1].text)) --last;
  if (first == last) return make_component(scan, FunctionTag::D, u.first, u.last);
  return make_component(scan, FunctionTag::D, first, last);
}

// M and P carry their marker separately; a strong-point "by"-phrase keeps
// the preposition as part of its text.
inline Component marker_component(const Lexer::Scan& scan, const Lexer& lexer, const Unit& u) {
  if (lexer.is_strong_point_phrase(scan, u)) return make_component(scan, FunctionTag::S, u.first, u.last);
  auto [first, last] = Lexer::content_range(u);
  Component c = make_component(scan, u.hint, first, last);
  c.marker = scan.text_of(u.marker_first, u.marker_last);
  return c;
}

inline void sort_by_span(std::vector<Component>& components) {
  std::sort(components.begin(), components.end(),
            [](const Component& a, const Component& b) { return a.span.start < b.span.start; });
}

inline std::vector<FunctionTag> tags_of(const std::vector<Component>& components) {
  std::vector<FunctionTag> tags;
  for (const auto& c : components) tags.push_back(c.tag);
  return tags;
}

}  // namespace detail

/// Splits a title at marker occurrences and technology-type / development
/// words. Text between cues forms one unmarked segment.
inline std::vector<Segment> segment(std::string_view title, const MarkerLexicon& lexicon,
                                    const OrderTemplate& tmpl) {
  if (trim(title).empty()) throw Error(ErrorKind::EmptyTitle, "title is empty");
  Lexer lexer(lexicon, tmpl);
  auto scan = lexer.scan(title, false);
  std::vector<Segment> segments;
  std::optional<std::size_t> open;
  auto flush = [&](std::size_t end) {
    if (open && *open < end) segments.push_back({scan.text_of(*open, end), std::nullopt, scan.span_of(*open, end)});
    open.reset();
  };
  for (const auto& u : scan.units) {
    std::optional<std::pair<std::string, FunctionTag>> hit;
    switch (u.kind) {
      case UnitKind::Development: hit = {{scan.text_of(u.first, u.last), FunctionTag::D}}; break;
      case UnitKind::Technology: hit = {{scan.text_of(u.first, u.last), FunctionTag::T}}; break;
      case UnitKind::MarkerPhrase: hit = {{scan.text_of(u.marker_first, u.marker_last), u.hint}}; break;
      default: break;
    }
    if (!hit) {
      if (!open) open = u.first;
      continue;
    }
    flush(u.first);
    segments.push_back({scan.text_of(u.first, u.last), hit, scan.span_of(u.first, u.last)});
  }
  flush(scan.tokens.size());
  return segments;
}

}  // namespace titlekit
