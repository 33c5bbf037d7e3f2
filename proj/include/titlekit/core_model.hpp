#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "titlekit/error.hpp"
#include "titlekit/text.hpp"

namespace titlekit {

// Syntactic function of a title segment.
//   B behavior, O object, T technology type, P purpose, M method,
//   S strong point, D development, E everything else.
enum class FunctionTag { B, O, T, P, M, S, D, E };

inline constexpr std::array<FunctionTag, 8> kAllTags = {
    FunctionTag::B, FunctionTag::O, FunctionTag::T, FunctionTag::P,
    FunctionTag::M, FunctionTag::S, FunctionTag::D, FunctionTag::E};

/// The six tags that describe the technology itself. D and E are
/// representable but never enter comparative statistics.
inline constexpr std::array<FunctionTag, 6> kContentTags = {
    FunctionTag::B, FunctionTag::O, FunctionTag::T,
    FunctionTag::P, FunctionTag::M, FunctionTag::S};

inline constexpr char to_char(FunctionTag tag) noexcept { return "BOTPMSDE"[static_cast<int>(tag)]; }

inline std::string to_string(FunctionTag tag) { return std::string(1, to_char(tag)); }

inline std::optional<FunctionTag> tag_from_char(char c) noexcept {
  for (auto tag : kAllTags)
    if (to_char(tag) == c) return tag;
  return std::nullopt;
}

inline FunctionTag parse_tag(std::string_view s) {
  if (s.size() == 1)
    if (auto tag = tag_from_char(s[0])) return *tag;
  throw Error(ErrorKind::InvalidInput, "unknown function tag '" + std::string(s) + "'");
}

/// Upper bound on occurrences per title; E is unbounded. S has one bound per
/// S slot in the title grammar.
inline constexpr std::size_t max_occurrences(FunctionTag tag) noexcept {
  switch (tag) {
    case FunctionTag::S: return 3;
    case FunctionTag::E: return static_cast<std::size_t>(-1);
    default: return 1;
  }
}

struct Component {
  FunctionTag tag = FunctionTag::E;
  std::string text;
  std::optional<std::string> marker;
  Span span;

  friend bool operator==(const Component&, const Component&) = default;
};

struct TaggedTitle {
  std::string source;
  std::vector<Component> components;
  std::string language_template;
  // Set when the earliest-span rule had to break a tie between candidates.
  bool ambiguity_resolved = false;

  std::size_t count(FunctionTag tag) const {
    return static_cast<std::size_t>(std::count_if(components.begin(), components.end(),
                                                  [&](const Component& c) { return c.tag == tag; }));
  }
  bool has(FunctionTag tag) const { return count(tag) > 0; }
  const Component* find(FunctionTag tag) const {
    for (const auto& c : components)
      if (c.tag == tag) return &c;
    return nullptr;
  }
  std::multiset<FunctionTag> tag_multiset() const {
    std::multiset<FunctionTag> tags;
    for (const auto& c : components) tags.insert(c.tag);
    return tags;
  }
};

// "What to say" x "how to say" for the obligatory components B/O/T.
enum class ObligatoryPattern { P1_1, P1_2, P2_0 };
// Same axis for the optional components; None means neither M nor S.
enum class OptionalPattern { P3_1, P3_2, P4_0, None };

inline constexpr std::array<ObligatoryPattern, 3> kObligatoryPatterns = {
    ObligatoryPattern::P1_1, ObligatoryPattern::P1_2, ObligatoryPattern::P2_0};
inline constexpr std::array<OptionalPattern, 4> kOptionalPatterns = {
    OptionalPattern::P3_1, OptionalPattern::P3_2, OptionalPattern::P4_0, OptionalPattern::None};

inline constexpr std::size_t index_of(ObligatoryPattern p) noexcept { return static_cast<std::size_t>(p); }
inline constexpr std::size_t index_of(OptionalPattern p) noexcept { return static_cast<std::size_t>(p); }

inline std::string to_string(ObligatoryPattern p) {
  constexpr std::array<std::string_view, 3> names = {"1.1", "1.2", "2.0"};
  return std::string(names[index_of(p)]);
}

inline std::string to_string(OptionalPattern p) {
  constexpr std::array<std::string_view, 4> names = {"3.1", "3.2", "4.0", "none"};
  return std::string(names[index_of(p)]);
}

// Accepts "1.1" and "P1_1" spellings.
inline ObligatoryPattern parse_obligatory(std::string_view s) {
  for (auto p : kObligatoryPatterns) {
    std::string dotted = to_string(p);
    std::string symbol = "P" + dotted.substr(0, 1) + "_" + dotted.substr(2);
    if (s == dotted || s == symbol) return p;
  }
  throw Error(ErrorKind::InvalidInput, "unknown obligatory pattern '" + std::string(s) + "'");
}

inline OptionalPattern parse_optional(std::string_view s) {
  if (s == "none" || s == "None" || s.empty()) return OptionalPattern::None;
  for (auto p : kOptionalPatterns) {
    if (p == OptionalPattern::None) continue;
    std::string dotted = to_string(p);
    std::string symbol = "P" + dotted.substr(0, 1) + "_" + dotted.substr(2);
    if (s == dotted || s == symbol) return p;
  }
  throw Error(ErrorKind::InvalidInput, "unknown optional pattern '" + std::string(s) + "'");
}

struct MarkerLexicon {
  std::vector<std::string> method_markers;
  std::vector<std::string> purpose_markers;
  std::vector<std::string> development_markers;
  std::vector<std::string> technology_type_words;
  std::vector<std::string> verbal_nouns;
  std::set<std::string> jargon_terms;
  // Words that make a "by"-phrase or a bare adjective run a strong point.
  std::vector<std::string> gain_words;
  // Names that headline tagging sends to E.
  std::vector<std::string> organization_names;

  /// Problems that make the lexicon unusable for parsing; empty when fine.
  std::vector<std::string> problems() const {
    std::vector<std::string> out;
    auto require = [&](const std::vector<std::string>& list, const char* name) {
      if (list.empty()) out.push_back(std::string(name) + " is empty");
    };
    require(method_markers, "method_markers");
    require(purpose_markers, "purpose_markers");
    require(development_markers, "development_markers");
    require(technology_type_words, "technology_type_words");
    require(verbal_nouns, "verbal_nouns");

    std::map<std::string, std::string> owner;
    auto claim = [&](const std::vector<std::string>& list, const char* name) {
      for (const auto& m : list) {
        auto [it, inserted] = owner.emplace(normalize(m), name);
        if (!inserted && it->second != name)
          out.push_back("marker '" + m + "' appears in both " + it->second + " and " + name);
      }
    };
    claim(method_markers, "method_markers");
    claim(purpose_markers, "purpose_markers");
    claim(development_markers, "development_markers");
    return out;
  }

  bool is_method_marker(std::string_view m) const { return contains(method_markers, m); }
  bool is_purpose_marker(std::string_view m) const { return contains(purpose_markers, m); }
  bool is_development_marker(std::string_view m) const { return contains(development_markers, m); }

 private:
  static bool contains(const std::vector<std::string>& list, std::string_view m) {
    std::string n = normalize(m);
    return std::any_of(list.begin(), list.end(), [&](const std::string& x) { return normalize(x) == n; });
  }
};

enum class MarkerPosition { Prefix, Suffix };

struct Slot {
  FunctionTag tag;
  bool optional;
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Admissible slot order for one language, plus the surface conventions
/// needed to segment and compose titles in it.
struct OrderTemplate {
  std::string id;
  std::vector<Slot> slots;
  std::vector<FunctionTag> compose_order;
  std::string separator = " ";
  MarkerPosition marker_position = MarkerPosition::Prefix;
  // Function words that may sit between components ("of", "to").
  std::vector<std::string> connectives;
  // Determiners kept at the head of a noun phrase but dropped between components.
  std::vector<std::string> articles;

  /// True when `tags` can be produced by consuming each slot at most once, in
  /// order, skipping only optional slots.
  bool matches(const std::vector<FunctionTag>& tags) const {
    return match_from(tags, 0, 0);
  }

  std::string pattern() const {
    std::string out;
    for (const auto& slot : slots) {
      if (!out.empty()) out += ' ';
      out += to_char(slot.tag);
      if (slot.optional) out += '?';
    }
    return out;
  }

  std::size_t slot_count(FunctionTag tag) const {
    return static_cast<std::size_t>(
        std::count_if(slots.begin(), slots.end(), [&](const Slot& s) { return s.tag == tag; }));
  }

 private:
  bool match_from(const std::vector<FunctionTag>& tags, std::size_t ti, std::size_t si) const {
    if (ti == tags.size()) {
      for (std::size_t k = si; k < slots.size(); ++k)
        if (!slots[k].optional) return false;
      return true;
    }
    if (si == slots.size()) return false;
    if (slots[si].tag == tags[ti] && match_from(tags, ti + 1, si + 1)) return true;
    return slots[si].optional && match_from(tags, ti, si + 1);
  }
};

/// Parses a grammar string such as "P? M? S? O S? B S? T? D?".
inline std::vector<Slot> parse_slot_pattern(std::string_view pattern) {
  std::vector<Slot> slots;
  for (const auto& token : tokenize(pattern)) {
    std::string_view t = token.text;
    bool optional = false;
    if (t.size() == 2 && t[1] == '?') {
      optional = true;
      t.remove_suffix(1);
    }
    if (t.size() != 1 || !tag_from_char(t[0]))
      throw Error(ErrorKind::InvalidInput, "bad slot '" + token.text + "' in pattern '" + std::string(pattern) + "'");
    slots.push_back({*tag_from_char(t[0]), optional});
  }
  return slots;
}

/// Compose order defaults to first appearance of each tag in the slot list.
inline std::vector<FunctionTag> default_compose_order(const std::vector<Slot>& slots) {
  std::vector<FunctionTag> order;
  for (const auto& slot : slots)
    if (std::find(order.begin(), order.end(), slot.tag) == order.end()) order.push_back(slot.tag);
  return order;
}

inline constexpr std::string_view kJapaneseTemplateId = "ja-paper";
inline constexpr std::string_view kEnglishTemplateId = "en-paper";
inline constexpr std::string_view kJapanesePattern = "P? M? S? O S? B S? T? D?";
// B may precede T ("Exploration System of ...") or follow it ("Method to
// Shorten ..."), so T has a slot on both sides of B.
inline constexpr std::string_view kEnglishPattern = "D? S? T? B? T? O S? M? P? S?";

inline OrderTemplate japanese_template() {
  OrderTemplate t;
  t.id = std::string(kJapaneseTemplateId);
  t.slots = parse_slot_pattern(kJapanesePattern);
  t.compose_order = default_compose_order(t.slots);
  t.separator = "";
  t.marker_position = MarkerPosition::Suffix;
  t.connectives = {"no", "wo", "suru", "ni"};
  return t;
}

inline OrderTemplate english_template() {
  OrderTemplate t;
  t.id = std::string(kEnglishTemplateId);
  t.slots = parse_slot_pattern(kEnglishPattern);
  t.compose_order = {FunctionTag::D, FunctionTag::T, FunctionTag::B, FunctionTag::O,
                     FunctionTag::M, FunctionTag::S, FunctionTag::P};
  t.separator = " ";
  t.marker_position = MarkerPosition::Prefix;
  t.connectives = {"of", "to", "on", "in"};
  t.articles = {"a", "an", "the"};
  return t;
}

inline std::vector<OrderTemplate> builtin_templates() { return {japanese_template(), english_template()}; }

inline const OrderTemplate& find_template(const std::vector<OrderTemplate>& templates, std::string_view id) {
  for (const auto& t : templates)
    if (t.id == id) return t;
  throw Error(ErrorKind::InvalidInput, "unknown template '" + std::string(id) + "'");
}

/// Structural checks on a tagged title. An empty result means every
/// invariant holds; each entry names the tag and the rule it breaks.
inline std::vector<std::string> validate(const TaggedTitle& title) {
  std::vector<std::string> violations;
  for (auto tag : kAllTags) {
    std::size_t n = title.count(tag);
    std::size_t cap = max_occurrences(tag);
    if (n > cap)
      violations.push_back(to_string(tag) + " occurs " + std::to_string(n) + " times, max " + std::to_string(cap));
  }
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < title.components.size(); ++i) {
    const auto& c = title.components[i];
    std::string where = to_string(c.tag) + " component " + std::to_string(i);
    if (trim(c.text).empty()) violations.push_back(where + " has empty text");
    if (c.span.start >= c.span.end) violations.push_back(where + " has an empty span");
    if (c.span.end > title.source.size()) violations.push_back(where + " span exceeds source bounds");
    if (i > 0 && c.span.start < prev_end) violations.push_back(where + " overlaps or precedes the previous span");
    prev_end = std::max(prev_end, c.span.end);
  }
  return violations;
}

/// validate() plus marker checks: M markers must come from method_markers,
/// P markers from purpose_markers, D markers from development_markers.
inline std::vector<std::string> validate(const TaggedTitle& title, const MarkerLexicon& lexicon) {
  auto violations = validate(title);
  for (const auto& c : title.components) {
    if (!c.marker) continue;
    bool ok = false;
    switch (c.tag) {
      case FunctionTag::M: ok = lexicon.is_method_marker(*c.marker); break;
      case FunctionTag::P: ok = lexicon.is_purpose_marker(*c.marker); break;
      case FunctionTag::D: ok = lexicon.is_development_marker(*c.marker); break;
      default: break;
    }
    if (!ok)
      violations.push_back(to_string(c.tag) + " marker '" + *c.marker + "' is not in the lexicon for " + to_string(c.tag));
  }
  return violations;
}

}  // namespace titlekit
