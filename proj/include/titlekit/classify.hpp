#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "titlekit/core_model.hpp"
#include "titlekit/phrase_bank.hpp"

namespace titlekit {

namespace detail {

// Whitespace-collapsed, lowercased copy of a string with a map back to
// original offsets.
struct NormalizedText {
  std::string text;
  std::vector<std::size_t> origin;

  explicit NormalizedText(std::string_view s) {
    bool pending_space = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (is_space(s[i])) {
        pending_space = !text.empty();
        continue;
      }
      if (pending_space) {
        text.push_back(' ');
        origin.push_back(i - 1);
        pending_space = false;
      }
      text.push_back(ascii_lower(s[i]));
      origin.push_back(i);
    }
  }
};

// True when `variant` occurs in the source at a place that covers the
// component's span and touches no other component. The variant may carry
// function words ("by", "to") that sit between components.
inline bool variant_covers(const TaggedTitle& title, std::size_t index, std::string_view variant) {
  std::string needle = normalize(variant);
  if (needle.empty()) return false;
  NormalizedText hay(title.source);
  const Span own = title.components[index].span;
  for (std::size_t pos = hay.text.find(needle); pos != std::string::npos; pos = hay.text.find(needle, pos + 1)) {
    std::size_t start = hay.origin[pos];
    std::size_t end = hay.origin[pos + needle.size() - 1] + 1;
    if (start > own.start || end < own.end) continue;
    bool clean = true;
    for (std::size_t k = 0; k < title.components.size() && clean; ++k) {
      if (k == index) continue;
      const Span other = title.components[k].span;
      clean = other.end <= start || other.start >= end;
    }
    if (clean) return true;
  }
  return false;
}

inline Error unknown_phrase(const Component& c, const PhraseBankEntry& bank) {
  return Error(ErrorKind::UnknownPhrase, to_string(c.tag) + " text '" + c.text +
                                             "' matches no variant of '" + bank.technology_id + "'");
}

}  // namespace detail

/// Reads the expression-pattern pair off a tagged title by looking every
/// content component up in the technology's phrase bank.
inline std::pair<ObligatoryPattern, OptionalPattern> classify_pattern(const TaggedTitle& title,
                                                                      const PhraseBankEntry& bank) {
  std::optional<ObligatoryPattern> obligatory;
  std::optional<OptionalPattern> method;
  bool strong_point = false;

  for (std::size_t i = 0; i < title.components.size(); ++i) {
    const auto& c = title.components[i];
    auto covers = [&](std::string_view v) { return detail::variant_covers(title, i, v); };
    switch (c.tag) {
      case FunctionTag::T:
        if (!covers(bank.t_text)) throw detail::unknown_phrase(c, bank);
        break;
      case FunctionTag::B:
        if (!covers(bank.b_text)) throw detail::unknown_phrase(c, bank);
        break;
      case FunctionTag::O:
        for (auto p : kObligatoryPatterns) {
          auto it = bank.o_variants.find(p);
          if (it != bank.o_variants.end() && covers(it->second)) {
            obligatory = p;
            break;
          }
        }
        if (!obligatory) throw detail::unknown_phrase(c, bank);
        break;
      case FunctionTag::M:
        for (const auto& [p, phrase] : bank.m_variants) {
          if (covers(phrase)) {
            method = p;
            break;
          }
        }
        if (!method) throw detail::unknown_phrase(c, bank);
        break;
      case FunctionTag::S:
        if (!covers(bank.s_variant)) throw detail::unknown_phrase(c, bank);
        strong_point = true;
        break;
      case FunctionTag::P:
        if (!bank.p_text || !covers(*bank.p_text)) throw detail::unknown_phrase(c, bank);
        break;
      case FunctionTag::D:
      case FunctionTag::E:
        break;
    }
  }

  if (!obligatory)
    throw Error(ErrorKind::UnknownPhrase, "'" + title.source + "' has no O component to classify");
  if (method && strong_point)
    throw Error(ErrorKind::UnknownPhrase, "'" + title.source + "' carries both M and S; no single optional pattern");
  OptionalPattern optional = method ? *method : strong_point ? OptionalPattern::P4_0 : OptionalPattern::None;
  return {*obligatory, optional};
}

}  // namespace titlekit
