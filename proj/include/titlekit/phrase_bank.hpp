#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "titlekit/core_model.hpp"

namespace titlekit {

/// Phrase variants for one technology, one per expression pattern. Variants
/// carry their own function words ("to Shorten", "by Burnout").
struct PhraseBankEntry {
  std::string technology_id;
  std::string field_id;
  std::string t_text;
  std::string b_text;
  std::map<ObligatoryPattern, std::string> o_variants;
  std::map<OptionalPattern, std::string> m_variants;  // keys P3_1, P3_2
  std::string s_variant;                              // the P4_0 phrase
  std::optional<std::string> p_text;

  std::vector<std::string> problems() const {
    std::vector<std::string> out;
    for (auto p : kObligatoryPatterns) {
      auto it = o_variants.find(p);
      if (it == o_variants.end() || trim(it->second).empty())
        out.push_back("o_variants[" + to_string(p) + "] missing");
    }
    for (auto p : {OptionalPattern::P3_1, OptionalPattern::P3_2}) {
      auto it = m_variants.find(p);
      if (it == m_variants.end() || trim(it->second).empty())
        out.push_back("m_variants[" + to_string(p) + "] missing");
    }
    if (trim(s_variant).empty()) out.push_back("s_variant missing");
    return out;
  }

  /// The phrase realising `p` on the optional axis, or nullopt for None.
  std::optional<std::string> optional_phrase(OptionalPattern p) const {
    if (p == OptionalPattern::None) return std::nullopt;
    if (p == OptionalPattern::P4_0) return s_variant;
    auto it = m_variants.find(p);
    return it == m_variants.end() ? std::string() : it->second;
  }
};

inline bool mentions_jargon(std::string_view phrase, const MarkerLexicon& lexicon) {
  std::string p = normalize(phrase);
  for (const auto& term : lexicon.jargon_terms) {
    std::string t = normalize(term);
    if (!t.empty() && p.find(t) != std::string::npos) return true;
  }
  return false;
}

/// Cross-checks the jargon/plain annotation implied by each variant's key
/// against the lexicon's jargon terms. Jargon keys (1.1, 3.1) should mention
/// a jargon term and plain keys should not.
inline std::vector<std::string> check_jargon(const PhraseBankEntry& entry, const MarkerLexicon& lexicon) {
  std::vector<std::string> out;
  auto check = [&](const std::string& key, const std::string& phrase, bool jargon) {
    if (phrase.empty()) return;
    if (mentions_jargon(phrase, lexicon) != jargon)
      out.push_back(entry.technology_id + " " + key + " '" + phrase + "' should be " +
                    (jargon ? "jargon" : "plain"));
  };
  for (const auto& [p, phrase] : entry.o_variants)
    check(to_string(p), phrase, p == ObligatoryPattern::P1_1);
  for (const auto& [p, phrase] : entry.m_variants)
    check(to_string(p), phrase, p == OptionalPattern::P3_1);
  check("4.0", entry.s_variant, false);
  return out;
}

}  // namespace titlekit
