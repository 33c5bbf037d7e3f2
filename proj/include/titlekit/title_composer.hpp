#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "titlekit/core_model.hpp"
#include "titlekit/error.hpp"
#include "titlekit/phrase_bank.hpp"

namespace titlekit {

inline constexpr std::size_t kSurveyGroups = 4;
inline constexpr std::size_t kTechnologiesPerField = 3;
inline constexpr std::size_t kTitlesPerTechnology = kObligatoryPatterns.size() * kOptionalPatterns.size();
inline constexpr std::size_t kTitlesPerField = kTechnologiesPerField * kTitlesPerTechnology;
inline constexpr std::size_t kTitlesPerGroup = kTitlesPerField / kSurveyGroups;

struct ComposedTitle {
  std::string title;
  std::string technology_id;
  std::string field_id;
  ObligatoryPattern obligatory = ObligatoryPattern::P1_1;
  OptionalPattern optional = OptionalPattern::None;
  std::optional<std::size_t> group;

  friend bool operator==(const ComposedTitle&, const ComposedTitle&) = default;
};

inline ComposedTitle compose_title(const PhraseBankEntry& entry, ObligatoryPattern obligatory,
                                   OptionalPattern optional, const OrderTemplate& tmpl) {
  auto require = [&](const std::string& phrase, const std::string& what) -> const std::string& {
    if (trim(phrase).empty())
      throw Error(ErrorKind::MissingVariant, entry.technology_id + " has no " + what);
    return phrase;
  };
  auto o = entry.o_variants.find(obligatory);
  std::map<FunctionTag, std::string> parts;
  parts[FunctionTag::T] = require(entry.t_text, "t_text");
  parts[FunctionTag::B] = require(entry.b_text, "b_text");
  parts[FunctionTag::O] =
      require(o == entry.o_variants.end() ? std::string() : o->second, "o_variants[" + to_string(obligatory) + "]");
  if (auto phrase = entry.optional_phrase(optional)) {
    FunctionTag tag = optional == OptionalPattern::P4_0 ? FunctionTag::S : FunctionTag::M;
    std::string what = optional == OptionalPattern::P4_0 ? "s_variant" : "m_variants[" + to_string(optional) + "]";
    parts[tag] = require(*phrase, what);
  }

  std::string text;
  for (auto tag : tmpl.compose_order) {
    auto it = parts.find(tag);
    if (it == parts.end()) continue;
    if (!text.empty()) text += tmpl.separator;
    text += std::string(trim(it->second));
  }
  return {text, entry.technology_id, entry.field_id, obligatory, optional, std::nullopt};
}

/// All twelve (obligatory x optional) titles for one technology, obligatory
/// pattern major.
inline std::vector<ComposedTitle> compose_all(const PhraseBankEntry& entry, const OrderTemplate& tmpl) {
  std::vector<ComposedTitle> out;
  out.reserve(kTitlesPerTechnology);
  for (auto ob : kObligatoryPatterns)
    for (auto op : kOptionalPatterns) out.push_back(compose_title(entry, ob, op, tmpl));
  return out;
}

/// Group that shows title (technology t, obligatory i, optional o) to its
/// respondents. Group g never sees optional pattern g; the three groups that
/// do see o take the three technologies in rotation offset by i. Each group
/// then holds 3 obligatory x 3 optional patterns, once per technology row.
inline constexpr std::size_t survey_group(std::size_t technology, std::size_t obligatory, std::size_t optional) {
  std::size_t rank = (technology + kTechnologiesPerField - obligatory % kTechnologiesPerField) % kTechnologiesPerField;
  // rank-th group among {0..3} \ {optional}
  return rank < optional ? rank : rank + 1;
}

/// Partitions one field's 36 titles into four groups of nine.
inline std::vector<ComposedTitle> allocate_groups(std::vector<ComposedTitle> field_titles) {
  if (field_titles.size() != kTitlesPerField)
    throw Error(ErrorKind::BadTitleSet, "expected " + std::to_string(kTitlesPerField) + " titles, got " +
                                            std::to_string(field_titles.size()));
  std::vector<std::string> technologies;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> cells;
  for (const auto& t : field_titles) {
    auto it = std::find(technologies.begin(), technologies.end(), t.technology_id);
    if (it == technologies.end()) {
      technologies.push_back(t.technology_id);
      it = technologies.end() - 1;
    }
    cells.emplace(static_cast<std::size_t>(it - technologies.begin()), index_of(t.obligatory), index_of(t.optional));
  }
  if (technologies.size() != kTechnologiesPerField || cells.size() != kTitlesPerField)
    throw Error(ErrorKind::BadTitleSet,
                "titles must cover 3 technologies x 3 obligatory x 4 optional patterns exactly once");

  for (auto& t : field_titles) {
    auto tech = static_cast<std::size_t>(std::find(technologies.begin(), technologies.end(), t.technology_id) -
                                         technologies.begin());
    t.group = survey_group(tech, index_of(t.obligatory), index_of(t.optional));
  }
  return field_titles;
}

namespace detail {

// Uniform draw in [0, bound) by rejection over mt19937_64 output, so results
// do not depend on the standard library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void seeded_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[uniform_below(rng, i)]);
}

}  // namespace detail

/// Random, balanced, seed-reproducible split of respondents into groups.
/// Result is in input order.
inline std::vector<std::pair<std::string, std::size_t>> assign_respondents(const std::vector<std::string>& respondent_ids,
                                                                           std::size_t n_groups, std::uint64_t seed) {
  if (n_groups == 0) throw Error(ErrorKind::InvalidInput, "n_groups must be at least 1");
  std::vector<std::size_t> order(respondent_ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  detail::seeded_shuffle(order, rng);
  std::vector<std::pair<std::string, std::size_t>> out(respondent_ids.size());
  for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = {respondent_ids[order[k]], k % n_groups};
  return out;
}

}  // namespace titlekit
