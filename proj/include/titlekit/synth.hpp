#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "titlekit/core_model.hpp"
#include "titlekit/error.hpp"
#include "titlekit/survey_analysis.hpp"
#include "titlekit/title_composer.hpp"

namespace titlekit::synth {

// Generator defaults: B and O above 80%, T at 58%, optional tags under 30%.
inline std::map<FunctionTag, double> default_tag_rates() {
  return {{FunctionTag::B, 0.85}, {FunctionTag::O, 0.85}, {FunctionTag::T, 0.58},
          {FunctionTag::P, 0.10}, {FunctionTag::M, 0.20}, {FunctionTag::S, 0.05}};
}

/// A corpus of `size` tagged titles in which exactly round(rate * size)
/// titles contain each planted tag. Titles are built from stock phrases and
/// satisfy validate().
inline std::vector<TaggedTitle> planted_corpus(const std::map<FunctionTag, double>& rates, std::size_t size,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::map<FunctionTag, bool>> present(size);
  for (const auto& [tag, rate] : rates) {
    if (rate < 0.0 || rate > 1.0) throw Error(ErrorKind::InvalidInput, "rate out of [0,1] for " + to_string(tag));
    auto count = static_cast<std::size_t>(std::llround(rate * static_cast<double>(size)));
    std::vector<std::size_t> docs(size);
    for (std::size_t i = 0; i < size; ++i) docs[i] = i;
    detail::seeded_shuffle(docs, rng);
    for (std::size_t k = 0; k < count; ++k) present[docs[k]][tag] = true;
  }

  struct Piece {
    FunctionTag tag;
    const char* marker;
    const char* text;
  };
  static constexpr std::array<Piece, 7> pieces = {{{FunctionTag::D, nullptr, "Study"},
                                                   {FunctionTag::T, nullptr, "Method"},
                                                   {FunctionTag::B, nullptr, "to Reduce"},
                                                   {FunctionTag::O, nullptr, "Cable Faults"},
                                                   {FunctionTag::M, "by", "Pulse Radar"},
                                                   {FunctionTag::S, nullptr, "by 50%"},
                                                   {FunctionTag::P, "for", "Urban Grids"}}};

  std::vector<TaggedTitle> corpus;
  corpus.reserve(size);
  for (std::size_t d = 0; d < size; ++d) {
    TaggedTitle title;
    title.language_template = std::string(kEnglishTemplateId);
    // word appended, returns its span
    auto append = [&](const std::string& s) -> Span {
      if (!title.source.empty()) title.source += ' ';
      std::size_t start = title.source.size();
      title.source += s;
      return {start, title.source.size()};
    };
    append("Note " + std::to_string(d));
    for (const auto& piece : pieces) {
      auto it = present[d].find(piece.tag);
      if (it == present[d].end() || !it->second) continue;
      if (piece.marker) append(piece.marker);
      Component c{piece.tag, piece.text, std::nullopt, append(piece.text)};
      if (piece.marker) c.marker = piece.marker;
      title.components.push_back(std::move(c));
    }
    corpus.push_back(std::move(title));
  }
  return corpus;
}

/// Respondents per field and readership, used as generator defaults.
struct RespondentCounts {
  std::string field_id;
  std::array<std::uint64_t, 4> by_readership;  // in kReaderships order
};

inline std::vector<RespondentCounts> default_respondents() {
  return {{"electric-transmission", {151, 114, 69, 48}},
          {"architectural-engineering", {168, 115, 62, 45}},
          {"environmental-science", {108, 153, 71, 53}}};
}

/// Target significance bucket and Cramer's V per impression x readership.
struct TargetCell {
  Significance significance;
  double cramers_v;
};

inline std::map<std::pair<Impression, Readership>, TargetCell> target_impression_grid() {
  using I = Impression;
  using R = Readership;
  constexpr auto s1 = Significance::Sig1Pct;
  return {{{I::Comprehensible, R::Unconcerned}, {s1, 0.62}},  {{I::Comprehensible, R::Commoner}, {s1, 0.59}},
          {{I::Comprehensible, R::Engineer}, {s1, 0.38}},     {{I::Comprehensible, R::Researcher}, {s1, 0.43}},
          {{I::PositiveFeeling, R::Unconcerned}, {s1, 0.45}}, {{I::PositiveFeeling, R::Commoner}, {s1, 0.45}},
          {{I::PositiveFeeling, R::Engineer}, {s1, 0.22}},    {{I::PositiveFeeling, R::Researcher}, {s1, 0.24}},
          {{I::Interesting, R::Unconcerned}, {s1, 0.27}},     {{I::Interesting, R::Commoner}, {s1, 0.35}},
          {{I::Interesting, R::Engineer}, {s1, 0.22}},        {{I::Interesting, R::Researcher}, {Significance::Sig5Pct, 0.10}}};
}

/// Yes-counts (y11 < y12 < y20) over `per_pattern` answers per obligatory
/// pattern whose 3x2 table has Cramer's V as close as possible to target_v.
/// The middle pattern sits at `center` share of yes answers.
inline std::array<std::uint64_t, 3> tune_slope(std::uint64_t per_pattern, double target_v, double center) {
  const auto mid = static_cast<std::int64_t>(std::llround(center * static_cast<double>(per_pattern)));
  const auto m = static_cast<std::int64_t>(per_pattern);
  std::array<std::uint64_t, 3> best{};
  double best_err = INFINITY;
  for (std::int64_t k = 1; k <= mid; ++k) {
    for (std::int64_t extra : {-1, 0, 1}) {
      std::int64_t lo = mid - k, hi = mid + k + extra;
      if (lo < 0 || hi > m || hi <= mid) continue;
      auto u = [](std::int64_t x) { return static_cast<std::uint64_t>(x); };
      ContingencyTable t{{{u(lo), u(m - lo)}, {u(mid), u(m - mid)}, {u(hi), u(m - hi)}}};
      if (t.col_total(0) == 0 || t.col_total(1) == 0) continue;
      double err = std::abs(cramers_v(t) - target_v);
      if (err < best_err) {
        best_err = err;
        best = {u(lo), u(mid), u(hi)};
      }
    }
  }
  return best;
}

/// Answer events per obligatory pattern for each readership in the
/// synthetic survey. Each respondent rates three titles per obligatory
/// pattern, so three times the respondent totals over all fields.
/// Researchers get 250 instead: at V = 0.10 the statistic V^2 * n has to sit
/// between the 95% and 99% quantiles of chi-square(2), and 146 * 3 = 438 per
/// pattern puts it above the 99% one.
inline std::map<Readership, std::uint64_t> grid_events_per_pattern() {
  std::map<Readership, std::uint64_t> out;
  for (std::size_t r = 0; r < kReaderships.size(); ++r) {
    std::uint64_t respondents = 0;
    for (const auto& f : default_respondents()) respondents += f.by_readership[r];
    out[kReaderships[r]] = 3 * respondents;
  }
  out[Readership::Researcher] = 250;
  return out;
}

/// Yes-share of the middle pattern for each impression; readers find titles
/// more comprehensible than interesting.
inline double grid_center(Impression i) {
  switch (i) {
    case Impression::Comprehensible: return 0.55;
    case Impression::PositiveFeeling: return 0.50;
    case Impression::Interesting: return 0.40;
  }
  return 0.5;
}

/// Planted counts hitting the target V values with yes-shares rising
/// from pattern 1.1 to 2.0 in every readership and impression.
inline ResponseTarget impression_grid_target() {
  ResponseTarget target;
  auto events = grid_events_per_pattern();
  for (const auto& [key, cell] : target_impression_grid()) {
    auto [impression, readership] = key;
    std::uint64_t m = events.at(readership);
    auto yes = tune_slope(m, cell.cramers_v, grid_center(impression));
    for (auto p : kObligatoryPatterns) target[{readership, impression, p}] = {yes[index_of(p)], m - yes[index_of(p)]};
  }
  return target;
}

}  // namespace titlekit::synth
