#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "titlekit/chi_square.hpp"
#include "titlekit/core_model.hpp"
#include "titlekit/error.hpp"
#include "titlekit/title_composer.hpp"

namespace titlekit {

enum class Readership { Unconcerned, Commoner, Engineer, Researcher };
enum class Impression { Comprehensible, PositiveFeeling, Interesting };
enum class InformationSource { General, Trade, Academic };

inline constexpr std::array<Readership, 4> kReaderships = {Readership::Unconcerned, Readership::Commoner,
                                                           Readership::Engineer, Readership::Researcher};
inline constexpr std::array<Impression, 3> kImpressions = {Impression::Comprehensible, Impression::PositiveFeeling,
                                                           Impression::Interesting};

inline std::string to_string(Readership r) {
  constexpr std::array<std::string_view, 4> names = {"Unconcerned", "Commoner", "Engineer", "Researcher"};
  return std::string(names[static_cast<std::size_t>(r)]);
}

inline std::string to_string(Impression i) {
  constexpr std::array<std::string_view, 3> names = {"comprehensible", "positive_feeling", "interesting"};
  return std::string(names[static_cast<std::size_t>(i)]);
}

inline std::string to_string(InformationSource s) {
  constexpr std::array<std::string_view, 3> names = {"general", "trade", "academic"};
  return std::string(names[static_cast<std::size_t>(s)]);
}

inline Readership parse_readership(std::string_view s) {
  for (auto r : kReaderships)
    if (to_string(r) == s || to_lower(to_string(r)) == s) return r;
  throw Error(ErrorKind::InvalidInput, "unknown readership '" + std::string(s) + "'");
}

inline Impression parse_impression(std::string_view s) {
  for (auto i : kImpressions)
    if (to_string(i) == s) return i;
  throw Error(ErrorKind::InvalidInput, "unknown impression '" + std::string(s) + "'");
}

inline InformationSource parse_source(std::string_view s) {
  for (auto src : {InformationSource::General, InformationSource::Trade, InformationSource::Academic})
    if (to_string(src) == s) return src;
  throw Error(ErrorKind::InvalidInput, "unknown information source '" + std::string(s) + "'");
}

/// Readership from the two preliminary questions: interest in the field and,
/// if interested, the main information source.
inline Readership classify_readership(bool concerned, std::optional<InformationSource> source) {
  if (concerned != source.has_value())
    throw Error(ErrorKind::InconsistentAnswers,
                concerned ? "concerned respondent gave no information source"
                          : "unconcerned respondent gave an information source");
  if (!concerned) return Readership::Unconcerned;
  switch (*source) {
    case InformationSource::General: return Readership::Commoner;
    case InformationSource::Trade: return Readership::Engineer;
    case InformationSource::Academic: return Readership::Researcher;
  }
  return Readership::Unconcerned;
}

struct TitleRef {
  std::string technology_id;
  ObligatoryPattern obligatory = ObligatoryPattern::P1_1;
  OptionalPattern optional = OptionalPattern::None;

  friend bool operator==(const TitleRef&, const TitleRef&) = default;
};

/// One respondent's yes/no answers for one title.
struct SurveyResponse {
  std::string respondent_id;
  std::string field_id;
  Readership readership = Readership::Unconcerned;
  TitleRef title;
  std::array<bool, 3> answers{};

  bool answer(Impression i) const { return answers[static_cast<std::size_t>(i)]; }
  friend bool operator==(const SurveyResponse&, const SurveyResponse&) = default;
};

/// Which expression-pattern axis forms the table rows. Obligatory gives a
/// 3x2 table; Optional a 4x2 table over 3.1, 3.2, 4.0 and none.
enum class PatternAxis { Obligatory, Optional };

/// Pattern x {yes, no} counts.
struct ContingencyTable {
  std::vector<std::array<std::uint64_t, 2>> cells;

  static ContingencyTable zeros(std::size_t rows) { return {std::vector<std::array<std::uint64_t, 2>>(rows, {0, 0})}; }

  std::size_t rows() const noexcept { return cells.size(); }
  std::uint64_t row_total(std::size_t r) const { return cells[r][0] + cells[r][1]; }
  std::uint64_t col_total(std::size_t c) const {
    std::uint64_t s = 0;
    for (const auto& row : cells) s += row[c];
    return s;
  }
  std::uint64_t n() const { return col_total(0) + col_total(1); }

  ContingencyTable scaled(std::uint64_t factor) const {
    ContingencyTable t = *this;
    for (auto& row : t.cells)
      for (auto& x : row) x *= factor;
    return t;
  }

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

inline ContingencyTable contingency_table(const std::vector<SurveyResponse>& responses, Impression impression,
                                          Readership readership, PatternAxis axis = PatternAxis::Obligatory) {
  auto table = ContingencyTable::zeros(axis == PatternAxis::Obligatory ? kObligatoryPatterns.size()
                                                                       : kOptionalPatterns.size());
  for (const auto& r : responses) {
    if (r.readership != readership) continue;
    std::size_t row = axis == PatternAxis::Obligatory ? index_of(r.title.obligatory) : index_of(r.title.optional);
    ++table.cells[row][r.answer(impression) ? 0 : 1];
  }
  return table;
}

enum class Significance { Sig1Pct, Sig5Pct, NotSig };

inline std::string to_string(Significance s) {
  constexpr std::array<std::string_view, 3> names = {"sig_1pct", "sig_5pct", "not_sig"};
  return std::string(names[static_cast<std::size_t>(s)]);
}

struct TestResult {
  double chi_square = 0.0;
  int df = 0;
  Significance significance = Significance::NotSig;
  double cramers_v = 0.0;
  double p_value = 1.0;
};

/// Bucket by comparing against the 99% and 95% quantiles of chi-square(df).
inline Significance significance_bucket(double chi_square, int df) {
  if (chi_square >= stats::chi_square_quantile(0.99, df)) return Significance::Sig1Pct;
  if (chi_square >= stats::chi_square_quantile(0.95, df)) return Significance::Sig5Pct;
  return Significance::NotSig;
}

namespace detail {

inline void require_testable(const ContingencyTable& table) {
  if (table.n() == 0) throw Error(ErrorKind::DegenerateTable, "table has no observations");
  for (std::size_t r = 0; r < table.rows(); ++r)
    if (table.row_total(r) == 0) throw Error(ErrorKind::DegenerateTable, "row " + std::to_string(r) + " is empty");
  for (std::size_t c = 0; c < 2; ++c)
    if (table.col_total(c) == 0)
      throw Error(ErrorKind::DegenerateTable, std::string(c == 0 ? "yes" : "no") + " column is empty");
}

// Pearson statistic, no continuity correction.
inline double pearson_statistic(const ContingencyTable& table) {
  const double n = static_cast<double>(table.n());
  double stat = 0.0;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      double expected = static_cast<double>(table.row_total(r)) * static_cast<double>(table.col_total(c)) / n;
      double diff = static_cast<double>(table.cells[r][c]) - expected;
      stat += diff * diff / expected;
    }
  }
  return stat;
}

inline double cramers_v_from(double chi_square, const ContingencyTable& table) {
  const std::size_t k = std::min<std::size_t>(table.rows(), 2);
  double v = std::sqrt(chi_square / (static_cast<double>(table.n()) * static_cast<double>(k - 1)));
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace detail

inline TestResult chi_square_test(const ContingencyTable& table) {
  detail::require_testable(table);
  TestResult result;
  result.chi_square = detail::pearson_statistic(table);
  result.df = static_cast<int>((table.rows() - 1) * (2 - 1));
  result.significance = significance_bucket(result.chi_square, result.df);
  result.p_value = stats::chi_square_sf(result.chi_square, result.df);
  result.cramers_v = detail::cramers_v_from(result.chi_square, table);
  return result;
}

/// V = sqrt(chi^2 / (n (k - 1))), k = min(rows, cols).
inline double cramers_v(const ContingencyTable& table) {
  detail::require_testable(table);
  return detail::cramers_v_from(detail::pearson_statistic(table), table);
}

using PercentageKey = std::tuple<Readership, Impression, ObligatoryPattern>;
/// Yes-share in percent; nullopt marks a cell with no answers.
using ImpressionPercentages = std::map<PercentageKey, std::optional<double>>;

inline ImpressionPercentages impression_percentages(const std::vector<SurveyResponse>& responses) {
  std::map<PercentageKey, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (const auto& r : responses)
    for (auto i : kImpressions) {
      auto& [yes, total] = counts[{r.readership, i, r.title.obligatory}];
      yes += r.answer(i) ? 1 : 0;
      ++total;
    }
  ImpressionPercentages out;
  for (auto r : kReaderships)
    for (auto i : kImpressions)
      for (auto p : kObligatoryPatterns) {
        auto it = counts.find({r, i, p});
        if (it == counts.end() || it->second.second == 0) out[{r, i, p}] = std::nullopt;
        else out[{r, i, p}] = 100.0 * static_cast<double>(it->second.first) / static_cast<double>(it->second.second);
      }
  return out;
}

enum class Trend { Increasing, NonIncreasing };

inline std::string to_string(Trend t) { return t == Trend::Increasing ? "increasing" : "non-increasing"; }

/// Increasing means 1.1 <= 1.2 <= 2.0 with at least one strict step.
inline Trend trend_of(double p11, double p12, double p20) {
  bool monotone = p11 <= p12 && p12 <= p20;
  bool strict = p11 < p12 || p12 < p20;
  return monotone && strict ? Trend::Increasing : Trend::NonIncreasing;
}

inline std::map<std::pair<Readership, Impression>, Trend> monotonicity_report(const ImpressionPercentages& pcts) {
  std::map<std::pair<Readership, Impression>, Trend> out;
  for (auto r : kReaderships)
    for (auto i : kImpressions) {
      std::array<double, 3> v{};
      for (auto p : kObligatoryPatterns) {
        auto it = pcts.find({r, i, p});
        if (it == pcts.end() || !it->second)
          throw Error(ErrorKind::MissingCell, to_string(r) + "/" + to_string(i) + "/" + to_string(p) + " has no data");
        v[index_of(p)] = *it->second;
      }
      out[{r, i}] = trend_of(v[0], v[1], v[2]);
    }
  return out;
}

struct SurveyCell {
  ContingencyTable table;
  TestResult test;
};

struct SurveyReport {
  PatternAxis axis = PatternAxis::Obligatory;
  std::map<std::pair<Impression, Readership>, SurveyCell> cells;
  ImpressionPercentages percentages;
  std::map<std::pair<Readership, Impression>, Trend> trends;
};

/// Chi-square test and Cramer's V for every impression x readership table,
/// plus yes-percentages and their slope across obligatory patterns.
inline SurveyReport full_report(const std::vector<SurveyResponse>& responses,
                                PatternAxis axis = PatternAxis::Obligatory) {
  SurveyReport report;
  report.axis = axis;
  std::vector<std::string> degenerate;
  for (auto i : kImpressions)
    for (auto r : kReaderships) {
      auto table = contingency_table(responses, i, r, axis);
      try {
        report.cells[{i, r}] = {table, chi_square_test(table)};
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateTable) throw;
        degenerate.push_back(to_string(i) + "/" + to_string(r));
      }
    }
  if (!degenerate.empty()) {
    std::string names;
    for (const auto& d : degenerate) names += (names.empty() ? "" : ", ") + d;
    throw Error(ErrorKind::DegenerateTable, "degenerate tables: " + names);
  }
  report.percentages = impression_percentages(responses);
  report.trends = monotonicity_report(report.percentages);
  return report;
}

/// Planted (yes, no) answer counts per readership x impression x obligatory
/// pattern.
using ResponseTarget = std::map<PercentageKey, std::pair<std::uint64_t, std::uint64_t>>;

/// Builds answer events whose contingency tables equal `target` exactly.
/// Each event answers all three impressions, so for a given readership and
/// pattern the three impressions must share one total.
inline std::vector<SurveyResponse> generate_responses(const ResponseTarget& target, std::uint64_t seed,
                                                      const std::string& field_id = "synthetic") {
  std::map<std::pair<Readership, ObligatoryPattern>, std::uint64_t> totals;
  for (const auto& [key, counts] : target) {
    auto [r, i, p] = key;
    std::uint64_t total = counts.first + counts.second;
    auto [it, inserted] = totals.emplace(std::pair{r, p}, total);
    if (!inserted && it->second != total)
      throw Error(ErrorKind::InvalidInput, "answer totals differ across impressions for " + to_string(r) + "/" +
                                               to_string(p));
  }
  for (const auto& [rp, total] : totals)
    for (auto i : kImpressions)
      if (total > 0 && !target.count({rp.first, i, rp.second}))
        throw Error(ErrorKind::InvalidInput, "no target for " + to_string(rp.first) + "/" + to_string(i) + "/" +
                                                 to_string(rp.second));

  std::mt19937_64 rng(seed);
  std::vector<SurveyResponse> out;
  for (const auto& [rp, total] : totals) {
    auto [r, p] = rp;
    std::array<std::vector<std::uint8_t>, 3> answers;
    for (auto i : kImpressions) {
      auto& col = answers[static_cast<std::size_t>(i)];
      auto [yes, no] = target.at({r, i, p});
      col.assign(yes, 1);
      col.insert(col.end(), no, 0);
      detail::seeded_shuffle(col, rng);
    }
    for (std::uint64_t j = 0; j < total; ++j) {
      SurveyResponse resp;
      resp.respondent_id = to_string(r) + "-" + std::to_string(j / 3);
      resp.field_id = field_id;
      resp.readership = r;
      resp.title = {"tech-" + std::to_string(j % kTechnologiesPerField), p,
                    kOptionalPatterns[(j / kTechnologiesPerField) % kOptionalPatterns.size()]};
      for (auto i : kImpressions) resp.answers[static_cast<std::size_t>(i)] = answers[static_cast<std::size_t>(i)][j] != 0;
      out.push_back(std::move(resp));
    }
  }
  detail::seeded_shuffle(out, rng);
  return out;
}

}  // namespace titlekit
