#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "titlekit/core_model.hpp"
#include "titlekit/error.hpp"

namespace titlekit {

/// Share of documents containing each content tag (B, O, T, P, M, S).
struct FrequencyReport {
  std::map<FunctionTag, double> per_tag_rate;
  std::size_t corpus_size = 0;

  double rate(FunctionTag tag) const {
    auto it = per_tag_rate.find(tag);
    return it == per_tag_rate.end() ? 0.0 : it->second;
  }
};

struct ComparisonReport {
  FrequencyReport title_report;
  FrequencyReport headline_report;
  std::optional<double> s_ratio;  // nullopt when titles have no S at all
  double m_delta = 0.0;
  double title_ms_cooccurrence_rate = 0.0;
  double headline_ms_cooccurrence_rate = 0.0;
};

using CooccurrenceMatrix = std::map<std::pair<FunctionTag, FunctionTag>, std::size_t>;

namespace detail {

inline bool is_content_tag(FunctionTag tag) {
  return std::find(kContentTags.begin(), kContentTags.end(), tag) != kContentTags.end();
}

inline void require_nonempty(const std::vector<TaggedTitle>& corpus) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus has no documents");
}

inline double ms_rate(const std::vector<TaggedTitle>& corpus) {
  auto n = std::count_if(corpus.begin(), corpus.end(),
                         [](const TaggedTitle& t) { return t.has(FunctionTag::M) && t.has(FunctionTag::S); });
  return static_cast<double>(n) / static_cast<double>(corpus.size());
}

}  // namespace detail

/// Document-level presence: a tag counts once per title however often it
/// occurs in it.
inline FrequencyReport tag_frequency(const std::vector<TaggedTitle>& corpus) {
  detail::require_nonempty(corpus);
  std::map<FunctionTag, std::size_t> docs;
  for (const auto& title : corpus)
    for (auto tag : kContentTags)
      if (title.has(tag)) ++docs[tag];
  FrequencyReport report;
  report.corpus_size = corpus.size();
  for (auto tag : kContentTags)
    report.per_tag_rate[tag] = static_cast<double>(docs[tag]) / static_cast<double>(corpus.size());
  return report;
}

/// Symmetric document co-occurrence counts over the content tags; the
/// diagonal holds per-tag document counts.
inline CooccurrenceMatrix tag_cooccurrence(const std::vector<TaggedTitle>& corpus) {
  detail::require_nonempty(corpus);
  CooccurrenceMatrix m;
  for (auto a : kContentTags)
    for (auto b : kContentTags) m[{a, b}] = 0;
  for (const auto& title : corpus) {
    std::vector<FunctionTag> present;
    for (auto tag : kContentTags)
      if (title.has(tag)) present.push_back(tag);
    for (auto a : present)
      for (auto b : present) ++m[{a, b}];
  }
  return m;
}

inline ComparisonReport compare_corpora(const std::vector<TaggedTitle>& titles,
                                        const std::vector<TaggedTitle>& headlines) {
  ComparisonReport r;
  r.title_report = tag_frequency(titles);
  r.headline_report = tag_frequency(headlines);
  double title_s = r.title_report.rate(FunctionTag::S);
  if (title_s > 0.0) r.s_ratio = r.headline_report.rate(FunctionTag::S) / title_s;
  r.m_delta = r.title_report.rate(FunctionTag::M) - r.headline_report.rate(FunctionTag::M);
  r.title_ms_cooccurrence_rate = detail::ms_rate(titles);
  r.headline_ms_cooccurrence_rate = detail::ms_rate(headlines);
  return r;
}

}  // namespace titlekit
