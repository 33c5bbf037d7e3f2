#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

#include "titlekit/core_model.hpp"
#include "titlekit/error.hpp"
#include "titlekit/lexical.hpp"

namespace titlekit {

struct ParsedLine {
  std::size_t line = 0;  // 1-based
  TaggedTitle title;
};

struct ParseFailure {
  std::size_t line = 0;  // 1-based
  std::string input;
  ErrorKind reason = ErrorKind::InvalidInput;
  std::string message;
};

struct ParseReport {
  std::vector<ParsedLine> parsed;
  std::vector<ParseFailure> failures;
};

/// Shallow parser for well-ordered titles. Every verbal-noun and
/// technology-word choice is tried; the free text left between anchors must
/// form at most one noun phrase (the object), and the resulting tag sequence
/// must fit the order template.
class TitleParser {
 public:
  TitleParser(MarkerLexicon lexicon, OrderTemplate tmpl)
      : lexicon_(std::move(lexicon)), template_(std::move(tmpl)), lexer_(lexicon_, template_) {}

  TaggedTitle parse(std::string_view title) const {
    if (trim(title).empty()) throw Error(ErrorKind::EmptyTitle, "title is empty");
    auto scan = lexer_.scan(title, false);

    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> verbals, techs;
    for (std::size_t u = 0; u < scan.units.size(); ++u) {
      if (scan.units[u].kind == UnitKind::Verbal) verbals.push_back(u);
      if (scan.units[u].kind == UnitKind::Technology) techs.push_back(u);
    }
    std::vector<std::size_t> b_options = verbals.empty() ? std::vector<std::size_t>{none} : verbals;
    std::vector<std::size_t> t_options{none};
    t_options.insert(t_options.end(), techs.begin(), techs.end());

    std::vector<Candidate> candidates;
    for (auto b : b_options)
      for (auto t : t_options)
        if (auto c = assemble(scan, b, t)) candidates.push_back(std::move(*c));

    if (candidates.empty()) {
      if (verbals.empty())
        throw Error(ErrorKind::NoBehaviorFound, "no behavior word in '" + std::string(title) + "'");
      throw Error(ErrorKind::NoSlotAssignment,
                  "'" + std::string(title) + "' fits no slot order of template " + template_.id);
    }

    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(a.distance, a.b_first) < std::tie(b.distance, b.b_first);
    });
    const Candidate& best = candidates.front();
    if (candidates.size() > 1 && candidates[1].distance == best.distance && candidates[1].b_first == best.b_first)
      throw Error(ErrorKind::AmbiguousParse, "'" + std::string(title) + "' has two equally ranked slot assignments");

    TaggedTitle out = best.title;
    out.ambiguity_resolved = std::any_of(candidates.begin() + 1, candidates.end(), [&](const Candidate& c) {
      return c.distance == best.distance && c.b_first != best.b_first;
    });
    return out;
  }

  ParseReport parse_corpus(const std::vector<std::string>& lines, unsigned jobs = 1) const {
    using Outcome = std::variant<TaggedTitle, ParseFailure>;
    std::vector<Outcome> outcomes(lines.size());
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          outcomes[i] = parse(lines[i]);
        } catch (const Error& e) {
          outcomes[i] = ParseFailure{i + 1, lines[i], e.kind(), e.what()};
        }
      }
    };
    run_chunked(lines.size(), jobs, work);

    ParseReport report;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (auto* t = std::get_if<TaggedTitle>(&outcomes[i])) report.parsed.push_back({i + 1, std::move(*t)});
      else report.failures.push_back(std::get<ParseFailure>(outcomes[i]));
    }
    return report;
  }

  const OrderTemplate& order_template() const noexcept { return template_; }
  const MarkerLexicon& lexicon() const noexcept { return lexicon_; }

  template <typename Work>
  static void run_chunked(std::size_t n, unsigned jobs, Work&& work) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
      work(std::size_t{0}, n);
      return;
    }
    std::vector<std::thread> threads;
    std::size_t chunk = (n + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      std::size_t begin = j * chunk, end = std::min(n, begin + chunk);
      if (begin < end) threads.emplace_back([&work, begin, end] { work(begin, end); });
    }
    for (auto& t : threads) t.join();
  }

 private:
  struct Candidate {
    TaggedTitle title;
    std::size_t distance;
    std::size_t b_first;
  };

  std::optional<Candidate> assemble(const Lexer::Scan& scan, std::size_t b, std::size_t t) const {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<bool> anchored(scan.units.size(), false);
    std::vector<Component> comps;
    for (std::size_t u = 0; u < scan.units.size(); ++u) {
      const Unit& unit = scan.units[u];
      if (unit.kind == UnitKind::Development) {
        comps.push_back(detail::development_component(scan, lexer_, unit));
      } else if (unit.kind == UnitKind::MarkerPhrase) {
        comps.push_back(detail::marker_component(scan, lexer_, unit));
      } else if (u == b) {
        comps.push_back(detail::make_component(scan, FunctionTag::B, unit.first, unit.last));
      } else if (u == t) {
        comps.push_back(detail::make_component(scan, FunctionTag::T, unit.first, unit.last));
      } else {
        continue;
      }
      anchored[u] = true;
    }

    std::size_t noun_phrases = 0;
    for (const auto& run : detail::collect_runs(scan, anchored)) {
      if (run.empty()) continue;
      if (run.gain_only) {
        comps.push_back(detail::make_component(scan, FunctionTag::S, run.first, run.last));
      } else {
        if (++noun_phrases > 1) return std::nullopt;
        comps.push_back(detail::make_component(scan, FunctionTag::O, run.first, run.last));
      }
    }
    detail::sort_by_span(comps);

    TaggedTitle title{std::string(scan.source), std::move(comps), template_.id};
    if (b == none && !title.has(FunctionTag::D)) return std::nullopt;
    if (!template_.matches(detail::tags_of(title.components))) return std::nullopt;
    if (!validate(title).empty()) return std::nullopt;

    std::size_t distance = none;
    std::size_t b_first = none;
    if (b != none) b_first = scan.units[b].first;
    if (b != none && t != none) {
      std::size_t x = scan.units[b].first, y = scan.units[t].first;
      distance = x > y ? x - y : y - x;
    }
    return Candidate{std::move(title), distance, b_first};
  }

  MarkerLexicon lexicon_;
  OrderTemplate template_;
  Lexer lexer_;
};

inline TaggedTitle parse_title(std::string_view title, const MarkerLexicon& lexicon, const OrderTemplate& tmpl) {
  return TitleParser(lexicon, tmpl).parse(title);
}

inline ParseReport parse_corpus(const std::vector<std::string>& lines, const MarkerLexicon& lexicon,
                                const OrderTemplate& tmpl, unsigned jobs = 1) {
  return TitleParser(lexicon, tmpl).parse_corpus(lines, jobs);
}

}  // namespace titlekit
