#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "titlekit/corpus_stats.hpp"
#include "titlekit/headline_tagger.hpp"
#include "titlekit/io.hpp"
#include "titlekit/survey_analysis.hpp"
#include "titlekit/synth.hpp"
#include "titlekit/title_composer.hpp"
#include "titlekit/title_parser.hpp"

namespace titlekit::cli {

inline constexpr int kOk = 0;
inline constexpr int kDataError = 1;
inline constexpr int kUsageError = 2;

namespace detail {

// Thrown for bad configuration found after flag parsing (missing file, unknown template).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("no such file: " + path);
}

inline void emit(std::ostream& out, const std::string& out_path, const std::string& content) {
  if (out_path.empty()) out << content;
  else io::write_atomic(out_path, content);
}

inline OrderTemplate pick_template(const std::vector<OrderTemplate>& templates, const std::string& id) {
  for (const auto& t : templates)
    if (t.id == id) return t;
  throw UsageError("unknown template '" + id + "'");
}

inline io::LexiconFile lexicon_or_builtin(const std::string& path) {
  if (path.empty()) return {MarkerLexicon{}, builtin_templates()};
  require_file(path);
  return io::load_lexicon(path);
}

inline std::vector<std::string> input_lines(const std::vector<std::string>& paths) {
  std::vector<std::string> lines;
  for (const auto& p : paths) {
    require_file(p);
    for (auto& l : io::read_lines(p))
      if (!trim(l).empty()) lines.push_back(std::move(l));
  }
  return lines;
}

inline std::vector<SurveyResponse> load_responses(const std::string& path) {
  std::vector<SurveyResponse> out;
  std::size_t n = 0;
  for (const auto& line : io::read_lines(path)) {
    ++n;
    if (trim(line).empty()) continue;
    out.push_back(io::response_from_json(io::parse_json(line, path + ":" + std::to_string(n))));
  }
  return out;
}

}  // namespace detail

/// Entry point shared by the titlekit binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tag, compose and analyse technical titles"};
  app.name("titlekit");
  app.require_subcommand(1);

  std::string lexicon_path, template_id = std::string(kEnglishTemplateId), out_path;
  std::vector<std::string> inputs;
  unsigned jobs = 1;

  auto* parse = app.add_subcommand("parse", "Parse titles (one per line) into tagged JSONL");
  auto* tag = app.add_subcommand("tag-headline", "Tag headlines (one per line) into JSONL");
  for (auto* sub : {parse, tag}) {
    sub->add_option("--lexicon", lexicon_path, "Lexicon JSON")->required();
    sub->add_option("--template", template_id, "Order template id");
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--out", out_path, "Output file (default stdout)");
    sub->add_option("inputs", inputs, "Input text files")->required();
  }

  std::string bank_path;
  auto* compose = app.add_subcommand("compose", "Compose all pattern titles from a phrase bank");
  compose->add_option("--bank", bank_path, "Phrase bank JSON")->required();
  compose->add_option("--lexicon", lexicon_path, "Lexicon JSON (for extra templates)");
  compose->add_option("--template", template_id, "Order template id");
  compose->add_option("--out", out_path, "Output JSONL");

  std::string titles_path, respondents_path, assignments_path;
  std::optional<std::uint64_t> seed;
  std::size_t n_groups = kSurveyGroups;
  auto* allocate = app.add_subcommand("allocate", "Assign composed titles and respondents to survey groups");
  allocate->add_option("--titles", titles_path, "Composed titles JSONL")->required();
  allocate->add_option("--out", out_path, "Output JSONL with groups");
  allocate->add_option("--respondents", respondents_path, "Respondent ids, one per line");
  allocate->add_option("--assignments", assignments_path, "Respondent assignment CSV");
  allocate->add_option("--seed", seed, "Random seed (required with --respondents)");

  std::string headlines_path;
  auto* stats = app.add_subcommand("corpus-stats", "Tag frequency report over tagged corpora");
  stats->add_option("--titles", titles_path, "Tagged titles JSONL")->required();
  stats->add_option("--headlines", headlines_path, "Tagged headlines JSONL");
  stats->add_option("--out", out_path, "Output CSV");

  std::string responses_path, report_path, percentages_path, axis = "obligatory";
  auto* survey = app.add_subcommand("survey", "Chi-square / Cramer's V report over survey responses");
  survey->add_option("--responses", responses_path, "Responses JSONL")->required();
  survey->add_option("--report", report_path, "Report CSV (default stdout)");
  survey->add_option("--percentages", percentages_path, "Yes-percentage CSV");
  survey->add_option("--axis", axis, "Pattern axis")->check(CLI::IsMember({"obligatory", "optional"}));

  std::string kind;
  std::size_t size = 1000;
  auto* synth = app.add_subcommand("synth", "Generate synthetic responses or a planted tagged corpus");
  synth->add_option("--kind", kind, "responses | corpus")->required()->check(CLI::IsMember({"responses", "corpus"}));
  synth->add_option("--seed", seed, "Random seed")->required();
  synth->add_option("--size", size, "Corpus size (corpus kind)");
  synth->add_option("--out", out_path, "Output JSONL");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (parse->parsed() || tag->parsed()) {
      auto lex = detail::lexicon_or_builtin(lexicon_path);
      auto tmpl = detail::pick_template(lex.templates, template_id);
      auto lines = detail::input_lines(inputs);
      std::string content;
      std::vector<ParseFailure> failures;
      if (parse->parsed()) {
        auto report = TitleParser(lex.lexicon, tmpl).parse_corpus(lines, jobs);
        for (const auto& p : report.parsed) content += io::to_json(p.title).dump() + "\n";
        failures = std::move(report.failures);
      } else {
        HeadlineTagger tagger(lex.lexicon, tmpl);
        std::vector<std::variant<TaggedTitle, ParseFailure>> outcomes(lines.size());
        TitleParser::run_chunked(lines.size(), jobs, [&](std::size_t b, std::size_t e) {
          for (std::size_t i = b; i < e; ++i) {
            try {
              outcomes[i] = tagger.tag(lines[i]);
            } catch (const Error& x) {
              outcomes[i] = ParseFailure{i + 1, lines[i], x.kind(), x.what()};
            }
          }
        });
        for (auto& o : outcomes) {
          if (auto* t = std::get_if<TaggedTitle>(&o)) content += io::to_json(*t, true).dump() + "\n";
          else failures.push_back(std::get<ParseFailure>(o));
        }
      }
      detail::emit(out, out_path, content);
      for (const auto& f : failures) err << "line " << f.line << ": " << f.message << "\n";
      return failures.empty() ? kOk : kDataError;
    }

    if (compose->parsed()) {
      detail::require_file(bank_path);
      auto lex = detail::lexicon_or_builtin(lexicon_path);
      auto tmpl = detail::pick_template(lex.templates, template_id);
      std::string content;
      for (const auto& entry : io::load_bank(bank_path))
        for (const auto& c : compose_all(entry, tmpl)) content += io::to_json(c).dump() + "\n";
      detail::emit(out, out_path, content);
      return kOk;
    }

    if (allocate->parsed()) {
      detail::require_file(titles_path);
      if (!respondents_path.empty()) {
        detail::require_file(respondents_path);
        if (!seed) throw detail::UsageError("--seed is required with --respondents");
      }
      // Group per field, keeping first-appearance order of fields.
      std::vector<std::string> fields;
      std::map<std::string, std::vector<ComposedTitle>> by_field;
      std::size_t n = 0;
      for (const auto& line : io::read_lines(titles_path)) {
        ++n;
        if (trim(line).empty()) continue;
        auto c = io::composed_from_json(io::parse_json(line, titles_path + ":" + std::to_string(n)));
        if (!by_field.count(c.field_id)) fields.push_back(c.field_id);
        by_field[c.field_id].push_back(std::move(c));
      }
      std::string content;
      for (const auto& f : fields)
        for (const auto& c : allocate_groups(by_field[f])) content += io::to_json(c).dump() + "\n";
      detail::emit(out, out_path, content);

      if (!respondents_path.empty()) {
        std::vector<std::string> ids;
        for (auto& l : io::read_lines(respondents_path))
          if (!trim(l).empty()) ids.emplace_back(trim(l));
        std::string csv = "respondent_id,group\n";
        for (const auto& [id, g] : assign_respondents(ids, n_groups, *seed)) csv += id + "," + std::to_string(g) + "\n";
        if (assignments_path.empty()) err << csv;
        else io::write_atomic(assignments_path, csv);
      }
      return kOk;
    }

    if (stats->parsed()) {
      detail::require_file(titles_path);
      auto titles = io::load_tagged(titles_path);
      std::string csv;
      if (headlines_path.empty()) {
        csv = io::corpus_stats_csv(tag_frequency(titles), nullptr, nullptr);
      } else {
        detail::require_file(headlines_path);
        auto cmp = compare_corpora(titles, io::load_tagged(headlines_path));
        csv = io::corpus_stats_csv(cmp.title_report, &cmp.headline_report, &cmp);
      }
      detail::emit(out, out_path, csv);
      return kOk;
    }

    if (survey->parsed()) {
      detail::require_file(responses_path);
      auto responses = detail::load_responses(responses_path);
      auto report = full_report(responses, axis == "optional" ? PatternAxis::Optional : PatternAxis::Obligatory);
      auto csv = io::report_csv(report);
      auto pcts = io::percentages_csv(report.percentages);
      detail::emit(out, report_path, csv);
      if (!percentages_path.empty()) io::write_atomic(percentages_path, pcts);
      return kOk;
    }

    if (synth->parsed()) {
      std::string content;
      if (kind == "responses") {
        for (const auto& r : generate_responses(synth::impression_grid_target(), *seed)) content += io::to_json(r).dump() + "\n";
      } else {
        for (const auto& t : synth::planted_corpus(synth::default_tag_rates(), size, *seed))
          content += io::to_json(t).dump() + "\n";
      }
      detail::emit(out, out_path, content);
      return kOk;
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}

}  // namespace titlekit::cli
