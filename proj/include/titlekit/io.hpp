#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "titlekit/core_model.hpp"
#include "titlekit/corpus_stats.hpp"
#include "titlekit/error.hpp"
#include "titlekit/phrase_bank.hpp"
#include "titlekit/survey_analysis.hpp"
#include "titlekit/title_composer.hpp"

namespace titlekit::io {

using nlohmann::json;

// ---- files ----

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Lines without their terminators; a trailing CR is dropped and so is a
/// final empty line.
inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur)) {
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    lines.push_back(cur);
  }
  return lines;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) { return split_lines(read_file(path)); }

/// Writes via a sibling temp file and rename, so readers never see a partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error(ErrorKind::InvalidInput, "write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::InvalidInput, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

inline std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline std::string scientific(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, what + ": " + e.what());
  }
}

// ---- lexicon ----

namespace detail {

inline std::vector<std::string> strings(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw Error(ErrorKind::InvalidInput, std::string(key) + " must be an array");
  for (const auto& x : j[key]) out.push_back(x.get<std::string>());
  return out;
}

inline OrderTemplate template_from_json(const json& j) {
  OrderTemplate t;
  t.id = j.at("id").get<std::string>();
  t.slots = parse_slot_pattern(j.at("pattern").get<std::string>());
  if (j.contains("compose_order")) {
    for (const auto& tag : tokenize(j["compose_order"].get<std::string>())) t.compose_order.push_back(parse_tag(tag.text));
  } else {
    t.compose_order = default_compose_order(t.slots);
  }
  t.separator = j.value("separator", std::string(" "));
  auto pos = j.value("marker_position", std::string("prefix"));
  if (pos != "prefix" && pos != "suffix") throw Error(ErrorKind::InvalidInput, "marker_position must be prefix or suffix");
  t.marker_position = pos == "prefix" ? MarkerPosition::Prefix : MarkerPosition::Suffix;
  t.connectives = strings(j, "connectives");
  t.articles = strings(j, "articles");
  return t;
}

}  // namespace detail

struct LexiconFile {
  MarkerLexicon lexicon;
  std::vector<OrderTemplate> templates;  // built-ins first, file entries override by id
};

inline LexiconFile lexicon_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "lexicon must be a JSON object");
  LexiconFile f;
  try {
    auto& lx = f.lexicon;
    lx.method_markers = detail::strings(j, "method_markers");
    lx.purpose_markers = detail::strings(j, "purpose_markers");
    lx.development_markers = detail::strings(j, "development_markers");
    lx.technology_type_words = detail::strings(j, "technology_type_words");
    lx.verbal_nouns = detail::strings(j, "verbal_nouns");
    for (auto& s : detail::strings(j, "jargon_terms")) lx.jargon_terms.insert(s);
    lx.gain_words = detail::strings(j, "gain_words");
    lx.organization_names = detail::strings(j, "organization_names");

    f.templates = builtin_templates();
    if (j.contains("templates"))
      for (const auto& tj : j["templates"]) {
        auto t = detail::template_from_json(tj);
        auto it = std::find_if(f.templates.begin(), f.templates.end(), [&](const OrderTemplate& x) { return x.id == t.id; });
        if (it != f.templates.end()) *it = std::move(t);
        else f.templates.push_back(std::move(t));
      }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("lexicon: ") + e.what());
  }
  auto problems = f.lexicon.problems();
  if (!problems.empty()) throw Error(ErrorKind::InvalidInput, "lexicon: " + problems.front());
  return f;
}

inline LexiconFile load_lexicon(const std::filesystem::path& path) {
  return lexicon_from_json(parse_json(read_file(path), path.string()));
}

// ---- phrase bank ----

inline PhraseBankEntry bank_entry_from_json(const json& j) {
  PhraseBankEntry e;
  e.technology_id = j.at("technology_id").get<std::string>();
  e.field_id = j.at("field_id").get<std::string>();
  e.t_text = j.at("t_text").get<std::string>();
  e.b_text = j.at("b_text").get<std::string>();
  for (const auto& [k, v] : j.at("o_variants").items()) e.o_variants[parse_obligatory(k)] = v.get<std::string>();
  for (const auto& [k, v] : j.at("m_variants").items()) e.m_variants[parse_optional(k)] = v.get<std::string>();
  e.s_variant = j.at("s_variant").get<std::string>();
  if (j.contains("p_text") && !j["p_text"].is_null()) e.p_text = j["p_text"].get<std::string>();
  return e;
}

inline std::vector<PhraseBankEntry> bank_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "phrase bank must be a JSON array");
  std::vector<PhraseBankEntry> out;
  try {
    for (const auto& x : j) out.push_back(bank_entry_from_json(x));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("phrase bank: ") + e.what());
  }
  return out;
}

inline std::vector<PhraseBankEntry> load_bank(const std::filesystem::path& path) {
  return bank_from_json(parse_json(read_file(path), path.string()));
}

// ---- tagged titles ----

inline json to_json(const TaggedTitle& t, bool headline = false) {
  json comps = json::array();
  for (const auto& c : t.components) {
    json cj = {{"tag", to_string(c.tag)}, {"text", c.text}};
    cj["marker"] = c.marker ? json(*c.marker) : json(nullptr);
    cj["span"] = {c.span.start, c.span.end};
    comps.push_back(std::move(cj));
  }
  json j = {{"source", t.source}, {"components", std::move(comps)}, {"template", t.language_template}};
  if (headline) j["mode"] = "headline";
  if (t.ambiguity_resolved) j["ambiguity_resolved"] = true;
  return j;
}

inline TaggedTitle tagged_from_json(const json& j) {
  try {
    TaggedTitle t;
    t.source = j.at("source").get<std::string>();
    t.language_template = j.value("template", std::string());
    t.ambiguity_resolved = j.value("ambiguity_resolved", false);
    for (const auto& cj : j.at("components")) {
      Component c;
      c.tag = parse_tag(cj.at("tag").get<std::string>());
      c.text = cj.at("text").get<std::string>();
      if (cj.contains("marker") && !cj["marker"].is_null()) c.marker = cj["marker"].get<std::string>();
      c.span = {cj.at("span").at(0).get<std::size_t>(), cj.at("span").at(1).get<std::size_t>()};
      t.components.push_back(std::move(c));
    }
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("tagged title: ") + e.what());
  }
}

/// Reads a JSONL corpus; blank lines are skipped.
inline std::vector<TaggedTitle> load_tagged(const std::filesystem::path& path) {
  std::vector<TaggedTitle> out;
  std::size_t n = 0;
  for (const auto& line : read_lines(path)) {
    ++n;
    if (trim(line).empty()) continue;
    out.push_back(tagged_from_json(parse_json(line, path.string() + ":" + std::to_string(n))));
  }
  return out;
}

// ---- composed titles ----

inline json to_json(const ComposedTitle& c) {
  json j = {{"title", c.title},
            {"technology_id", c.technology_id},
            {"field_id", c.field_id},
            {"obligatory", to_string(c.obligatory)},
            {"optional", to_string(c.optional)}};
  j["group"] = c.group ? json(*c.group) : json(nullptr);
  return j;
}

inline ComposedTitle composed_from_json(const json& j) {
  try {
    ComposedTitle c;
    c.title = j.at("title").get<std::string>();
    c.technology_id = j.at("technology_id").get<std::string>();
    c.field_id = j.value("field_id", std::string());
    c.obligatory = parse_obligatory(j.at("obligatory").get<std::string>());
    c.optional = parse_optional(j.at("optional").get<std::string>());
    if (j.contains("group") && !j["group"].is_null()) c.group = j["group"].get<std::size_t>();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("composed title: ") + e.what());
  }
}

// ---- survey responses ----

inline json to_json(const SurveyResponse& r) {
  json answers;
  for (auto i : kImpressions) answers[to_string(i)] = r.answer(i);
  return {{"respondent_id", r.respondent_id},
          {"field_id", r.field_id},
          {"readership", to_string(r.readership)},
          {"title",
           {{"technology_id", r.title.technology_id},
            {"obligatory", to_string(r.title.obligatory)},
            {"optional", to_string(r.title.optional)}}},
          {"answers", std::move(answers)}};
}

/// Readership comes either directly or from the preliminary answers
/// (`concerned`, `source`).
inline SurveyResponse response_from_json(const json& j) {
  try {
    SurveyResponse r;
    r.respondent_id = j.at("respondent_id").get<std::string>();
    r.field_id = j.value("field_id", std::string());
    if (j.contains("readership")) {
      r.readership = parse_readership(j["readership"].get<std::string>());
    } else {
      std::optional<InformationSource> src;
      if (j.contains("source") && !j["source"].is_null()) src = parse_source(j["source"].get<std::string>());
      r.readership = classify_readership(j.at("concerned").get<bool>(), src);
    }
    const auto& t = j.at("title");
    r.title.technology_id = t.value("technology_id", std::string());
    r.title.obligatory = parse_obligatory(t.at("obligatory").get<std::string>());
    r.title.optional = parse_optional(t.value("optional", std::string("none")));
    const auto& a = j.at("answers");
    for (auto i : kImpressions) r.answers[static_cast<std::size_t>(i)] = a.at(to_string(i)).get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("response: ") + e.what());
  }
}

// ---- CSV ----

inline std::string report_csv(const SurveyReport& report) {
  std::string out = "impression,readership,n,chi_square,df,p_value,significance,cramers_v,trend\n";
  for (auto i : kImpressions)
    for (auto r : kReaderships) {
      const auto& cell = report.cells.at({i, r});
      auto trend = report.trends.find({r, i});
      out += to_string(i) + "," + to_string(r) + "," + std::to_string(cell.table.n()) + "," +
             fixed(cell.test.chi_square) + "," + std::to_string(cell.test.df) + "," + scientific(cell.test.p_value) +
             "," + to_string(cell.test.significance) + "," + fixed(cell.test.cramers_v) + "," +
             (trend == report.trends.end() ? std::string("NA") : to_string(trend->second)) + "\n";
    }
  return out;
}

inline std::string percentages_csv(const ImpressionPercentages& pcts) {
  std::string out = "readership,impression,pattern,percentage\n";
  for (auto r : kReaderships)
    for (auto i : kImpressions)
      for (auto p : kObligatoryPatterns) {
        auto it = pcts.find({r, i, p});
        std::string v = it == pcts.end() || !it->second ? "NA" : fixed(*it->second, 2);
        out += to_string(r) + "," + to_string(i) + "," + to_string(p) + "," + v + "\n";
      }
  return out;
}

inline std::string corpus_stats_csv(const FrequencyReport& titles, const FrequencyReport* headlines,
                                    const ComparisonReport* cmp) {
  std::string out = headlines ? "metric,titles,headlines\n" : "metric,titles\n";
  for (auto tag : kContentTags) {
    out += to_string(tag) + "," + fixed(titles.rate(tag));
    if (headlines) out += "," + fixed(headlines->rate(tag));
    out += "\n";
  }
  out += "corpus_size," + std::to_string(titles.corpus_size);
  if (headlines) out += "," + std::to_string(headlines->corpus_size);
  out += "\n";
  if (cmp) {
    out += "s_ratio," + (cmp->s_ratio ? fixed(*cmp->s_ratio) : std::string("NA")) + ",\n";
    out += "m_delta," + fixed(cmp->m_delta) + ",\n";
    out += "ms_cooccurrence_rate," + fixed(cmp->title_ms_cooccurrence_rate) + "," +
           fixed(cmp->headline_ms_cooccurrence_rate) + "\n";
  }
  return out;
}

}  // namespace titlekit::io
