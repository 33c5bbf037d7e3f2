// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "support.hpp"

using namespace titlekit;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << x;
  return s.str();
}

double rel_err(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

void golden_parsing() {
  auto t0 = Clock::now();
  auto golden = fixture::golden();
  TitleParser parser(fixture::lexicon(), fixture::en());
  HeadlineTagger tagger(fixture::lexicon());
  std::size_t agree = 0, total = 0;
  std::string first_miss;
  for (const auto& g : golden) {
    std::vector<std::pair<std::string, std::string>> got;
    try {
      got = fixture::tag_pairs(g.mode == "title" ? parser.parse(g.source) : tagger.tag(g.source));
    } catch (const std::exception& e) {
      if (first_miss.empty()) first_miss = g.source + " (" + e.what() + ")";
    }
    // agreement is counted per annotated component: tag and text must both match
    for (std::size_t k = 0; k < g.tags.size(); ++k) {
      ++total;
      if (k < got.size() && got[k] == g.tags[k] && got.size() == g.tags.size()) ++agree;
      else if (first_miss.empty()) first_miss = g.source;
    }
  }
  double secs = seconds_since(t0);
  bool ok = golden.size() >= 8 && agree == total && secs < 1.0;
  verdict("golden_parsing", ok,
         std::to_string(golden.size()) + " strings, " + std::to_string(agree) + "/" + std::to_string(total) +
             " components agree, " + fmt(secs) + " s" + (first_miss.empty() ? "" : ", first miss: " + first_miss));
}

void composition_fidelity() {
  const auto& e = fixture::bank()[0];
  auto en = fixture::en();
  using OB = ObligatoryPattern;
  using OP = OptionalPattern;
  std::vector<std::tuple<OB, OP, std::string>> expected{
      {OB::P1_1, OP::None, "Method to Shorten Radioactive Half-life"},
      {OB::P1_2, OP::None, "Method to Shorten the Duration of Radiation"},
      {OB::P2_0, OP::None, "Method to Shorten Storage Period of Radioactive Waste"},
      {OB::P2_0, OP::P3_1, "Method to Shorten Storage Period of Radioactive Waste by Metallic Fuel FBR"},
      {OB::P2_0, OP::P3_2, "Method to Shorten Storage Period of Radioactive Waste by Burnout"},
      {OB::P2_0, OP::P4_0, "Method to Shorten Storage Period of Radioactive Waste by 1/10000"}};
  std::size_t exact = 0;
  for (const auto& [ob, op, text] : expected)
    if (compose_title(e, ob, op, en).title == text) ++exact;
  bool twelve = true;
  std::size_t field = 0;
  for (const auto& entry : fixture::bank()) {
    auto all = compose_all(entry, en);
    std::set<std::string> distinct;
    for (const auto& c : all) distinct.insert(c.title);
    twelve = twelve && all.size() == 12 && distinct.size() == 12;
    field += all.size();
  }
  verdict("composition_fidelity", exact == 6 && twelve && field == 36,
         std::to_string(exact) + "/6 byte-exact, 12 per entry: " + (twelve ? "yes" : "no") + ", field total " +
             std::to_string(field));
}

void allocation_properties() {
  std::vector<ComposedTitle> titles;
  for (const auto& e : fixture::bank())
    for (auto& c : compose_all(e, fixture::en())) titles.push_back(std::move(c));
  // every technology order the allocator could see
  std::vector<std::size_t> order{0, 1, 2};
  std::size_t checked = 0;
  bool ok = true;
  do {
    std::vector<ComposedTitle> input;
    for (auto k : order)
      for (std::size_t j = 0; j < 12; ++j) input.push_back(titles[k * 12 + j]);
    auto out = allocate_groups(input);
    std::map<std::size_t, std::map<ObligatoryPattern, int>> per;
    std::map<std::size_t, std::set<OptionalPattern>> optionals;
    std::set<std::tuple<std::string, ObligatoryPattern, OptionalPattern>> seen;
    for (const auto& c : out) {
      ok = ok && c.group && *c.group < 4;
      ++per[*c.group][c.obligatory];
      optionals[*c.group].insert(c.optional);
      seen.emplace(c.technology_id, c.obligatory, c.optional);
    }
    ok = ok && per.size() == 4 && seen.size() == 36;
    for (const auto& [g, counts] : per) {
      int total = 0;
      for (auto p : kObligatoryPatterns) {
        ok = ok && counts.count(p) && counts.at(p) == 3;
        total += counts.count(p) ? counts.at(p) : 0;
      }
      ok = ok && total == 9 && optionals[g].size() == 3;
    }
    ++checked;
  } while (std::next_permutation(order.begin(), order.end()));
  verdict("allocation_properties", ok,
         "4 groups x 9, 3 per obligatory pattern, 3 optional patterns per group, over " + std::to_string(checked) +
             " technology orders");
}

void statistics_oracle() {
  auto j = io::json::parse(io::read_file(fixture::path("tests/data/chi2_oracle.json")));
  double worst = 0.0;
  std::size_t n = 0;
  boost::math::chi_squared_distribution<double> d2(2);
  for (const auto& c : j["random"]) {
    ContingencyTable t;
    for (const auto& row : c["cells"]) t.cells.push_back({row[0].get<std::uint64_t>(), row[1].get<std::uint64_t>()});
    if (t.rows() != 3) continue;
    auto r = chi_square_test(t);
    worst = std::max({worst, rel_err(r.chi_square, c["chi_square"].get<double>()),
                      rel_err(cramers_v(t), c["cramers_v"].get<double>()),
                      rel_err(r.p_value, c["p_value"].get<double>()),
                      rel_err(r.p_value, boost::math::cdf(boost::math::complement(d2, r.chi_square)))});
    ++n;
  }
  // top up to 100 3x2 tables with seeded draws checked against Boost and the shortcut identity
  std::mt19937_64 rng(424242);
  while (n < 100) {
    ContingencyTable t = ContingencyTable::zeros(3);
    for (auto& row : t.cells)
      for (auto& x : row) x = detail::uniform_below(rng, 80);
    bool ok = t.col_total(0) && t.col_total(1) && t.row_total(0) && t.row_total(1) && t.row_total(2);
    if (!ok) continue;
    auto r = chi_square_test(t);
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 2; ++k)
        s += double(t.cells[i][k]) * double(t.cells[i][k]) / (double(t.row_total(i)) * double(t.col_total(k)));
    double shortcut = double(t.n()) * (s - 1.0);
    worst = std::max({worst, rel_err(r.chi_square, shortcut),
                      rel_err(r.p_value, boost::math::cdf(boost::math::complement(d2, r.chi_square)))});
    ++n;
  }
  auto flat = chi_square_test({{{5, 5}, {5, 5}, {5, 5}}});
  auto split = chi_square_test({{{10, 0}, {0, 10}, {10, 0}}});
  bool ok = worst < 1e-9 && flat.chi_square == 0.0 && flat.cramers_v == 0.0 &&
            std::abs(split.chi_square - 30.0) < 1e-9 && std::abs(split.cramers_v - 1.0) < 1e-12;
  std::ostringstream msg;
  msg << n << " tables, worst relative error " << worst << "; flat (" << flat.chi_square << ", V=" << flat.cramers_v
      << "), split (" << split.chi_square << ", V=" << split.cramers_v << ")";
  verdict("statistics_oracle", ok, msg.str());
}

SurveyReport grid_report(double* secs) {
  auto t0 = Clock::now();
  auto report = full_report(generate_responses(synth::impression_grid_target(), 2006));
  if (secs) *secs = seconds_since(t0);
  return report;
}

void impression_grid() {
  double secs = 0.0;
  auto report = grid_report(&secs);
  std::size_t bucket_match = 0;
  for (const auto& [key, cell] : synth::target_impression_grid())
    if (report.cells.at(key).test.significance == cell.significance) ++bucket_match;
  double v_uc = report.cells.at({Impression::Comprehensible, Readership::Unconcerned}).test.cramers_v;
  double v_ri = report.cells.at({Impression::Interesting, Readership::Researcher}).test.cramers_v;
  bool ok = bucket_match == 12 && std::abs(v_uc - 0.62) <= 0.01 && std::abs(v_ri - 0.10) <= 0.01 && secs < 5.0;
  verdict("impression_grid", ok,
         std::to_string(bucket_match) + "/12 buckets, V(Unconcerned,Comprehensible)=" + fmt(v_uc) +
             ", V(Researcher,Interesting)=" + fmt(v_ri) + ", " + fmt(secs) + " s");
}

void monotonicity() {
  auto report = grid_report(nullptr);
  std::size_t up = 0;
  for (const auto& [key, trend] : report.trends)
    if (trend == Trend::Increasing) ++up;
  verdict("monotonicity", up == 12 && report.trends.size() == 12,
         std::to_string(up) + "/" + std::to_string(report.trends.size()) + " (readership, impression) pairs increasing");
}

void round_trip() {
  std::size_t ok = 0, total = 0;
  for (const auto& e : fixture::bank())
    for (const auto& c : compose_all(e, fixture::en())) {
      ++total;
      try {
        auto t = parse_title(c.title, fixture::lexicon(), fixture::en());
        if (classify_pattern(t, e) == std::make_pair(c.obligatory, c.optional)) ++ok;
      } catch (const Error&) {
      }
    }
  verdict("round_trip", ok == 36 && total == 36, std::to_string(ok) + "/" + std::to_string(total));
}

void corpus_stats() {
  double worst_excess = -1.0;
  for (std::size_t n : {100u, 250u, 1000u}) {
    auto r = tag_frequency(synth::planted_corpus(synth::default_tag_rates(), n, 17));
    for (const auto& [tag, rate] : synth::default_tag_rates())
      worst_excess = std::max(worst_excess, std::abs(r.rate(tag) - rate) - 1.0 / double(n));
  }
  auto make = [](std::size_t with_s) {
    std::vector<TaggedTitle> c;
    for (std::size_t i = 0; i < 100; ++i) {
      TaggedTitle t{"Method to Reduce Faults", {}, "en-paper"};
      t.components = {{FunctionTag::T, "Method", std::nullopt, {0, 6}},
                      {FunctionTag::B, "Reduce", std::nullopt, {10, 16}},
                      {FunctionTag::O, "Faults", std::nullopt, {17, 23}}};
      if (i < with_s) {
        t.source += " by 50%";
        t.components.push_back({FunctionTag::S, "by 50%", std::nullopt, {24, 30}});
      }
      c.push_back(std::move(t));
    }
    return c;
  };
  auto cmp = compare_corpora(make(5), make(25));
  bool ratio = cmp.s_ratio && std::abs(*cmp.s_ratio - 5.0) < 1e-12;
  verdict("corpus_stats", worst_excess <= 0.0 && ratio,
         "planted rates within 1/N: " + std::string(worst_excess <= 0.0 ? "yes" : "no") +
             ", s_ratio=" + (cmp.s_ratio ? fmt(*cmp.s_ratio) : std::string("undefined")));
}

}  // namespace

int main() {
  auto guard = [](const char* name, void (*f)()) {
    try {
      f();
    } catch (const std::exception& e) {
      verdict(name, false, std::string("threw ") + e.what());
    }
  };
  guard("golden_parsing", golden_parsing);
  guard("composition_fidelity", composition_fidelity);
  guard("allocation_properties", allocation_properties);
  guard("statistics_oracle", statistics_oracle);
  guard("impression_grid", impression_grid);
  guard("monotonicity", monotonicity);
  guard("round_trip", round_trip);
  guard("corpus_stats", corpus_stats);
  return failures;
}
