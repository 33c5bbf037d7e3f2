#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "support.hpp"
#include "titlekit/cli.hpp"

namespace fs = std::filesystem;
using namespace titlekit;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "titlekit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("titlekit_cli_" + std::to_string(::getpid()) + "_" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string file(const std::string& name, const std::string& content) {
    auto p = dir / name;
    io::write_atomic(p, content);
    return p.string();
  }
  std::string at(const std::string& name) const { return (dir / name).string(); }

  fs::path dir;
  std::string lex = fixture::path("data/lexicon.en.json");
  std::string bank = fixture::path("data/phrase_bank.json");
};

}  // namespace

TEST_F(Cli, parse_writes_jsonl_to_stdout) {
  auto in = file("titles.txt", "Method to Shorten Radioactive Half-life\nDevelopment of an Exploration System of Buried Cables\n");
  auto r = run({"parse", "--lexicon", lex, "--template", "en-paper", in});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  auto lines = io::split_lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  auto t = io::tagged_from_json(io::json::parse(lines[0]));
  EXPECT_EQ(t.source, "Method to Shorten Radioactive Half-life");
  EXPECT_EQ(t.components.size(), 3u);
  EXPECT_EQ(io::json::parse(lines[1])["template"], "en-paper");
}

TEST_F(Cli, parse_failures_exit_1_and_keep_good_lines) {
  auto in = file("titles.txt", "Method to Shorten Radioactive Half-life\nUnderground Radar System\n");
  auto r = run({"parse", "--lexicon", lex, in, "--jobs", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(io::split_lines(r.out).size(), 1u);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_NE(r.err.find("NoBehaviorFound"), std::string::npos);
}

TEST_F(Cli, tag_headline_marks_mode) {
  auto in = file("h.txt", "Underground Radar System\n");
  auto r = run({"tag-headline", "--lexicon", lex, in});
  EXPECT_EQ(r.code, 0);
  auto j = io::json::parse(io::split_lines(r.out)[0]);
  EXPECT_EQ(j["mode"], "headline");
  EXPECT_EQ(j["components"].size(), 2u);
}

TEST_F(Cli, usage_errors_exit_2) {
  auto r = run({"parse", "--bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("titlekit"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"parse", "--lexicon", lex, at("missing.txt")}).code, 2);
  EXPECT_EQ(run({"parse", "--lexicon", lex, "--template", "nope", bank}).code, 2);
  EXPECT_EQ(run({"synth", "--kind", "responses"}).code, 2);  // seed required
  EXPECT_EQ(run({"survey", "--responses", bank, "--axis", "diagonal"}).code, 2);
}

TEST_F(Cli, compose_then_allocate) {
  auto composed = at("composed.jsonl");
  auto r = run({"compose", "--bank", bank, "--out", composed});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  auto lines = io::read_lines(composed);
  ASSERT_EQ(lines.size(), 36u);
  // optional axis runs 3.1, 3.2, 4.0, none
  EXPECT_EQ(io::json::parse(lines[0])["title"], "Method to Shorten Radioactive Half-life by Metallic Fuel FBR");
  EXPECT_EQ(io::json::parse(lines[3])["title"], "Method to Shorten Radioactive Half-life");
  EXPECT_EQ(io::json::parse(lines[3])["optional"], "none");
  EXPECT_TRUE(io::json::parse(lines[0])["group"].is_null());

  auto ids = file("ids.txt", "a\nb\nc\nd\ne\nf\ng\nh\n");
  r = run({"allocate", "--titles", composed, "--respondents", ids, "--seed", "5", "--assignments", at("assign.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::map<int, int> sizes;
  for (const auto& l : io::split_lines(r.out)) ++sizes[io::json::parse(l)["group"].get<int>()];
  EXPECT_EQ(sizes, (std::map<int, int>{{0, 9}, {1, 9}, {2, 9}, {3, 9}}));
  EXPECT_EQ(io::read_lines(at("assign.csv")).size(), 9u);

  EXPECT_EQ(run({"allocate", "--titles", composed, "--respondents", ids}).code, 2);
  auto broken = file("broken.jsonl", lines[0] + "\n");
  EXPECT_EQ(run({"allocate", "--titles", broken}).code, 1);
}

TEST_F(Cli, survey_report_and_percentages) {
  auto responses = at("responses.jsonl");
  ASSERT_EQ(run({"synth", "--kind", "responses", "--seed", "7", "--out", responses}).code, 0);
  auto r = run({"survey", "--responses", responses, "--report", at("report.csv"), "--percentages", at("pct.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto report = io::read_lines(at("report.csv"));
  ASSERT_EQ(report.size(), 13u);
  EXPECT_EQ(report[0].substr(0, 14), "impression,rea");
  bool five = false;
  for (const auto& l : report) five = five || (l.find("interesting,Researcher") == 0 && l.find("sig_5pct") != std::string::npos);
  EXPECT_TRUE(five);
  EXPECT_EQ(io::read_lines(at("pct.csv")).size(), 37u);
}

TEST_F(Cli, survey_accepts_preliminary_answers) {
  std::string lines;
  int k = 0;
  for (auto ob : {"1.1", "1.2", "2.0"})
    for (int yes = 0; yes < 2; ++yes)
      for (auto who : {"\"concerned\": false", "\"concerned\": true, \"source\": \"general\"",
                       "\"concerned\": true, \"source\": \"trade\"", "\"concerned\": true, \"source\": \"academic\""}) {
        std::string y = (yes || std::string(ob) == "2.0") ? "true" : "false";
        lines += "{\"respondent_id\": \"r" + std::to_string(k++) + "\", \"field_id\": \"f\", " + who +
                 ", \"title\": {\"technology_id\": \"t\", \"obligatory\": \"" + ob + "\", \"optional\": \"none\"}, " +
                 "\"answers\": {\"comprehensible\": " + y + ", \"positive_feeling\": " + y + ", \"interesting\": " + y + "}}\n";
      }
  auto r = run({"survey", "--responses", file("r.jsonl", lines)});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::split_lines(r.out).size(), 13u);

  auto bad = file("bad.jsonl", "{\"respondent_id\": \"x\", \"concerned\": false, \"source\": \"trade\", \"title\": {\"obligatory\": \"1.1\"}, "
                               "\"answers\": {\"comprehensible\": true, \"positive_feeling\": true, \"interesting\": true}}\n");
  r = run({"survey", "--responses", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("InconsistentAnswers"), std::string::npos);
}

TEST_F(Cli, corpus_stats) {
  auto titles = at("titles.jsonl");
  ASSERT_EQ(run({"synth", "--kind", "corpus", "--seed", "3", "--size", "100", "--out", titles}).code, 0);
  auto r = run({"corpus-stats", "--titles", titles, "--headlines", titles});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("B,0.850000,0.850000\n"), std::string::npos);
  EXPECT_NE(r.out.find("T,0.580000,0.580000\n"), std::string::npos);
  EXPECT_NE(r.out.find("s_ratio,1.000000,\n"), std::string::npos);
}

TEST_F(Cli, deterministic_outputs) {
  for (auto kind : {"responses", "corpus"}) {
    ASSERT_EQ(run({"synth", "--kind", kind, "--seed", "11", "--out", at("a")}).code, 0);
    ASSERT_EQ(run({"synth", "--kind", kind, "--seed", "11", "--out", at("b")}).code, 0);
    ASSERT_EQ(run({"synth", "--kind", kind, "--seed", "12", "--out", at("c")}).code, 0);
    EXPECT_EQ(io::read_file(at("a")), io::read_file(at("b")));
    EXPECT_NE(io::read_file(at("a")), io::read_file(at("c")));
  }
  ASSERT_EQ(run({"synth", "--kind", "responses", "--seed", "11", "--out", at("r")}).code, 0);
  ASSERT_EQ(run({"survey", "--responses", at("r"), "--report", at("x.csv")}).code, 0);
  ASSERT_EQ(run({"survey", "--responses", at("r"), "--report", at("y.csv")}).code, 0);
  EXPECT_EQ(io::read_file(at("x.csv")), io::read_file(at("y.csv")));
  EXPECT_EQ(io::read_file(at("x.csv")).find('\r'), std::string::npos);
  EXPECT_FALSE(fs::exists(at("x.csv.tmp")));
}

TEST_F(Cli, failed_run_leaves_no_output_file) {
  auto out = at("never.jsonl");
  auto bad = file("bad.json", "[{\"technology_id\": \"x\"}]");
  EXPECT_EQ(run({"compose", "--bank", bad, "--out", out}).code, 1);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_FALSE(fs::exists(out + ".tmp"));
}

TEST_F(Cli, binary_exit_codes) {
  std::string bin = TITLEKIT_BIN;
  int code = std::system((bin + " parse --bogus >/dev/null 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(code));
  EXPECT_EQ(WEXITSTATUS(code), 2);
  auto in = file("t.txt", "Method to Shorten Radioactive Half-life\n");
  code = std::system((bin + " parse --lexicon " + lex + " " + in + " >" + at("o.jsonl") + " 2>/dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(code), 0);
  EXPECT_EQ(io::read_lines(at("o.jsonl")).size(), 1u);
}
