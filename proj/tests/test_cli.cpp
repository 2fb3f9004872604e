#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace fuglede;
using namespace fuglede::cli;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

template <class F>
Run run(const Common& common, F&& body) {
  std::ostringstream out, err;
  Run r;
  r.code = guarded(common, out, err, [&] { return body(out); });
  r.out = out.str();
  r.err = err.str();
  return r;
}

Common human() { return {}; }

Common as_json() {
  Common c;
  c.json = true;
  return c;
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("counterexample variants pass") {
  for (const char* v : {"z2-12", "z2-11", "z3-6", "z3-5", "lattice"}) {
    CounterexampleOptions opt;
    opt.variant = v;
    const auto r = run(human(), [&](std::ostream& o) { return cmd_counterexample(opt, human(), o); });
    INFO(r.out);
    CHECK(r.code == kOk);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("all checks passed"));
    CHECK_THAT(r.out, !Catch::Matchers::ContainsSubstring("[FAIL]"));
  }
}

TEST_CASE("counterexample JSON report") {
  CounterexampleOptions opt;
  opt.variant = "z3-5";
  const auto r = run(as_json(), [&](std::ostream& o) { return cmd_counterexample(opt, as_json(), o); });
  CHECK(r.code == kOk);
  const auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 1);
  const json& j = lines.front();
  CHECK(j.at("pass") == true);
  CHECK(j.at("variant") == "z3-5");
  std::vector<std::string> checks;
  for (const auto& s : j.at("stages")) checks.push_back(s.at("check"));
  CHECK(checks == std::vector<std::string>{"verify_butson", "is_spectrum", "find_tiling"});
  CHECK(j.at("stages")[2].at("detail").at("obstruction").at("set_size") == 6);
}

TEST_CASE("counterexample output is deterministic") {
  CounterexampleOptions opt;
  opt.variant = "z2-11";
  const auto a = run(as_json(), [&](std::ostream& o) { return cmd_counterexample(opt, as_json(), o); });
  const auto b = run(as_json(), [&](std::ostream& o) { return cmd_counterexample(opt, as_json(), o); });
  CHECK(a.out == b.out);
}

TEST_CASE("a corrupted matrix stops at the first stage") {
  CounterexampleOptions opt;
  opt.variant = "z2-12";
  opt.matrix = FUGLEDE_TEST_DATA "/h12_corrupted.json";
  const auto r = run(human(), [&](std::ostream& o) { return cmd_counterexample(opt, human(), o); });
  CHECK(r.code == kCheckFailed);
  CHECK_THAT(r.out, Catch::Matchers::StartsWith("[FAIL] verify_butson"));
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("\"failing_rows\":[1,3]"));
  CHECK_THAT(r.out, !Catch::Matchers::ContainsSubstring("is_spectrum"));

  const auto j = run(as_json(), [&](std::ostream& o) { return cmd_counterexample(opt, as_json(), o); });
  CHECK(json_lines(j.out).front().at("failed_check") == "verify_butson");
}

TEST_CASE("input errors map to exit code 2") {
  CounterexampleOptions opt;
  opt.variant = "nope";
  CHECK(run(human(), [&](std::ostream& o) { return cmd_counterexample(opt, human(), o); }).code == kBadInput);

  opt.variant = "z3-5";
  opt.matrix = FUGLEDE_TEST_DATA "/broken.json";
  const auto r = run(as_json(), [&](std::ostream& o) { return cmd_counterexample(opt, as_json(), o); });
  CHECK(r.code == kBadInput);
  const auto j = json_lines(r.out).front();
  CHECK(j.at("error") == "invalid_input");
  CHECK_THAT(j.at("message").get<std::string>(), Catch::Matchers::ContainsSubstring("broken.json:3:1"));

  ScanCommandOptions scan;
  scan.group = "2^20";
  CHECK(run(human(), [&](std::ostream& o) { return cmd_scan(scan, human(), o); }).code == kBadInput);
}

TEST_CASE("budget exhaustion maps to exit code 3") {
  Common tight;
  tight.budget = 1;
  ScanCommandOptions opt;
  opt.group = "2^3";
  const auto r = run(tight, [&](std::ostream& o) { return cmd_scan(opt, tight, o); });
  CHECK(r.code == kBudget);
  CHECK(json_lines(r.out).back().at("summary").at("complete") == false);

  ::setenv("FUGLEDE_BUDGET", "1", 1);
  CHECK(run(human(), [&](std::ostream& o) { return cmd_scan(opt, human(), o); }).code == kBudget);
  ::unsetenv("FUGLEDE_BUDGET");
  CHECK(run(human(), [&](std::ostream& o) { return cmd_scan(opt, human(), o); }).code == kOk);
}

TEST_CASE("scan emits JSON lines and a summary") {
  ScanCommandOptions opt;
  opt.group = "2^2";
  const auto r = run(human(), [&](std::ostream& o) { return cmd_scan(opt, human(), o); });
  CHECK(r.code == kOk);
  const auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 7);  // 1 + 3 + 1 + 1 classes, then the summary
  const json& summary = lines.back().at("summary");
  CHECK(summary.at("classes") == 6);
  CHECK(summary.at("spectral_non_tiles") == 0);
  CHECK(summary.at("complete") == true);
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    CHECK(lines[i].at("spectral") == lines[i].at("tiles"));
    CHECK(lines[i].contains("tiling_certificate"));
  }

  opt.subset_budget = 2;
  CHECK(run(human(), [&](std::ostream& o) { return cmd_scan(opt, human(), o); }).code == kBudget);
}

TEST_CASE("scan restricted to given sets") {
  ScanCommandOptions opt;
  opt.group = "3^5";
  opt.sets = {"{(0,0,0,0,0),(1,0,0,0,0),(0,1,0,0,0),(0,0,1,0,0),(0,0,0,1,0),(0,0,0,0,1)}"};
  const auto r = run(human(), [&](std::ostream& o) { return cmd_scan(opt, human(), o); });
  const auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].at("spectral") == true);
  CHECK(lines[0].at("tiles") == false);
  CHECK(lines[1].at("summary").at("spectral_non_tiles") == 1);

  const auto path = std::filesystem::temp_directory_path() / "fuglede_cli_set.json";
  std::ofstream(path) << "[[0,0,0,0,0],[0,0,0,0,1],[0,0,0,1,0],[0,0,1,0,0],[0,1,0,0,0],[1,0,0,0,0]]\n";
  opt.sets = {path.string()};
  const auto from_file = run(human(), [&](std::ostream& o) { return cmd_scan(opt, human(), o); });
  CHECK(from_file.out == r.out);
  std::filesystem::remove(path);
}

TEST_CASE("verify subcommand") {
  SECTION("matrix") {
    VerifyOptions opt;
    opt.matrix = "h6";
    const auto r = run(human(), [&](std::ostream& o) { return cmd_verify(opt, human(), o); });
    CHECK(r.code == kOk);
    CHECK(r.out == "verify_butson: valid\n");
  }
  SECTION("bad spectrum") {
    VerifyOptions opt;
    opt.group = "6";
    opt.set = "{0,3}";
    opt.spectrum = "{0,2}";
    const auto r = run(as_json(), [&](std::ostream& o) { return cmd_verify(opt, as_json(), o); });
    CHECK(r.code == kCheckFailed);
    const auto j = json_lines(r.out).front();
    CHECK(j.at("check") == "is_spectrum");
    CHECK(j.at("valid") == false);
    CHECK(j.at("witness") == json::parse("[[0],[2]]"));
  }
  SECTION("complement") {
    VerifyOptions opt;
    opt.group = "6";
    opt.set = "{0,1}";
    opt.complement = "{0,2,4}";
    CHECK(run(human(), [&](std::ostream& o) { return cmd_verify(opt, human(), o); }).code == kOk);
    opt.complement = "{0,1}";
    const auto r = run(human(), [&](std::ostream& o) { return cmd_verify(opt, human(), o); });
    CHECK(r.code == kCheckFailed);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("element (1) covered 2 times"));
  }
  SECTION("nothing to verify") {
    VerifyOptions opt;
    CHECK(run(human(), [&](std::ostream& o) { return cmd_verify(opt, human(), o); }).code == kBadInput);
  }
}

TEST_CASE("export subcommand writes importable geometry") {
  ExportOptions opt;
  opt.m = 2;
  opt.path = (std::filesystem::temp_directory_path() / "fuglede_cli_export.json").string();
  const auto r = run(human(), [&](std::ostream& o) { return cmd_export(opt, human(), o); });
  CHECK(r.code == kOk);
  const auto g = import_geometry(opt.path);
  CHECK(g.omega2.measure() == 192);
  CHECK(g.spectrum.size() == 192);
  std::filesystem::remove(opt.path);
}

TEST_CASE("density subcommand") {
  DensityCommandOptions opt;
  opt.m = 4;
  opt.l = 6;
  opt.stride = 3;
  opt.aligned_l = 6;
  const auto r = run(as_json(), [&](std::ostream& o) { return cmd_density(opt, as_json(), o); });
  CHECK(r.code == kOk);
  const auto j = json_lines(r.out).front();
  CHECK(j.at("pass") == true);
  CHECK(j.at("aligned").at("exact") == true);
  CHECK(j.at("aligned").at("expected") == 192);

  opt.l = 20;
  CHECK(run(human(), [&](std::ostream& o) { return cmd_density(opt, human(), o); }).code == kBadInput);
}

TEST_CASE("verify-continuum subcommand") {
  ContinuumOptions opt;
  opt.k_radius = 0;
  const auto r = run(as_json(), [&](std::ostream& o) { return cmd_verify_continuum(opt, as_json(), o); });
  CHECK(r.code == kOk);
  const auto j = json_lines(r.out).front();
  CHECK(j.at("pairs") == 18336);
  CHECK(j.at("measure") == 192);
  CHECK(j.at("sampled") == false);
}
