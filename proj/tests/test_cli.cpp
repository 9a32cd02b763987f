#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "hybrid/dsl.hpp"
#include "support/run_cli.hpp"

using json = nlohmann::json;

namespace {

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

TEST_CASE("commute_prints_normal_form") {
  auto r = cli::run("commute \"q[1]\" \"lq[1]\"");
  CHECK(r.exit_code == 0);
  CHECK(trimmed(r.output) == "i·\U0001d7d9");  // i·𝟙

  // the anomalous classical boost bracket vanishes
  auto z = cli::run("commute \"lq[1]\" \"-t*lq[1]-m*lp[1]\"");
  CHECK(z.exit_code == 0);
  CHECK(trimmed(z.output) == "0");
}

TEST_CASE("commute_json_report") {
  auto r = cli::run("--json commute \"q[1]\" \"lq[1]\"", /*merge_stderr=*/false);
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["command"] == "commute");
  CHECK(doc["results"]["normal_form"] == "i");
}

TEST_CASE("verify_exit_codes") {
  CHECK(cli::run("verify --rep quantum > /dev/null").exit_code == 0);
  CHECK(cli::run("verify --rep classical > /dev/null").exit_code == 0);
  CHECK(cli::run("verify --rep hybrid > /dev/null").exit_code == 0);
  CHECK(cli::run("verify --rep two-particle > /dev/null").exit_code == 0);
  // Hermitian but covariance-breaking interaction: relations fail, exit 1
  CHECK(cli::run("verify --rep hybrid --interaction \"r[1]\" > /dev/null").exit_code == 1);
  // non-Hermitian interaction rejected as a computation failure
  CHECK(cli::run("verify --rep hybrid --interaction \"i*r[1]\" > /dev/null").exit_code == 1);
  // usage problems exit 2
  CHECK(cli::run("verify --rep bogus > /dev/null").exit_code == 2);
  CHECK(cli::run("verify > /dev/null").exit_code == 2);
}

TEST_CASE("usage_errors_exit_2") {
  CHECK(cli::run("no-such-command > /dev/null").exit_code == 2);
  CHECK(cli::run("commute \"q[1]\" > /dev/null").exit_code == 2);
  CHECK(cli::run("> /dev/null").exit_code == 2);
}

TEST_CASE("parse_errors_exit_1_with_position") {
  auto r = cli::run("commute \"q[4]\" \"q[1]\"");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("byte") != std::string::npos);
  auto s = cli::run("normal-form \"1/q[1]\"");
  CHECK(s.exit_code == 1);
  CHECK(s.output.find("denominator") != std::string::npos);
}

TEST_CASE("classify_report_is_deterministic") {
  auto a = cli::run("--json classify", /*merge_stderr=*/false);
  auto b = cli::run("--json classify", /*merge_stderr=*/false);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  json doc = json::parse(a.output);
  CHECK(doc["results"]["dimension"] == 6);
  // report expressions re-parse to the same canonical form
  for (const auto& e : doc["results"]["elements"]) {
    std::string text = e["expr"].get<std::string>();
    CHECK(hybrid::dsl::parse_operator(text).to_string() == text);
  }
}

TEST_CASE("liouvillian_rejects_non_phase_space_input") {
  CHECK(cli::run("liouvillian --hamiltonian \"dot(P,P)/(2*m)\" > /dev/null").exit_code == 0);
  CHECK(cli::run("liouvillian --hamiltonian \"k[1]^2\" > /dev/null").exit_code == 1);
  CHECK(cli::run("liouvillian --hamiltonian \"lq[1]\" > /dev/null").exit_code == 1);
}

TEST_CASE("simulate_end_to_end") {
  const char* cfg_path = "/tmp/hybrid_cli_sim.json";
  const char* csv_path = "/tmp/hybrid_cli_sim.csv";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({
      "grid": {"x": {"points": 32, "half_width": 4.0},
               "q": {"points": 32, "half_width": 4.0},
               "p": {"points": 32, "half_width": 4.0}},
      "dt": 0.01, "steps": 20, "record_every": 5,
      "masses": {"M": 1.0, "m": 1.0},
      "couplings": {"g2": 0.5},
      "initial": {"k0": 1.0}
    })";
  }
  auto r = cli::run(std::string("--json simulate --config ") + cfg_path + " --out " + csv_path,
                    /*merge_stderr=*/false);
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["results"]["rows"] == 5);  // initial + 4 records
  CHECK(doc["results"]["norm_drift"].get<double>() < 1e-10);

  std::ifstream csv(csv_path);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,norm,x,k,q,p,ktot");
  int lines = 0;
  std::string line;
  while (std::getline(csv, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 5);
  std::remove(cfg_path);
  std::remove(csv_path);
}

TEST_CASE("simulate_rejects_bad_config") {
  const char* cfg_path = "/tmp/hybrid_cli_bad.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({
      "grid": {"x": {"points": 32, "half_width": 4.0},
               "q": {"points": 32, "half_width": 4.0},
               "p": {"points": 32, "half_width": 4.0}},
      "dt": 0.01, "steps": 5,
      "masses": {"M": 0.0, "m": 1.0}
    })";
  }
  CHECK(cli::run(std::string("simulate --config ") + cfg_path + " --out /tmp/x.csv").exit_code ==
        1);
  CHECK(cli::run("simulate --config /no/such/file.json --out /tmp/x.csv").exit_code == 2);
  std::remove(cfg_path);
}
