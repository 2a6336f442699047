#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "oracles.hpp"
#include "oscq/cli.hpp"
#include "oscq/special_functions.hpp"

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string f; std::getline(is, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string run_command(const oscq::RunConfig& config, int* code) {
  std::ostringstream out, err;
  *code = oscq::run(config, out, err);
  return out.str();
}

int run_tool(const std::string& args, std::string* output = nullptr) {
  const std::string cmd = std::string(OSCQ_TOOL) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) text += buf;
  const int status = pclose(pipe);
  if (output) *output = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// data rows only, comments skipped, numeric fields parsed
std::vector<std::vector<double>> numeric_rows(const std::string& csv, std::size_t columns) {
  std::vector<std::vector<double>> rows;
  bool header = true;
  for (const auto& line : lines_of(csv)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = fields_of(line);
    REQUIRE(f.size() == columns);
    std::vector<double> row;
    for (const auto& x : f) {
      std::size_t used = 0;
      const double v = std::stod(x, &used);
      CHECK(used == x.size());
      CHECK(std::isfinite(v));
      row.push_back(v);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("integrand parsing") {
    const auto l = oscq::parse_integrand("lorentzian:a=-1,b=2.5");
    CHECK(l.kind == oscq::IntegrandKind::Lorentzian);
    CHECK(l.a == -1.0);
    CHECK(l.b == 2.5);
    CHECK(oscq::parse_integrand("lorentzian").b == 1.0);
    CHECK(oscq::parse_integrand("sinc").kind == oscq::IntegrandKind::Sinc);
    CHECK(oscq::parse_integrand("expdecay:lambda=3").lambda == 3.0);
    CHECK_THROWS_AS(oscq::parse_integrand("gauss"), oscq::UsageError);
    CHECK_THROWS_AS(oscq::parse_integrand("lorentzian:a=x"), oscq::UsageError);
    CHECK_THROWS_AS(oscq::parse_integrand("lorentzian:c=1"), oscq::UsageError);
    CHECK_THROWS_AS(oscq::parse_integrand("lorentzian:b=0"), oscq::UsageError);
    CHECK_THROWS_AS(oscq::parse_integrand("sinc:a=1"), oscq::UsageError);
    CHECK(oscq::parse_n_list("16, 25,36") == std::vector<long>{16, 25, 36});
    CHECK_THROWS_AS(oscq::parse_n_list("16,-2"), oscq::UsageError);
  }

  TEST_CASE("parameter resolution") {
    oscq::RunConfig c;
    c.m = 8.0;
    CHECK(oscq::resolve_parameters(c).n == 256);
    c.n = 100;
    CHECK(oscq::resolve_parameters(c).n == 100);
    c.m.reset();
    c.alpha = oscq::kPi;
    CHECK(oscq::resolve_parameters(c).m == doctest::Approx(10.0));
    c.alpha.reset();
    CHECK_THROWS_AS(oscq::resolve_parameters(c), oscq::UsageError);
  }

  TEST_CASE("table1 output") {
    oscq::RunConfig c;
    c.command = oscq::Command::Table1;
    int code = -1;
    const std::string csv = run_command(c, &code);
    CHECK(code == oscq::kExitOk);
    const auto lines = lines_of(csv);
    REQUIRE(lines.size() == 31);
    CHECK(lines[0] == "m,a,total,R_m,S_m,saddle_converged");
    int rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto f = fields_of(lines[i]);
      REQUIRE(f.size() == 6);
      CHECK(f[5] == "true");
      for (int j = 2; j <= 4; ++j) CHECK(f[j].find('e') != std::string::npos);
      ++rows;
      const double m = std::stod(f[0]), a = std::stod(f[1]);
      if (m == 1.0 && a == -1.0) {
        CHECK(std::stod(f[2]) == doctest::Approx(8.6e-3).epsilon(0.1));
        CHECK(std::stod(f[3]) == doctest::Approx(2.2e-2).epsilon(0.1));
      }
      if (m == 6.0 && a == 0.0) {
        CHECK(std::stod(f[2]) == doctest::Approx(-8.2e-9).epsilon(0.1));
        CHECK(std::stod(f[3]) == doctest::Approx(-8.3e-9).epsilon(0.1));
      }
    }
    CHECK(rows == 30);
    // 17 significant digits
    CHECK(fields_of(lines[1])[2].size() == std::string("8.5603945550938865e-03").size());
    CHECK(run_command(c, &code) == csv);
  }

  TEST_CASE("convergence output") {
    oscq::RunConfig c;
    c.command = oscq::Command::Convergence;
    c.integrand = "sinc";
    c.alpha = oscq::kPi;
    int code = -1;
    auto rows = numeric_rows(run_command(c, &code), 3);
    CHECK(code == oscq::kExitOk);
    REQUIRE(rows.size() == 17);
    CHECK(rows.front()[0] == 16);
    CHECK(rows.back()[0] == 400);
    CHECK(rows[0][2] > rows[6][2]);  // n = 16 against n = 100
    CHECK(rows.back()[2] <= std::max(rows[6][2], 4.0 * 2.2e-16 * oscq::kPi));

    // Lorentzian a=0: log error is linear in sqrt(n) with slope -sqrt(pi alpha)
    c.integrand = "lorentzian:a=0,b=1";
    c.n_list = {16, 25, 36, 49, 64, 81, 100};
    rows = numeric_rows(run_command(c, &code), 3);
    std::vector<double> x, y;
    for (const auto& r : rows) {
      x.push_back(std::sqrt(r[0]));
      y.push_back(std::log(r[2]));
    }
    CHECK(oracle::ls_slope(x, y) == doctest::Approx(-std::sqrt(oscq::kPi * oscq::kPi)).epsilon(0.2));

    c.alpha.reset();
    run_command(c, &code);
    CHECK(code == oscq::kExitUsage);
  }

  TEST_CASE("compare-om output") {
    oscq::RunConfig c;
    c.command = oscq::Command::CompareOM;
    int code = -1;
    const std::string csv = run_command(c, &code);
    CHECK(code == oscq::kExitOk);
    CHECK(csv.rfind("# ", 0) == 0);
    const auto rows = numeric_rows(csv, 3);
    REQUIRE(rows.size() == 7);
    CHECK(rows.front()[0] == 8);
    CHECK(rows.back()[0] == 512);
    CHECK(rows.front()[1] > 1e-6);
    CHECK(rows.back()[1] < 1e-14);
    CHECK(rows.back()[2] < 1e-14);
    // same computation as the convergence command at shared n
    oscq::RunConfig v;
    v.command = oscq::Command::Convergence;
    v.alpha = oscq::kPi;
    v.n_list = {64, 256};
    const auto conv = numeric_rows(run_command(v, &code), 3);
    CHECK(conv[0][2] == rows[3][1]);
    CHECK(conv[1][2] == rows[5][1]);
  }

  TEST_CASE("transform output") {
    oscq::RunConfig c;
    c.command = oscq::Command::Transform;
    c.integrand = "lorentzian:a=0,b=1";
    c.m = 8.0;
    int code = -1;
    auto lines = lines_of(run_command(c, &code));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].rfind("value=", 0) == 0);
    CHECK(std::stod(lines[1].substr(10)) < 1e-10);

    c.integrand = "expdecay:lambda=1";
    c.cosine = true;
    lines = lines_of(run_command(c, &code));
    CHECK(std::stod(lines[0].substr(6)) == doctest::Approx(0.5).epsilon(1e-9));

    c.integrand = "sinc";
    c.cosine = false;
    c.m.reset();
    c.n = 400;
    c.alpha = 3.14159;
    lines = lines_of(run_command(c, &code));
    CHECK(std::abs(std::stod(lines[0].substr(6)) - oscq::kPi / 2.0) < 1e-5);

    c.cosine = true;
    run_command(c, &code);
    CHECK(code == oscq::kExitUsage);
  }

  TEST_CASE("executable exit codes and files") {
    std::string out;
    CHECK(run_tool("transform --integrand sinc --t 1 --n 400 --alpha 3.14159", &out) == 0);
    CHECK(out.rfind("value=1.57079", 0) == 0);
    CHECK(run_tool("transform --integrand lorentzian:a=0,b=1 --t 1 --m 8 --map om2", &out) == 0);
    CHECK(run_tool("transform --integrand sinc --t 1") == oscq::kExitUsage);
    CHECK(run_tool("transform --integrand sinc --t 1 --m 4 --map tanh") == oscq::kExitUsage);
    CHECK(run_tool("transform --integrand nothing --t 1 --m 4") == oscq::kExitUsage);
    CHECK(run_tool("frobnicate") == oscq::kExitUsage);
    CHECK(run_tool("convergence --integrand expdecay:lambda=1 --t 1 --alpha 1 --n-list 4,x") ==
          oscq::kExitUsage);
    CHECK(run_tool("table1 --out /nonexistent-dir/t.csv") == oscq::kExitIo);

    const std::string path = std::string(OSCQ_SCRATCH) + "/table1.csv";
    CHECK(run_tool("table1 --out " + path) == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(lines_of(ss.str()).size() == 31);
  }
}
