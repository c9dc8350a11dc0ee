#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cusp/io.hpp"

using namespace cusp;

namespace {

  struct Run {
    int         status = -1;
    std::string out;
  };

  // stderr is dropped; only stdout and the exit status are inspected.
  Run run(std::string const& args) {
    std::string cmd = std::string("\"") + CUSPX_PATH + "\" " + args + " 2>/dev/null";
    Run         r;
    FILE*       pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t            n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
      r.out.append(buf.data(), n);
    }
    int raw  = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
  }

  std::string slurp(std::string const& path) {
    std::ifstream      f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  int count(std::string const& hay, std::string const& needle) {
    int         n = 0;
    std::size_t pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
      ++n;
      pos += needle.size();
    }
    return n;
  }

}  // namespace

TEST_CASE("conjugacy-check text output is deterministic") {
  auto a = run("conjugacy-check --p 5 --samples 100 --seed 42");
  auto b = run("conjugacy-check --p 5 --samples 100 --seed 42");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("100/100 branch and endpoint matches") != std::string::npos);
}

TEST_CASE("golden coding through the CLI") {
  auto r = run("code --modular --x \"surd:(1+1*sqrt(5))/2\" --steps 10");
  REQUIRE(r.status == 0);
  auto j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["kind"] == "coding");
  CHECK(j["letters"] == Json::array({1, 0}));
  CHECK(j["termination"] == "period");
  CHECK(j["period"] == 2);

  auto cf = Json::parse(run("cf --x rat:7/3").out);
  CHECK(cf["text"] == "[2;3]");
}

TEST_CASE("every exact value in JSON output reparses") {
  for (char const* args :
       {"domain --p 5", "domain --p 2", "domain --modular", "branches --p 7",
        "branches --modular", "code --p 5 --x \"surd:(1+1*sqrt(2))/3\" --trace",
        "code --p 3 --x \"surd:(0+1*sqrt(3))/1\" --y rat:-1/3 --past 4 --trace",
        "return --p 5 --x \"surd:(0+1*sqrt(2))/1\" --y \"surd:(0+-1*sqrt(2))/1\" "
        "--trace --previous",
        "conjugacy-check --p 3 --samples 5 --format json",
        "transfer --p 5 --x rat:3/10"}) {
    std::string cmd = args;
    CAPTURE(cmd);
    auto r = run(cmd);
    REQUIRE(r.status == 0);
    auto j = Json::parse(r.out);
    CHECK(j["schema"] == 1);
    auto strings = exact_value_strings(j);
    // A fully matching conjugacy report carries no values.
    if (cmd.rfind("conjugacy", 0) != 0) {
      CHECK_FALSE(strings.empty());
    }
    for (auto const& s : strings) {
      CAPTURE(s);
      CHECK(to_string(parse_boundary_value(s)) == s);
    }
  }
}

TEST_CASE("exit statuses") {
  CHECK(run("code --p 5 --x bogus").status == 2);
  CHECK(run("code --p 4 --x rat:1/3").status == 2);
  CHECK(run("code --x rat:1/3").status == 2);
  CHECK(run("no-such-command").status == 2);
  CHECK(run("transfer --p 5 --x rat:1/3 --beta 1,x").status == 2);
  // Off the section and a cusp endpoint are computation failures.
  CHECK(run("code --p 5 --x rat:1/3 --y rat:1/4").status == 1);
  CHECK(run("transfer --p 5 --x rat:1/5").status == 1);
}

TEST_CASE("transfer example through the CLI") {
  auto j = Json::parse(run("transfer --p 5 --x rat:3/10").out);
  CHECK(j["value"]["re"].get<double>() == doctest::Approx(5.16).epsilon(1e-12));
}

TEST_CASE("domain SVG and --out") {
  std::string svg  = "cli_domain_p5.svg";
  std::string json = "cli_domain_p5.json";
  auto        r    = run("domain --p 5 --svg " + svg + " --out " + json);
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  auto text = slurp(svg);
  CHECK(count(text, "class=\"sphere\"") == 4);
  CHECK(count(text, "A 200.000000 200.000000") == 4);
  CHECK(slurp(json) == run("domain --p 5").out);
  std::remove(svg.c_str());
  std::remove(json.c_str());
}
