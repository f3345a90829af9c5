#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "gnrel/cli.hpp"
#include "gnrel/problem.hpp"

using namespace gnrel;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(GNREL_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("extend on the football file") {
  Run r = run({"extend", data("football.json"), "U", "S | F"});
  CHECK(r.code == 0);
  CHECK(r.out == "0 1/2\ninner: {} | {w1,w4,w5}\nouter: {w2,w3} | {w1,w2,w3}\n");

  Run j = run({"--format=json", "extend", data("football.json"), "U", "S | F"});
  REQUIRE(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["low"] == "0");
  CHECK(doc["high"] == "1/2");

  CHECK(run({"extend", data("football.json"), "M", "S | F", "--mode", "natural", "--side", "upper"}).out == "5/7\n");
  CHECK(run({"extend", data("football.json"), "M", "S | F", "--mode", "upper"}).out == "3/8\n");
  CHECK(run({"extend", data("football.json"), "U", "F | F"}).code == 2);
}

TEST_CASE("check exit codes and witnesses") {
  const std::string f = data("coherence.json");
  CHECK(run({"check", f, "fair"}).code == 0);
  Run greedy = run({"check", f, "greedy"});
  CHECK(greedy.code == 1);
  CHECK(greedy.out.rfind("inconsistent (dF, precise)\n", 0) == 0);
  CHECK(run({"check", f, "cautious"}).code == 0);
  CHECK(run({"check", f, "shrinking"}).code == 1);
  CHECK(run({"check", f, "shrinking", "--class", "1convex"}).code == 1);
  CHECK(run({"check", f, "stingy"}).code == 1);
  CHECK(run({"check", f, "conditional"}).code == 0);
  CHECK(run({"check", f, "missing"}).code == 2);
  CHECK(run({"check", f, "fair", "--class", "bogus"}).code == 2);
  CHECK(run({"check", data("nope.json"), "fair"}).code == 2);

  Run j = run({"check", f, "greedy", "--format=json"});
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["consistent"] == false);
  CHECK(doc["witness"]["max_gain"].is_string());
  for (const auto& t : doc["witness"]["terms"]) CHECK(t["stake"].is_string());
}

TEST_CASE("audit and gn") {
  const std::string f = data("coherence.json");
  Run a = run({"audit", f, "shrinking"});
  CHECK(a.code == 1);
  CHECK(a.out.find("violation:") == 0);
  Run ok = run({"audit", f, "cautious"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "no violations\n");

  const std::string g = data("football.json");
  CHECK(run({"gn", g, "S | F", "S | S or B"}).out == "LEQ\n");
  CHECK(run({"gn", g, "S | S or B", "S | F"}).out == "GEQ\n");
  Run inc = run({"gn", g, "S | F", "T | F"});
  CHECK(inc.out == "INCOMPARABLE\n");
  CHECK(inc.code == 1);
  CHECK(run({"gn", g, "S | F", "Q | F"}).code == 2);
}

TEST_CASE("bounds") {
  Run inner = run({"bounds", data("bounds.json"), "U", "inner", "X", "B"});
  CHECK(inner.code == 0);
  CHECK(inner.out.find("holds  lhs 1  rhs 3/2") != std::string::npos);
  Run finite = run({"bounds", data("bounds.json"), "U", "finite", "X", "B"});
  CHECK(finite.out.find("holds  lhs 1/3  rhs 3/2") != std::string::npos);
  Run product = run({"bounds", data("product.json"), "M", "product", "A", "Omega", "X"});
  CHECK(product.code == 1);
  CHECK(product.out.find("product_rule.zero: FAILS") != std::string::npos);
  Run sign = run({"bounds", data("bounds.json"), "U", "sign", "X", "B", "Omega"});
  CHECK(sign.out.rfind("LEQ", 0) == 0);
  CHECK(run({"bounds", data("bounds.json"), "U", "inner", "X"}).code == 2);
}

TEST_CASE("random files are deterministic and canonical") {
  Run a = run({"random", "--seed", "7", "--worlds", "4", "--entries", "5"});
  Run b = run({"random", "--seed", "7", "--worlds", "4", "--entries", "5"});
  Run c = run({"random", "--seed", "8", "--worlds", "4", "--entries", "5"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  ProblemFile pf = parse_problem(a.out);
  CHECK(dump_problem(pf) == a.out);
  CHECK(pf.assessment("A").size() <= 5);
  CHECK(run({"random", "--entries", "17"}).code == 2);
}

TEST_CASE("data files round-trip through fmt") {
  for (const char* name : {"football.json", "coherence.json", "bounds.json", "product.json"}) {
    CAPTURE(name);
    Run once = run({"fmt", data(name)});
    REQUIRE(once.code == 0);
    ProblemFile pf = parse_problem(once.out);
    CHECK(dump_problem(pf) == once.out);
    ProblemFile original = load_problem(data(name));
    CHECK(original.events.size() == pf.events.size());
    for (const auto& [k, a] : original.assessments) {
      const auto& b = pf.assessment(k);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.entries()[i].gamble == b.entries()[i].gamble);
        CHECK(a.entries()[i].value == b.entries()[i].value);
      }
    }
  }
}

TEST_CASE("stored queries") {
  Run r = run({"run", data("coherence.json")});
  CHECK(r.code == 1);
  CHECK(r.out.find("$ check fair\nconsistent") == 0);
  Run f = run({"run", data("football.json")});
  CHECK(f.code == 0);
  Run j = run({"--format=json", "run", data("bounds.json")});
  CHECK(j.code == 0);
  CHECK(j.out.find('$') == std::string::npos);
}

TEST_CASE("input errors carry line numbers") {
  const std::string text =
      "{\n"
      "  \"universe\": [\"a\", \"b\"],\n"
      "  \"layered\": {\n"
      "    \"P\": [\n"
      "      {\"a\": 0.5, \"b\": \"1/2\"}\n"
      "    ]\n"
      "  }\n"
      "}\n";
  try {
    parse_problem(text);
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).rfind("line 5: ", 0) == 0);
  }
  CHECK_THROWS_AS(parse_problem("{\"universe\": [\"a\"], \"extra\": 1}"), InputError);
  CHECK_THROWS_AS(parse_problem("{\"universe\": [\"a\", \"a\"]}"), InputError);
  CHECK_THROWS_AS(parse_problem("{\"universe\": [\"a\"], \"events\": {\"E\": [\"z\"]}}"), InputError);
  CHECK_THROWS_AS(parse_problem("[1, 2"), InputError);

  ProblemFile pf = parse_problem("{\"universe\": [\"a\", \"b\", \"c\"], \"events\": {\"E\": [\"a\"]}}");
  CHECK(pf.event("not E and ({b} or Empty)") == Event::of(pf.universe, {1}));
  CHECK(pf.event("!E & ~{c}") == Event::of(pf.universe, {1}));
  CHECK(pf.conditional("E").conditioning().is_all());
  CHECK_THROWS_AS(pf.event("E and"), InputError);
  CHECK_THROWS_AS(pf.event("(E"), InputError);
}
