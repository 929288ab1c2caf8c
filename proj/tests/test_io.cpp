#include "infot/io.hpp"

#include "testing.hpp"

#include <doctest.h>

using namespace infot;

TEST_CASE("cost CSV parsing") {
  const CostMatrix c = io::parse_cost_csv("5,1\r\n2, 9\r\n\r\n");
  CHECK(c == testing::matrix({{5, 1}, {2, 9}}));
  const CostMatrix sci = io::parse_cost_csv("1e-3,+2.5E2\n-0.125,3\n");
  CHECK(sci(0, 0) == 1e-3);
  CHECK(sci(0, 1) == 250);
  CHECK(sci(1, 0) == -0.125);

  const auto kind = [](std::string_view text) {
    try {
      io::parse_cost_csv(text);
    } catch (const ProblemError& e) {
      return e.kind();
    }
    return ErrorKind::TooLarge;  // no error: never expected below
  };
  CHECK(kind("1,2\n3\n") == ErrorKind::DimensionMismatch);
  CHECK(kind("1,x\n") == ErrorKind::ParseError);
  CHECK(kind("1,,2\n") == ErrorKind::ParseError);
  CHECK(kind("") == ErrorKind::DimensionMismatch);
  CHECK(kind("1,nan\n") == ErrorKind::NonFinite);
  CHECK(kind("inf\n") == ErrorKind::NonFinite);
}

TEST_CASE("weight parsing: lines and JSON arrays") {
  CHECK(io::parse_weights("0.5\r\n0.5\n") == testing::weights({"1/2", "1/2"}));
  CHECK(io::parse_weights("[\"0.3\", \"7/10\"]") == testing::weights({"0.3", "0.7"}));
  CHECK(io::parse_weights("[1, \"2\"]") == testing::weights({"1", "2"}));
  CHECK_THROWS_AS(io::parse_weights("[0.3, 0.7]"), ProblemError);
  CHECK_THROWS_AS(io::parse_weights("[\"0.3\""), ProblemError);
  CHECK_THROWS_AS(io::parse_weights("0.3\nabc\n"), ProblemError);
}

TEST_CASE("missing files are reported as parse errors") {
  try {
    io::read_cost_csv("/nonexistent/cost.csv");
    FAIL("expected an error");
  } catch (const ProblemError& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("reports render plans with exact masses") {
  SolveReport report;
  report.value = 4;
  report.witness_edge = {1, 1};
  report.iterations = 4;
  report.plan = Coupling({{0, 0, Rational(3, 10)}, {0, 1, Rational(1, 5)}, {1, 1, Rational(1, 3)}});
  const io::ReportDocument doc = io::make_report("kantorovich", report);
  const auto json = io::to_json(doc);
  CHECK(json["kind"] == "kantorovich");
  CHECK(json["value"] == 4.0);
  CHECK(json["witness_edge"] == nlohmann::ordered_json::array({1, 1}));
  CHECK(json["plan"].dump() == R"([[0,0,"0.3"],[0,1,"0.2"],[1,1,"1/3"]])");
  CHECK(json["iterations"] == 4);
  for (const auto& entry : doc.plan) {
    CHECK(format_rational(parse_rational(entry.mass)) == entry.mass);
  }
  CHECK(io::to_text(doc).find("1 1 1/3") != std::string::npos);

  SolveReport perm;
  perm.value = 2;
  perm.witness_edge = {1, 0};
  perm.plan = Permutation({1, 0});
  CHECK(io::to_json(io::make_report("monge", perm))["plan"].dump() == R"([[0,1,"1"],[1,0,"1"]])");
}

TEST_CASE("format_double reads back as the same double") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const double x = random::unit(rng) * std::pow(10.0, random::integer(rng, -8, 3));
    const std::string s = io::format_double(x);
    CHECK(s.find('e') == std::string::npos);
    CHECK(std::stod(s) == x);
    CHECK(format_rational(parse_rational(s)) == format_rational(parse_rational(format_rational(parse_rational(s)))));
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(1.0) == "1");
}
