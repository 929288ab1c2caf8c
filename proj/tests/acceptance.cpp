// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "infot/cli.hpp"
#include "infot/flow.hpp"
#include "infot/matching.hpp"
#include "infot/oracle.hpp"
#include "infot/solvers.hpp"
#include "testing.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace infot;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void report(int id, const char* title, const Verdict& v, const std::string& summary) {
  std::printf("[%s] criterion %2d: %s (%s)%s%s\n", v.ok ? "PASS" : "FAIL", id, title,
              summary.c_str(), v.ok ? "" : ": ", v.ok ? "" : v.detail.c_str());
  std::fflush(stdout);
  if (!v.ok) ++failures;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct MongeCase {
  CostMatrix cost;
  SolveReport report;
};

struct TransportCase {
  CostMatrix cost;
  Marginals marginals;
  SolveReport report;
};

// Plan checks shared by criteria 8 and the per-instance loops.
void check_plan(const CostMatrix& cost, const SolveReport& r, const Marginals* marg, Verdict& v) {
  if (const auto* p = std::get_if<Permutation>(&r.plan)) {
    std::vector<bool> seen(p->size(), false);
    for (std::size_t i = 0; i < p->size(); ++i) {
      if ((*p)[i] >= p->size() || seen[(*p)[i]]) v.fail("permutation is not a bijection");
      else seen[(*p)[i]] = true;
    }
    if (p->size() != cost.rows()) v.fail("permutation has the wrong size");
  } else {
    const auto& coupling = std::get<Coupling>(r.plan);
    if (marg == nullptr || !coupling.matches(*marg)) v.fail("coupling marginals differ");
    for (const auto& e : coupling.entries()) {
      if (e.mass <= 0) v.fail("coupling has a nonpositive entry");
    }
  }
  if (plan_max_cost(cost, r.plan) != r.value) v.fail("plan support max differs from value");
}

SupportMask prefix(const CostMatrix& cost, std::size_t k) {
  return SupportMask::prefix(cost.rows(), cost.cols(), argsort_edges(cost), k);
}

}  // namespace

int main() {
  std::vector<MongeCase> monge_cases;
  std::vector<TransportCase> transport_cases;

  {
    Verdict v;
    std::mt19937_64 rng(20240101);
    const auto start = Clock::now();
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = static_cast<std::size_t>(random::integer(rng, 2, 7));
      CostMatrix cost = random::uniform_costs(n, n, rng);
      SolveReport r = solve_monge(cost);
      const double expected = oracle::brute_force_monge(cost);
      if (std::memcmp(&r.value, &expected, sizeof(double)) != 0) {
        v.fail("trial " + std::to_string(trial) + " differs from brute force");
      }
      monge_cases.push_back({std::move(cost), std::move(r)});
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 10) v.fail("took " + fmt("%.2f s", elapsed));
    report(1, "Monge oracle equivalence", v, "500 instances, " + fmt("%.3f s", elapsed));
  }

  {
    Verdict v;
    std::mt19937_64 rng(20240202);
    const auto start = Clock::now();
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = static_cast<std::size_t>(random::integer(rng, 1, 6));
      const std::size_t m = static_cast<std::size_t>(random::integer(rng, 1, 6));
      CostMatrix cost = random::uniform_costs(n, m, rng);
      Marginals marg = testing::random_marginals(cost, 100, rng);
      SolveReport r = solve_kantorovich(cost, marg);
      const double bisect = solve_bisect(cost, marg).value;
      const double scan = oracle::threshold_scan(cost, marg);
      if (r.value != bisect || r.value != scan) {
        v.fail("trial " + std::to_string(trial) + ": sweep, bisection and scan disagree");
      }
      transport_cases.push_back({std::move(cost), std::move(marg), std::move(r)});
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 30) v.fail("took " + fmt("%.2f s", elapsed));
    report(2, "Kantorovich oracle equivalence", v, "300 instances, " + fmt("%.3f s", elapsed));
  }

  {
    Verdict v;
    std::mt19937_64 rng(20240303);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = static_cast<std::size_t>(random::integer(rng, 1, 8));
      // Alternate continuous and tie-heavy entries.
      const CostMatrix cost = trial % 2 == 0 ? random::uniform_costs(n, n, rng)
                                             : random::integer_costs(n, n, 4, rng);
      const double k = solve_kantorovich(cost, uniform_marginals(cost)).value;
      const double m = solve_monge(cost).value;
      if (k != m) v.fail("trial " + std::to_string(trial) + ": kantorovich != monge");
    }
    report(3, "Uniform square weights reduce to Monge", v, "200 instances");
  }

  {
    Verdict v;
    const CostMatrix cost = testing::matrix({{1, 2}, {3, 4}});
    const Marginals marg =
        validate_problem(cost, testing::weights({"0.5", "0.5"}), testing::weights({"0.3", "0.7"}));
    const SolveReport r = solve_kantorovich(cost, marg);
    if (r.value != 4) v.fail("value " + fmt("%g", r.value));
    const auto& coupling = std::get<Coupling>(r.plan);
    if (coupling.row_sums(2) != std::vector<Rational>{Rational(1, 2), Rational(1, 2)}) {
      v.fail("row sums differ");
    }
    if (coupling.col_sums(2) != std::vector<Rational>{Rational(3, 10), Rational(7, 10)}) {
      v.fail("column sums differ");
    }
    if (oracle::threshold_scan(cost, marg) != 4) v.fail("threshold scan disagrees");
    report(4, "Fixed transport instance", v, "value " + fmt("%g", r.value));
  }

  {
    Verdict v;
    const CostMatrix cost = testing::matrix({{1, 1}, {1, 2}});
    const RelaxedSolution relaxed = solve_relaxed(cost);
    const double monge = solve_monge(cost).value;
    if (std::abs(relaxed.value - 2.0 / 3.0) > 1e-6) v.fail("relaxed " + fmt("%.12g", relaxed.value));
    if (monge != 1) v.fail("monge " + fmt("%g", monge));
    report(5, "Relaxed gap instance", v,
           "relaxed " + fmt("%.12f", relaxed.value) + ", monge " + fmt("%g", monge));
  }

  {
    Verdict v;
    std::mt19937_64 rng(20240606);
    double worst = -1e300;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = static_cast<std::size_t>(random::integer(rng, 1, 12));
      const CostMatrix cost = trial % 3 == 0 ? random::integer_costs(n, n, 6, rng)
                                             : random::uniform_costs(n, n, rng);
      const double relaxed = solve_relaxed(cost).value;
      const double monge = solve_monge(cost).value;
      worst = std::max(worst, relaxed - monge);
      if (relaxed > monge + 1e-6) v.fail("trial " + std::to_string(trial) + ": relaxed above monge");
    }
    report(6, "Relaxed value bounded by Monge value", v,
           "200 instances, max(relaxed - monge) " + fmt("%.3g", worst));
  }

  {
    Verdict v;
    for (const auto& c : monge_cases) {
      const std::size_t k = c.report.iterations;
      if (check_perm(prefix(c.cost, k - 1)).has_value()) v.fail("Monge prefix k-1 feasible");
      if (!check_perm(prefix(c.cost, k)).has_value()) v.fail("Monge prefix k infeasible");
    }
    for (const auto& c : transport_cases) {
      const std::size_t k = c.report.iterations;
      if (check_coup(prefix(c.cost, k - 1), c.marginals).has_value()) {
        v.fail("transport prefix k-1 feasible");
      }
      if (!check_coup(prefix(c.cost, k), c.marginals).has_value()) {
        v.fail("transport prefix k infeasible");
      }
    }
    report(7, "Two-sided feasibility certificates", v,
           std::to_string(monge_cases.size() + transport_cases.size()) + " instances");
  }

  {
    Verdict v;
    for (const auto& c : monge_cases) check_plan(c.cost, c.report, nullptr, v);
    for (const auto& c : transport_cases) check_plan(c.cost, c.report, &c.marginals, v);
    std::mt19937_64 rng(20240808);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = static_cast<std::size_t>(random::integer(rng, 1, 10));
      const std::size_t m = static_cast<std::size_t>(random::integer(rng, 1, 10));
      const CostMatrix cost = random::integer_costs(n, m, 5, rng);
      const Marginals marg = testing::random_marginals(cost, 100, rng);
      for (auto mode : {SweepMode::Batched, SweepMode::PerEdge}) {
        check_plan(cost, solve_kantorovich(cost, marg, mode), &marg, v);
        check_plan(cost, solve_bisect(cost, marg), &marg, v);
      }
      const CostMatrix square = random::integer_costs(n, n, 5, rng);
      for (auto mode : {SweepMode::Batched, SweepMode::PerEdge}) {
        check_plan(square, solve_monge(square, mode), nullptr, v);
      }
    }
    report(8, "Plan validity", v, "all plans from criteria 1-2 plus 100 tie-heavy instances");
  }

  {
    Verdict v;
    std::mt19937_64 rng(20240909);
    const CostMatrix big = random::uniform_costs(300, 300, rng);
    auto start = Clock::now();
    const SolveReport monge = solve_monge(big);
    const double monge_s = seconds_since(start);
    if (monge_s >= 5) v.fail("300x300 Monge took " + fmt("%.2f s", monge_s));
    check_plan(big, monge, nullptr, v);

    const CostMatrix mid = random::uniform_costs(100, 100, rng);
    const Marginals marg =
        validate_problem(mid, random::random_proportions(100, 100, rng),
                         random::random_proportions(100, 100, rng));
    start = Clock::now();
    const SolveReport transport = solve_kantorovich(mid, marg);
    const double transport_s = seconds_since(start);
    if (transport_s >= 20) v.fail("100x100 transport took " + fmt("%.2f s", transport_s));
    check_plan(mid, transport, &marg, v);
    if (transport.value != solve_bisect(mid, marg).value) v.fail("100x100 bisection disagrees");
    report(9, "Complexity smoke test", v,
           "300x300 Monge " + fmt("%.3f s", monge_s) + ", 100x100 transport " +
               fmt("%.3f s", transport_s));
  }

  {
    Verdict v;
    const fs::path dir = fs::temp_directory_path() / ("infot-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto write = [&](const std::string& name, const std::string& body) {
      std::ofstream(dir / name) << body;
      return (dir / name).string();
    };
    std::mt19937_64 rng(20241010);
    std::string body;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        body += std::to_string(random::integer(rng, 0, 4)) + (j < 5 ? "," : "\n");
      }
    }
    const std::string cost = write("cost.csv", body);
    const std::string a = write("a.txt", "1/6\n1/3\n1/12\n1/4\n1/12\n1/12\n");
    const std::string b = write("b.json", R"(["0.1", "0.2", "0.3", "0.15", "0.05", "1/5"])");
    const std::string gap = write("gap.csv", "1,1\n1,2\n");
    const std::vector<std::vector<std::string>> commands = {
        {"monge", "--cost", cost},
        {"--per-edge", "monge", "--cost", cost},
        {"kantorovich", "--cost", cost, "--a", a, "--b", b},
        {"--per-edge", "kantorovich", "--cost", cost, "--a", a, "--b", b},
        {"kantorovich", "--cost", cost},
        {"relaxed", "--cost", cost},
        {"relaxed", "--cost", gap},
        {"oracle", "monge", "--cost", cost},
        {"oracle", "kantorovich", "--cost", cost, "--a", a, "--b", b},
        {"bench", "--sizes", "4,8", "--trials", "3", "--seed", "7"},
    };
    const auto invoke = [](std::vector<std::string> args, int& code) {
      args.insert(args.begin(), "infot");
      std::ostringstream out;
      std::ostringstream err;
      code = cli::run(args, out, err);
      auto doc = nlohmann::json::parse(out.str());
      doc.erase("wall_time_ms");
      if (doc.contains("results")) {
        for (auto& row : doc["results"]) {
          row.erase("monge_median_ms");
          row.erase("kantorovich_median_ms");
        }
      }
      return doc.dump();
    };
    for (const auto& cmd : commands) {
      int first_code = 0;
      int second_code = 0;
      const std::string first = invoke(cmd, first_code);
      const std::string second = invoke(cmd, second_code);
      std::string joined;
      for (const auto& s : cmd) joined += s + " ";
      if (first_code != 0 || second_code != 0) v.fail("nonzero exit for " + joined);
      if (first != second) v.fail("output differs for " + joined);
    }
    fs::remove_all(dir);
    report(10, "Determinism of every subcommand", v,
           std::to_string(commands.size()) + " invocations, each run twice");
  }

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
