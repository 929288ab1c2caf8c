#include "infot/cli.hpp"

#include "infot/core.hpp"
#include "infot/io.hpp"
#include "infot/oracle.hpp"
#include "infot/random.hpp"
#include "infot/solvers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>

namespace infot::cli {

namespace {

// Cross-check mismatch under --check.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  bool per_edge = false;
  bool check = false;
  std::string cost;
  std::string a;
  std::string b;
  std::optional<double> tol;
  std::vector<std::size_t> sizes;
  std::size_t trials = 5;
  std::uint64_t seed = 1;

  SweepMode mode() const { return per_edge ? SweepMode::PerEdge : SweepMode::Batched; }
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure(what);
}

std::string show(double x) { return io::format_double(x); }

Marginals load_marginals(const Options& opt, const CostMatrix& cost) {
  if (opt.a.empty() && opt.b.empty()) return uniform_marginals(cost);
  if (opt.a.empty() || opt.b.empty()) {
    throw ProblemError(ErrorKind::ParseError, "--a and --b must be given together");
  }
  return validate_problem(cost, io::read_weights(opt.a), io::read_weights(opt.b));
}

void emit(const io::ReportDocument& doc, const Options& opt, std::ostream& out) {
  if (opt.format == "text") {
    out << io::to_text(doc);
  } else {
    out << io::to_json(doc).dump(2) << '\n';
  }
}

void check_plan(const CostMatrix& cost, const SolveReport& report) {
  expect(plan_max_cost(cost, report.plan) == report.value,
         "plan support maximum differs from the reported value");
  expect(cost.at(report.witness_edge) == report.value,
         "witness edge does not carry the reported value");
}

int cmd_monge(const Options& opt, std::ostream& out) {
  const CostMatrix cost = io::read_cost_csv(opt.cost);
  const auto start = Clock::now();
  const SolveReport report = solve_monge(cost, opt.mode());
  const double ms = elapsed_ms(start);
  if (opt.check) {
    check_plan(cost, report);
    if (cost.rows() <= oracle::kMaxMongeSize) {
      const double expected = oracle::brute_force_monge(cost);
      expect(expected == report.value, "brute force gives " + show(expected));
    } else {
      const double other = solve_kantorovich(cost, uniform_marginals(cost)).value;
      expect(other == report.value, "uniform transport solve gives " + show(other));
    }
  }
  io::ReportDocument doc = io::make_report("monge", report);
  doc.wall_time_ms = ms;
  emit(doc, opt, out);
  return kExitOk;
}

int cmd_kantorovich(const Options& opt, std::ostream& out) {
  const CostMatrix cost = io::read_cost_csv(opt.cost);
  const Marginals marginals = load_marginals(opt, cost);
  const auto start = Clock::now();
  const SolveReport report = solve_kantorovich(cost, marginals, opt.mode());
  const double ms = elapsed_ms(start);
  if (opt.check) {
    check_plan(cost, report);
    expect(std::get<Coupling>(report.plan).matches(marginals),
           "coupling marginals differ from the input weights");
    const double bisect = solve_bisect(cost, marginals).value;
    expect(bisect == report.value, "bisection gives " + show(bisect));
    if (cost.rows() <= 12 && cost.cols() <= 12) {
      const double scan = oracle::threshold_scan(cost, marginals);
      expect(scan == report.value, "threshold scan gives " + show(scan));
    }
  }
  io::ReportDocument doc = io::make_report("kantorovich", report);
  doc.wall_time_ms = ms;
  emit(doc, opt, out);
  return kExitOk;
}

int cmd_relaxed(const Options& opt, std::ostream& out) {
  const CostMatrix cost = io::read_cost_csv(opt.cost);
  const auto start = Clock::now();
  const RelaxedSolution solution = solve_relaxed(cost, opt.tol);
  const double ms = elapsed_ms(start);
  if (opt.check) {
    const double monge = solve_monge(cost).value;
    expect(solution.value <= monge, "relaxed value exceeds the assignment value " + show(monge));
    for (std::size_t i = 0; i < solution.n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (std::size_t j = 0; j < solution.n; ++j) {
        row += solution.at(i, j);
        col += solution.at(j, i);
        expect(solution.at(i, j) * cost(i, j) <= solution.value * (1 + 1e-12),
               "plan entry exceeds the reported level");
      }
      expect(std::abs(row - 1.0) <= 1e-9 && std::abs(col - 1.0) <= 1e-9,
             "plan is not doubly stochastic");
    }
  }
  io::ReportDocument doc = io::make_report(cost, solution);
  doc.wall_time_ms = ms;
  emit(doc, opt, out);
  return kExitOk;
}

io::ReportDocument oracle_report(const CostMatrix& cost, double value) {
  io::ReportDocument doc;
  doc.kind = "oracle";
  doc.value = value;
  for (std::size_t t = 0; t < cost.entries().size(); ++t) {
    if (cost.entries()[t] == value) {
      doc.witness_edge = {t / cost.cols(), t % cost.cols()};
      break;
    }
  }
  return doc;
}

int cmd_oracle_monge(const Options& opt, std::ostream& out) {
  const CostMatrix cost = io::read_cost_csv(opt.cost);
  const auto start = Clock::now();
  const double value = oracle::brute_force_monge(cost);
  const double ms = elapsed_ms(start);
  if (opt.check) {
    const double solved = solve_monge(cost, opt.mode()).value;
    expect(solved == value, "sweep solver gives " + show(solved));
  }
  io::ReportDocument doc = oracle_report(cost, value);
  doc.wall_time_ms = ms;
  emit(doc, opt, out);
  return kExitOk;
}

int cmd_oracle_kantorovich(const Options& opt, std::ostream& out) {
  const CostMatrix cost = io::read_cost_csv(opt.cost);
  const Marginals marginals = load_marginals(opt, cost);
  const auto start = Clock::now();
  const double value = oracle::threshold_scan(cost, marginals);
  const double ms = elapsed_ms(start);
  if (opt.check) {
    const double solved = solve_kantorovich(cost, marginals, opt.mode()).value;
    expect(solved == value, "sweep solver gives " + show(solved));
  }
  io::ReportDocument doc = oracle_report(cost, value);
  doc.wall_time_ms = ms;
  emit(doc, opt, out);
  return kExitOk;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2;
}

int cmd_bench(const Options& opt, std::ostream& out) {
  if (opt.sizes.empty() || opt.trials == 0) {
    throw ProblemError(ErrorKind::ParseError, "bench needs --sizes and a positive --trials");
  }
  std::mt19937_64 rng(opt.seed);
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (std::size_t n : opt.sizes) {
    if (n == 0) throw ProblemError(ErrorKind::DimensionMismatch, "sizes must be positive");
    std::vector<double> monge_ms;
    std::vector<double> kanto_ms;
    std::vector<double> values;
    for (std::size_t trial = 0; trial < opt.trials; ++trial) {
      const CostMatrix cost = random::uniform_costs(n, n, rng);
      const Marginals marginals = uniform_marginals(cost);
      auto start = Clock::now();
      const double monge = solve_monge(cost, opt.mode()).value;
      monge_ms.push_back(elapsed_ms(start));
      start = Clock::now();
      const double kanto = solve_kantorovich(cost, marginals, opt.mode()).value;
      kanto_ms.push_back(elapsed_ms(start));
      if (opt.check) expect(monge == kanto, "solvers disagree on a size " + std::to_string(n) + " instance");
      values.push_back(monge);
    }
    nlohmann::ordered_json row;
    row["size"] = n;
    row["monge_median_ms"] = median(monge_ms);
    row["kantorovich_median_ms"] = median(kanto_ms);
    row["values"] = values;
    results.push_back(std::move(row));
  }

  if (opt.format == "text") {
    out << "size  monge_median_ms  kantorovich_median_ms\n";
    for (const auto& row : results) {
      out << row["size"].get<std::size_t>() << "  " << row["monge_median_ms"].get<double>()
          << "  " << row["kantorovich_median_ms"].get<double>() << '\n';
    }
  } else {
    nlohmann::ordered_json doc;
    doc["kind"] = "bench";
    doc["seed"] = opt.seed;
    doc["trials"] = opt.trials;
    doc["results"] = std::move(results);
    out << doc.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact solvers for bottleneck (infinity) optimal transport", "infot"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--per-edge", opt.per_edge,
               "Check feasibility after every admitted edge instead of once per cost value");
  app.add_flag("--check", opt.check, "Cross-check the result; exit 3 on mismatch");

  auto* monge = app.add_subcommand("monge", "Bottleneck assignment on a square cost matrix");
  monge->add_option("--cost", opt.cost, "Cost matrix CSV")->required();

  auto* kanto = app.add_subcommand("kantorovich", "Bottleneck transport with weights");
  kanto->add_option("--cost", opt.cost, "Cost matrix CSV")->required();
  kanto->add_option("--a", opt.a, "Source weights");
  kanto->add_option("--b", opt.b, "Target weights");

  auto* relaxed = app.add_subcommand("relaxed", "Relaxed minimax problem over doubly stochastic plans");
  relaxed->add_option("--cost", opt.cost, "Cost matrix CSV")->required();
  relaxed->add_option("--tol", opt.tol, "Absolute bisection tolerance");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference solvers");
  oracle_cmd->require_subcommand(1);
  auto* oracle_monge = oracle_cmd->add_subcommand("monge", "Enumerate all permutations");
  oracle_monge->add_option("--cost", opt.cost, "Cost matrix CSV")->required();
  auto* oracle_kanto = oracle_cmd->add_subcommand("kantorovich", "Threshold scan");
  oracle_kanto->add_option("--cost", opt.cost, "Cost matrix CSV")->required();
  oracle_kanto->add_option("--a", opt.a, "Source weights");
  oracle_kanto->add_option("--b", opt.b, "Target weights");

  auto* bench = app.add_subcommand("bench", "Time both sweeps on random instances");
  bench->add_option("--sizes", opt.sizes, "Comma-separated sizes")->delimiter(',')->required();
  bench->add_option("--trials", opt.trials, "Trials per size");
  bench->add_option("--seed", opt.seed, "Generator seed");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    if (monge->parsed()) return cmd_monge(opt, out);
    if (kanto->parsed()) return cmd_kantorovich(opt, out);
    if (relaxed->parsed()) return cmd_relaxed(opt, out);
    if (oracle_monge->parsed()) return cmd_oracle_monge(opt, out);
    if (oracle_kanto->parsed()) return cmd_oracle_kantorovich(opt, out);
    if (bench->parsed()) return cmd_bench(opt, out);
  } catch (const ProblemError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const CheckFailure& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInvalidInput;
}

}  // namespace infot::cli
