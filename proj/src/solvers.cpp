#include "infot/solvers.hpp"

#include "infot/detail/dinic.hpp"
#include "infot/flow.hpp"
#include "infot/matching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace infot {

namespace {

// Feasibility oracle for the Monge sweep: a perfect matching exists.
struct PermutationCheck {
  IncrementalMatcher matcher;

  void add_edge(Edge e) { matcher.add_edge(e); }
  bool feasible() {
    matcher.augment();
    return matcher.matching().perfect();
  }
};

// Feasibility oracle for the Kantorovich sweep: a saturating flow exists.
struct CouplingCheck {
  IncrementalTransport transport;

  void add_edge(Edge e) { transport.add_edge(e); }
  bool feasible() { return transport.feasible(); }
};

struct SweepStop {
  std::size_t k = 0;
  Edge witness;
};

// Admits edges in sorted order until `check` first reports feasibility.
// Both modes stop at the same k: the batched mode only skips checks inside
// value groups that turn out infeasible as a whole.
template <typename Check>
SweepStop sweep(const CostMatrix& cost, const SortedEdgeList& sorted,
                Check& check, SweepMode mode) {
  if (mode == SweepMode::PerEdge) {
    if (check.feasible()) {
      throw std::logic_error("empty support reported feasible");
    }
    for (std::size_t t = 0; t < sorted.size(); ++t) {
      check.add_edge(sorted[t]);
      if (check.feasible()) return {t + 1, sorted[t]};
    }
  } else {
    std::size_t t = 0;
    while (t < sorted.size()) {
      const std::size_t end = sorted.tie_group_end(cost, t);
      if (end - t > 1) {
        Check before = check;
        for (std::size_t s = t; s < end; ++s) check.add_edge(sorted[s]);
        if (!check.feasible()) {
          t = end;
          continue;
        }
        check = std::move(before);
      }
      for (; t < end; ++t) {
        check.add_edge(sorted[t]);
        if (check.feasible()) return {t + 1, sorted[t]};
      }
    }
  }
  throw std::logic_error("complete support reported infeasible");
}

void require_fit(const CostMatrix& cost, const Marginals& marginals) {
  if (marginals.a().size() != cost.rows() || marginals.b().size() != cost.cols()) {
    throw ProblemError(ErrorKind::DimensionMismatch,
                       "marginals do not match the cost matrix shape");
  }
}

}  // namespace

SolveReport solve_monge(const CostMatrix& cost, SweepMode mode) {
  if (!cost.square()) {
    throw ProblemError(ErrorKind::NotSquare,
                       "Monge problem needs a square cost matrix, got " +
                           std::to_string(cost.rows()) + "x" +
                           std::to_string(cost.cols()));
  }
  const SortedEdgeList sorted = argsort_edges(cost);
  PermutationCheck check{IncrementalMatcher(cost.rows(), cost.cols())};
  const SweepStop stop = sweep(cost, sorted, check, mode);

  SolveReport report;
  report.value = cost.at(stop.witness);
  report.witness_edge = stop.witness;
  report.plan = Permutation(check.matcher.matching().row_mate);
  report.iterations = stop.k;
  return report;
}

SolveReport solve_kantorovich(const CostMatrix& cost, const Marginals& marginals,
                              SweepMode mode) {
  require_fit(cost, marginals);
  const SortedEdgeList sorted = argsort_edges(cost);
  CouplingCheck check{IncrementalTransport(marginals)};
  const SweepStop stop = sweep(cost, sorted, check, mode);

  SolveReport report;
  report.value = cost.at(stop.witness);
  report.witness_edge = stop.witness;
  report.plan = check.transport.coupling();
  report.iterations = stop.k;
  return report;
}

SolveReport solve_bisect(const CostMatrix& cost, const Marginals& marginals) {
  require_fit(cost, marginals);
  std::vector<double> values(cost.entries().begin(), cost.entries().end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Invariant: values[hi] is feasible (the full support always is), and
  // every value below values[lo] is infeasible.
  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  std::size_t probes = 0;
  std::optional<Coupling> best;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    ++probes;
    if (auto coupling = check_coup(SupportMask::at_most(cost, values[mid]), marginals)) {
      hi = mid;
      best = std::move(coupling);
    } else {
      lo = mid + 1;
    }
  }
  if (!best) {
    ++probes;
    best = check_coup(SupportMask::at_most(cost, values[hi]), marginals);
    if (!best) throw std::logic_error("complete support reported infeasible");
  }

  SolveReport report;
  report.value = values[hi];
  for (const auto& e : best->entries()) {
    if (cost(e.row, e.col) == report.value) {
      report.witness_edge = {e.row, e.col};
      break;
    }
  }
  report.plan = std::move(*best);
  report.iterations = probes;
  return report;
}

// ---------------------------------------------------------------------------
// Relaxed problem

namespace {

constexpr double kFlowTolerance = 1e-12;

}  // namespace

std::optional<std::vector<double>> relaxed_probe(const CostMatrix& cost, double t) {
  const std::size_t n = cost.rows();
  const std::size_t source = 0;
  const std::size_t sink = 2 * n + 1;
  detail::Dinic<double> dinic(2 * n + 2, kFlowTolerance);
  for (std::size_t i = 0; i < n; ++i) {
    dinic.add_arc(source, 1 + i, 1.0);
    dinic.add_arc(1 + n + i, sink, 1.0);
  }
  std::vector<std::size_t> arc_of(n * n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double c = cost(i, j);
      // A cap of 1 never binds: every row ships exactly 1.
      const double cap = c == 0.0 ? 1.0 : std::min(1.0, t / c);
      if (cap > 0.0) arc_of[i * n + j] = dinic.add_arc(1 + i, 1 + n + j, cap);
    }
  }
  const double value = dinic.run(source, sink);
  if (value < static_cast<double>(n) - kFlowTolerance) return std::nullopt;

  std::vector<double> plan(n * n, 0.0);
  for (std::size_t cell = 0; cell < plan.size(); ++cell) {
    if (arc_of[cell] != static_cast<std::size_t>(-1)) {
      plan[cell] = std::max(0.0, dinic.flow(arc_of[cell]));
    }
  }
  return plan;
}

RelaxedSolution solve_relaxed(const CostMatrix& cost, std::optional<double> eps) {
  if (!cost.square()) {
    throw ProblemError(ErrorKind::NotSquare,
                       "relaxed problem needs a square cost matrix, got " +
                           std::to_string(cost.rows()) + "x" +
                           std::to_string(cost.cols()));
  }
  if (cost.min_entry() < 0.0) {
    throw ProblemError(ErrorKind::NegativeCost,
                       "relaxed problem needs nonnegative costs");
  }
  const double scale = cost.max_entry();
  const double tol = eps.value_or(1e-9 * scale);
  if (eps && !(tol > 0.0 && std::isfinite(tol))) {
    throw ProblemError(ErrorKind::InvalidTolerance,
                       "tolerance must be positive and finite");
  }

  RelaxedSolution out;
  out.n = cost.rows();
  out.probes = 1;
  if (auto plan = relaxed_probe(cost, 0.0)) {
    out.value = 0.0;
    out.plan = std::move(*plan);
    return out;
  }

  // A permutation matrix at the bottleneck-assignment level is feasible.
  double lo = 0.0;
  double hi = solve_monge(cost).value;
  std::vector<double> plan = *relaxed_probe(cost, hi);
  ++out.probes;
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    ++out.probes;
    if (auto p = relaxed_probe(cost, mid)) {
      hi = mid;
      plan = std::move(*p);
    } else {
      lo = mid;
    }
  }
  out.value = hi;
  out.plan = std::move(plan);
  out.tolerance = hi - lo;
  return out;
}

}  // namespace infot
