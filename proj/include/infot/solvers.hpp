#pragma once

#include "infot/core.hpp"

#include <optional>
#include <vector>

namespace infot {

enum class SweepMode {
  /// One feasibility check per distinct cost value; the final value group is
  /// then replayed edge by edge so the reported k and witness are exact.
  Batched,
  /// One feasibility check per admitted edge, starting with the empty support.
  PerEdge,
};

/// Bottleneck assignment: min over permutations of max_i C[i, sigma(i)].
/// Throws NotSquare.
SolveReport solve_monge(const CostMatrix& cost, SweepMode mode = SweepMode::Batched);

/// Bottleneck transport: min over couplings of the largest cost on the
/// coupling's support. Throws DimensionMismatch when the marginals do not
/// fit the matrix.
SolveReport solve_kantorovich(const CostMatrix& cost, const Marginals& marginals,
                              SweepMode mode = SweepMode::Batched);

/// Same optimum as solve_kantorovich, found by binary search over the
/// distinct cost values. `iterations` counts feasibility probes.
SolveReport solve_bisect(const CostMatrix& cost, const Marginals& marginals);

struct RelaxedSolution {
  /// Upper end of the final bracket; feasible.
  double value = 0.0;
  std::size_t n = 0;
  /// Dense row-major doubly stochastic witness with plan[i,j]*C[i,j] <= value.
  std::vector<double> plan;
  /// Width of the final bracket.
  double tolerance = 0.0;
  /// Feasibility probes performed.
  std::size_t probes = 0;

  double at(std::size_t i, std::size_t j) const { return plan[i * n + j]; }
};

/// min over doubly stochastic P of max_{i,j} P[i,j] * C[i,j], to within
/// `eps` (default 1e-9 times the largest entry). Requires a square C >= 0.
RelaxedSolution solve_relaxed(const CostMatrix& cost,
                              std::optional<double> eps = std::nullopt);

/// Feasibility probe of the relaxed problem at level t: returns a doubly
/// stochastic P with P[i,j] * C[i,j] <= t, if the flow finds one.
std::optional<std::vector<double>> relaxed_probe(const CostMatrix& cost, double t);

}  // namespace infot
