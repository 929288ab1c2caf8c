#pragma once

// Brute-force reference solvers for verification. Nothing here shares code
// with the matching, flow or solvers modules.

#include "infot/core.hpp"

namespace infot::oracle {

inline constexpr std::size_t kMaxMongeSize = 9;
inline constexpr std::size_t kMaxTransportSide = 20;

/// Minimum over all n! permutations of the largest assigned cost.
/// Throws NotSquare, or TooLarge when n > 9.
double brute_force_monge(const CostMatrix& cost);

/// Whether some coupling with the given marginals lives inside `support`.
/// Checks the supply-demand condition a(S) <= b(N(S)) over every row subset
/// S in exact integer arithmetic. Throws TooLarge past 20 rows or columns.
bool independent_feasibility(const SupportMask& support, const Marginals& marginals);

/// Smallest distinct cost t such that {C <= t} admits a coupling.
double threshold_scan(const CostMatrix& cost, const Marginals& marginals);

}  // namespace infot::oracle
