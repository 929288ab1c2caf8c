#include "infot/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>

namespace infot::oracle {

double brute_force_monge(const CostMatrix& cost) {
  if (!cost.square()) {
    throw ProblemError(ErrorKind::NotSquare, "brute force needs a square matrix");
  }
  const std::size_t n = cost.rows();
  if (n > kMaxMongeSize) {
    throw ProblemError(ErrorKind::TooLarge,
                       "brute force enumeration is limited to n <= 9");
  }
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, cost(i, sigma[i]));
    best = std::min(best, worst);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

bool independent_feasibility(const SupportMask& support, const Marginals& marginals) {
  const std::size_t n = support.rows();
  const std::size_t m = support.cols();
  if (n > kMaxTransportSide || m > kMaxTransportSide) {
    throw ProblemError(ErrorKind::TooLarge,
                       "subset enumeration is limited to 20 rows and columns");
  }
  if (marginals.a().size() != n || marginals.b().size() != m) {
    throw ProblemError(ErrorKind::DimensionMismatch,
                       "support and marginals have different shapes");
  }

  // Common denominator computed here rather than taken from Marginals.
  BigInt denom = 1;
  for (const auto& w : marginals.a()) denom = boost::multiprecision::lcm(denom, BigInt(boost::multiprecision::denominator(w)));
  for (const auto& w : marginals.b()) denom = boost::multiprecision::lcm(denom, BigInt(boost::multiprecision::denominator(w)));
  const auto integral = [&](const Rational& w) {
    return BigInt(boost::multiprecision::numerator(w) * (denom / boost::multiprecision::denominator(w)));
  };

  std::vector<std::uint32_t> neighbours(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (support.admitted(i, j)) neighbours[i] |= std::uint32_t{1} << j;
    }
  }

  // Column-subset masses, indexed by bitmask.
  std::vector<BigInt> col_mass(std::size_t{1} << m, 0);
  for (std::size_t mask = 1; mask < col_mass.size(); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    col_mass[mask] = col_mass[mask & (mask - 1)] + integral(marginals.b()[low]);
  }

  BigInt total_b = col_mass.back();
  std::vector<BigInt> row_mass(std::size_t{1} << n, 0);
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  for (std::size_t mask = 1; mask < row_mass.size(); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::size_t rest = mask & (mask - 1);
    row_mass[mask] = row_mass[rest] + integral(marginals.a()[low]);
    reach[mask] = reach[rest] | neighbours[low];
    if (row_mass[mask] > col_mass[reach[mask]]) return false;
  }
  return row_mass.back() == total_b;
}

double threshold_scan(const CostMatrix& cost, const Marginals& marginals) {
  if (cost.rows() > kMaxTransportSide || cost.cols() > kMaxTransportSide) {
    throw ProblemError(ErrorKind::TooLarge,
                       "threshold scan is limited to 20 rows and columns");
  }
  const std::set<double> values(cost.entries().begin(), cost.entries().end());
  for (double t : values) {
    if (independent_feasibility(SupportMask::at_most(cost, t), marginals)) return t;
  }
  return *values.rbegin();
}

}  // namespace infot::oracle
