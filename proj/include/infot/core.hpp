#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace infot {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class ErrorKind {
  NonFinite,
  DimensionMismatch,
  NonPositiveWeight,
  MassMismatch,
  ScaleOverflow,
  NotSquare,
  NegativeCost,
  TooLarge,
  InvalidTolerance,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Raised for every rejected input. `kind()` is what the command line
/// reports on standard error.
class ProblemError : public std::runtime_error {
 public:
  ProblemError(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct Edge {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Dense row-major matrix of finite transport costs.
class CostMatrix {
 public:
  /// Throws NonFinite on NaN/inf entries and DimensionMismatch when the
  /// entry count is not rows * cols or either dimension is zero.
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * cols_ + j];
  }
  double at(Edge e) const noexcept { return (*this)(e.row, e.col); }
  std::span<const double> entries() const noexcept { return entries_; }
  double max_entry() const noexcept;
  double min_entry() const noexcept;

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

inline constexpr std::int64_t kDefaultScaleCap = 1'000'000'000'000;  // 1e12

/// Source and target weights as exact rationals together with the common
/// integer scale D that makes every weight integral.
class Marginals {
 public:
  const std::vector<Rational>& a() const noexcept { return a_; }
  const std::vector<Rational>& b() const noexcept { return b_; }
  std::int64_t scale() const noexcept { return scale_; }
  /// D * a_i and D * b_j.
  const std::vector<std::int64_t>& scaled_a() const noexcept { return scaled_a_; }
  const std::vector<std::int64_t>& scaled_b() const noexcept { return scaled_b_; }
  /// Sum of D * a_i (equal to the sum of D * b_j).
  std::int64_t scaled_total() const noexcept { return scaled_total_; }
  Rational total() const;

  bool uniform_square() const;

 private:
  friend Marginals validate_problem(const CostMatrix&, std::vector<Rational>,
                                    std::vector<Rational>, std::int64_t);
  Marginals() = default;

  std::vector<Rational> a_;
  std::vector<Rational> b_;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> scaled_a_;
  std::vector<std::int64_t> scaled_b_;
  std::int64_t scaled_total_ = 0;
};

/// Parses "3", "-2", "0.25", ".5", "1.5e-3" or "7/20" into an exact rational.
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Shortest exact text for q: a plain decimal when the denominator has no
/// prime factors other than 2 and 5, otherwise "p/q".
std::string format_rational(const Rational& q);

Marginals validate_problem(const CostMatrix& cost, std::vector<Rational> a,
                           std::vector<Rational> b,
                           std::int64_t scale_cap = kDefaultScaleCap);

Marginals validate_problem(const CostMatrix& cost,
                           const std::vector<std::string>& a,
                           const std::vector<std::string>& b,
                           std::int64_t scale_cap = kDefaultScaleCap);

/// Weights 1/n for every row and 1/m for every column.
Marginals uniform_marginals(const CostMatrix& cost);

/// All n*m index pairs ordered by (value, row, col).
class SortedEdgeList {
 public:
  const std::vector<Edge>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  const Edge& operator[](std::size_t t) const { return pairs_[t]; }

  /// One past the last position whose value equals that of position t.
  std::size_t tie_group_end(const CostMatrix& cost, std::size_t t) const;

 private:
  friend SortedEdgeList argsort_edges(const CostMatrix&);
  std::vector<Edge> pairs_;
};

SortedEdgeList argsort_edges(const CostMatrix& cost);

/// n x m set of admitted edges.
class SupportMask {
 public:
  SupportMask(std::size_t rows, std::size_t cols);

  /// Mask of the first `count` edges of `sorted`.
  static SupportMask prefix(std::size_t rows, std::size_t cols,
                            const SortedEdgeList& sorted, std::size_t count);
  static SupportMask from_rows(const std::vector<std::vector<int>>& rows);
  /// Edges with cost <= threshold.
  static SupportMask at_most(const CostMatrix& cost, double threshold);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool admitted(std::size_t i, std::size_t j) const noexcept {
    return bits_[i * cols_ + j] != 0;
  }
  void admit(std::size_t i, std::size_t j) { bits_[i * cols_ + j] = 1; }
  void admit(Edge e) { admit(e.row, e.col); }
  std::size_t count() const noexcept;

  friend bool operator==(const SupportMask&, const SupportMask&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> bits_;
};

/// sigma[i] is the column assigned to row i.
class Permutation {
 public:
  /// Throws DimensionMismatch unless sigma is a bijection of {0..n-1}.
  explicit Permutation(std::vector<std::size_t> sigma);
  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return sigma_.size(); }
  std::size_t operator[](std::size_t i) const { return sigma_[i]; }
  const std::vector<std::size_t>& sigma() const noexcept { return sigma_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> sigma_;
};

struct CouplingEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Rational mass;

  friend bool operator==(const CouplingEntry&, const CouplingEntry&) = default;
};

/// Sparse transport plan. Entries are sorted by (row, col); zero masses are
/// never stored.
class Coupling {
 public:
  Coupling() = default;
  explicit Coupling(std::vector<CouplingEntry> entries);

  const std::vector<CouplingEntry>& entries() const noexcept { return entries_; }
  std::vector<Rational> row_sums(std::size_t rows) const;
  std::vector<Rational> col_sums(std::size_t cols) const;
  /// Row and column sums equal the marginals exactly.
  bool matches(const Marginals& marginals) const;
  bool contains(Edge e) const;

  friend bool operator==(const Coupling&, const Coupling&) = default;

 private:
  std::vector<CouplingEntry> entries_;
};

using Plan = std::variant<Coupling, Permutation>;

struct SolveReport {
  double value = 0.0;
  Edge witness_edge;
  Plan plan;
  /// Position k (1-based) of the witness in the sorted edge list for the
  /// sweep solvers; number of feasibility probes for bisection.
  std::size_t iterations = 0;
};

/// Support of a plan as a list of edges.
std::vector<Edge> plan_support(const Plan& plan);

/// Largest cost over the plan's support.
double plan_max_cost(const CostMatrix& cost, const Plan& plan);

}  // namespace infot
