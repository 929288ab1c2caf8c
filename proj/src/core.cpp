#include "infot/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace infot {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::MassMismatch: return "MassMismatch";
    case ErrorKind::ScaleOverflow: return "ScaleOverflow";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NegativeCost: return "NegativeCost";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

ProblemError::ProblemError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

// ---------------------------------------------------------------------------
// CostMatrix

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols,
                       std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw ProblemError(ErrorKind::DimensionMismatch,
                       "cost matrix must have at least one row and column");
  }
  if (entries_.size() != rows_ * cols_) {
    throw ProblemError(ErrorKind::DimensionMismatch,
                       "expected " + std::to_string(rows_ * cols_) +
                           " cost entries, got " +
                           std::to_string(entries_.size()));
  }
  for (std::size_t t = 0; t < entries_.size(); ++t) {
    if (!std::isfinite(entries_[t])) {
      throw ProblemError(ErrorKind::NonFinite,
                         "cost entry (" + std::to_string(t / cols_) + ", " +
                             std::to_string(t % cols_) + ") is not finite");
    }
  }
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw ProblemError(ErrorKind::DimensionMismatch, "cost matrix is empty");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> entries;
  entries.reserve(rows.size() * cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw ProblemError(ErrorKind::DimensionMismatch,
                         "row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(cols));
    }
    entries.insert(entries.end(), rows[i].begin(), rows[i].end());
  }
  return CostMatrix(rows.size(), cols, std::move(entries));
}

double CostMatrix::max_entry() const noexcept {
  return *std::max_element(entries_.begin(), entries_.end());
}

double CostMatrix::min_entry() const noexcept {
  return *std::min_element(entries_.begin(), entries_.end());
}

// ---------------------------------------------------------------------------
// Rational text

namespace {

BigInt parse_digits(std::string_view digits) {
  BigInt value = 0;
  for (char c : digits) value = value * 10 + (c - '0');
  return value;
}

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw ProblemError(ErrorKind::ParseError,
                     "not an exact decimal or fraction: '" + std::string(text) +
                         "'");
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || !all_digits(s)) bad_number(whole);
  BigInt v = parse_digits(s);
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (text.empty()) bad_number(whole);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(text.substr(0, slash)), whole);
    BigInt den = parse_integer(trim(text.substr(slash + 1)), whole);
    if (den == 0) bad_number(whole);
    return Rational(num, den);
  }

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string_view mantissa = text;
  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (exp_text.empty() || exp_text.size() > 4 || !all_digits(exp_text)) {
      bad_number(whole);
    }
    exponent = std::stoll(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }

  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad_number(whole);
  if (!all_digits(int_part) || !all_digits(frac_part)) bad_number(whole);

  BigInt num = parse_digits(int_part);
  for (char c : frac_part) num = num * 10 + (c - '0');
  exponent -= static_cast<long long>(frac_part.size());

  BigInt den = 1;
  if (exponent >= 0) {
    num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent));
  } else {
    den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-exponent));
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt rest = den;
  unsigned twos = 0;
  unsigned fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  const unsigned places = std::max(twos, fives);
  if (places == 0) return num.str();
  BigInt scaled = num * (boost::multiprecision::pow(BigInt(10), places) / den);
  const bool negative = scaled < 0;
  std::string digits = (negative ? BigInt(-scaled) : scaled).str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

// ---------------------------------------------------------------------------
// Marginals

Rational Marginals::total() const {
  Rational sum = 0;
  for (const auto& w : a_) sum += w;
  return sum;
}

bool Marginals::uniform_square() const {
  if (a_.size() != b_.size()) return false;
  const auto all_equal = [](const std::vector<Rational>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) ==
           v.end();
  };
  return all_equal(a_) && all_equal(b_);
}

Marginals validate_problem(const CostMatrix& cost, std::vector<Rational> a,
                           std::vector<Rational> b, std::int64_t scale_cap) {
  for (double c : cost.entries()) {
    if (!std::isfinite(c)) {
      throw ProblemError(ErrorKind::NonFinite, "cost matrix has a non-finite entry");
    }
  }
  if (a.size() != cost.rows() || b.size() != cost.cols()) {
    throw ProblemError(ErrorKind::DimensionMismatch,
                       "weights have lengths " + std::to_string(a.size()) +
                           " and " + std::to_string(b.size()) +
                           " but the cost matrix is " +
                           std::to_string(cost.rows()) + "x" +
                           std::to_string(cost.cols()));
  }

  Rational sum_a = 0;
  Rational sum_b = 0;
  BigInt scale = 1;
  const auto visit = [&](const std::vector<Rational>& w, char name,
                         Rational& sum) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] <= 0) {
        throw ProblemError(ErrorKind::NonPositiveWeight,
                           std::string(1, name) + "[" + std::to_string(i) +
                               "] = " + format_rational(w[i]) +
                               " is not positive");
      }
      sum += w[i];
      scale = boost::multiprecision::lcm(
          scale, BigInt(boost::multiprecision::denominator(w[i])));
    }
  };
  visit(a, 'a', sum_a);
  visit(b, 'b', sum_b);

  if (sum_a != sum_b) {
    throw ProblemError(ErrorKind::MassMismatch,
                       "sum(a) = " + format_rational(sum_a) +
                           " but sum(b) = " + format_rational(sum_b));
  }
  if (scale > scale_cap) {
    throw ProblemError(ErrorKind::ScaleOverflow,
                       "common denominator " + scale.str() +
                           " exceeds the cap " + std::to_string(scale_cap));
  }
  // The flow module needs headroom above the scaled total for its
  // never-binding arc capacity.
  const BigInt scaled_total =
      boost::multiprecision::numerator(sum_a * Rational(scale));
  if (scaled_total > std::numeric_limits<std::int64_t>::max() / 4) {
    throw ProblemError(ErrorKind::ScaleOverflow,
                       "scaled total mass " + scaled_total.str() +
                           " does not fit in 64-bit arithmetic");
  }

  Marginals m;
  m.scale_ = static_cast<std::int64_t>(scale);
  m.scaled_total_ = static_cast<std::int64_t>(scaled_total);
  const auto scaled = [&](const std::vector<Rational>& w) {
    std::vector<std::int64_t> out;
    out.reserve(w.size());
    for (const auto& x : w) {
      out.push_back(static_cast<std::int64_t>(
          boost::multiprecision::numerator(x * Rational(scale))));
    }
    return out;
  };
  m.scaled_a_ = scaled(a);
  m.scaled_b_ = scaled(b);
  m.a_ = std::move(a);
  m.b_ = std::move(b);
  return m;
}

Marginals validate_problem(const CostMatrix& cost,
                           const std::vector<std::string>& a,
                           const std::vector<std::string>& b,
                           std::int64_t scale_cap) {
  std::vector<Rational> qa;
  std::vector<Rational> qb;
  qa.reserve(a.size());
  qb.reserve(b.size());
  for (const auto& s : a) qa.push_back(parse_rational(s));
  for (const auto& s : b) qb.push_back(parse_rational(s));
  return validate_problem(cost, std::move(qa), std::move(qb), scale_cap);
}

Marginals uniform_marginals(const CostMatrix& cost) {
  std::vector<Rational> a(cost.rows(), Rational(1, cost.rows()));
  std::vector<Rational> b(cost.cols(), Rational(1, cost.cols()));
  return validate_problem(cost, std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// Sorted edges and supports

SortedEdgeList argsort_edges(const CostMatrix& cost) {
  SortedEdgeList out;
  out.pairs_.reserve(cost.rows() * cost.cols());
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    for (std::size_t j = 0; j < cost.cols(); ++j) out.pairs_.push_back({i, j});
  }
  // Row-major generation plus a stable sort keyed on value alone gives the
  // (value, row, col) order.
  std::stable_sort(out.pairs_.begin(), out.pairs_.end(),
                   [&](const Edge& x, const Edge& y) {
                     return cost.at(x) < cost.at(y);
                   });
  return out;
}

std::size_t SortedEdgeList::tie_group_end(const CostMatrix& cost,
                                          std::size_t t) const {
  const double v = cost.at(pairs_[t]);
  std::size_t end = t + 1;
  while (end < pairs_.size() && cost.at(pairs_[end]) == v) ++end;
  return end;
}

SupportMask::SupportMask(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

SupportMask SupportMask::prefix(std::size_t rows, std::size_t cols,
                                const SortedEdgeList& sorted,
                                std::size_t count) {
  SupportMask mask(rows, cols);
  for (std::size_t t = 0; t < count && t < sorted.size(); ++t) mask.admit(sorted[t]);
  return mask;
}

SupportMask SupportMask::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  SupportMask mask(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw ProblemError(ErrorKind::DimensionMismatch, "ragged support rows");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] != 0) mask.admit(i, j);
    }
  }
  return mask;
}

SupportMask SupportMask::at_most(const CostMatrix& cost, double threshold) {
  SupportMask mask(cost.rows(), cost.cols());
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      if (cost(i, j) <= threshold) mask.admit(i, j);
    }
  }
  return mask;
}

std::size_t SupportMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

// ---------------------------------------------------------------------------
// Plans

Permutation::Permutation(std::vector<std::size_t> sigma) : sigma_(std::move(sigma)) {
  std::vector<bool> seen(sigma_.size(), false);
  for (std::size_t c : sigma_) {
    if (c >= sigma_.size() || seen[c]) {
      throw ProblemError(ErrorKind::DimensionMismatch,
                         "permutation is not a bijection");
    }
    seen[c] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  return Permutation(std::move(sigma));
}

Coupling::Coupling(std::vector<CouplingEntry> entries) {
  std::erase_if(entries, [](const CouplingEntry& e) { return e.mass == 0; });
  std::sort(entries.begin(), entries.end(),
            [](const CouplingEntry& x, const CouplingEntry& y) {
              return std::tie(x.row, x.col) < std::tie(y.row, y.col);
            });
  entries_ = std::move(entries);
}

std::vector<Rational> Coupling::row_sums(std::size_t rows) const {
  std::vector<Rational> sums(rows, Rational(0));
  for (const auto& e : entries_) {
    if (e.row < rows) sums[e.row] += e.mass;
  }
  return sums;
}

std::vector<Rational> Coupling::col_sums(std::size_t cols) const {
  std::vector<Rational> sums(cols, Rational(0));
  for (const auto& e : entries_) {
    if (e.col < cols) sums[e.col] += e.mass;
  }
  return sums;
}

bool Coupling::matches(const Marginals& marginals) const {
  const std::size_t n = marginals.a().size();
  const std::size_t m = marginals.b().size();
  for (const auto& e : entries_) {
    if (e.row >= n || e.col >= m || e.mass <= 0) return false;
  }
  return row_sums(n) == marginals.a() && col_sums(m) == marginals.b();
}

bool Coupling::contains(Edge e) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const CouplingEntry& x) {
    return x.row == e.row && x.col == e.col;
  });
}

std::vector<Edge> plan_support(const Plan& plan) {
  std::vector<Edge> support;
  if (const auto* perm = std::get_if<Permutation>(&plan)) {
    for (std::size_t i = 0; i < perm->size(); ++i) support.push_back({i, (*perm)[i]});
  } else {
    for (const auto& e : std::get<Coupling>(plan).entries()) {
      support.push_back({e.row, e.col});
    }
  }
  return support;
}

double plan_max_cost(const CostMatrix& cost, const Plan& plan) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Edge& e : plan_support(plan)) best = std::max(best, cost.at(e));
  return best;
}

}  // namespace infot
