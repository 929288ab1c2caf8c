#pragma once

#include "infot/core.hpp"

#include <optional>
#include <vector>

namespace infot {

/// A set of row/column disjoint admitted edges.
struct Matching {
  static constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

  /// row_mate[i] is the column matched to row i, or kUnmatched.
  std::vector<std::size_t> row_mate;
  /// col_mate[j] is the row matched to column j, or kUnmatched.
  std::vector<std::size_t> col_mate;
  std::size_t size = 0;

  Matching() = default;
  Matching(std::size_t rows, std::size_t cols)
      : row_mate(rows, kUnmatched), col_mate(cols, kUnmatched) {}

  /// Matched pairs in increasing row order.
  std::vector<Edge> pairs() const;
  bool perfect() const noexcept {
    return size == row_mate.size() && size == col_mate.size();
  }
};

/// Maximum-cardinality matching (Hopcroft-Karp) on the admitted edges.
Matching max_matching(const SupportMask& support);

/// A permutation whose graph lies inside `support`, if any exists.
/// Throws NotSquare for non-square supports.
std::optional<Permutation> check_perm(const SupportMask& support);

/// Given a maximum matching of `support` minus `new_edge`, returns a maximum
/// matching of `support` (which must already admit `new_edge`).
Matching extend_matching(const SupportMask& support, Matching current,
                         Edge new_edge);

/// Bipartite graph that only grows, together with a matching that is kept
/// maximum after every call to augment(). Used by the Monge sweep.
class IncrementalMatcher {
 public:
  IncrementalMatcher(std::size_t rows, std::size_t cols);
  IncrementalMatcher(const SupportMask& support, Matching current);

  void add_edge(Edge e);
  /// Runs single-path augmentations until none exists. Each search is
  /// O(V + E); the matching grows by the number of successful searches.
  void augment();

  const Matching& matching() const noexcept { return matching_; }
  std::size_t rows() const noexcept { return adjacency_.size(); }
  std::size_t cols() const noexcept { return matching_.col_mate.size(); }

 private:
  bool augment_once();

  std::vector<std::vector<std::size_t>> adjacency_;
  Matching matching_;
  std::vector<std::size_t> visit_stamp_;
  std::size_t stamp_ = 0;
};

}  // namespace infot
