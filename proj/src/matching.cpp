#include "infot/matching.hpp"

#include <cassert>
#include <limits>
#include <queue>

namespace infot {

std::vector<Edge> Matching::pairs() const {
  std::vector<Edge> out;
  out.reserve(size);
  for (std::size_t i = 0; i < row_mate.size(); ++i) {
    if (row_mate[i] != kUnmatched) out.push_back({i, row_mate[i]});
  }
  return out;
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency adjacency_of(const SupportMask& support) {
  Adjacency adj(support.rows());
  for (std::size_t i = 0; i < support.rows(); ++i) {
    for (std::size_t j = 0; j < support.cols(); ++j) {
      if (support.admitted(i, j)) adj[i].push_back(j);
    }
  }
  return adj;
}

class HopcroftKarp {
 public:
  HopcroftKarp(const Adjacency& adj, std::size_t cols)
      : adj_(adj), result_(adj.size(), cols), dist_(adj.size()), next_(adj.size()) {}

  Matching run() {
    while (layer()) {
      std::fill(next_.begin(), next_.end(), 0);
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (result_.row_mate[u] == Matching::kUnmatched && descend(u)) {
          ++result_.size;
        }
      }
    }
    return std::move(result_);
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  // BFS from all free rows; true if some free column is reachable.
  bool layer() {
    std::queue<std::size_t> queue;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (result_.row_mate[u] == Matching::kUnmatched) {
        dist_[u] = 0;
        queue.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = result_.col_mate[v];
        if (w == Matching::kUnmatched) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool descend(std::size_t u) {
    for (; next_[u] < adj_[u].size(); ++next_[u]) {
      const std::size_t v = adj_[u][next_[u]];
      const std::size_t w = result_.col_mate[v];
      if (w == Matching::kUnmatched ||
          (dist_[w] == dist_[u] + 1 && descend(w))) {
        result_.row_mate[u] = v;
        result_.col_mate[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const Adjacency& adj_;
  Matching result_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> next_;
};

}  // namespace

Matching max_matching(const SupportMask& support) {
  const Adjacency adj = adjacency_of(support);
  return HopcroftKarp(adj, support.cols()).run();
}

std::optional<Permutation> check_perm(const SupportMask& support) {
  if (!support.square()) {
    throw ProblemError(ErrorKind::NotSquare,
                       "support is " + std::to_string(support.rows()) + "x" +
                           std::to_string(support.cols()));
  }
  Matching m = max_matching(support);
  if (!m.perfect()) return std::nullopt;
  return Permutation(std::move(m.row_mate));
}

Matching extend_matching(const SupportMask& support, Matching current,
                         Edge new_edge) {
  assert(support.admitted(new_edge.row, new_edge.col));
  (void)new_edge;
  IncrementalMatcher matcher(support, std::move(current));
  matcher.augment();
  return matcher.matching();
}

// ---------------------------------------------------------------------------

IncrementalMatcher::IncrementalMatcher(std::size_t rows, std::size_t cols)
    : adjacency_(rows), matching_(rows, cols), visit_stamp_(rows, 0) {}

IncrementalMatcher::IncrementalMatcher(const SupportMask& support,
                                       Matching current)
    : adjacency_(adjacency_of(support)),
      matching_(std::move(current)),
      visit_stamp_(support.rows(), 0) {
  if (matching_.row_mate.size() != support.rows() ||
      matching_.col_mate.size() != support.cols()) {
    throw ProblemError(ErrorKind::DimensionMismatch,
                       "matching does not fit the support");
  }
}

void IncrementalMatcher::add_edge(Edge e) { adjacency_[e.row].push_back(e.col); }

void IncrementalMatcher::augment() {
  while (!matching_.perfect() && augment_once()) {
  }
}

bool IncrementalMatcher::augment_once() {
  if (matching_.size == adjacency_.size() ||
      matching_.size == matching_.col_mate.size()) {
    return false;
  }
  ++stamp_;
  // Iterative Kuhn search; rows visited by a failed root are dead for the
  // remaining roots of this search.
  struct Frame {
    std::size_t row;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::size_t root = 0; root < adjacency_.size(); ++root) {
    if (matching_.row_mate[root] != Matching::kUnmatched ||
        visit_stamp_[root] == stamp_) {
      continue;
    }
    visit_stamp_[root] = stamp_;
    stack.assign(1, {root, 0});
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& nbrs = adjacency_[top.row];
      if (top.next == nbrs.size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t col = nbrs[top.next++];
      const std::size_t owner = matching_.col_mate[col];
      if (owner == Matching::kUnmatched) {
        // Flip the alternating path recorded on the stack.
        std::size_t free_col = col;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
          const std::size_t previous = matching_.row_mate[it->row];
          matching_.row_mate[it->row] = free_col;
          matching_.col_mate[free_col] = it->row;
          free_col = previous;
        }
        ++matching_.size;
        return true;
      }
      if (visit_stamp_[owner] != stamp_) {
        visit_stamp_[owner] = stamp_;
        stack.push_back({owner, 0});
      }
    }
  }
  return false;
}

}  // namespace infot
