#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace infot::detail {

// Blocking-flow max flow over adjacency lists. Arcs may be added between
// runs; each run() continues from the current flow. With a floating-point
// Cap, residuals at or below `tolerance` count as saturated.
template <typename Cap>
class Dinic {
 public:
  explicit Dinic(std::size_t nodes, Cap tolerance = Cap{})
      : adjacency_(nodes), level_(nodes), cursor_(nodes), tolerance_(tolerance) {}

  std::size_t add_arc(std::size_t from, std::size_t to, Cap capacity) {
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, capacity, Cap{}});
    arcs_.push_back({from, Cap{}, Cap{}});
    adjacency_[from].push_back(id);
    adjacency_[to].push_back(id + 1);
    return id;
  }

  Cap run(std::size_t source, std::size_t sink) {
    Cap total{};
    while (build_levels(source, sink)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (true) {
        const Cap pushed = push(source, sink, std::numeric_limits<Cap>::max());
        if (!(pushed > tolerance_)) break;
        total += pushed;
      }
    }
    return total;
  }

  Cap flow(std::size_t arc) const { return arcs_[arc].flow; }
  Cap capacity(std::size_t arc) const { return arcs_[arc].capacity; }
  std::size_t head(std::size_t arc) const { return arcs_[arc].to; }
  std::size_t tail(std::size_t arc) const { return arcs_[arc ^ 1].to; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::size_t node_count() const noexcept { return adjacency_.size(); }
  const std::vector<std::size_t>& out_arcs(std::size_t node) const {
    return adjacency_[node];
  }

 private:
  struct Arc {
    std::size_t to;
    Cap capacity;
    Cap flow;
  };

  Cap residual(std::size_t arc) const {
    return arcs_[arc].capacity - arcs_[arc].flow;
  }

  bool build_levels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), kUnreached);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t id : adjacency_[u]) {
        const std::size_t v = arcs_[id].to;
        if (level_[v] == kUnreached && residual(id) > tolerance_) {
          level_[v] = level_[u] + 1;
          queue.push(v);
        }
      }
    }
    return level_[sink] != kUnreached;
  }

  Cap push(std::size_t u, std::size_t sink, Cap limit) {
    if (u == sink) return limit;
    for (std::size_t& i = cursor_[u]; i < adjacency_[u].size(); ++i) {
      const std::size_t id = adjacency_[u][i];
      const std::size_t v = arcs_[id].to;
      if (level_[v] != level_[u] + 1 || !(residual(id) > tolerance_)) continue;
      const Cap pushed = push(v, sink, std::min(limit, residual(id)));
      if (pushed > tolerance_) {
        arcs_[id].flow += pushed;
        arcs_[id ^ 1].flow -= pushed;
        return pushed;
      }
    }
    return Cap{};
  }

  static constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> level_;
  std::vector<std::size_t> cursor_;
  Cap tolerance_;
};

}  // namespace infot::detail
