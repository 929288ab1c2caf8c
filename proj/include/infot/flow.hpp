#pragma once

#include "infot/core.hpp"
#include "infot/detail/dinic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace infot {

struct FlowArc {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t capacity = 0;
};

/// Transport feasibility network: source -> row i with capacity D*a_i,
/// row i -> column j with an unbounded capacity for each admitted edge,
/// column j -> sink with capacity D*b_j.
///
/// Node ids: source 0, rows 1..n, columns n+1..n+m, sink n+m+1.
struct FlowNetwork {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Capacity used for row -> column arcs; strictly above the total supply.
  std::int64_t unbounded = 0;
  std::vector<FlowArc> arcs;

  std::size_t source() const noexcept { return 0; }
  std::size_t sink() const noexcept { return rows + cols + 1; }
  std::size_t row_node(std::size_t i) const noexcept { return 1 + i; }
  std::size_t col_node(std::size_t j) const noexcept { return 1 + rows + j; }
  std::size_t node_count() const noexcept { return rows + cols + 2; }

  static FlowNetwork transport(const SupportMask& support,
                               const Marginals& marginals);
};

struct FlowResult {
  std::int64_t value = 0;
  /// Flow on each arc of the network, in network order.
  std::vector<std::int64_t> arc_flow;
};

FlowResult max_flow(const FlowNetwork& net);

/// A coupling with the given marginals supported inside `support`, if any.
std::optional<Coupling> check_coup(const SupportMask& support,
                                   const Marginals& marginals);

/// Transport network whose admitted edge set only grows; keeps a maximum
/// flow between calls so each feasibility query only searches for new
/// augmenting paths. Copyable, which is how the sweep snapshots it.
class IncrementalTransport {
 public:
  explicit IncrementalTransport(const Marginals& marginals);

  void add_edge(Edge e);
  /// Augments to a maximum flow and reports whether it saturates the supply.
  bool feasible();
  std::int64_t flow_value() const noexcept { return value_; }
  /// Current flow divided by D. Meaningful once feasible() returned true.
  Coupling coupling() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::int64_t scale_;
  std::int64_t total_;
  detail::Dinic<std::int64_t> dinic_;
  std::vector<std::pair<Edge, std::size_t>> edge_arcs_;
  std::int64_t value_ = 0;
};

}  // namespace infot
