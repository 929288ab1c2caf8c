#include "infot/flow.hpp"

namespace infot {

FlowNetwork FlowNetwork::transport(const SupportMask& support,
                                   const Marginals& marginals) {
  if (support.rows() != marginals.a().size() ||
      support.cols() != marginals.b().size()) {
    throw ProblemError(ErrorKind::DimensionMismatch,
                       "support and marginals have different shapes");
  }
  FlowNetwork net;
  net.rows = support.rows();
  net.cols = support.cols();
  net.unbounded = marginals.scaled_total() + 1;
  for (std::size_t i = 0; i < net.rows; ++i) {
    net.arcs.push_back({net.source(), net.row_node(i), marginals.scaled_a()[i]});
  }
  for (std::size_t i = 0; i < net.rows; ++i) {
    for (std::size_t j = 0; j < net.cols; ++j) {
      if (support.admitted(i, j)) {
        net.arcs.push_back({net.row_node(i), net.col_node(j), net.unbounded});
      }
    }
  }
  for (std::size_t j = 0; j < net.cols; ++j) {
    net.arcs.push_back({net.col_node(j), net.sink(), marginals.scaled_b()[j]});
  }
  return net;
}

FlowResult max_flow(const FlowNetwork& net) {
  detail::Dinic<std::int64_t> dinic(net.node_count());
  std::vector<std::size_t> ids;
  ids.reserve(net.arcs.size());
  for (const auto& arc : net.arcs) ids.push_back(dinic.add_arc(arc.from, arc.to, arc.capacity));

  FlowResult result;
  result.value = dinic.run(net.source(), net.sink());
  result.arc_flow.reserve(ids.size());
  for (std::size_t id : ids) result.arc_flow.push_back(dinic.flow(id));
  return result;
}

std::optional<Coupling> check_coup(const SupportMask& support,
                                   const Marginals& marginals) {
  const FlowNetwork net = FlowNetwork::transport(support, marginals);
  const FlowResult flow = max_flow(net);
  if (flow.value != marginals.scaled_total()) return std::nullopt;

  std::vector<CouplingEntry> entries;
  for (std::size_t t = 0; t < net.arcs.size(); ++t) {
    const FlowArc& arc = net.arcs[t];
    if (arc.from == net.source() || arc.to == net.sink()) continue;
    if (flow.arc_flow[t] == 0) continue;
    entries.push_back({arc.from - 1, arc.to - 1 - net.rows,
                       Rational(flow.arc_flow[t], marginals.scale())});
  }
  return Coupling(std::move(entries));
}

// ---------------------------------------------------------------------------

IncrementalTransport::IncrementalTransport(const Marginals& marginals)
    : rows_(marginals.a().size()),
      cols_(marginals.b().size()),
      scale_(marginals.scale()),
      total_(marginals.scaled_total()),
      dinic_(rows_ + cols_ + 2) {
  for (std::size_t i = 0; i < rows_; ++i) dinic_.add_arc(0, 1 + i, marginals.scaled_a()[i]);
  for (std::size_t j = 0; j < cols_; ++j) {
    dinic_.add_arc(1 + rows_ + j, rows_ + cols_ + 1, marginals.scaled_b()[j]);
  }
}

void IncrementalTransport::add_edge(Edge e) {
  const std::size_t id = dinic_.add_arc(1 + e.row, 1 + rows_ + e.col, total_ + 1);
  edge_arcs_.emplace_back(e, id);
}

bool IncrementalTransport::feasible() {
  if (value_ < total_) value_ += dinic_.run(0, rows_ + cols_ + 1);
  return value_ == total_;
}

Coupling IncrementalTransport::coupling() const {
  std::vector<CouplingEntry> entries;
  for (const auto& [edge, id] : edge_arcs_) {
    const std::int64_t f = dinic_.flow(id);
    if (f > 0) entries.push_back({edge.row, edge.col, Rational(f, scale_)});
  }
  return Coupling(std::move(entries));
}

}  // namespace infot
