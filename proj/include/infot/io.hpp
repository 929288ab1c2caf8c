#pragma once

#include "infot/core.hpp"
#include "infot/solvers.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace infot::io {

/// Comma-separated rows, no header, LF or CRLF line endings. Blank lines are
/// ignored. Entries are decimal or scientific notation.
CostMatrix parse_cost_csv(std::string_view text);
CostMatrix read_cost_csv(const std::filesystem::path& path);

/// Either one exact decimal per line or a JSON array of decimal strings
/// (integers are also accepted in the JSON form).
std::vector<Rational> parse_weights(std::string_view text);
std::vector<Rational> read_weights(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

struct PlanEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  std::string mass;

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

/// Machine-readable outcome of one solve.
struct ReportDocument {
  std::string kind;
  double value = 0.0;
  Edge witness_edge;
  std::vector<PlanEntry> plan;
  std::size_t iterations = 0;
  double wall_time_ms = 0.0;
};

ReportDocument make_report(std::string kind, const SolveReport& report);
ReportDocument make_report(const CostMatrix& cost, const RelaxedSolution& solution);

nlohmann::ordered_json to_json(const ReportDocument& report);
std::string to_text(const ReportDocument& report);

/// Shortest fixed-notation text that reads back as the same double.
std::string format_double(double x);

}  // namespace infot::io
