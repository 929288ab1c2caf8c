#include "infot/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace infot::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_cost(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ProblemError(ErrorKind::ParseError,
                       "line " + std::to_string(line) + ": cannot read cost '" +
                           std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ProblemError(ErrorKind::ParseError, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CostMatrix parse_cost_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  const auto lines = split(text, '\n');
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::string_view line = trim(lines[l]);
    if (line.empty()) continue;
    std::vector<double> row;
    for (std::string_view field : split(line, ',')) row.push_back(parse_cost(field, l + 1));
    rows.push_back(std::move(row));
  }
  return CostMatrix::from_rows(rows);
}

CostMatrix read_cost_csv(const std::filesystem::path& path) {
  return parse_cost_csv(read_file(path));
}

std::vector<Rational> parse_weights(std::string_view text) {
  std::vector<Rational> weights;
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw ProblemError(ErrorKind::ParseError, std::string("weight array: ") + e.what());
    }
    for (const auto& item : doc) {
      if (item.is_string()) {
        weights.push_back(parse_rational(item.get<std::string>()));
      } else if (item.is_number_integer()) {
        weights.push_back(Rational(item.get<std::int64_t>()));
      } else {
        throw ProblemError(ErrorKind::ParseError,
                           "weights must be decimal strings, got " + item.dump());
      }
    }
    return weights;
  }
  for (std::string_view line : split(text, '\n')) {
    line = trim(line);
    if (!line.empty()) weights.push_back(parse_rational(line));
  }
  return weights;
}

std::vector<Rational> read_weights(const std::filesystem::path& path) {
  return parse_weights(read_file(path));
}

std::string format_double(double x) {
  std::array<char, 512> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed);
  if (ec != std::errc()) {
    return std::to_string(x);
  }
  return std::string(buf.data(), ptr);
}

ReportDocument make_report(std::string kind, const SolveReport& report) {
  ReportDocument doc;
  doc.kind = std::move(kind);
  doc.value = report.value;
  doc.witness_edge = report.witness_edge;
  doc.iterations = report.iterations;
  if (const auto* perm = std::get_if<Permutation>(&report.plan)) {
    for (std::size_t i = 0; i < perm->size(); ++i) doc.plan.push_back({i, (*perm)[i], "1"});
  } else {
    for (const auto& e : std::get<Coupling>(report.plan).entries()) {
      doc.plan.push_back({e.row, e.col, format_rational(e.mass)});
    }
  }
  return doc;
}

ReportDocument make_report(const CostMatrix& cost, const RelaxedSolution& solution) {
  ReportDocument doc;
  doc.kind = "relaxed";
  doc.value = solution.value;
  doc.iterations = solution.probes;
  double worst = -1.0;
  for (std::size_t i = 0; i < solution.n; ++i) {
    for (std::size_t j = 0; j < solution.n; ++j) {
      const double p = solution.at(i, j);
      if (p <= 0.0) continue;
      doc.plan.push_back({i, j, format_double(p)});
      if (p * cost(i, j) > worst) {
        worst = p * cost(i, j);
        doc.witness_edge = {i, j};
      }
    }
  }
  return doc;
}

nlohmann::ordered_json to_json(const ReportDocument& report) {
  nlohmann::ordered_json plan = nlohmann::ordered_json::array();
  for (const auto& e : report.plan) plan.push_back({e.row, e.col, e.mass});
  nlohmann::ordered_json doc;
  doc["kind"] = report.kind;
  doc["value"] = report.value;
  doc["witness_edge"] = {report.witness_edge.row, report.witness_edge.col};
  doc["plan"] = std::move(plan);
  doc["iterations"] = report.iterations;
  doc["wall_time_ms"] = report.wall_time_ms;
  return doc;
}

std::string to_text(const ReportDocument& report) {
  std::ostringstream out;
  out << "kind        " << report.kind << '\n'
      << "value       " << std::setprecision(17) << report.value << '\n'
      << "witness     (" << report.witness_edge.row << ", "
      << report.witness_edge.col << ")\n"
      << "iterations  " << report.iterations << '\n'
      << "wall time   " << std::setprecision(6) << report.wall_time_ms << " ms\n"
      << "plan        " << report.plan.size() << " entries\n";
  for (const auto& e : report.plan) {
    out << "  " << e.row << ' ' << e.col << ' ' << e.mass << '\n';
  }
  return out.str();
}

}  // namespace infot::io
