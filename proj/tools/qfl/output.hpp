#ifndef QFL_TOOL_OUTPUT_HPP
#define QFL_TOOL_OUTPUT_HPP

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qfl::tool {

/// One JSON object per line on stderr.
void log_event(const std::string& level, const std::string& event,
               const nlohmann::json& fields = nlohmann::json::object());

/// Writes to a sibling temporary file then renames over the target.
void write_atomic(const std::string& path, const std::string& contents);

/// "%.17g", with "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double x);

using Cell = std::variant<double, long, std::string>;

/// RFC-4180 table: header row then data rows in insertion order.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<Cell> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

std::string csv_escape(const std::string& field);

/// Sidecar metadata: config echo, tool version, wall time and extras.
nlohmann::json sidecar(const std::string& command, const nlohmann::json& config,
                       double wall_seconds, const nlohmann::json& extra = nlohmann::json::object());

struct Polyline {
  std::vector<double> x;
  std::vector<double> y;
  std::string colour;
  std::string label;
};

struct Heatmap {
  std::vector<double> x_axis;
  std::vector<double> y_axis;
  std::vector<std::vector<double>> values;  // values[iy][ix]
  std::string x_label;
  std::string y_label;
  std::string title;
  bool diverging = false;  // signed data on a blue-white-red scale centred at 0
  std::vector<Polyline> overlays;
};

std::string render_svg(const Heatmap& h);

}  // namespace qfl::tool

#endif
