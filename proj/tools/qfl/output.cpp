#include "output.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "run_config.hpp"

namespace qfl::tool {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms
     << 'Z';
  return os.str();
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  return csv_escape(std::get<std::string>(c));
}

}  // namespace

void log_event(const std::string& level, const std::string& event, const nlohmann::json& fields) {
  static std::mutex mutex;
  nlohmann::json j = {{"ts", utc_now()}, {"level", level}, {"event", event}};
  for (const auto& [k, v] : fields.items()) j[k] = v;
  const std::string line = j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  std::lock_guard lock(mutex);
  std::cerr << line << '\n' << std::flush;
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) {
    throw std::logic_error("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                           std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(header_[i]);
  }
  out += "\r\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

nlohmann::json sidecar(const std::string& command, const nlohmann::json& config,
                       double wall_seconds, const nlohmann::json& extra) {
  nlohmann::json j = {{"tool", "qfl"},
                      {"version", kToolVersion},
                      {"command", command},
                      {"created", utc_now()},
                      {"wall_seconds", wall_seconds},
                      {"config", config}};
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

namespace {

std::string colour_hex(double r, double g, double b) {
  char buf[8];
  const auto c = [](double x) { return static_cast<int>(std::lround(std::clamp(x, 0.0, 1.0) * 255)); };
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
  return buf;
}

// Piecewise-linear approximation of viridis.
std::string sequential(double t) {
  static const double stops[5][3] = {{0.267, 0.005, 0.329},
                                     {0.229, 0.322, 0.546},
                                     {0.128, 0.567, 0.551},
                                     {0.369, 0.789, 0.383},
                                     {0.993, 0.906, 0.144}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(t));
  const double f = t - i;
  return colour_hex(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]),
                    stops[i][1] + f * (stops[i + 1][1] - stops[i][1]),
                    stops[i][2] + f * (stops[i + 1][2] - stops[i][2]));
}

std::string diverging(double t) {
  t = std::clamp(t, -1.0, 1.0);
  if (t < 0) return colour_hex(1.0 + t, 1.0 + t, 1.0);
  return colour_hex(1.0, 1.0 - t, 1.0 - t);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const Heatmap& h) {
  const double W = 640, H = 480, left = 70, right = 20, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;
  const std::size_t nx = h.x_axis.size(), ny = h.y_axis.size();
  if (nx == 0 || ny == 0) throw std::invalid_argument("empty heatmap");
  const double x0 = h.x_axis.front(), x1 = nx > 1 ? h.x_axis.back() : x0 + 1;
  const double y0 = h.y_axis.front(), y1 = ny > 1 ? h.y_axis.back() : y0 + 1;
  const auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  const auto py = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

  double lo = INFINITY, hi = -INFINITY, amax = 0;
  for (const auto& row : h.values) {
    for (double v : row) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      amax = std::max(amax, std::abs(v));
    }
  }

  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double cw = pw / static_cast<double>(nx), ch = ph / static_cast<double>(ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double v = h.values[iy][ix];
      std::string fill = "#bbbbbb";
      if (std::isfinite(v)) {
        if (h.diverging) {
          fill = diverging(amax > 0 ? v / amax : 0.0);
        } else {
          fill = sequential(hi > lo ? (v - lo) / (hi - lo) : 0.5);
        }
      }
      os << "<rect x=\"" << left + ix * cw << "\" y=\"" << top + ph - (iy + 1) * ch
         << "\" width=\"" << cw + 0.05 << "\" height=\"" << ch + 0.05 << "\" fill=\"" << fill
         << "\"/>\n";
    }
  }
  os << "<g fill=\"none\" stroke-width=\"1.5\">\n";
  for (const auto& line : h.overlays) {
    os << "<polyline stroke=\"" << line.colour << "\" points=\"";
    for (std::size_t i = 0; i < line.x.size(); ++i) {
      const double yy = std::clamp(line.y[i], std::min(y0, y1), std::max(y0, y1));
      os << px(line.x[i]) << ',' << py(yy) << ' ';
    }
    os << "\"><title>" << xml_escape(line.label) << "</title></polyline>\n";
  }
  os << "</g>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\">" << xml_escape(h.title)
     << "</text>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
     << xml_escape(h.x_label) << "</text>\n";
  os << "<text transform=\"translate(18," << top + ph / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(h.y_label) << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
    os << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">"
       << fx << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">" << fy
       << "</text>\n";
  }
  if (std::isfinite(lo)) {
    os << "<text x=\"" << W - right << "\" y=\"" << H - 15 << "\" text-anchor=\"end\">range ["
       << lo << ", " << hi << "]</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace qfl::tool
