#include "tmsv/app/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tmsv/errors.hpp"

namespace tmsv::app {
namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

}  // namespace

void Manifest::set(const std::string& key, const std::string& value, bool informational) {
  rows_.emplace_back(key, value);
  informational_.push_back(informational);
}

void Manifest::set(const std::string& key, double value, bool informational) {
  set(key, format_double(value), informational);
}

void Manifest::set(const std::string& key, int value, bool informational) {
  set(key, std::to_string(value), informational);
}

std::string Manifest::text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (informational_[i]) out << "# ";
    out << rows_[i].first << "=" << rows_[i].second << "\n";
  }
  return out.str();
}

std::string render_csv(const Table& table) {
  if (table.columns.empty()) throw std::invalid_argument("render_csv: no columns");
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ",";
    out += table.columns[i];
  }
  out += "\n";
  for (const std::vector<double>& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::invalid_argument("render_csv: row width differs from column count");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string render_json(const Manifest& manifest, const Table& table) {
  if (table.columns.empty()) throw std::invalid_argument("render_json: no columns");
  std::string out = "{\n  \"manifest\": {";
  const auto& entries = manifest.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out += (i ? ",\n    \"" : "\n    \"");
    out += json_escape(entries[i].first) + "\": \"" + json_escape(entries[i].second) + "\"";
  }
  out += "\n  },\n  \"columns\": [";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + json_escape(table.columns[i]) + "\"";
  }
  out += "],\n  \"data\": [\n";
  for (std::size_t rix = 0; rix < table.rows.size(); ++rix) {
    const std::vector<double>& row = table.rows[rix];
    if (row.size() != table.columns.size())
      throw std::invalid_argument("render_json: row width differs from column count");
    out += "    [";
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ", ";
      out += format_double(row[i]);
    }
    out += (rix + 1 < table.rows.size()) ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string render_pgm(const Field2D<double>& field, const std::string& provenance) {
  if (provenance.find('\n') != std::string::npos)
    throw std::invalid_argument("render_pgm: provenance must be a single line");
  double lo = field.value.empty() ? 0.0 : field.value.front();
  double hi = lo;
  for (const double v : field.value) {
    if (!std::isfinite(v)) throw numerical_error("render_pgm: non-finite field value");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool degenerate = !(hi > lo);

  std::string out = "P5\n# " + provenance + " min=" + format_double(lo) +
                    " max=" + format_double(hi) + (degenerate ? " degenerate" : "") + "\n" +
                    std::to_string(field.grid.nx) + " " + std::to_string(field.grid.ny) +
                    "\n65535\n";
  out.reserve(out.size() + 2 * field.value.size());
  const double scale = degenerate ? 0.0 : 65535.0 / (hi - lo);
  for (std::size_t row = 0; row < field.grid.ny; ++row) {
    const std::size_t iy = field.grid.ny - 1 - row;  // decreasing y
    for (std::size_t ix = 0; ix < field.grid.nx; ++ix) {
      const std::uint16_t sample =
          degenerate ? 32768
                     : static_cast<std::uint16_t>(
                           std::lround((field.at(ix, iy) - lo) * scale));
      out.push_back(static_cast<char>(sample >> 8));  // big-endian
      out.push_back(static_cast<char>(sample & 0xff));
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& bytes) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) throw usage_error("out: cannot create directory '" + p.parent_path().string() +
                            "': " + ec.message());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw usage_error("out: cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw usage_error("out: write failed for '" + path + "'");
}

}  // namespace tmsv::app
