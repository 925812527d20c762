#pragma once
// Deterministic output writers: CSV tables, JSON documents with an embedded
// manifest, and 16-bit PGM heatmaps.  All floating-point values are written
// in shortest round-trip decimal form and all orderings are fixed, so a
// given configuration always produces byte-identical files.

#include <string>
#include <utility>
#include <vector>

#include "tmsv/app/config.hpp"
#include "tmsv/grid.hpp"

namespace tmsv::app {

// Ordered key/value record attached to every run: the echoed configuration
// plus informational entries (cutoffs, tail bounds, summary numbers).
// Informational entries become '#' comments in manifest.txt (so the file
// stays loadable as a config) and plain members of the JSON manifest object.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value, bool informational = false);
  void set(const std::string& key, double value, bool informational = false);
  void set(const std::string& key, int value, bool informational = false);

  // key=value lines; informational entries rendered as "# key=value".
  std::string text() const;
  // All entries in insertion order, informational or not.
  const std::vector<std::pair<std::string, std::string>>& entries() const { return rows_; }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
  std::vector<bool> informational_;
};

// Column-named numeric table (every cell a double; integers format without
// a decimal point).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// CSV bytes: header row, LF endings, shortest round-trip numbers.
std::string render_csv(const Table& table);

// JSON bytes: {"manifest": {...}, "columns": [...], "data": [[...]]}.
std::string render_json(const Manifest& manifest, const Table& table);

// Binary 16-bit PGM (P5, big-endian samples), rows in decreasing-y order,
// linear map [min, max] -> [0, 65535].  The comment line carries the
// provenance string plus min=/max= (so values are recoverable); a degenerate
// field (max == min) renders uniform mid-gray and the comment gains a
// "degenerate" flag.  The provenance string must not contain newlines.
std::string render_pgm(const Field2D<double>& field, const std::string& provenance);

// Create the directory if needed and write bytes (binary, overwriting).
// Failures throw usage_error naming the path.
void write_file(const std::string& path, const std::string& bytes);

}  // namespace tmsv::app
