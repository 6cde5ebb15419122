#pragma once

// Snapshot serialisation: one JSON object per line
//   {"t":…,"L":…,"nodes":[[x,y],…],"h":[…],"diag":{…}}
// with every number written to 17 significant digits (non-finite values as
// null), plus a CSV file with one diagnostics row per snapshot.

#include <fstream>
#include <string>
#include <vector>

#include "stokesfilm/diagnostics.hpp"

namespace stokesfilm {

struct Snapshot {
  double t = 0.0;
  double L = 0.0;
  std::vector<Vec2> nodes;
  std::vector<double> h;
  Diagnostics diag;
};

Snapshot make_snapshot(const SimState& state, const Diagnostics& diag);

/// One JSONL line without the trailing newline.
std::string format_snapshot(const Snapshot& s);
/// Inverse of format_snapshot. Throws io_error on malformed input.
Snapshot parse_snapshot(const std::string& line);

std::string diagnostics_csv_header();
std::string diagnostics_csv_row(const Diagnostics& d);

/// "run.jsonl" -> "run.csv"; any other name gets ".csv" appended.
std::string csv_path_for(const std::string& jsonl_path);

/// Writes the JSONL and CSV files. Throws io_error if either cannot be
/// opened or written.
class SnapshotWriter {
 public:
  explicit SnapshotWriter(const std::string& jsonl_path);
  void write(const SimState& state, const Diagnostics& diag);
  std::size_t lines() const noexcept { return lines_; }
  const std::string& jsonl_path() const noexcept { return jsonl_path_; }
  const std::string& csv_path() const noexcept { return csv_path_; }

 private:
  std::string jsonl_path_;
  std::string csv_path_;
  std::ofstream jsonl_;
  std::ofstream csv_;
  std::size_t lines_ = 0;
};

}  // namespace stokesfilm
