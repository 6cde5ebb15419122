#include "stokesfilm/snapshot_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace stokesfilm {
namespace {

void put(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

// Diagnostics fields in output order.
struct DiagField {
  const char* name;
  double Diagnostics::*member;
};
constexpr DiagField kDiagFields[] = {
    {"t", &Diagnostics::t},
    {"energy", &Diagnostics::energy},
    {"arc_chord_sup", &Diagnostics::arc_chord_sup},
    {"length", &Diagnostics::length},
    {"integrated_length", &Diagnostics::integrated_length},
    {"area", &Diagnostics::area},
    {"layer_mass", &Diagnostics::layer_mass},
    {"iso_ratio", &Diagnostics::iso_ratio},
    {"h_min", &Diagnostics::h_min},
    {"min_node_spacing", &Diagnostics::min_node_spacing},
    {"dt_used", &Diagnostics::dt_used},
};

double read_number(const nlohmann::json& v, const char* what) {
  if (v.is_null()) return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw Error(ErrorCode::io_error, std::string("snapshot: bad ") + what);
  return v.get<double>();
}

}  // namespace

Snapshot make_snapshot(const SimState& state, const Diagnostics& diag) {
  return {state.t, state.curve.length(), state.curve.nodes(), state.h.values, diag};
}

std::string format_snapshot(const Snapshot& s) {
  std::string out;
  out.reserve(64 * (s.nodes.size() + s.h.size()) + 512);
  out += "{\"t\":";
  put(out, s.t);
  out += ",\"L\":";
  put(out, s.L);
  out += ",\"nodes\":[";
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (i) out += ',';
    out += '[';
    put(out, s.nodes[i].x);
    out += ',';
    put(out, s.nodes[i].y);
    out += ']';
  }
  out += "],\"h\":[";
  for (std::size_t i = 0; i < s.h.size(); ++i) {
    if (i) out += ',';
    put(out, s.h[i]);
  }
  out += "],\"diag\":{";
  bool first = true;
  for (const auto& f : kDiagFields) {
    if (!first) out += ',';
    first = false;
    out += '"';
    out += f.name;
    out += "\":";
    put(out, s.diag.*f.member);
  }
  out += "}}";
  return out;
}

Snapshot parse_snapshot(const std::string& line) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::io_error, std::string("snapshot: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("t") || !doc.contains("L") || !doc.contains("nodes") ||
      !doc.contains("h") || !doc.contains("diag")) {
    throw Error(ErrorCode::io_error, "snapshot: missing field");
  }
  Snapshot s;
  s.t = read_number(doc["t"], "t");
  s.L = read_number(doc["L"], "L");
  for (const auto& p : doc["nodes"]) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::io_error, "snapshot: bad node");
    s.nodes.push_back({read_number(p[0], "node"), read_number(p[1], "node")});
  }
  for (const auto& v : doc["h"]) s.h.push_back(read_number(v, "h"));
  for (const auto& f : kDiagFields) {
    if (!doc["diag"].contains(f.name)) {
      throw Error(ErrorCode::io_error, std::string("snapshot: missing diag.") + f.name);
    }
    s.diag.*f.member = read_number(doc["diag"][f.name], f.name);
  }
  return s;
}

std::string diagnostics_csv_header() {
  std::string out;
  for (const auto& f : kDiagFields) {
    if (!out.empty()) out += ',';
    out += f.name;
  }
  return out;
}

std::string diagnostics_csv_row(const Diagnostics& d) {
  std::string out;
  bool first = true;
  for (const auto& f : kDiagFields) {
    if (!first) out += ',';
    first = false;
    put(out, d.*f.member);
  }
  return out;
}

std::string csv_path_for(const std::string& jsonl_path) {
  const std::string ext = ".jsonl";
  if (jsonl_path.size() > ext.size() &&
      jsonl_path.compare(jsonl_path.size() - ext.size(), ext.size(), ext) == 0) {
    return jsonl_path.substr(0, jsonl_path.size() - ext.size()) + ".csv";
  }
  return jsonl_path + ".csv";
}

SnapshotWriter::SnapshotWriter(const std::string& jsonl_path)
    : jsonl_path_(jsonl_path), csv_path_(csv_path_for(jsonl_path)) {
  jsonl_.open(jsonl_path_, std::ios::out | std::ios::trunc);
  if (!jsonl_) throw Error(ErrorCode::io_error, "cannot open '" + jsonl_path_ + "' for writing");
  csv_.open(csv_path_, std::ios::out | std::ios::trunc);
  if (!csv_) throw Error(ErrorCode::io_error, "cannot open '" + csv_path_ + "' for writing");
  csv_ << diagnostics_csv_header() << '\n';
}

void SnapshotWriter::write(const SimState& state, const Diagnostics& diag) {
  jsonl_ << format_snapshot(make_snapshot(state, diag)) << '\n';
  csv_ << diagnostics_csv_row(diag) << '\n';
  jsonl_.flush();
  csv_.flush();
  if (!jsonl_ || !csv_) {
    throw Error(ErrorCode::io_error, "write failed after " + std::to_string(lines_) +
                                         " snapshots; output in '" + jsonl_path_ +
                                         "' is partial");
  }
  ++lines_;
}

}  // namespace stokesfilm
