#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polycast/generate.hpp"

namespace polycast {

enum class SuiteMode { Multicast, Gossip };

struct SuiteEntry {
  std::string name;
  SuiteMode mode = SuiteMode::Multicast;
  /// Generated instance (kind non-empty) or files relative to the manifest.
  std::string kind;
  InstanceParams params;
  std::string graph_file;
  std::string demands_file;
  std::uint64_t seed = 0;
  bool oracle = true;
};

struct SuiteManifest {
  std::vector<SuiteEntry> entries;
  std::optional<double> ratio_bound;
};

/// JSON manifest:
///   {"ratio_bound": 50, "instances": [
///     {"name": "g3", "mode": "multicast", "kind": "grid", "rows": 3, "cols": 3,
///      "pairs": 4, "seed": 1, "oracle": true},
///     {"name": "f", "mode": "gossip", "graph": "f.txt"}]}
/// File paths are resolved against base_dir. Throws InvalidInput.
SuiteManifest parse_manifest(std::istream& in, const std::string& base_dir = ".");

struct SuiteRow {
  std::string instance;
  SuiteMode mode = SuiteMode::Multicast;
  int nodes = 0;
  int pairs = 0;
  std::optional<double> lp_value;  // multicast only
  int length = 0;
  std::optional<int> oracle_opt;
  std::optional<double> ratio;
  double runtime_s = 0.0;
  bool valid = false;
  std::string error;  // empty unless the instance failed
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::optional<double> ratio_bound;

  /// Every row valid and every measured ratio within the bound.
  bool passed() const;
};

struct SuiteOptions {
  /// Oracles run up to these sizes; larger instances get no OPT column.
  int telephone_oracle_nodes = 8;
  int radio_oracle_nodes = 7;
};

/// Runs every entry; a failing entry becomes an invalid row.
SuiteReport run_suite(const SuiteManifest& manifest, const SuiteOptions& options = {});

/// JSON report; runtimes are left out when `timing` is false.
void write_report_json(std::ostream& out, const SuiteReport& report, bool timing = true);
/// Fixed-width table, one line per row.
void write_report_table(std::ostream& out, const SuiteReport& report, bool timing = true);

}  // namespace polycast
