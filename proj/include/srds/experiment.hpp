#pragma once

#include "srds/analysis.hpp"
#include "srds/json_io.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace srds {

/// Flat key-value experiment description (see README for the format).
struct ExperimentConfig {
  std::string mode;  // centralized | general | decentralized | hybrid
  std::string topology;       // inline, e.g. "combination H=4 r=2"
  std::string topology_file;  // or a path to a topology file
  int num_files = 0;          // N; 0 means K
  std::vector<Rat> sweep_M;
  std::vector<int> demand;  // empty = worst-case (1..K)
  uint64_t seed = 0;
  long b_concrete = 0;  // 0 = no concrete run; -1 = auto grain
  int t3 = -1, t4 = -1;
  bool rebalance = false;
  bool verify = true;
  bool compare = false;
  std::string scenario;
  std::string out_path;
  std::string dump_plan_path;
  std::string dump_placement_path;

  static ExperimentConfig parse_text(const std::string& text);
  static ExperimentConfig parse_file(const std::string& path);
};

struct SweepRow {
  Rat M;
  int t_or_tprime = -1;  // t for centralized/hybrid rows, -1 otherwise
  Rat load_max, load_server_max, load_link_max;
  std::optional<Rat> closed_form;
  bool verified_ok = true;
};

struct ExperimentResult {
  int exit_code = 0;  // 0 ok, 1 config error, 2 verification failure
  std::string csv;
  std::vector<SweepRow> rows;
  std::string error;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Runs the experiment, writes all requested artifacts, logs a summary.
/// Returns the process exit code (0/1/2).
int run_experiment_to_files(const ExperimentConfig& config, std::ostream& log);

}  // namespace srds
