/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "iqcc/driver.hpp"

namespace iqcc {

/// Batch-run description: key = value lines, '#' comments, lists in
/// [brackets]. Unknown keys are errors; everything is validated before any
/// computation starts.
struct RunConfig {
  std::string hamiltonian_path;
  std::string reference;
  std::string checkpoint_dir;  // empty = no checkpoints
  std::string output_dir = ".";
  enum class LogFormat { csv, jsonl };
  LogFormat log_format = LogFormat::csv;
  uint64_t seed = 0;
  int threads = 0;  // 0 = environment default
  IterateConfig iterate;
};

RunConfig parse_run_config(std::istream& in);
RunConfig parse_run_config_string(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// Streams per-iteration rows. CSV columns:
///   iter,e_iqcc,e_en2,e_duc,e_bw[,e_effheff_*][,e_ci],max_grad,n_terms,n_groups
/// Disabled base corrections leave their column empty; effheff/ci columns
/// appear only when enabled. Energies carry 12 decimal places.
class RunLogWriter {
 public:
  /// skip_header suppresses the CSV header row (used when appending to an
  /// existing log on resume).
  RunLogWriter(std::ostream& out, const RunConfig& config,
               bool skip_header = false);
  void write_record(const IterationRecord& record);

 private:
  std::ostream& out_;
  RunConfig::LogFormat format_;
  std::vector<std::string> labels_;  // corrected-energy labels, column order
  bool header_written_ = false;
};

/// Serialized dressed operator + the last record; enough to resume a run.
struct Checkpoint {
  int next_iteration = 1;
  IterationRecord last_record;
  std::string reference;
  uint64_t seed = 0;
};

void save_checkpoint(const std::string& dir, const Checkpoint& checkpoint,
                     const QubitOperator& hamiltonian);
bool checkpoint_exists(const std::string& dir);
std::pair<Checkpoint, QubitOperator> load_checkpoint(const std::string& dir);

}  // namespace iqcc
