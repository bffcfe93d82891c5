/*
 * This code is part of iqcc.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy
 * of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "iqcc/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "iqcc/operator_io.hpp"

namespace iqcc {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> parse_list(const std::string& value, size_t line_no) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']')
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": expected a [..] list");
  std::vector<std::string> items;
  std::string body = value.substr(1, value.size() - 2);
  std::istringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(unquote(item));
  }
  return items;
}

double to_double(const std::string& s, size_t line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": bad number '" + s + "'");
  }
}

long long to_int(const std::string& s, size_t line_no) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": bad integer '" + s + "'");
  return v;
}

std::string format_fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  return buf;
}

json mask_to_json(const QubitMask& mask) {
  json j = json::array();
  for (uint32_t q : mask.indices()) j.push_back(q);
  return j;
}

json record_to_json(const IterationRecord& rec, uint32_t n_qubits) {
  json j;
  j["iteration"] = rec.iteration;
  j["e_iqcc"] = rec.e_iqcc;
  j["corrected"] = json::object();
  for (const auto& [label, value] : rec.corrected) j["corrected"][label] = value;
  j["max_gradient"] = rec.max_gradient;
  j["n_terms"] = rec.n_terms;
  j["n_groups"] = rec.n_groups;
  j["n_qubits"] = n_qubits;
  j["selected_flips"] = json::array();
  for (const QubitMask& f : rec.selected_flips)
    j["selected_flips"].push_back(mask_to_json(f));
  j["amplitudes"] = rec.amplitudes;
  return j;
}

IterationRecord record_from_json(const json& j, uint32_t& n_qubits) {
  IterationRecord rec;
  rec.iteration = j.at("iteration").get<int>();
  rec.e_iqcc = j.at("e_iqcc").get<double>();
  for (const auto& [label, value] : j.at("corrected").items())
    rec.corrected[label] = value.get<double>();
  rec.max_gradient = j.at("max_gradient").get<double>();
  rec.n_terms = j.at("n_terms").get<size_t>();
  rec.n_groups = j.at("n_groups").get<size_t>();
  n_qubits = j.at("n_qubits").get<uint32_t>();
  for (const auto& flip : j.at("selected_flips")) {
    std::vector<uint32_t> idx = flip.get<std::vector<uint32_t>>();
    rec.selected_flips.push_back(QubitMask::from_indices(n_qubits, idx));
  }
  rec.amplitudes = j.at("amplitudes").get<std::vector<double>>();
  return rec;
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
  RunConfig config;
  bool saw_hamiltonian = false, saw_reference = false;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty value for '" + key + "'");

    if (key == "hamiltonian") {
      config.hamiltonian_path = unquote(value);
      saw_hamiltonian = true;
    } else if (key == "reference") {
      config.reference = unquote(value);
      saw_reference = true;
    } else if (key == "generators_per_iter") {
      config.iterate.generators_per_iter = static_cast<int>(to_int(value, line_no));
    } else if (key == "ranking") {
      config.iterate.ranking = parse_ranking(unquote(value));
    } else if (key == "corrections") {
      for (const std::string& item : parse_list(value, line_no))
        config.iterate.corrections.push_back(parse_correction(item));
    } else if (key == "grad_threshold") {
      config.iterate.grad_threshold = to_double(value, line_no);
    } else if (key == "energy_threshold") {
      config.iterate.energy_threshold = to_double(value, line_no);
    } else if (key == "max_iterations") {
      config.iterate.max_iterations = static_cast<int>(to_int(value, line_no));
    } else if (key == "active_qubits") {
      ActiveSpace space = config.iterate.active_space.value_or(ActiveSpace{});
      for (const std::string& item : parse_list(value, line_no))
        space.active_qubits.push_back(
            static_cast<uint32_t>(to_int(item, line_no)));
      config.iterate.active_space = std::move(space);
    } else if (key == "max_inactive") {
      ActiveSpace space = config.iterate.active_space.value_or(ActiveSpace{});
      space.max_inactive_indices = static_cast<uint32_t>(to_int(value, line_no));
      config.iterate.active_space = std::move(space);
    } else if (key == "effheff_m") {
      config.iterate.effheff_m = static_cast<size_t>(to_int(value, line_no));
    } else if (key == "effheff_dynamic_threshold") {
      config.iterate.effheff_dynamic_threshold = to_double(value, line_no);
    } else if (key == "ci_dim_cap") {
      config.iterate.ci_dim_cap = static_cast<size_t>(to_int(value, line_no));
    } else if (key == "drop_tolerance") {
      config.iterate.drop_tolerance = to_double(value, line_no);
    } else if (key == "checkpoint_dir") {
      config.checkpoint_dir = unquote(value);
    } else if (key == "output_dir") {
      config.output_dir = unquote(value);
    } else if (key == "log_format") {
      const std::string fmt = unquote(value);
      if (fmt == "csv")
        config.log_format = RunConfig::LogFormat::csv;
      else if (fmt == "jsonl")
        config.log_format = RunConfig::LogFormat::jsonl;
      else
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": log_format must be csv or jsonl");
    } else if (key == "seed") {
      config.seed = static_cast<uint64_t>(to_int(value, line_no));
    } else if (key == "threads") {
      config.threads = static_cast<int>(to_int(value, line_no));
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }

  if (!saw_hamiltonian)
    throw std::invalid_argument("config: missing required key 'hamiltonian'");
  if (!saw_reference)
    throw std::invalid_argument("config: missing required key 'reference'");
  if (config.iterate.generators_per_iter < 1)
    throw std::invalid_argument("config: generators_per_iter must be >= 1");
  if (config.iterate.max_iterations < 1)
    throw std::invalid_argument("config: max_iterations must be >= 1");
  if (config.iterate.grad_threshold < 0 || config.iterate.energy_threshold < 0)
    throw std::invalid_argument("config: thresholds must be non-negative");
  if (config.iterate.effheff_m < 1)
    throw std::invalid_argument("config: effheff_m must be >= 1");
  if (config.threads < 0)
    throw std::invalid_argument("config: threads must be >= 0");
  MeanFieldState::from_string(config.reference);  // syntax check
  return config;
}

RunConfig parse_run_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  return parse_run_config(in);
}

// ---------------------------------------------------------------------------
// Log writer

RunLogWriter::RunLogWriter(std::ostream& out, const RunConfig& config,
                           bool skip_header)
    : out_(out), format_(config.log_format), header_written_(skip_header) {
  labels_ = {"en2", "duc", "bw"};
  bool want_effheff = false, want_ci = false;
  for (CorrectionKind kind : config.iterate.corrections) {
    if (kind == CorrectionKind::effheff) want_effheff = true;
    if (kind == CorrectionKind::ci) want_ci = true;
  }
  if (want_effheff)
    labels_.push_back(config.iterate.effheff_dynamic_threshold
                          ? "effheff_dyn"
                          : "effheff_m" +
                                std::to_string(config.iterate.effheff_m));
  if (want_ci) labels_.push_back("ci");
}

void RunLogWriter::write_record(const IterationRecord& record) {
  if (format_ == RunConfig::LogFormat::csv) {
    if (!header_written_) {
      out_ << "iter,e_iqcc";
      for (const std::string& label : labels_) out_ << ",e_" << label;
      out_ << ",max_grad,n_terms,n_groups\n";
      header_written_ = true;
    }
    out_ << record.iteration << ',' << format_fixed(record.e_iqcc);
    for (const std::string& label : labels_) {
      out_ << ',';
      auto it = record.corrected.find(label);
      if (it != record.corrected.end()) out_ << format_fixed(it->second);
    }
    out_ << ',' << format_fixed(record.max_gradient) << ',' << record.n_terms
         << ',' << record.n_groups << "\n";
  } else {
    json j;
    j["iter"] = record.iteration;
    j["e_iqcc"] = record.e_iqcc;
    for (const std::string& label : labels_) {
      auto it = record.corrected.find(label);
      j["e_" + label] = it != record.corrected.end()
                            ? json(it->second)
                            : json(nullptr);
    }
    j["max_grad"] = record.max_gradient;
    j["n_terms"] = record.n_terms;
    j["n_groups"] = record.n_groups;
    j["amplitudes"] = record.amplitudes;
    json flips = json::array();
    for (const QubitMask& f : record.selected_flips)
      flips.push_back(mask_to_json(f));
    j["selected_flips"] = flips;
    out_ << j.dump() << "\n";
  }
  out_.flush();
}

// ---------------------------------------------------------------------------
// Checkpoints

static const char* kCheckpointJson = "checkpoint.json";
static const char* kCheckpointOperator = "hamiltonian.op";

void save_checkpoint(const std::string& dir, const Checkpoint& checkpoint,
                     const QubitOperator& hamiltonian) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  save_operator(hamiltonian, (fs::path(dir) / kCheckpointOperator).string());

  json j;
  j["next_iteration"] = checkpoint.next_iteration;
  j["reference"] = checkpoint.reference;
  j["seed"] = checkpoint.seed;
  j["last_record"] = record_to_json(checkpoint.last_record,
                                    hamiltonian.n_qubits());
  std::ofstream out(fs::path(dir) / kCheckpointJson);
  if (!out)
    throw std::runtime_error("cannot write checkpoint in '" + dir + "'");
  out << j.dump(2) << "\n";
}

bool checkpoint_exists(const std::string& dir) {
  namespace fs = std::filesystem;
  return fs::exists(fs::path(dir) / kCheckpointJson) &&
         fs::exists(fs::path(dir) / kCheckpointOperator);
}

std::pair<Checkpoint, QubitOperator> load_checkpoint(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream in(fs::path(dir) / kCheckpointJson);
  if (!in)
    throw std::invalid_argument("no checkpoint found in '" + dir + "'");
  json j = json::parse(in);

  Checkpoint checkpoint;
  checkpoint.next_iteration = j.at("next_iteration").get<int>();
  checkpoint.reference = j.at("reference").get<std::string>();
  checkpoint.seed = j.at("seed").get<uint64_t>();
  uint32_t n_qubits = 0;
  checkpoint.last_record = record_from_json(j.at("last_record"), n_qubits);

  QubitOperator h =
      load_operator((fs::path(dir) / kCheckpointOperator).string());
  return {std::move(checkpoint), std::move(h)};
}

}  // namespace iqcc
