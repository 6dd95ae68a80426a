#include "cli/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cohdyn::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = s.find(',');
    parts.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

double parse_real(std::string_view key, std::string_view text) {
  const std::string copy(text);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw ValidationError("config key '" + std::string(key) + "': expected a number, got '" + copy + "'");
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("config key '" + std::string(key) + "': expected an integer, got '" +
                          std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::optional<std::vector<int>> parse_mask(std::string_view text) {
  text = trim(text);
  if (text == "all") return std::nullopt;
  std::vector<int> qubits;
  if (text.empty() || text == "none") return qubits;
  for (auto part : split_commas(text)) qubits.push_back(parse_int("mask", part));
  return qubits;
}

HForm parse_hform(std::string_view text) {
  text = trim(text);
  if (text == "standard") return HForm::Standard;
  if (text == "paper_verbatim" || text == "paper-verbatim") return HForm::PaperVerbatim;
  throw ValidationError("h_form must be 'standard' or 'paper_verbatim', got '" + std::string(text) + "'");
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  config.base_dir = base_dir;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(body.substr(0, eq));
    const std::string_view value = trim(body.substr(eq + 1));
    if (key == "state") {
      config.state = std::string(value);
    } else if (key == "lambda") {
      config.lambda = parse_real(key, value);
    } else if (key == "delta") {
      config.delta = parse_real(key, value);
    } else if (key == "mask") {
      config.mask = parse_mask(value);
    } else if (key == "t_max") {
      config.t_max = parse_real(key, value);
    } else if (key == "n_points") {
      config.n_points = parse_int(key, value);
    } else if (key == "h_form") {
      config.h_form = parse_hform(value);
    } else if (key == "outputs") {
      config.outputs.clear();
      for (auto part : split_commas(value)) {
        if (!part.empty()) config.outputs.emplace_back(part);
      }
    } else {
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" +
                            std::string(key) + "'");
    }
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  return parse_config(in, path.parent_path());
}

ResolvedState resolve_state(const ExperimentConfig& config) {
  if (const auto named = parse_state_name(config.state)) {
    return {named_state(*named, 3), std::string(state_name(*named))};
  }
  std::filesystem::path path(config.state);
  if (path.is_relative() && !config.base_dir.empty()) path = config.base_dir / path;
  if (!std::filesystem::exists(path)) {
    throw IoError("state '" + config.state + "' is neither a named state nor an existing file");
  }
  return {load_amplitude_file(path), path.filename().string()};
}

BathParams bath_params(const ExperimentConfig& config) {
  BathParams p{1.0, config.lambda, config.delta};
  p.validate();
  return p;
}

CouplingMask coupling_mask(const ExperimentConfig& config, int n_qubits) {
  if (!config.mask) return CouplingMask::full(n_qubits);
  return CouplingMask::of(*config.mask, n_qubits);
}

}  // namespace cohdyn::cli
