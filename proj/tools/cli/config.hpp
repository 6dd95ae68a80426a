#pragma once

// Experiment configuration files: line-oriented "key = value" text, '#'
// starts a comment. Recognised keys:
//
//   state     named state (W, WBAR, GHZ, WWBAR) or path to an amplitude file
//   lambda    spectral width, units of gamma0
//   delta     detuning, units of gamma0
//   mask      comma-separated 1-based qubits, "none" or "all" (default all)
//   t_max     sweep length in gamma0 t
//   n_points  samples on the uniform grid
//   h_form    standard | paper_verbatim
//   outputs   comma-separated output paths

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohdyn/cohdyn.hpp"

namespace cohdyn::cli {

struct ExperimentConfig {
  std::string state = "GHZ";
  double lambda = 1.0;
  double delta = 0.0;
  std::optional<std::vector<int>> mask;  // nullopt: every qubit coupled
  double t_max = 20.0;
  int n_points = 2000;
  HForm h_form = HForm::Standard;
  std::vector<std::string> outputs;
  std::filesystem::path base_dir;  // amplitude-file paths resolve against this
};

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// "1,2,3" -> {1,2,3}; "" or "none" -> {}; "all" -> nullopt.
std::optional<std::vector<int>> parse_mask(std::string_view text);
HForm parse_hform(std::string_view text);

struct ResolvedState {
  PureState state;
  std::string label;
};

ResolvedState resolve_state(const ExperimentConfig& config);
BathParams bath_params(const ExperimentConfig& config);
CouplingMask coupling_mask(const ExperimentConfig& config, int n_qubits);

}  // namespace cohdyn::cli
