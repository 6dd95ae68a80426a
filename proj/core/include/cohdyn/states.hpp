#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "cohdyn/qlinalg.hpp"

namespace cohdyn {

enum class NamedState { W, WBar, GHZ, WWBar };

std::optional<NamedState> parse_state_name(std::string_view name);
std::string_view state_name(NamedState s);

class PureState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws ValidationError unless the length is 2^n (n >= 1) and the norm is 1.
  static PureState from_amplitudes(ComplexVector amplitudes);

  int n_qubits() const { return n_qubits_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

  Complex inner(const PureState& other) const;

 private:
  PureState(ComplexVector a, int n) : amplitudes_(std::move(a)), n_qubits_(n) {}

  ComplexVector amplitudes_;
  int n_qubits_;
};

/// W and GHZ are defined for any n >= 2. WBar and WWBar are three-qubit states.
PureState named_state(NamedState name, int n_qubits = 3);

DensityMatrix density_of(const PureState& psi);

/// Normalized complex-Gaussian amplitudes from a seeded mt19937_64.
PureState random_pure_state(int n_qubits, std::uint64_t seed);

/// Reduced state of a random pure state on n + ancillas qubits.
DensityMatrix random_mixed_state(int n_qubits, int ancilla_qubits, std::uint64_t seed);

// Amplitude files: one "re im" pair per line in basis-label order. Blank lines
// and '#' comments are ignored. The vector must have 2^n entries and unit norm
// up to kFileNormTolerance; it is renormalized exactly after the check.
inline constexpr double kFileNormTolerance = 1e-6;
PureState read_amplitudes(std::istream& in);
PureState load_amplitude_file(const std::filesystem::path& path);
void write_amplitudes(std::ostream& out, const PureState& psi);

}  // namespace cohdyn
