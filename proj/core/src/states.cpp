#include "cohdyn/states.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "cohdyn/errors.hpp"

namespace cohdyn {

std::optional<NamedState> parse_state_name(std::string_view name) {
  if (name == "W") return NamedState::W;
  if (name == "WBAR") return NamedState::WBar;
  if (name == "GHZ") return NamedState::GHZ;
  if (name == "WWBAR") return NamedState::WWBar;
  return std::nullopt;
}

std::string_view state_name(NamedState s) {
  switch (s) {
    case NamedState::W: return "W";
    case NamedState::WBar: return "WBAR";
    case NamedState::GHZ: return "GHZ";
    case NamedState::WWBar: return "WWBAR";
  }
  return "?";
}

PureState PureState::from_amplitudes(ComplexVector amplitudes) {
  const int n = qubits_for_dimension(amplitudes.size());
  if (n < 1) {
    std::ostringstream msg;
    msg << "pure state needs 2^n amplitudes (n >= 1), got " << amplitudes.size();
    throw ValidationError(msg.str());
  }
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "pure state is not normalized: sum |a|^2 = " << norm2;
    throw ValidationError(msg.str());
  }
  return PureState(std::move(amplitudes), n);
}

Complex PureState::inner(const PureState& other) const {
  if (other.amplitudes_.size() != amplitudes_.size()) {
    throw ValidationError("inner product of states with different qubit counts");
  }
  return amplitudes_.dot(other.amplitudes_);
}

namespace {

ComplexVector uniform_over_weight(int n, int weight) {
  const std::size_t dim = std::size_t{1} << n;
  ComplexVector a = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  std::size_t count = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (std::popcount(i) == weight) ++count;
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  for (std::size_t i = 0; i < dim; ++i) {
    if (std::popcount(i) == weight) a(static_cast<Eigen::Index>(i)) = amp;
  }
  return a;
}

}  // namespace

PureState named_state(NamedState name, int n_qubits) {
  const bool three_only = name == NamedState::WBar || name == NamedState::WWBar;
  if ((three_only && n_qubits != 3) || n_qubits < 2 || n_qubits > 10) {
    std::ostringstream msg;
    msg << "state " << state_name(name) << " is not defined for " << n_qubits << " qubits";
    throw ValidationError(msg.str());
  }
  switch (name) {
    case NamedState::W:
      return PureState::from_amplitudes(uniform_over_weight(n_qubits, 1));
    case NamedState::WBar:
      return PureState::from_amplitudes(uniform_over_weight(3, 2));
    case NamedState::GHZ: {
      ComplexVector a = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
      a(0) = a(a.size() - 1) = 1.0 / std::sqrt(2.0);
      return PureState::from_amplitudes(std::move(a));
    }
    case NamedState::WWBar: {
      // (|W> + |Wbar>)/sqrt 2: 1/sqrt 6 on every weight-1 and weight-2 label.
      ComplexVector a = (uniform_over_weight(3, 1) + uniform_over_weight(3, 2)) / std::sqrt(2.0);
      return PureState::from_amplitudes(std::move(a));
    }
  }
  throw ValidationError("unknown named state");
}

DensityMatrix density_of(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix::from_matrix(a * a.adjoint());
}

PureState random_pure_state(int n_qubits, std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > 12) {
    throw ValidationError("random_pure_state: qubit count must be in 1..12");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector a(Eigen::Index{1} << n_qubits);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a(i) = Complex(re, im);
  }
  a /= a.norm();
  return PureState::from_amplitudes(std::move(a));
}

DensityMatrix random_mixed_state(int n_qubits, int ancilla_qubits, std::uint64_t seed) {
  if (ancilla_qubits < 0) throw ValidationError("random_mixed_state: negative ancilla count");
  const DensityMatrix joint = density_of(random_pure_state(n_qubits + ancilla_qubits, seed));
  std::vector<int> keep(static_cast<std::size_t>(n_qubits));
  for (int q = 1; q <= n_qubits; ++q) keep[static_cast<std::size_t>(q - 1)] = q;
  return partial_trace(joint, keep);
}

PureState read_amplitudes(std::istream& in) {
  std::vector<Complex> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> re)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ValidationError("amplitude file line " + std::to_string(line_no) + ": expected \"re im\"");
    }
    std::string extra;
    if (!(fields >> im) || (fields >> extra)) {
      throw ValidationError("amplitude file line " + std::to_string(line_no) + ": expected \"re im\"");
    }
    values.emplace_back(re, im);
  }
  ComplexVector a = Eigen::Map<const ComplexVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  if (qubits_for_dimension(a.size()) < 1) {
    throw ValidationError("amplitude file: " + std::to_string(a.size()) +
                          " amplitudes is not a power of two >= 2");
  }
  const double norm2 = a.squaredNorm();
  if (std::abs(norm2 - 1.0) > kFileNormTolerance) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "amplitude file: state is not normalized (sum |a|^2 = " << norm2 << ")";
    throw ValidationError(msg.str());
  }
  a /= std::sqrt(norm2);
  return PureState::from_amplitudes(std::move(a));
}

PureState load_amplitude_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open amplitude file " + path.string());
  return read_amplitudes(in);
}

void write_amplitudes(std::ostream& out, const PureState& psi) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    out << psi[i].real() << ' ' << psi[i].imag() << '\n';
  }
}

}  // namespace cohdyn
