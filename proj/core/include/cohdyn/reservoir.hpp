#pragma once

// Exact reduced dynamics of qubits coupled to independent zero-temperature
// bosonic reservoirs with a Lorentzian spectral density
//
//   J(w) = (1/2pi) gamma0 lambda^2 / ((w0 - w - delta)^2 + lambda^2).
//
// A single qubit evolves as
//
//   rho(t) = [[1 - rho11 |h|^2, rho01 h], [rho10 conj(h), rho11 |h|^2]]
//
// with h(0) = 1 and dh/dt = -int_0^t f(t - s) h(s) ds. Closing the contour of
// f(s) = int J(w) exp(i (w0 - w) s) dw in the half plane where the exponential
// decays picks up the single pole at w0 - w = delta + i lambda, giving
//
//   f(s) = (gamma0 lambda / 2) exp((i delta - lambda) s),   s >= 0.
//
// Because the kernel is a single exponential, g(t) = int_0^t e^{(i delta -
// lambda)(t - s)} h(s) ds turns the integro-differential equation into the
// local system h' = -(gamma0 lambda / 2) g, g' = (i delta - lambda) g + h.
// Its solution with h(0) = 1, h'(0) = 0 is the Standard closed form below.
//
// Time is measured in units of 1/gamma0; lambda and delta are multiples of gamma0.

#include <span>
#include <vector>

#include "cohdyn/qlinalg.hpp"

namespace cohdyn {

struct BathParams {
  double gamma0 = 1.0;
  double lambda = 1.0;
  double delta = 0.0;

  /// Throws ValidationError unless gamma0 > 0, lambda > 0 and all finite.
  void validate() const;
};

enum class Regime { Markovian, NonMarkovian, Boundary };

std::string_view regime_name(Regime r);

/// Markovian iff gamma0 < lambda/2, non-Markovian iff gamma0 > lambda/2, with a
/// relative band of 1e-9 around equality reported as Boundary.
Regime regime(const BathParams& p);

/// Set of qubits (1-based) attached to a reservoir.
class CouplingMask {
 public:
  CouplingMask() = default;

  /// Sorts and deduplicates; throws ValidationError on indices outside 1..n.
  static CouplingMask of(std::vector<int> qubits, int n_qubits);
  static CouplingMask full(int n_qubits);
  static CouplingMask none() { return {}; }

  const std::vector<int>& qubits() const { return coupled_; }
  bool contains(int q) const;
  std::size_t size() const { return coupled_.size(); }
  bool empty() const { return coupled_.empty(); }

  /// Throws ValidationError if any index exceeds n_qubits.
  void check_fits(int n_qubits) const;

  bool operator==(const CouplingMask&) const = default;

 private:
  std::vector<int> coupled_;
};

enum class HForm {
  // e^{-(l - i d) t / 2} [cosh(W t/2) + ((l - i d)/W) sinh(W t/2)]
  Standard,
  // e^{-(l - i d) t} [cosh(W t/2) + ((l - i d)/W) sinh(W t/2)]^2, the square
  // of Standard. Kept for comparison only.
  PaperVerbatim,
};

std::string_view hform_name(HForm f);

/// Closed-form h(t) with W = sqrt((lambda - i delta)^2 - 2 gamma0 lambda).
/// Near W = 0 (|W| t < 1e-4) sinh(W t/2)/W is evaluated by its series.
Complex h_closed(double t, const BathParams& p, HForm form = HForm::Standard);

/// h on `t_grid` by fixed-step RK4 on the local (h, g) system. The step never
/// exceeds min(0.001/gamma0, 0.05/lambda, grid spacing). `t_grid` must start
/// at 0 and be non-decreasing.
std::vector<Complex> h_oracle(const BathParams& p, std::span<const double> t_grid);

inline constexpr double kAmplitudeTolerance = 1e-9;

struct KrausPair {
  ComplexMatrix k0;  // diag(1, h)
  ComplexMatrix k1;  // sqrt(1 - |h|^2) |0><1|
};

/// Throws ModelViolation when |h| > 1 + 1e-9; values in (1, 1 + 1e-9] are
/// treated as |h| = 1 for the decay amplitude.
KrausPair kraus_pair(Complex h);

/// Choi matrix sum_ij |i><j| (x) E(|i><j|) of the channel E given by `k`.
ComplexMatrix choi_matrix(const KrausPair& k);

/// Applies the amplitude-damping channel with amplitude h to every qubit in
/// `mask` and the identity elsewhere.
DensityMatrix apply_channels(const DensityMatrix& rho, const CouplingMask& mask, Complex h);

/// Heterogeneous variant: qubit q (1-based) is damped with amplitude
/// h_per_qubit[q - 1]; pass 1 for uncoupled qubits.
DensityMatrix apply_channels(const DensityMatrix& rho, std::span<const Complex> h_per_qubit);

/// Infinite-time decay of qubit q (Kraus |0><0|, |0><1|).
DensityMatrix probe(const DensityMatrix& rho, int q);

}  // namespace cohdyn
