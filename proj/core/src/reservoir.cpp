#include "cohdyn/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cohdyn/errors.hpp"

namespace cohdyn {

void BathParams::validate() const {
  if (!std::isfinite(gamma0) || !std::isfinite(lambda) || !std::isfinite(delta)) {
    throw ValidationError("bath parameters must be finite");
  }
  if (gamma0 <= 0.0) throw ValidationError("bath parameter gamma0 must be > 0");
  if (lambda <= 0.0) throw ValidationError("bath parameter lambda must be > 0");
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Markovian: return "markovian";
    case Regime::NonMarkovian: return "non_markovian";
    case Regime::Boundary: return "boundary";
  }
  return "?";
}

Regime regime(const BathParams& p) {
  const double half_width = 0.5 * p.lambda;
  const double eps = 1e-9 * std::max(std::abs(p.gamma0), std::abs(half_width));
  if (p.gamma0 < half_width - eps) return Regime::Markovian;
  if (p.gamma0 > half_width + eps) return Regime::NonMarkovian;
  return Regime::Boundary;
}

CouplingMask CouplingMask::of(std::vector<int> qubits, int n_qubits) {
  std::sort(qubits.begin(), qubits.end());
  qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
  CouplingMask mask;
  mask.coupled_ = std::move(qubits);
  mask.check_fits(n_qubits);
  return mask;
}

CouplingMask CouplingMask::full(int n_qubits) {
  std::vector<int> all(static_cast<std::size_t>(n_qubits));
  for (int q = 1; q <= n_qubits; ++q) all[static_cast<std::size_t>(q - 1)] = q;
  return of(std::move(all), n_qubits);
}

bool CouplingMask::contains(int q) const {
  return std::binary_search(coupled_.begin(), coupled_.end(), q);
}

void CouplingMask::check_fits(int n_qubits) const {
  if (!coupled_.empty() && (coupled_.front() < 1 || coupled_.back() > n_qubits)) {
    std::ostringstream msg;
    msg << "coupling mask index out of range 1.." << n_qubits;
    throw ValidationError(msg.str());
  }
}

std::string_view hform_name(HForm f) {
  return f == HForm::Standard ? "standard" : "paper_verbatim";
}

Complex h_closed(double t, const BathParams& p, HForm form) {
  const Complex a(p.lambda, -p.delta);
  const Complex omega = std::sqrt(a * a - 2.0 * p.gamma0 * p.lambda);
  const Complex x = 0.5 * omega * t;

  Complex h;
  if (std::abs(omega) * t < 1e-4) {
    // cosh x = 1 + x^2/2 + x^4/24, sinh(x)/W = (t/2)(1 + x^2/6 + x^4/120)
    const Complex x2 = x * x;
    const Complex ch = 1.0 + x2 / 2.0 + x2 * x2 / 24.0;
    const Complex sh_over_omega = 0.5 * t * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
    h = std::exp(-0.5 * a * t) * (ch + a * sh_over_omega);
  } else if (std::abs(x.real()) < 300.0) {
    h = std::exp(-0.5 * a * t) * (std::cosh(x) + (a / omega) * std::sinh(x));
  } else {
    // Large |Re W| t: regroup as two exponentials so cosh/sinh cannot overflow.
    // The roots (-a +- W)/2 of s^2 + a s + gamma0 lambda/2 have Re <= 0.
    const Complex r = a / omega;
    h = 0.5 * ((1.0 + r) * std::exp(0.5 * (omega - a) * t) +
               (1.0 - r) * std::exp(0.5 * (-omega - a) * t));
  }
  return form == HForm::Standard ? h : h * h;
}

std::vector<Complex> h_oracle(const BathParams& p, std::span<const double> t_grid) {
  if (t_grid.empty()) return {};
  if (t_grid.front() != 0.0) throw ValidationError("h_oracle: time grid must start at 0");
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] >= t_grid[k - 1]) || !std::isfinite(t_grid[k])) {
      throw ValidationError("h_oracle: time grid must be finite and non-decreasing");
    }
  }

  const double coupling = 0.5 * p.gamma0 * p.lambda;
  const Complex pole(-p.lambda, p.delta);
  double max_step = 0.05 / p.lambda;
  if (p.gamma0 > 0.0) max_step = std::min(max_step, 0.001 / p.gamma0);

  auto rhs = [&](Complex h, Complex g, Complex& dh, Complex& dg) {
    dh = -coupling * g;
    dg = pole * g + h;
  };

  std::vector<Complex> out;
  out.reserve(t_grid.size());
  Complex h{1.0, 0.0};
  Complex g{0.0, 0.0};
  out.push_back(h);
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double span = t_grid[k] - t_grid[k - 1];
    if (span == 0.0) {
      out.push_back(h);
      continue;
    }
    const double steps_needed = std::ceil(span / max_step);
    if (steps_needed > 1e9) throw NumericalError("h_oracle: too many integration steps");
    const auto n_steps = static_cast<long>(std::max(1.0, steps_needed));
    const double dt = span / static_cast<double>(n_steps);
    if (t_grid[k - 1] + dt == t_grid[k - 1]) {
      throw NumericalError("h_oracle: step size underflow in time grid");
    }
    for (long s = 0; s < n_steps; ++s) {
      Complex k1h, k1g, k2h, k2g, k3h, k3g, k4h, k4g;
      rhs(h, g, k1h, k1g);
      rhs(h + 0.5 * dt * k1h, g + 0.5 * dt * k1g, k2h, k2g);
      rhs(h + 0.5 * dt * k2h, g + 0.5 * dt * k2g, k3h, k3g);
      rhs(h + dt * k3h, g + dt * k3g, k4h, k4g);
      h += dt / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
      g += dt / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    }
    out.push_back(h);
  }
  return out;
}

KrausPair kraus_pair(Complex h) {
  const double mag = std::abs(h);
  if (!std::isfinite(mag) || mag > 1.0 + kAmplitudeTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "|h| = " << mag << " exceeds 1: damping map is not completely positive";
    throw ModelViolation(msg.str());
  }
  KrausPair k{ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)};
  k.k0(0, 0) = 1.0;
  k.k0(1, 1) = h;
  k.k1(0, 1) = std::sqrt(std::max(0.0, 1.0 - mag * mag));
  return k;
}

ComplexMatrix choi_matrix(const KrausPair& k) {
  ComplexMatrix choi = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(2, 2);
      unit(i, j) = 1.0;
      const ComplexMatrix image = k.k0 * unit * k.k0.adjoint() + k.k1 * unit * k.k1.adjoint();
      choi.block(2 * i, 2 * j, 2, 2) = image;
    }
  }
  return choi;
}

namespace {

// out = sum_k K_k rho K_k^dagger with each K_k acting on one qubit, in place on
// basis-index pairs that differ only in that qubit's bit.
ComplexMatrix apply_local(const ComplexMatrix& rho, const KrausPair& kraus, std::size_t bit) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index stride = Eigen::Index{1} << bit;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const ComplexMatrix* kp : {&kraus.k0, &kraus.k1}) {
    const ComplexMatrix& k = *kp;
    if (k.cwiseAbs().maxCoeff() == 0.0) continue;
    // left multiply: rows
    ComplexMatrix left(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (r & stride) continue;
      const Eigen::Index r1 = r | stride;
      left.row(r) = k(0, 0) * rho.row(r) + k(0, 1) * rho.row(r1);
      left.row(r1) = k(1, 0) * rho.row(r) + k(1, 1) * rho.row(r1);
    }
    // right multiply by K^dagger: columns
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (c & stride) continue;
      const Eigen::Index c1 = c | stride;
      out.col(c) += std::conj(k(0, 0)) * left.col(c) + std::conj(k(0, 1)) * left.col(c1);
      out.col(c1) += std::conj(k(1, 0)) * left.col(c) + std::conj(k(1, 1)) * left.col(c1);
    }
  }
  return out;
}

}  // namespace

DensityMatrix apply_channels(const DensityMatrix& rho, const CouplingMask& mask, Complex h) {
  mask.check_fits(rho.n_qubits());
  if (mask.empty()) return rho;
  const KrausPair kraus = kraus_pair(h);
  ComplexMatrix m = rho.matrix();
  for (int q : mask.qubits()) m = apply_local(m, kraus, qubit_bit(q, rho.n_qubits()));
  return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix apply_channels(const DensityMatrix& rho, std::span<const Complex> h_per_qubit) {
  if (static_cast<int>(h_per_qubit.size()) != rho.n_qubits()) {
    throw ValidationError("apply_channels: need one amplitude per qubit");
  }
  ComplexMatrix m = rho.matrix();
  for (int q = 1; q <= rho.n_qubits(); ++q) {
    const Complex h = h_per_qubit[static_cast<std::size_t>(q - 1)];
    const KrausPair kraus = kraus_pair(h);
    if (h == Complex(1.0, 0.0)) continue;
    m = apply_local(m, kraus, qubit_bit(q, rho.n_qubits()));
  }
  return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix probe(const DensityMatrix& rho, int q) {
  if (q < 1 || q > rho.n_qubits()) throw ValidationError("probe: qubit index out of range");
  return apply_channels(rho, CouplingMask::of({q}, rho.n_qubits()), Complex(0.0, 0.0));
}

}  // namespace cohdyn
