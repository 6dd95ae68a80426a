#include "cohdyn/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cohdyn/errors.hpp"

namespace cohdyn {

namespace {

double xlog2x(double p) { return p > kEigenvalueFloor ? p * std::log2(p) : 0.0; }

}  // namespace

ValidationReport inspect(const ComplexMatrix& m) {
  ValidationReport report;
  if (m.rows() != m.cols() || m.rows() == 0) {
    report.hermiticity_error = std::numeric_limits<double>::infinity();
    report.trace_error = std::numeric_limits<double>::infinity();
    report.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return report;
  }
  report.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
  report.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  // The spectrum is taken from the Hermitian part so a tiny asymmetry does not
  // leak into the positivity check.
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  report.min_eigenvalue = hermitian_eigenvalues(herm).front();
  return report;
}

int qubits_for_dimension(Eigen::Index dim) {
  if (dim < 2) return -1;
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0) return -1;
    d /= 2;
    ++n;
  }
  return n;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (m.rows() != m.cols()) {
    throw ValidationError("density matrix must be square");
  }
  const int n = qubits_for_dimension(m.rows());
  if (n < 1) {
    std::ostringstream msg;
    msg << "density matrix dimension " << m.rows() << " is not a power of two >= 2";
    throw ValidationError(msg.str());
  }
  const ValidationReport report = inspect(m);
  if (!report.ok()) {
    std::ostringstream msg;
    msg << "invalid density matrix: hermiticity error " << report.hermiticity_error
        << ", trace error " << report.trace_error << ", min eigenvalue "
        << report.min_eigenvalue;
    throw ValidationError(msg.str());
  }
  return DensityMatrix(std::move(m), n);
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_matrix(tensor_product(a.matrix(), b.matrix()));
}

DensityMatrix tensor_product(std::span<const DensityMatrix> factors) {
  if (factors.empty()) throw ValidationError("tensor_product needs at least one factor");
  ComplexMatrix acc = factors.front().matrix();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    acc = tensor_product(acc, factors[k].matrix());
  }
  return DensityMatrix::from_matrix(std::move(acc));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw ValidationError("partial_trace: duplicate qubit index");
  }
  if (kept.front() < 1 || kept.back() > n) {
    std::ostringstream msg;
    msg << "partial_trace: qubit index out of range 1.." << n;
    throw ValidationError(msg.str());
  }
  if (static_cast<int>(kept.size()) == n) return rho;

  std::vector<int> traced;
  for (int q = 1; q <= n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }

  // Scatter a reduced index (most significant kept qubit first) back onto the
  // full register's bit positions.
  auto scatter = [n](std::size_t value, const std::vector<int>& qubits) {
    std::size_t out = 0;
    const std::size_t m = qubits.size();
    for (std::size_t k = 0; k < m; ++k) {
      if ((value >> (m - 1 - k)) & 1U) out |= std::size_t{1} << qubit_bit(qubits[k], n);
    }
    return out;
  };

  const std::size_t dk = std::size_t{1} << kept.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<std::size_t> kept_offsets(dk), traced_offsets(dt);
  for (std::size_t i = 0; i < dk; ++i) kept_offsets[i] = scatter(i, kept);
  for (std::size_t e = 0; e < dt; ++e) traced_offsets[e] = scatter(e, traced);

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk),
                                          static_cast<Eigen::Index>(dk));
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t e = 0; e < dt; ++e) {
        acc += m(static_cast<Eigen::Index>(kept_offsets[i] | traced_offsets[e]),
                 static_cast<Eigen::Index>(kept_offsets[j] | traced_offsets[e]));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

DensityMatrix marginal(const DensityMatrix& rho, int q) { return partial_trace(rho, {q}); }

DensityMatrix dephase(const DensityMatrix& rho) {
  ComplexMatrix d = ComplexMatrix::Zero(rho.dim(), rho.dim());
  d.diagonal() = rho.matrix().diagonal();
  return DensityMatrix::from_matrix(std::move(d));
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) s -= xlog2x(p);
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  // Diagonal inputs (every dephased state) skip the eigensolver.
  const ComplexMatrix& m = rho.matrix();
  const bool diagonal = (m - ComplexMatrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  std::vector<double> spectrum;
  if (diagonal) {
    spectrum.resize(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) spectrum[static_cast<std::size_t>(i)] = m(i, i).real();
  } else {
    spectrum = hermitian_eigenvalues(m);
  }
  return std::max(0.0, shannon_entropy(spectrum));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ValidationError("relative_entropy: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sigma.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  const auto& mu = solver.eigenvalues();
  const ComplexMatrix& v = solver.eigenvectors();

  // Tr rho log2 sigma = sum_k log2(mu_k) <v_k|rho|v_k>
  double cross = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double weight = (v.col(k).adjoint() * rho.matrix() * v.col(k))(0, 0).real();
    if (mu(k) <= kEigenvalueFloor) {
      if (weight > kValidationTolerance) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log2(mu(k));
  }
  return -von_neumann_entropy(rho) - cross;
}

}  // namespace cohdyn
