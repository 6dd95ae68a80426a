#pragma once

// Dense complex linear algebra for qubit-register density matrices.
//
// Conventions: qubit indices are 1-based and qubit 1 is the most significant
// bit of the computational basis label, so |q1 q2 ... qn> has index
// q1*2^(n-1) + ... + qn. Entropies are in bits.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cohdyn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kValidationTolerance = 1e-10;
inline constexpr double kEigenvalueFloor = 1e-12;

struct ValidationReport {
  double hermiticity_error = 0.0;  // max |m_ij - conj(m_ji)|
  double trace_error = 0.0;        // |Tr m - 1|
  double min_eigenvalue = 0.0;

  bool ok(double tol = kValidationTolerance) const {
    return hermiticity_error <= tol && trace_error <= tol && min_eigenvalue >= -tol;
  }
};

ValidationReport inspect(const ComplexMatrix& m);

/// Trace-one, Hermitian, positive-semidefinite matrix on n qubits.
///
/// Every instance has passed `inspect(...).ok()`; there is no way to build an
/// unvalidated one. Values are immutable.
class DensityMatrix {
 public:
  /// Throws ValidationError if `m` is not 2^n x 2^n or fails the physical checks.
  static DensityMatrix from_matrix(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double purity() const;

 private:
  DensityMatrix(ComplexMatrix m, int n_qubits) : m_(std::move(m)), n_qubits_(n_qubits) {}

  ComplexMatrix m_;
  int n_qubits_;
};

/// Number of qubits for a 2^n dimension, or -1 when `dim` is not a power of two.
int qubits_for_dimension(Eigen::Index dim);

/// Basis-index bit that carries 1-based qubit `q` of an n-qubit register.
inline std::size_t qubit_bit(int q, int n_qubits) {
  return static_cast<std::size_t>(n_qubits - q);
}

// Kronecker product; the left factor holds the more significant qubits.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix tensor_product(std::span<const DensityMatrix> factors);

/// Reduced state on the qubits in `keep` (1-based, any order, no duplicates).
/// The result keeps the original register order of the retained qubits.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

/// Single-qubit marginal rho_q.
DensityMatrix marginal(const DensityMatrix& rho, int q);

/// Completely dephased state: off-diagonal entries zeroed in the computational basis.
DensityMatrix dephase(const DensityMatrix& rho);

/// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// -sum l log2 l over the spectrum; eigenvalues below 1e-12 count as zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// Shannon entropy (bits) of a probability vector, 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);

/// S(rho || sigma) in bits. +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace cohdyn
