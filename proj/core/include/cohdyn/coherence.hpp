#pragma once

// Relative-entropy coherence in the computational basis and its distribution
// over the qubits of a register. All quantities are in bits.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "cohdyn/qlinalg.hpp"

namespace cohdyn {

/// Ordered, disjoint blocks of 1-based qubit indices covering 1..n.
class Partition {
 public:
  static Partition of(std::vector<std::vector<int>> blocks, int n_qubits);
  static Partition finest(int n_qubits);

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int n_qubits() const { return n_qubits_; }

 private:
  std::vector<std::vector<int>> blocks_;
  int n_qubits_ = 0;
};

/// C(rho) = S(dephase(rho)) - S(rho).
double total_coherence(const DensityMatrix& rho);

/// Coherence of rho_1 (x) ... (x) rho_n, i.e. the sum of single-qubit coherences.
double local_coherence(const DensityMatrix& rho);

/// total - local.
double global_coherence(const DensityMatrix& rho);

/// C(rho) - C(tensor of block marginals).
double partition_global(const DensityMatrix& rho, const Partition& p);

/// Global coherence of the two-qubit marginal rho_ij.
double pairwise_global(const DensityMatrix& rho, int i, int j);

struct Aggregates {
  double tripartite = 0.0;  // C_TG = C_{2:3} + C_{1:23}
  double bipartite = 0.0;   // C_BG = C_{1:2} + C_{1:3} + C_{2:3}
};

Aggregates aggregates(const DensityMatrix& rho);

/// M = C_{f:a} + C_{f:b} - C_{f:ab} for focus qubit f and the other two a, b.
double monogamy(const DensityMatrix& rho, int focus = 1);

enum class MonogamyClass { Monogamous, Polygamous, Degenerate };

inline constexpr double kMonogamyZeroTolerance = 1e-9;

/// |M| < 1e-9 is Degenerate, M < 0 Monogamous, M > 0 Polygamous.
MonogamyClass classify_monogamy(double m);
std::string_view monogamy_class_name(MonogamyClass c);

struct CoherenceTuple {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double c12 = 0.0, c13 = 0.0, c23 = 0.0;
  double c123 = 0.0;     // C - sum c_j - sum c_ij; may be negative
  double residual = 0.0; // probe reconstruction inconsistency (0 for tuple_direct)

  std::array<double, 7> components() const { return {c1, c2, c3, c12, c13, c23, c123}; }
};

CoherenceTuple tuple_direct(const DensityMatrix& rho);

struct ProbeReconstruction {
  CoherenceTuple tuple;
  // Total coherence after probing each subset of {1,2,3}; bit (q-1) of the
  // array index set means qubit q was probed. Index 0 is the unprobed state.
  std::array<double, 8> observations{};
};

/// Rebuilds the tuple from the total coherence after every probe combination.
/// The eight observations are fitted by least squares to the additive model
/// C(probed S) = sum of components whose qubits avoid S; `residual` is the
/// largest absolute misfit.
ProbeReconstruction reconstruct_from_probes(const DensityMatrix& rho);
CoherenceTuple tuple_probe(const DensityMatrix& rho);

/// Everything the time sweeps record at one instant. The three-qubit entries
/// are present only when the register has exactly three qubits.
struct CoherenceRecord {
  double total = 0.0;
  double local = 0.0;
  double global = 0.0;

  struct Tripartite {
    double c12 = 0.0, c13 = 0.0, c23 = 0.0;
    double c1_23 = 0.0;
    double tg = 0.0;
    double bg = 0.0;
    double monogamy = 0.0;
  };
  std::optional<Tripartite> tri;
};

CoherenceRecord coherence_record(const DensityMatrix& rho);

}  // namespace cohdyn
