#include "cohdyn/coherence.hpp"

#include <algorithm>
#include <sstream>

#include "cohdyn/errors.hpp"
#include "cohdyn/reservoir.hpp"

namespace cohdyn {

Partition Partition::of(std::vector<std::vector<int>> blocks, int n_qubits) {
  std::vector<int> seen;
  for (const auto& b : blocks) {
    if (b.empty()) throw ValidationError("partition block is empty");
    seen.insert(seen.end(), b.begin(), b.end());
  }
  std::sort(seen.begin(), seen.end());
  bool covers = static_cast<int>(seen.size()) == n_qubits;
  for (std::size_t k = 0; covers && k < seen.size(); ++k) covers = seen[k] == static_cast<int>(k) + 1;
  if (!covers) {
    std::ostringstream msg;
    msg << "partition blocks must be disjoint and cover qubits 1.." << n_qubits;
    throw ValidationError(msg.str());
  }
  Partition p;
  p.blocks_ = std::move(blocks);
  p.n_qubits_ = n_qubits;
  return p;
}

Partition Partition::finest(int n_qubits) {
  std::vector<std::vector<int>> blocks;
  for (int q = 1; q <= n_qubits; ++q) blocks.push_back({q});
  return of(std::move(blocks), n_qubits);
}

double total_coherence(const DensityMatrix& rho) {
  return von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho);
}

double local_coherence(const DensityMatrix& rho) {
  // Relative-entropy coherence is additive on product states, so C(pi(rho))
  // is the sum of the marginal coherences.
  double sum = 0.0;
  for (int q = 1; q <= rho.n_qubits(); ++q) sum += total_coherence(marginal(rho, q));
  return sum;
}

double global_coherence(const DensityMatrix& rho) {
  return total_coherence(rho) - local_coherence(rho);
}

double partition_global(const DensityMatrix& rho, const Partition& p) {
  if (p.n_qubits() != rho.n_qubits()) throw ValidationError("partition does not match register size");
  // C is additive on tensor products, so the product of block marginals never
  // has to be formed.
  double product_coherence = 0.0;
  for (const auto& block : p.blocks()) {
    product_coherence += total_coherence(partial_trace(rho, block));
  }
  return total_coherence(rho) - product_coherence;
}

double pairwise_global(const DensityMatrix& rho, int i, int j) {
  if (i == j) throw ValidationError("pairwise_global: qubits must differ");
  return global_coherence(partial_trace(rho, {i, j}));
}

namespace {

void require_three(const DensityMatrix& rho, const char* what) {
  if (rho.n_qubits() != 3) {
    std::ostringstream msg;
    msg << what << " requires a three-qubit state, got " << rho.n_qubits() << " qubits";
    throw ValidationError(msg.str());
  }
}

double bipartition_global(const DensityMatrix& rho, int single) {
  std::vector<int> rest;
  for (int q = 1; q <= 3; ++q) {
    if (q != single) rest.push_back(q);
  }
  return partition_global(rho, Partition::of({{single}, rest}, 3));
}

}  // namespace

Aggregates aggregates(const DensityMatrix& rho) {
  require_three(rho, "aggregates");
  const double c12 = pairwise_global(rho, 1, 2);
  const double c13 = pairwise_global(rho, 1, 3);
  const double c23 = pairwise_global(rho, 2, 3);
  return {c23 + bipartition_global(rho, 1), c12 + c13 + c23};
}

double monogamy(const DensityMatrix& rho, int focus) {
  require_three(rho, "monogamy");
  if (focus < 1 || focus > 3) throw ValidationError("monogamy: focus qubit out of range");
  double pairs = 0.0;
  for (int q = 1; q <= 3; ++q) {
    if (q != focus) pairs += pairwise_global(rho, focus, q);
  }
  return pairs - bipartition_global(rho, focus);
}

MonogamyClass classify_monogamy(double m) {
  if (std::abs(m) < kMonogamyZeroTolerance) return MonogamyClass::Degenerate;
  return m < 0.0 ? MonogamyClass::Monogamous : MonogamyClass::Polygamous;
}

std::string_view monogamy_class_name(MonogamyClass c) {
  switch (c) {
    case MonogamyClass::Monogamous: return "monogamous";
    case MonogamyClass::Polygamous: return "polygamous";
    case MonogamyClass::Degenerate: return "degenerate";
  }
  return "?";
}

CoherenceTuple tuple_direct(const DensityMatrix& rho) {
  require_three(rho, "tuple_direct");
  CoherenceTuple t;
  t.c1 = total_coherence(marginal(rho, 1));
  t.c2 = total_coherence(marginal(rho, 2));
  t.c3 = total_coherence(marginal(rho, 3));
  t.c12 = pairwise_global(rho, 1, 2);
  t.c13 = pairwise_global(rho, 1, 3);
  t.c23 = pairwise_global(rho, 2, 3);
  t.c123 = total_coherence(rho) - (t.c1 + t.c2 + t.c3) - (t.c12 + t.c13 + t.c23);
  return t;
}

ProbeReconstruction reconstruct_from_probes(const DensityMatrix& rho) {
  require_three(rho, "tuple_probe");
  ProbeReconstruction out;
  for (unsigned subset = 0; subset < 8; ++subset) {
    DensityMatrix probed = rho;
    for (int q = 1; q <= 3; ++q) {
      if (subset & (1U << (q - 1))) probed = probe(probed, q);
    }
    out.observations[subset] = total_coherence(probed);
  }

  // Component supports in tuple order: {1},{2},{3},{1,2},{1,3},{2,3},{1,2,3}.
  constexpr std::array<unsigned, 7> support{0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
  Eigen::Matrix<double, 8, 7> design = Eigen::Matrix<double, 8, 7>::Zero();
  Eigen::Matrix<double, 8, 1> obs;
  for (unsigned subset = 0; subset < 8; ++subset) {
    obs(subset) = out.observations[subset];
    for (std::size_t c = 0; c < support.size(); ++c) {
      if ((support[c] & subset) == 0) design(subset, static_cast<Eigen::Index>(c)) = 1.0;
    }
  }
  const Eigen::Matrix<double, 7, 1> x = design.colPivHouseholderQr().solve(obs);
  const double residual = (design * x - obs).cwiseAbs().maxCoeff();

  out.tuple = CoherenceTuple{x(0), x(1), x(2), x(3), x(4), x(5), x(6), residual};
  return out;
}

CoherenceTuple tuple_probe(const DensityMatrix& rho) { return reconstruct_from_probes(rho).tuple; }

CoherenceRecord coherence_record(const DensityMatrix& rho) {
  CoherenceRecord r;
  const int n = rho.n_qubits();
  r.total = total_coherence(rho);
  std::vector<double> local(static_cast<std::size_t>(n));
  for (int q = 1; q <= n; ++q) local[static_cast<std::size_t>(q - 1)] = total_coherence(marginal(rho, q));
  for (double c : local) r.local += c;
  r.global = r.total - r.local;
  if (n != 3) return r;

  // Reuse the marginal coherences: C_{i:j} = C(rho_ij) - C_i - C_j and
  // C_{1:23} = C - C_1 - C(rho_23).
  const double pair12 = total_coherence(partial_trace(rho, {1, 2}));
  const double pair13 = total_coherence(partial_trace(rho, {1, 3}));
  const double pair23 = total_coherence(partial_trace(rho, {2, 3}));
  CoherenceRecord::Tripartite t;
  t.c12 = pair12 - local[0] - local[1];
  t.c13 = pair13 - local[0] - local[2];
  t.c23 = pair23 - local[1] - local[2];
  t.c1_23 = r.total - local[0] - pair23;
  t.tg = t.c23 + t.c1_23;
  t.bg = t.c12 + t.c13 + t.c23;
  t.monogamy = t.c12 + t.c13 - t.c1_23;
  r.tri = t;
  return r;
}

}  // namespace cohdyn
