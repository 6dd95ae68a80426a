#include <cmath>

#include <gtest/gtest.h>

#include "cohdyn/cohdyn.hpp"
#include "test_support.hpp"

using namespace cohdyn;

namespace {

const double kLog2_3 = std::log2(3.0);
const double kLog2_6 = std::log2(6.0);

// Reference values from tests/oracles/compute_oracles.py (numpy eigvalsh and
// explicit reshapes for the partial traces).
constexpr double kWWBarLocal = 1.049932735054937;
constexpr double kWWBarGlobal = 1.535029765666219;
constexpr double kWWBarPair = 0.568318255702843;
constexpr double kWWBarOneVsRest = 0.966711509963376;
constexpr double kWWBarMonogamy = 0.169925001442311;

DensityMatrix rho_of(NamedState s) { return density_of(named_state(s)); }

double binary_entropy(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

DensityMatrix plus_qubit() { return DensityMatrix::from_matrix(ComplexMatrix::Constant(2, 2, 0.5)); }

DensityMatrix zero_qubit() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  return DensityMatrix::from_matrix(m);
}

DensityMatrix bell_pair() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = 0.5;
  return DensityMatrix::from_matrix(m);
}

DensityMatrix random_product(std::uint64_t seed) {
  const std::vector<DensityMatrix> f{random_mixed_state(1, 1, seed), random_mixed_state(1, 1, seed + 7),
                                     random_mixed_state(1, 1, seed + 13)};
  return tensor_product(f);
}

}  // namespace

TEST(coherence, total_coherence_of_named_states) {
  EXPECT_NEAR(total_coherence(rho_of(NamedState::GHZ)), 1.0, 1e-12);
  EXPECT_NEAR(total_coherence(rho_of(NamedState::W)), kLog2_3, 1e-12);
  EXPECT_NEAR(total_coherence(rho_of(NamedState::WWBar)), kLog2_6, 1e-12);
}

TEST(coherence, total_coherence_matches_jacobi_reference) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const DensityMatrix rho = random_mixed_state(3, 2, seed);
    EXPECT_NEAR(total_coherence(rho), cohdyn::testing::reference_coherence(rho.matrix()), 1e-11);
  }
}

TEST(coherence, local_coherence) {
  EXPECT_NEAR(local_coherence(rho_of(NamedState::W)), 0.0, 1e-12);
  EXPECT_NEAR(local_coherence(rho_of(NamedState::GHZ)), 0.0, 1e-12);
  // Marginal [[1/2, 1/3], [1/3, 1/2]] has eigenvalues 5/6 and 1/6.
  const double expected = 3.0 * (1.0 - binary_entropy(5.0 / 6.0));
  EXPECT_NEAR(expected, kWWBarLocal, 1e-12);
  EXPECT_NEAR(local_coherence(rho_of(NamedState::WWBar)), kWWBarLocal, 1e-12);
}

TEST(coherence, local_coherence_equals_coherence_of_marginal_product) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const DensityMatrix rho = random_mixed_state(3, 1, seed);
    const std::vector<DensityMatrix> f{marginal(rho, 1), marginal(rho, 2), marginal(rho, 3)};
    const DensityMatrix pi = tensor_product(f);
    EXPECT_NEAR(local_coherence(rho), relative_entropy(pi, dephase(pi)), 1e-10);
  }
}

TEST(coherence, global_coherence) {
  EXPECT_NEAR(global_coherence(random_product(3)), 0.0, 1e-10);
  EXPECT_NEAR(global_coherence(rho_of(NamedState::W)), kLog2_3, 1e-12);
  EXPECT_NEAR(global_coherence(rho_of(NamedState::WWBar)), kWWBarGlobal, 1e-12);
}

TEST(coherence, partition_global) {
  const DensityMatrix w = rho_of(NamedState::W);
  EXPECT_NEAR(partition_global(w, Partition::finest(3)), global_coherence(w), 1e-12);
  const Partition one_rest = Partition::of({{1}, {2, 3}}, 3);
  EXPECT_NEAR(partition_global(w, one_rest), kLog2_3 - 2.0 / 3.0, 1e-12);

  const DensityMatrix r1 = random_mixed_state(1, 1, 3);
  const DensityMatrix r23 = random_mixed_state(2, 2, 4);
  EXPECT_NEAR(partition_global(tensor_product(r1, r23), one_rest), 0.0, 1e-10);

  // Block order is irrelevant.
  EXPECT_NEAR(partition_global(w, Partition::of({{2, 3}, {1}}, 3)), kLog2_3 - 2.0 / 3.0, 1e-12);
}

TEST(coherence, partition_validation) {
  EXPECT_THROW(Partition::of({{1}, {1, 2}}, 3), ValidationError);
  EXPECT_THROW(Partition::of({{1}, {2}}, 3), ValidationError);
  EXPECT_THROW(Partition::of({{1}, {}, {2, 3}}, 3), ValidationError);
  EXPECT_THROW(Partition::of({{0}, {1, 2}}, 2), ValidationError);
}

TEST(coherence, pairwise_global) {
  const DensityMatrix w = rho_of(NamedState::W);
  const DensityMatrix ghz = rho_of(NamedState::GHZ);
  for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
    EXPECT_NEAR(pairwise_global(w, i, j), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(pairwise_global(ghz, i, j), 0.0, 1e-12);
    EXPECT_NEAR(pairwise_global(random_product(11), i, j), 0.0, 1e-10);
    EXPECT_NEAR(pairwise_global(rho_of(NamedState::WWBar), i, j), kWWBarPair, 1e-12);
  }
  EXPECT_THROW(pairwise_global(w, 2, 2), ValidationError);
}

TEST(coherence, aggregates) {
  const Aggregates ghz = aggregates(rho_of(NamedState::GHZ));
  EXPECT_NEAR(ghz.tripartite, 1.0, 1e-12);
  EXPECT_NEAR(ghz.bipartite, 0.0, 1e-12);
  const Aggregates w = aggregates(rho_of(NamedState::W));
  EXPECT_NEAR(w.tripartite, kLog2_3, 1e-12);
  EXPECT_NEAR(w.bipartite, 2.0, 1e-12);
  const Aggregates prod = aggregates(random_product(5));
  EXPECT_NEAR(prod.tripartite, 0.0, 1e-10);
  EXPECT_NEAR(prod.bipartite, 0.0, 1e-10);
  EXPECT_THROW(aggregates(bell_pair()), ValidationError);
}

TEST(coherence, monogamy) {
  EXPECT_NEAR(monogamy(rho_of(NamedState::GHZ)), -1.0, 1e-12);
  EXPECT_NEAR(monogamy(rho_of(NamedState::W)), 2.0 - kLog2_3, 1e-12);
  EXPECT_NEAR(monogamy(rho_of(NamedState::WWBar)), kWWBarMonogamy, 1e-12);
  EXPECT_EQ(classify_monogamy(monogamy(rho_of(NamedState::GHZ))), MonogamyClass::Monogamous);
  EXPECT_EQ(classify_monogamy(monogamy(rho_of(NamedState::W))), MonogamyClass::Polygamous);

  // rho_1 (x) rho_23 with diagonal rho_1: every term vanishes.
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.7;
  const DensityMatrix split = tensor_product(DensityMatrix::from_matrix(d), random_mixed_state(2, 1, 9));
  EXPECT_NEAR(monogamy(split), 0.0, 1e-10);
  EXPECT_EQ(classify_monogamy(monogamy(split)), MonogamyClass::Degenerate);

  // Symmetric states give the same value for every focus.
  for (int f = 1; f <= 3; ++f) EXPECT_NEAR(monogamy(rho_of(NamedState::W), f), 2.0 - kLog2_3, 1e-12);
  EXPECT_THROW(monogamy(rho_of(NamedState::W), 4), ValidationError);
}

TEST(coherence, complementarity_on_random_states) {
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const DensityMatrix rho = seed % 2 ? density_of(random_pure_state(3, seed)) : random_mixed_state(3, 2, seed);
    const double c = total_coherence(rho);
    const double cl = local_coherence(rho);
    const double cg = global_coherence(rho);
    EXPECT_GE(cl, -1e-9);
    EXPECT_GE(cg, -1e-9) << "seed " << seed;
    EXPECT_NEAR(cl + cg, c, 1e-12);
  }
}

TEST(coherence, chain_rule) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const DensityMatrix rho = random_mixed_state(3, 1 + static_cast<int>(seed % 3), seed);
    const double lhs = partition_global(rho, Partition::finest(3));
    const double rhs = partition_global(rho, Partition::of({{1}, {2, 3}}, 3)) + pairwise_global(rho, 2, 3);
    EXPECT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(coherence, probes_never_increase_coherence) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const DensityMatrix rho = density_of(random_pure_state(3, seed));
    for (int q = 1; q <= 3; ++q) EXPECT_LE(total_coherence(probe(rho, q)), total_coherence(rho) + 1e-9);
  }
}

TEST(coherence, tuple_direct) {
  const CoherenceTuple ghz = tuple_direct(rho_of(NamedState::GHZ));
  const std::array<double, 7> ghz_expected{0, 0, 0, 0, 0, 0, 1};
  for (std::size_t k = 0; k < 7; ++k) EXPECT_NEAR(ghz.components()[k], ghz_expected[k], 1e-12);

  const CoherenceTuple w = tuple_direct(rho_of(NamedState::W));
  const std::array<double, 7> w_expected{0, 0, 0, 2.0 / 3, 2.0 / 3, 2.0 / 3, kLog2_3 - 2.0};
  for (std::size_t k = 0; k < 7; ++k) EXPECT_NEAR(w.components()[k], w_expected[k], 1e-12);
  EXPECT_LT(w.c123, 0.0);
  EXPECT_EQ(w.residual, 0.0);

  const std::vector<DensityMatrix> f{random_mixed_state(1, 1, 1), random_mixed_state(1, 1, 2), plus_qubit()};
  const CoherenceTuple prod = tuple_direct(tensor_product(f));
  EXPECT_NEAR(prod.c1, total_coherence(f[0]), 1e-12);
  EXPECT_NEAR(prod.c2, total_coherence(f[1]), 1e-12);
  EXPECT_NEAR(prod.c3, 1.0, 1e-12);
  for (double c : {prod.c12, prod.c13, prod.c23, prod.c123}) EXPECT_NEAR(c, 0.0, 1e-10);
}

TEST(coherence, tuple_probe_exact_on_products_and_bell_pairs) {
  const std::vector<DensityMatrix> f{random_mixed_state(1, 1, 21), random_mixed_state(1, 1, 22),
                                     random_mixed_state(1, 1, 23)};
  const DensityMatrix prod = tensor_product(f);
  const CoherenceTuple t = tuple_probe(prod);
  EXPECT_LT(t.residual, 1e-9);
  for (int q = 0; q < 3; ++q) EXPECT_NEAR(t.components()[static_cast<std::size_t>(q)], total_coherence(f[static_cast<std::size_t>(q)]), 1e-9);

  const DensityMatrix zero_bell = tensor_product(zero_qubit(), bell_pair());
  const CoherenceTuple b = tuple_probe(zero_bell);
  EXPECT_LT(b.residual, 1e-9);
  const std::array<double, 7> expected{0, 0, 0, 0, 0, 1, 0};
  for (std::size_t k = 0; k < 7; ++k) EXPECT_NEAR(b.components()[k], expected[k], 1e-9);

  // Bell pair on qubits 1 and 3.
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(0b001, 0b001) = m(0b001, 0b100) = m(0b100, 0b001) = m(0b100, 0b100) = 0.5;
  const CoherenceTuple b13 = tuple_probe(DensityMatrix::from_matrix(m));
  EXPECT_NEAR(b13.c13, 1.0, 1e-9);
  EXPECT_NEAR(b13.c12 + b13.c23 + b13.c123, 0.0, 1e-9);
}

TEST(coherence, tuple_probe_agrees_with_direct_and_reports_residual) {
  for (auto s : {NamedState::W, NamedState::GHZ, NamedState::WWBar}) {
    const ProbeReconstruction rec = reconstruct_from_probes(rho_of(s));
    const CoherenceTuple direct = tuple_direct(rho_of(s));
    EXPECT_TRUE(std::isfinite(rec.tuple.residual));
    EXPECT_GE(rec.tuple.residual, 0.0);
    for (std::size_t k = 0; k < 7; ++k) EXPECT_NEAR(rec.tuple.components()[k], direct.components()[k], 1e-9);
    EXPECT_NEAR(rec.observations[0], total_coherence(rho_of(s)), 1e-12);
    EXPECT_NEAR(rec.observations[7], 0.0, 1e-12);
  }
  const CoherenceTuple w = tuple_probe(rho_of(NamedState::W));
  for (double c : {w.c12, w.c13, w.c23}) EXPECT_NEAR(c, 2.0 / 3.0, 1e-9);
  // The W single-probe observation is the Eq.-13-style steady value 2/3.
  EXPECT_NEAR(reconstruct_from_probes(rho_of(NamedState::W)).observations[1], 2.0 / 3.0, 1e-9);
}

TEST(coherence, symmetric_states_have_symmetric_tuples) {
  for (auto s : {NamedState::W, NamedState::GHZ, NamedState::WWBar}) {
    const CoherenceTuple t = tuple_direct(rho_of(s));
    EXPECT_NEAR(t.c1, t.c2, 1e-10);
    EXPECT_NEAR(t.c2, t.c3, 1e-10);
    EXPECT_NEAR(t.c12, t.c13, 1e-10);
    EXPECT_NEAR(t.c13, t.c23, 1e-10);
  }
}

TEST(coherence, record_matches_individual_functionals) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const DensityMatrix rho = random_mixed_state(3, 1, seed);
    const CoherenceRecord r = coherence_record(rho);
    ASSERT_TRUE(r.tri.has_value());
    EXPECT_NEAR(r.total, total_coherence(rho), 1e-12);
    EXPECT_NEAR(r.local, local_coherence(rho), 1e-12);
    EXPECT_NEAR(r.tri->c12, pairwise_global(rho, 1, 2), 1e-12);
    EXPECT_NEAR(r.tri->c13, pairwise_global(rho, 1, 3), 1e-12);
    EXPECT_NEAR(r.tri->c23, pairwise_global(rho, 2, 3), 1e-12);
    EXPECT_NEAR(r.tri->c1_23, partition_global(rho, Partition::of({{1}, {2, 3}}, 3)), 1e-12);
    EXPECT_NEAR(r.tri->tg, aggregates(rho).tripartite, 1e-12);
    EXPECT_NEAR(r.tri->bg, aggregates(rho).bipartite, 1e-12);
    EXPECT_NEAR(r.tri->monogamy, monogamy(rho), 1e-12);
  }
  EXPECT_FALSE(coherence_record(bell_pair()).tri.has_value());
}
