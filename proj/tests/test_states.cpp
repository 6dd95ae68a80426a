#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "cohdyn/cohdyn.hpp"

using namespace cohdyn;

TEST(states, named_state_amplitudes) {
  const PureState ghz = named_state(NamedState::GHZ);
  EXPECT_DOUBLE_EQ(ghz[0b000].real(), 1.0 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(ghz[0b111].real(), 1.0 / std::sqrt(2.0));

  const PureState w = named_state(NamedState::W);
  for (int i = 0; i < 8; ++i) {
    const bool on = i == 0b001 || i == 0b010 || i == 0b100;
    EXPECT_NEAR(w[i].real(), on ? 1.0 / std::sqrt(3.0) : 0.0, 1e-16);
    EXPECT_EQ(w[i].imag(), 0.0);
  }

  const PureState ww = named_state(NamedState::WWBar);
  for (int i = 0; i < 8; ++i) {
    const int weight = std::popcount(static_cast<unsigned>(i));
    EXPECT_NEAR(ww[i].real(), (weight == 1 || weight == 2) ? 1.0 / std::sqrt(6.0) : 0.0, 1e-15);
  }
}

TEST(states, named_states_generalize_where_defined) {
  EXPECT_EQ(named_state(NamedState::GHZ, 5).n_qubits(), 5);
  EXPECT_NEAR(std::abs(named_state(NamedState::W, 4)[0b0100]), 0.5, 1e-15);
  EXPECT_THROW(named_state(NamedState::WWBar, 4), ValidationError);
  EXPECT_THROW(named_state(NamedState::WBar, 2), ValidationError);
  EXPECT_THROW(named_state(NamedState::GHZ, 1), ValidationError);
}

TEST(states, orthogonality) {
  const auto w = named_state(NamedState::W);
  EXPECT_NEAR(std::abs(w.inner(named_state(NamedState::WBar))), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(named_state(NamedState::GHZ).inner(w)), 0.0, 1e-12);
}

TEST(states, density_of_examples) {
  ComplexVector zero(2);
  zero << 1.0, 0.0;
  const DensityMatrix r0 = density_of(PureState::from_amplitudes(zero));
  EXPECT_EQ(r0(0, 0), Complex(1.0));
  EXPECT_EQ(r0(1, 1), Complex(0.0));

  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const DensityMatrix rp = density_of(PureState::from_amplitudes(plus));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(rp(i, j).real(), 0.5, 1e-15);

  const DensityMatrix rw = density_of(named_state(NamedState::W));
  int nonzero = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (std::abs(rw(i, j)) > 1e-15) {
        ++nonzero;
        EXPECT_NEAR(rw(i, j).real(), 1.0 / 3.0, 1e-15);
      }
    }
  }
  EXPECT_EQ(nonzero, 9);
  EXPECT_NEAR(rw.purity(), 1.0, 1e-12);
}

TEST(states, all_factory_outputs_are_valid_density_matrices) {
  for (auto s : {NamedState::W, NamedState::WBar, NamedState::GHZ, NamedState::WWBar}) {
    const DensityMatrix rho = density_of(named_state(s));
    EXPECT_TRUE(inspect(rho.matrix()).ok());
    EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
  }
}

TEST(states, random_pure_state_is_normalized_and_deterministic) {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 123456789ULL}) {
    const auto a = random_pure_state(3, seed);
    const auto b = random_pure_state(3, seed);
    EXPECT_NEAR(a.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_EQ((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff(), 0.0);
  }
  EXPECT_GT((random_pure_state(3, 1).amplitudes() - random_pure_state(3, 2).amplitudes()).norm(), 1e-3);
  EXPECT_THROW(random_pure_state(0, 1), ValidationError);
}

// Haar ensemble: E[Tr rho_1^2] = (dA + dB)/(dA dB + 1) = 6/9 for one qubit out
// of three. A 200k-sample numpy run (tests/oracles/compute_oracles.py) gave
// 0.66691 with per-sample spread 0.1005, so 1000 samples sit within ~0.01.
TEST(states, random_state_marginal_purity_matches_haar_average) {
  double sum = 0.0;
  constexpr int kSamples = 1000;
  for (int k = 0; k < kSamples; ++k) {
    sum += marginal(density_of(random_pure_state(3, 5000 + static_cast<std::uint64_t>(k))), 1).purity();
  }
  EXPECT_NEAR(sum / kSamples, 2.0 / 3.0, 0.01);
}

TEST(states, amplitude_file_round_trip_and_validation) {
  const PureState w = named_state(NamedState::W);
  std::stringstream buffer;
  write_amplitudes(buffer, w);
  const PureState back = read_amplitudes(buffer);
  EXPECT_LT((back.amplitudes() - w.amplitudes()).cwiseAbs().maxCoeff(), 1e-16);

  std::istringstream commented("# bell-like\n0.70710678 0\n\n0 0\n0 0\n0.70710678 0  # tail\n");
  const PureState bell = read_amplitudes(commented);
  EXPECT_EQ(bell.n_qubits(), 2);
  EXPECT_NEAR(bell.amplitudes().norm(), 1.0, 1e-15);

  std::istringstream three("1 0\n0 0\n0 0\n");
  EXPECT_THROW(read_amplitudes(three), ValidationError);
  std::istringstream unnormalized("1 0\n1 0\n");
  EXPECT_THROW(read_amplitudes(unnormalized), ValidationError);
  std::istringstream garbage("1 zero\n0 0\n");
  EXPECT_THROW(read_amplitudes(garbage), ValidationError);
  EXPECT_THROW(load_amplitude_file("/nonexistent/amps.txt"), IoError);
}
