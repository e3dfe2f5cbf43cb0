#include <gtest/gtest.h>

#include <random>

#include "genent/error.hpp"
#include "genent/purity.hpp"
#include "oracles.hpp"

using namespace genent;

TEST(Purity, LocalQubitsMatchesDirectSum) {
  std::mt19937_64 rng(31);
  for (std::size_t n = 1; n <= 5; ++n) {
    const ObservableAlgebra alg = local_qubit_algebra(n);
    for (int t = 0; t < 10; ++t) {
      const PureState psi = haar_random(alg.dim(), rng);
      EXPECT_NEAR(h_purity(psi, alg), oracle::local_purity(psi.amplitudes(), static_cast<int>(n)), 1e-12);
    }
  }
}

TEST(Purity, MeyerWallachAgainstOracleAndComplement) {
  std::mt19937_64 rng(32);
  for (std::size_t n = 2; n <= 5; ++n) {
    const ObservableAlgebra alg = local_qubit_algebra(n);
    for (int t = 0; t < 10; ++t) {
      const PureState psi = haar_random(alg.dim(), rng);
      const double q = meyer_wallach(psi);
      EXPECT_NEAR(q, oracle::meyer_wallach(psi.amplitudes(), static_cast<int>(n)), 1e-12);
      EXPECT_NEAR(q, 1.0 - h_purity(psi, alg), 1e-12);
    }
  }
}

TEST(Purity, ClosedFormFamilies) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const ObservableAlgebra alg = local_qubit_algebra(n);
    const double nn = static_cast<double>(n);
    EXPECT_NEAR(h_purity(ghz(n), alg), 0.0, 1e-12);
    EXPECT_NEAR(h_purity(w_state(n), alg), (nn - 2) * (nn - 2) / (nn * nn), 1e-12);
    const std::vector<BlochVector> b(n, BlochVector{0.6, 0.0, -0.8});
    EXPECT_NEAR(h_purity(product_state(b), alg), 1.0, 1e-12);
  }
}

TEST(Purity, BipartiteLinearEntropyAndConcurrence) {
  std::mt19937_64 rng(33);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 3}, {3, 4}}) {
    const ObservableAlgebra alg = bipartite_algebra(m, n);
    const std::vector<std::size_t> dims{m, n}, keep{0};
    for (int t = 0; t < 5; ++t) {
      const PureState psi = haar_random(m * n, rng);
      const CMatrix ra = partial_trace(psi.projector(), dims, keep);
      const double tr2 = (ra * ra).trace().real();
      // su(m) (+) su(n) with K fixed by the product reference.
      const double pa = (m * tr2 - 1.0) / (m - 1.0), pb = (n * tr2 - 1.0) / (n - 1.0);
      // Embedded generators carry a 1/sqrt(dim of the other factor).
      const double ka = (m - 1.0) / (m * n), kb = (n - 1.0) / (n * m);
      EXPECT_NEAR(h_purity(psi, alg), (ka * pa + kb * pb) / (ka + kb), 1e-10);
      if (m == 2 && n == 2) {
        EXPECT_NEAR(h_purity(psi, alg), 2.0 * tr2 - 1.0, 1e-12);
        const double c = oracle::pure_concurrence(psi.amplitudes());
        EXPECT_NEAR(1.0 - h_purity(psi, alg), c * c, 1e-12);
      }
    }
  }
}

TEST(Purity, ReducedStateIsLinearInRho) {
  std::mt19937_64 rng(34);
  const ObservableAlgebra alg = local_qubit_algebra(3);
  const PureState a = haar_random(8, rng), b = haar_random(8, rng);
  const std::vector<double> w{0.3, 0.7};
  const std::vector<PureState> s{a, b};
  const ReducedState mix = reduce(DensityMatrix::mixture(w, s), alg);
  const ReducedState ra = reduce(a, alg), rb = reduce(b, alg);
  for (std::size_t i = 0; i < alg.size(); ++i)
    EXPECT_NEAR(mix.expectations[i], 0.3 * ra.expectations[i] + 0.7 * rb.expectations[i], 1e-13);
  EXPECT_NEAR(reduce(a, alg).purity(), h_purity(a, alg), 1e-15);
  EXPECT_THROW(reduce(haar_random(4, rng), alg), InvalidArgument);
}

TEST(Purity, UnentangledPredicate) {
  const ObservableAlgebra alg = local_qubit_algebra(3);
  EXPECT_TRUE(is_unentangled(PureState::basis(8, 5), alg));
  EXPECT_FALSE(is_unentangled(w_state(3), alg));
}

TEST(GroundState, CoherentStatesAreUniqueGround) {
  const ObservableAlgebra alg = local_qubit_algebra(3);
  const std::vector<BlochVector> b{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  const GroundStateReport r = ground_state_check(product_state(b), alg);
  EXPECT_TRUE(r.is_unique_ground);
  EXPECT_NEAR(r.overlap, 1.0, 1e-12);
  EXPECT_GT(r.gap, 0.1);
}

TEST(GroundState, EntangledStatesFail) {
  const ObservableAlgebra alg = local_qubit_algebra(3);
  // The GHZ reduced state vanishes.
  const GroundStateReport g = ground_state_check(ghz(3), alg);
  EXPECT_FALSE(g.is_unique_ground);
  EXPECT_LT(g.width, 1e-12);
  EXPECT_FALSE(ground_state_check(w_state(3), alg).is_unique_ground);
}

TEST(LowestWeight, Examples) {
  const ObservableAlgebra alg = local_qubit_algebra(2);
  EXPECT_TRUE(lowest_weight_check(PureState::basis(4, 3), alg));
  EXPECT_FALSE(lowest_weight_check(PureState::basis(4, 0), alg));
  const ObservableAlgebra spin = spin_algebra(1.5);
  EXPECT_TRUE(lowest_weight_check(spin_basis_state(1.5, -1.5), spin));
  EXPECT_FALSE(lowest_weight_check(spin_basis_state(1.5, -0.5), spin));
  ObservableAlgebra::Spec spec{.name = "no-lowering",
                               .kind = AlgebraKind::Custom,
                               .generators = {},
                               .reference_state = PureState::basis(4, 0),
                               .lowering_ops = {},
                               .lowest_weight_state = std::nullopt,
                               .layout = std::nullopt,
                               .irreducible = true,
                               .spin = 0.5,
                               .copies = 2};
  for (const SparseCMatrix& x : alg.basis()) spec.generators.push_back(x);
  EXPECT_THROW(lowest_weight_check(PureState::basis(4, 3), ObservableAlgebra(spec)), InvalidArgument);
}

TEST(TheoremSuite, IrreducibleAlgebrasHaveNoCounterexamples) {
  for (const ObservableAlgebra& alg :
       {local_qubit_algebra(3), spin_algebra(1.0), spin_algebra(2.5), bipartite_algebra(2, 3),
        fermion_so_even_algebra(4)}) {
    SCOPED_TRACE(alg.name());
    const TheoremReport r = theorem_suite(alg, {.orbit_samples = 20, .random_samples = 20, .seed = 3});
    EXPECT_EQ(r.orbit_failures, 0u);
    EXPECT_EQ(r.random_failures, 0u);
    EXPECT_EQ(r.samples.size(), 40u);
    for (const TheoremSample& s : r.samples) {
      if (s.orbit) {
        EXPECT_NEAR(s.purity, 1.0, 1e-8);
        EXPECT_TRUE(s.ground.is_unique_ground);
        ASSERT_TRUE(s.lowest_weight.has_value());
        EXPECT_TRUE(*s.lowest_weight);
      } else if (!s.skipped) {
        EXPECT_LT(s.purity, 1.0 - 1e-3);
        EXPECT_FALSE(s.ground.is_unique_ground);
      }
    }
  }
}

TEST(TheoremSuite, DefiningRepresentationHasOnlyCoherentStates) {
  const TheoremReport r = theorem_suite(special_unitary_algebra(3), {.orbit_samples = 5, .random_samples = 2});
  EXPECT_EQ(r.orbit_failures, 0u);
  for (const TheoremSample& s : r.samples) {
    if (!s.orbit) {
      EXPECT_TRUE(s.skipped);
    }
  }
}

TEST(TheoremSuite, RejectsReducibleAlgebra) {
  EXPECT_THROW(theorem_suite(spin_algebra(1.0, 2)), InvalidArgument);
  EXPECT_THROW(theorem_suite(fermion_so_algebra(3)), InvalidArgument);
}

TEST(TheoremSuite, DeterministicForFixedSeed) {
  const TheoremOptions o{.orbit_samples = 5, .random_samples = 5, .seed = 9};
  const TheoremReport a = theorem_suite(spin_algebra(1.0), o), b = theorem_suite(spin_algebra(1.0), o);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].purity, b.samples[i].purity);
    EXPECT_EQ(a.samples[i].ground.gap, b.samples[i].ground.gap);
  }
}
