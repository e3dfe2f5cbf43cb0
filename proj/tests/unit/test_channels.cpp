#include <gtest/gtest.h>

#include <random>

#include "genent/channels.hpp"
#include "genent/error.hpp"
#include "genent/purity.hpp"

using namespace genent;

namespace {

CMatrix projector(std::size_t dim, std::size_t i) {
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix p = CMatrix::Zero(d, d);
  p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  return p;
}

}  // namespace

TEST(CPMap, IdentityLeavesStatesUnchanged) {
  std::mt19937_64 rng(51);
  const DensityMatrix rho = random_mixed(4, 3, rng);
  EXPECT_LT((CPMap::identity(4).apply(rho).matrix() - rho.matrix()).norm(), 1e-14);
}

TEST(CPMap, LocalMeasurementDecoheresGhz) {
  // Measuring qubit 0 of GHZ_2 in the computational basis.
  const std::vector<std::size_t> dims{2, 2};
  const CPMap m({embed(projector(2, 0), dims, 0), embed(projector(2, 1), dims, 0)}, TraceProperty::Preserving);
  const DensityMatrix out = m.apply(DensityMatrix::from_pure(ghz(2)));
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  EXPECT_LT((out.matrix() - expected).norm(), 1e-14);
}

TEST(CPMap, UnitaryChannelPreservesSpectrum) {
  std::mt19937_64 rng(52);
  const DensityMatrix rho = random_mixed(3, 3, rng);
  const CPMap u({haar_unitary(3, rng)}, TraceProperty::Preserving);
  const RVector a = hermitian_eig(Operator::hermitian_part(rho.matrix())).eigenvalues;
  const RVector b = hermitian_eig(Operator::hermitian_part(u.apply(rho).matrix())).eigenvalues;
  EXPECT_LT((a - b).norm(), 1e-12);
}

TEST(CPMap, CertificateRejectsInvalidOperators) {
  const CMatrix big = 1.5 * CMatrix::Identity(2, 2);
  EXPECT_THROW(CPMap({big}, TraceProperty::NonIncreasing), InvalidArgument);
  EXPECT_THROW(CPMap({projector(2, 0)}, TraceProperty::Preserving), InvalidArgument);
  EXPECT_NO_THROW(CPMap({projector(2, 0)}, TraceProperty::NonIncreasing));
  EXPECT_EQ(CPMap::from_hk({projector(2, 0)}).trace_property(), TraceProperty::NonIncreasing);
  EXPECT_EQ(CPMap::from_hk({projector(2, 0), projector(2, 1)}).trace_property(), TraceProperty::Preserving);
  const CPMap sub({projector(2, 0)}, TraceProperty::NonIncreasing);
  EXPECT_THROW(sub.apply(DensityMatrix::from_pure(PureState::basis(2, 0))), InvalidArgument);
  EXPECT_NEAR(sub.apply(CMatrix(CMatrix::Identity(2, 2) / 2.0)).trace().real(), 0.5, 1e-15);
}

TEST(CPMap, SuperoperatorActsOnColumnStackedMatrices) {
  std::mt19937_64 rng(53);
  const CPMap m({std::sqrt(0.3) * haar_unitary(2, rng), std::sqrt(0.7) * haar_unitary(2, rng)},
                TraceProperty::Preserving);
  const DensityMatrix rho = random_mixed(2, 2, rng);
  const CMatrix r = rho.matrix();
  const CVector vec = Eigen::Map<const CVector>(r.data(), 4);
  const CVector out = m.superoperator() * vec;
  const CMatrix direct = m.apply(r);
  EXPECT_LT((Eigen::Map<const CMatrix>(out.data(), 2, 2) - direct).norm(), 1e-13);
}

TEST(ConditionalCompose, BranchesFollowOutcomes) {
  std::mt19937_64 rng(54);
  const CPMap first({projector(2, 0), projector(2, 1)}, TraceProperty::Preserving);
  CMatrix flip(2, 2);
  flip << 0, 1, 1, 0;
  const std::vector<CPMap> branches{CPMap::identity(2), CPMap({flip}, TraceProperty::Preserving)};
  const CPMap c = conditional_compose(first, branches);
  EXPECT_EQ(c.hk_ops().size(), 2u);
  EXPECT_EQ(c.trace_property(), TraceProperty::Preserving);
  // Measure-and-reset to |0>.
  const DensityMatrix out = c.apply(random_mixed(2, 2, rng));
  EXPECT_NEAR(out.matrix()(0, 0).real(), 1.0, 1e-14);
  const std::vector<CPMap> one{CPMap::identity(2)};
  EXPECT_THROW(conditional_compose(first, one), InvalidArgument);
}

TEST(ConditionalCompose, Associative) {
  std::mt19937_64 rng(55);
  auto random_map = [&] {
    return CPMap({std::sqrt(0.5) * haar_unitary(2, rng), std::sqrt(0.5) * haar_unitary(2, rng)},
                 TraceProperty::Preserving);
  };
  const CPMap a = random_map(), b0 = random_map(), b1 = random_map();
  const std::vector<CPMap> cs{random_map(), random_map(), random_map(), random_map()};
  // (a then b) then c versus a then (b then c), with c indexed by the joint outcome.
  const std::vector<CPMap> bs{b0, b1};
  const CPMap left = conditional_compose(conditional_compose(a, bs), cs);
  const std::vector<CPMap> c0{cs[0], cs[1]}, c1{cs[2], cs[3]};
  const std::vector<CPMap> bc{conditional_compose(b0, c0), conditional_compose(b1, c1)};
  const CPMap right = conditional_compose(a, bc);
  ASSERT_EQ(left.hk_ops().size(), right.hk_ops().size());
  for (std::size_t i = 0; i < left.hk_ops().size(); ++i)
    EXPECT_LT((left.hk_ops()[i] - right.hk_ops()[i]).norm(), 1e-13);
}

TEST(Glocc, FactorsComeFromTheLayout) {
  EXPECT_EQ(glocc_factors(local_qubit_algebra(3)).factors.size(), 3u);
  EXPECT_EQ(glocc_factors(bipartite_algebra(2, 3)).factors.size(), 2u);
  const FactorLayout whole = glocc_factors(spin_algebra(1.0));
  ASSERT_EQ(whole.factors.size(), 1u);
  EXPECT_EQ(whole.slot_dims, std::vector<std::size_t>{3});
}

TEST(Glocc, OverlappingFactorsRejected) {
  const auto su2 = std::make_shared<const ObservableAlgebra>(special_unitary_algebra(2));
  FactorLayout bad{{2, 2}, {{su2, 0}, {su2, 0}}};
  ObservableAlgebra::Spec spec{.name = "overlap",
                               .kind = AlgebraKind::Custom,
                               .generators = {},
                               .reference_state = PureState::basis(4, 0),
                               .lowering_ops = {},
                               .lowest_weight_state = std::nullopt,
                               .layout = bad,
                               .irreducible = false,
                               .spin = 0.0,
                               .copies = 1};
  const ObservableAlgebra qubits = local_qubit_algebra(2);
  for (const SparseCMatrix& x : qubits.basis()) spec.generators.push_back(x);
  EXPECT_THROW(glocc_factors(ObservableAlgebra(spec)), InvalidArgument);
}

TEST(Glocc, SampledMapsAreTracePreservingWithExpectedBranchCount) {
  const FactorLayout f = glocc_factors(local_qubit_algebra(2));
  for (std::size_t depth : {1u, 2u, 3u}) {
    const CPMap m = sample_unitary_glocc(f, {.depth = depth, .outcomes = 3}, 7);
    EXPECT_EQ(m.trace_property(), TraceProperty::Preserving);
    std::size_t expected = 1;
    for (std::size_t i = 0; i < depth; ++i) expected *= 3;
    EXPECT_EQ(m.hk_ops().size(), expected);
  }
  const CPMap p = sample_unitary_glocc(f, {.depth = 2, .stage = GloccStage::ProjectiveMeasurement}, 7);
  EXPECT_EQ(p.hk_ops().size(), 4u);
  EXPECT_EQ(p.trace_property(), TraceProperty::Preserving);
}

TEST(Glocc, SamplingIsDeterministic) {
  const FactorLayout f = glocc_factors(local_qubit_algebra(2));
  const CPMap a = sample_unitary_glocc(f, {.depth = 2}, 99), b = sample_unitary_glocc(f, {.depth = 2}, 99);
  for (std::size_t i = 0; i < a.hk_ops().size(); ++i) EXPECT_EQ(a.hk_ops()[i], b.hk_ops()[i]);
}

TEST(Glocc, SingleStageKeepsCoherentStatesCoherent) {
  const ObservableAlgebra alg = local_qubit_algebra(2);
  const CPMap m = sample_unitary_glocc(glocc_factors(alg), {.depth = 1, .outcomes = 1}, 5);
  const CVector out = m.hk_ops()[0] * PureState::basis(4, 0).amplitudes();
  EXPECT_NEAR(h_purity(PureState::normalized(out), alg), 1.0, 1e-10);
}

TEST(MonotonicityAudit, NoViolationsOnQubitPairs) {
  std::mt19937_64 rng(56);
  std::vector<DensityMatrix> states;
  for (int i = 0; i < 4; ++i) states.push_back(random_mixed(4, 2, rng));
  const GloccAuditReport r = monotonicity_audit(
      states, local_qubit_algebra(2), {.trials = 8, .seed = 4, .roof = {.restarts = 6, .seed = 1}});
  EXPECT_EQ(r.trials.size(), 8u);
  EXPECT_EQ(r.unresolved, 0u);
  EXPECT_DOUBLE_EQ(r.threshold, 2e-4);
  for (const GloccTrial& t : r.trials) {
    EXPECT_EQ(t.hk_count, 4u);
    EXPECT_NEAR(t.excess, t.after - t.before, 1e-15);
    EXPECT_GE(r.max_excess, t.excess);
  }
}

TEST(MonotonicityAudit, RejectsEmptyInput) {
  const std::vector<DensityMatrix> none;
  EXPECT_THROW(monotonicity_audit(none, local_qubit_algebra(2), {}), InvalidArgument);
}
