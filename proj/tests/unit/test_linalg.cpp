#include <gtest/gtest.h>

#include <random>

#include "genent/error.hpp"
#include "genent/linalg.hpp"
#include "oracles.hpp"

using namespace genent;

namespace {

CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx(normal(rng), normal(rng));
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST(Operator, HermitianRejectsNonHermitianInput) {
  CMatrix m(2, 2);
  m << 1, 2, 0, 1;
  EXPECT_THROW(Operator::hermitian(m), InvalidArgument);
  EXPECT_FALSE(Operator(m).is_hermitian());
  EXPECT_TRUE(Operator::hermitian_part(m).is_hermitian());
}

TEST(HermitianEig, AscendingOrthonormalAndPhaseFixed) {
  std::mt19937_64 rng(7);
  for (Eigen::Index n : {1, 2, 5, 16}) {
    const CMatrix h = random_hermitian(n, rng);
    const Spectrum s = hermitian_eig(Operator::hermitian(h));
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(s.eigenvalues(i - 1), s.eigenvalues(i));
    const CMatrix& v = s.eigenvectors;
    EXPECT_LT((v.adjoint() * v - CMatrix::Identity(n, n)).norm(), 1e-12);
    EXPECT_LT((v * s.eigenvalues.asDiagonal() * v.adjoint() - h).norm(), 1e-10);
    for (Eigen::Index c = 0; c < n; ++c) {
      Eigen::Index first = 0;
      while (std::abs(v(first, c)) <= 1e-10) ++first;
      EXPECT_NEAR(v(first, c).imag(), 0.0, 1e-14);
      EXPECT_GT(v(first, c).real(), 0.0);
    }
  }
}

TEST(SymmetricGround, MatchesFullSolver) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  RMatrix a(40, 40);
  for (Eigen::Index i = 0; i < 40; ++i)
    for (Eigen::Index j = 0; j < 40; ++j) a(i, j) = normal(rng);
  const RMatrix m = 0.5 * (a + a.transpose());
  const SymmetricGround g = symmetric_ground(m);
  Eigen::SelfAdjointEigenSolver<RMatrix> ref(m);
  EXPECT_LT((g.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(std::abs(g.ground_vector.dot(ref.eigenvectors().col(0))), 1.0, 1e-10);
  EXPECT_LT(g.residual, 1e-8);
  EXPECT_LT((symmetric_eigenvalues(m) - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(TraceOrthonormalize, DropsDependentOperators) {
  const SparseCMatrix x = oracle::pauli(0).sparseView();
  const SparseCMatrix z = oracle::pauli(2).sparseView();
  const SparseCMatrix combo = (2.0 * x - 3.0 * z).pruned();
  const std::vector<SparseCMatrix> in{x, z, combo};
  const auto out = trace_orthonormalize(std::span<const SparseCMatrix>(in));
  ASSERT_EQ(out.size(), 2u);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) EXPECT_NEAR(trace_inner(out[i], out[j]), i == j ? 1.0 : 0.0, 1e-14);
}

TEST(TraceOrthonormalize, DenseAndSparseAgree) {
  std::mt19937_64 rng(11);
  std::vector<Operator> dense;
  std::vector<SparseCMatrix> sparse;
  for (int i = 0; i < 4; ++i) {
    const CMatrix h = random_hermitian(3, rng);
    dense.push_back(Operator::hermitian(h));
    sparse.push_back(h.sparseView());
  }
  const auto a = trace_orthonormalize(std::span<const Operator>(dense));
  const auto b = trace_orthonormalize(std::span<const SparseCMatrix>(sparse));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT((a[i].matrix() - CMatrix(b[i])).norm(), 1e-12);
}

TEST(Kron, EmbedMatchesExplicitProducts) {
  const std::vector<std::size_t> dims{2, 3, 2};
  std::mt19937_64 rng(5);
  const CMatrix local = random_hermitian(3, rng);
  const CMatrix expected = oracle::kron(oracle::kron(CMatrix::Identity(2, 2), local), CMatrix::Identity(2, 2));
  EXPECT_LT((embed(local, dims, 1) - expected).norm(), 1e-14);
  const SparseCMatrix sparse_local = local.sparseView();
  EXPECT_LT((CMatrix(embed(sparse_local, dims, 1)) - expected).norm(), 1e-14);
  EXPECT_LT((kron(local, local) - oracle::kron(local, local)).norm(), 1e-14);
}

TEST(PartialTrace, ProductStateFactors) {
  CVector a = CVector::Random(2).normalized(), b = CVector::Random(3).normalized();
  const CVector ab = oracle::kron(a, b);
  const CMatrix rho = ab * ab.adjoint();
  const std::vector<std::size_t> dims{2, 3};
  const std::size_t keep0[] = {0}, keep1[] = {1};
  EXPECT_LT((partial_trace(rho, dims, keep0) - a * a.adjoint()).norm(), 1e-14);
  EXPECT_LT((partial_trace(rho, dims, keep1) - b * b.adjoint()).norm(), 1e-14);
}

TEST(Unitaries, GeneratorAndHaarAreUnitary) {
  std::mt19937_64 rng(13);
  const CMatrix h = random_hermitian(6, rng);
  const CMatrix u = unitary_from_generator(h, 0.7);
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(6, 6)).norm(), 1e-12);
  const CMatrix w = haar_unitary(6, rng);
  EXPECT_LT((w.adjoint() * w - CMatrix::Identity(6, 6)).norm(), 1e-12);
}

TEST(Hermiticity, ResidualOfHermitianMatrixIsZero) {
  std::mt19937_64 rng(17);
  EXPECT_LT(hermiticity_residual(random_hermitian(8, rng)), 1e-15);
}
