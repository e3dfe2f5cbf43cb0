#include <gtest/gtest.h>

#include <sstream>

#include "genent/algebra.hpp"
#include "genent/error.hpp"
#include "genent/states.hpp"

using namespace genent;

TEST(PureState, RequiresUnitNorm) {
  CVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(PureState{v}, InvalidArgument);
  EXPECT_NEAR(PureState::normalized(v).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(PureState::normalized(CVector::Zero(3)), InvalidArgument);
  EXPECT_THROW(PureState::basis(2, 2), InvalidArgument);
}

TEST(DensityMatrix, ValidatesHermiticityTraceAndPositivity) {
  CMatrix m = CMatrix::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(DensityMatrix{m});
  CMatrix skew = m;
  skew(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{skew}, InvalidArgument);
  EXPECT_THROW(DensityMatrix{CMatrix(CMatrix::Identity(2, 2))}, InvalidArgument);
  CMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{neg}, InvalidArgument);
}

TEST(DensityMatrix, MixtureOfBasisStates) {
  const std::vector<double> w{0.25, 0.75};
  const std::vector<PureState> s{PureState::basis(2, 0), PureState::basis(2, 1)};
  const DensityMatrix rho = DensityMatrix::mixture(w, s);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.25, 1e-15);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.75, 1e-15);
}

TEST(NamedStates, GhzAndWAmplitudes) {
  const PureState g = ghz(3);
  EXPECT_NEAR(std::abs(g.amplitudes()(0)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(g.amplitudes()(7)), 1 / std::sqrt(2.0), 1e-15);
  const PureState w = w_state(3);
  for (int idx : {1, 2, 4}) EXPECT_NEAR(std::abs(w.amplitudes()(idx)), 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(std::abs(w.amplitudes()(0)), 0.0, 1e-15);
}

TEST(NamedStates, ProductStateUsesBlochVectors) {
  const std::vector<BlochVector> b{{0, 0, 1}, {0, 0, -1}};
  const PureState p = product_state(b);
  EXPECT_NEAR(std::abs(p.amplitudes()(1)), 1.0, 1e-15);  // |up, down>
  const std::vector<BlochVector> bad{{0, 0, 0.5}};
  EXPECT_THROW(product_state(bad), InvalidArgument);
}

TEST(Spin, CoherentStatePointsAlongItsDirection) {
  for (double j : {0.5, 1.0, 1.5, 3.0}) {
    const SpinMatrices s = spin_matrices(j);
    const double theta = 0.7, phi = -1.1;
    const PureState psi = spin_coherent(j, theta, phi);
    const CVector& v = psi.amplitudes();
    const double jx = v.dot(s.jx * v).real(), jy = v.dot(s.jy * v).real(), jz = v.dot(s.jz * v).real();
    EXPECT_NEAR(jx, j * std::sin(theta) * std::cos(phi), 1e-12);
    EXPECT_NEAR(jy, j * std::sin(theta) * std::sin(phi), 1e-12);
    EXPECT_NEAR(jz, j * std::cos(theta), 1e-12);
    EXPECT_NEAR(std::abs(spin_coherent(j, 0, 0).amplitudes()(0)), 1.0, 1e-15);
  }
  EXPECT_THROW(spin_dim(0.3), InvalidArgument);
  EXPECT_THROW(spin_basis_state(1.0, 0.5), InvalidArgument);
}

TEST(Random, HaarIsSeedReproducible) {
  const PureState a = haar_random(8, 42), b = haar_random(8, 42), c = haar_random(8, 43);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_GT((a.amplitudes() - c.amplitudes()).norm(), 1e-3);
}

TEST(Random, MixedStateHasRequestedRank) {
  std::mt19937_64 rng(1);
  const DensityMatrix rho = random_mixed(4, 2, rng);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 0.0, 1e-12);
  EXPECT_GT(es.eigenvalues()(2), 1e-6);
}

TEST(Tensor, PowerAndPartialTrace) {
  const PureState up = PureState::basis(2, 0);
  const PureState three = tensor_power(up, 3);
  EXPECT_EQ(three.dim(), 8u);
  const DensityMatrix rho = DensityMatrix::from_pure(tensor_product(ghz(2), up));
  const std::vector<std::size_t> dims{2, 2, 2};
  const std::size_t keep[] = {0};
  EXPECT_LT((partial_trace(rho, dims, keep).matrix() - CMatrix::Identity(2, 2) / 2.0).norm(), 1e-14);
}

TEST(Csv, AmplitudesRoundTripAndErrors) {
  std::istringstream in("# index,re,im\n0,1,0\n\n3,0,1\n");
  const PureState psi = read_amplitudes_csv(in, 4);
  EXPECT_NEAR(psi.amplitudes()(0).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(psi.amplitudes()(3).imag(), 1 / std::sqrt(2.0), 1e-15);
  std::istringstream bad("5,1,0\n");
  EXPECT_THROW(read_amplitudes_csv(bad, 4), InvalidArgument);
  std::istringstream garbage("0,x,0\n");
  EXPECT_THROW(read_amplitudes_csv(garbage, 4), InvalidArgument);
}

TEST(Csv, DensityMatrix) {
  std::istringstream in("0,0,0.5,0\n1,1,0.5,0\n0,1,0,-0.25\n1,0,0,0.25\n");
  const DensityMatrix rho = read_density_csv(in, 2);
  EXPECT_NEAR(rho.matrix()(0, 1).imag(), -0.25, 1e-15);
}
