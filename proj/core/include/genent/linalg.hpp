#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace genent {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using SparseCMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kDependenceThreshold = 1e-10;

/// Dense square complex operator. The Hermitian flag is certified when the
/// operator is built with Operator::hermitian(); it is never set blindly.
class Operator {
 public:
  Operator() = default;

  /// General (not necessarily Hermitian) operator.
  explicit Operator(CMatrix m);

  /// Throws InvalidArgument unless max |M - M^dagger| < 1e-12 (scaled by
  /// max(1, max|M_ij|)).
  static Operator hermitian(CMatrix m);

  /// Hermitian part (M + M^dagger)/2, flagged Hermitian.
  static Operator hermitian_part(const CMatrix& m);

  static Operator identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  bool is_hermitian() const { return hermitian_; }

  Operator adjoint() const;

 private:
  CMatrix m_;
  bool hermitian_ = false;
};

/// Eigenvalues ascending; eigenvector columns orthonormal, each phase-fixed so
/// its first component of modulus > 1e-10 is real positive.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

Spectrum hermitian_eig(const Operator& m);

/// Lowest eigenpair of a real symmetric matrix together with the full
/// (eigenvalues-only) spectrum. The ground vector is obtained by inverse
/// iteration at the lowest eigenvalue, sign-fixed like hermitian_eig.
struct SymmetricGround {
  RVector eigenvalues;
  RVector ground_vector;
  double residual = 0.0;
};

SymmetricGround symmetric_ground(const RMatrix& m);
RVector symmetric_eigenvalues(const RMatrix& m);

double hermiticity_residual(const CMatrix& m);

/// Gram-Schmidt in the trace inner product tr(A B) over the reals. Inputs
/// whose residual norm falls below threshold * (input norm) are dropped.
std::vector<Operator> trace_orthonormalize(std::span<const Operator> ops,
                                           double threshold = kDependenceThreshold);
std::vector<SparseCMatrix> trace_orthonormalize(std::span<const SparseCMatrix> ops,
                                                double threshold = kDependenceThreshold);

/// Re tr(A^dagger B).
double trace_inner(const SparseCMatrix& a, const SparseCMatrix& b);
double trace_inner(const CMatrix& a, const CMatrix& b);

/// e^{i t H} for Hermitian H.
Operator unitary_from_generator(const Operator& h, double t = 1.0);
CMatrix unitary_from_generator(const CMatrix& h, double t = 1.0);

Operator kron(const Operator& a, const Operator& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);
SparseCMatrix kron(const SparseCMatrix& a, const SparseCMatrix& b);
SparseCMatrix sparse_identity(std::size_t dim);

/// Embeds a local operator acting on tensor slot `slot` of a space with
/// local dimensions `dims` (slot 0 is the most significant factor).
SparseCMatrix embed(const SparseCMatrix& local, std::span<const std::size_t> dims,
                    std::size_t slot);
CMatrix embed(const CMatrix& local, std::span<const std::size_t> dims, std::size_t slot);

/// Keeps the listed tensor slots (in ascending order) and traces out the rest.
CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

/// Haar-random unitary of dimension dim drawn from a complex Ginibre matrix.
template <class Rng>
CMatrix haar_unitary(std::size_t dim, Rng& rng);

}  // namespace genent

#include "genent/detail/haar.hpp"
