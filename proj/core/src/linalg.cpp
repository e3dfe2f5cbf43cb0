#include "genent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "genent/error.hpp"

namespace genent {
namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_square(const CMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << who << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    detail::fail(os.str());
  }
}

template <class Vec>
void fix_phase(Vec&& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > 1e-10) {
      v *= std::conj(v(i)) / a;
      return;
    }
  }
}

void fix_sign(Eigen::Ref<RVector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

double frobenius(const SparseCMatrix& m) { return m.norm(); }
double frobenius(const CMatrix& m) { return m.norm(); }

double real_trace_product(const SparseCMatrix& a, const SparseCMatrix& b) {
  return trace_inner(a, b);
}
double real_trace_product(const CMatrix& a, const CMatrix& b) { return trace_inner(a, b); }

void prune(SparseCMatrix& m) {
  m.prune([](Eigen::Index, Eigen::Index, const cplx& v) { return std::abs(v) > 1e-15; });
}
void prune(CMatrix&) {}

// Modified Gram-Schmidt over the reals. For Hermitian inputs tr(AB) is real,
// so the output stays Hermitian.
template <class M>
std::vector<M> gram_schmidt(std::span<const M> ops, double threshold) {
  std::vector<M> out;
  out.reserve(ops.size());
  for (const M& x : ops) {
    const double input_norm = frobenius(x);
    if (input_norm == 0.0) continue;
    M r = x;
    for (int pass = 0; pass < 2; ++pass) {
      for (const M& q : out) {
        const double c = real_trace_product(q, r);
        if (c != 0.0) r = (r - c * q).eval();
      }
      prune(r);
    }
    const double n = frobenius(r);
    if (n < threshold * input_norm) continue;
    r /= n;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Operator::Operator(CMatrix m) : m_(std::move(m)), hermitian_(false) {
  require_square(m_, "Operator");
}

Operator Operator::hermitian(CMatrix m) {
  require_square(m, "Operator::hermitian");
  const double res = hermiticity_residual(m);
  if (res >= kHermitianTolerance * std::max(1.0, max_abs(m))) {
    std::ostringstream os;
    os << "Operator::hermitian: matrix is not Hermitian (max |M - M^dagger| = " << res << ")";
    detail::fail(os.str());
  }
  Operator op;
  op.m_ = std::move(m);
  op.hermitian_ = true;
  return op;
}

Operator Operator::hermitian_part(const CMatrix& m) {
  require_square(m, "Operator::hermitian_part");
  Operator op;
  op.m_ = 0.5 * (m + m.adjoint());
  op.hermitian_ = true;
  return op;
}

Operator Operator::identity(std::size_t dim) {
  detail::require(dim >= 1, "Operator::identity: dim must be >= 1");
  const auto n = static_cast<Eigen::Index>(dim);
  return hermitian(CMatrix::Identity(n, n));
}

Operator Operator::adjoint() const {
  Operator op;
  op.m_ = m_.adjoint();
  op.hermitian_ = hermitian_;
  return op;
}

double hermiticity_residual(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return max_abs(m - m.adjoint());
}

Spectrum hermitian_eig(const Operator& m) {
  detail::require(m.is_hermitian(), "hermitian_eig: operator is not flagged Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "hermitian_eig: eigensolver did not converge (dim " << m.dim() << ")";
    throw NumericalError(os.str());
  }
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < s.eigenvectors.cols(); ++c) fix_phase(s.eigenvectors.col(c));
  const double scale = std::max(1.0, max_abs(m.matrix()));
  const double residual =
      max_abs(m.matrix() * s.eigenvectors - s.eigenvectors * s.eigenvalues.asDiagonal());
  if (residual > 1e-9 * scale * static_cast<double>(m.dim())) {
    std::ostringstream os;
    os << "hermitian_eig: residual " << residual << " exceeds tolerance";
    throw NumericalError(os.str());
  }
  return s;
}

RVector symmetric_eigenvalues(const RMatrix& m) {
  detail::require(m.rows() == m.cols() && m.rows() > 0, "symmetric_eigenvalues: square input");
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

SymmetricGround symmetric_ground(const RMatrix& m) {
  SymmetricGround g;
  g.eigenvalues = symmetric_eigenvalues(m);
  const Eigen::Index n = m.rows();
  if (n == 1) {
    g.ground_vector = RVector::Ones(1);
    return g;
  }
  const double width = std::max(g.eigenvalues(n - 1) - g.eigenvalues(0), 1e-300);
  const double scale = std::max({1.0, std::abs(g.eigenvalues(0)), std::abs(g.eigenvalues(n - 1))});
  // Shift slightly below the ground level; the shifted matrix is positive
  // definite and the ground component dominates after one or two solves.
  const double shift = g.eigenvalues(0) - 1e-9 * std::max(width, 1e-6);
  RMatrix shifted = m;
  shifted.diagonal().array() -= shift;
  Eigen::PartialPivLU<RMatrix> lu(shifted);
  RVector v = RVector::Ones(n) / std::sqrt(static_cast<double>(n));
  // Deterministic, generic start: avoid orthogonality to the ground vector.
  for (Eigen::Index i = 0; i < n; ++i) v(i) += 1e-3 * std::sin(1.0 + static_cast<double>(i));
  v.normalize();
  for (int it = 0; it < 6; ++it) {
    v = lu.solve(v);
    v.normalize();
    g.residual = (m * v - g.eigenvalues(0) * v).norm();
    if (g.residual < 1e-12 * scale) break;
  }
  if (g.residual > 1e-8 * scale) {
    std::ostringstream os;
    os << "symmetric_ground: inverse iteration residual " << g.residual;
    throw NumericalError(os.str());
  }
  fix_sign(v);
  g.ground_vector = std::move(v);
  return g;
}

double trace_inner(const SparseCMatrix& a, const SparseCMatrix& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

double trace_inner(const CMatrix& a, const CMatrix& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

std::vector<Operator> trace_orthonormalize(std::span<const Operator> ops, double threshold) {
  detail::require(!ops.empty(), "trace_orthonormalize: empty input");
  const std::size_t dim = ops.front().dim();
  std::vector<CMatrix> mats;
  mats.reserve(ops.size());
  for (const Operator& op : ops) {
    detail::require(op.is_hermitian(), "trace_orthonormalize: inputs must be Hermitian");
    detail::require(op.dim() == dim, "trace_orthonormalize: mixed dimensions");
    mats.push_back(op.matrix());
  }
  std::vector<CMatrix> q = gram_schmidt<CMatrix>(mats, threshold);
  std::vector<Operator> out;
  out.reserve(q.size());
  for (const CMatrix& m : q) out.push_back(Operator::hermitian_part(m));
  return out;
}

std::vector<SparseCMatrix> trace_orthonormalize(std::span<const SparseCMatrix> ops,
                                                double threshold) {
  detail::require(!ops.empty(), "trace_orthonormalize: empty input");
  const Eigen::Index dim = ops.front().rows();
  for (const SparseCMatrix& op : ops)
    detail::require(op.rows() == dim && op.cols() == dim,
                    "trace_orthonormalize: mixed dimensions");
  return gram_schmidt<SparseCMatrix>(ops, threshold);
}

Operator unitary_from_generator(const Operator& h, double t) {
  return Operator(unitary_from_generator(h.matrix(), t));
}

CMatrix unitary_from_generator(const CMatrix& h, double t) {
  require_square(h, "unitary_from_generator");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success)
    throw NumericalError("unitary_from_generator: eigensolver did not converge");
  const RVector& w = solver.eigenvalues();
  CVector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, t * w(i));
  const CMatrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator kron(const Operator& a, const Operator& b) {
  if (a.is_hermitian() && b.is_hermitian()) return Operator::hermitian_part(kron(a.matrix(), b.matrix()));
  return Operator(kron(a.matrix(), b.matrix()));
}

SparseCMatrix kron(const SparseCMatrix& a, const SparseCMatrix& b) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseCMatrix::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseCMatrix::InnerIterator ib(b, kb); ib; ++ib)
          trips.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                             ia.value() * ib.value());
  SparseCMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseCMatrix sparse_identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  SparseCMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseCMatrix embed(const SparseCMatrix& local, std::span<const std::size_t> dims,
                    std::size_t slot) {
  detail::require(slot < dims.size(), "embed: slot out of range");
  detail::require(static_cast<std::size_t>(local.rows()) == dims[slot] &&
                      static_cast<std::size_t>(local.cols()) == dims[slot],
                  "embed: local operator does not match slot dimension");
  std::size_t left = 1, right = 1;
  for (std::size_t i = 0; i < slot; ++i) left *= dims[i];
  for (std::size_t i = slot + 1; i < dims.size(); ++i) right *= dims[i];
  SparseCMatrix out = local;
  if (left > 1) out = kron(sparse_identity(left), out);
  if (right > 1) out = kron(out, sparse_identity(right));
  return out;
}

CMatrix embed(const CMatrix& local, std::span<const std::size_t> dims, std::size_t slot) {
  return CMatrix(embed(SparseCMatrix(local.sparseView()), dims, slot));
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
  detail::require(!dims.empty(), "partial_trace: empty dims");
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  detail::require(static_cast<std::size_t>(rho.rows()) == total &&
                      static_cast<std::size_t>(rho.cols()) == total,
                  "partial_trace: dims product does not match the matrix dimension");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    detail::require(keep[i] < dims.size(), "partial_trace: keep index out of range");
    detail::require(i == 0 || keep[i] > keep[i - 1], "partial_trace: keep must be ascending");
    kept[keep[i]] = true;
  }

  // Split every full index into its kept and traced mixed-radix parts.
  std::size_t kept_dim = 1, traced_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) (kept[s] ? kept_dim : traced_dim) *= dims[s];
  std::vector<std::size_t> kept_part(total), traced_part(total);
  std::vector<std::size_t> compose(kept_dim * traced_dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx, kval = 0, tval = 0, kmul = 1, tmul = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        kval += digit * kmul;
        kmul *= dims[s];
      } else {
        tval += digit * tmul;
        tmul *= dims[s];
      }
    }
    kept_part[idx] = kval;
    traced_part[idx] = tval;
    compose[kval * traced_dim + tval] = idx;
  }

  const auto kd = static_cast<Eigen::Index>(kept_dim);
  CMatrix out = CMatrix::Zero(kd, kd);
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t ki = kept_part[i], ti = traced_part[i];
    for (std::size_t kj = 0; kj < kept_dim; ++kj) {
      const std::size_t j = compose[kj * traced_dim + ti];
      out(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(kj)) +=
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

}  // namespace genent
