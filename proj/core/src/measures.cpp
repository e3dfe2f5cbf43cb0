#include "genent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "genent/error.hpp"
#include "genent/parallel.hpp"
#include "genent/purity.hpp"

namespace genent {

const char* to_string(MixednessMeasure m) {
  return m == MixednessMeasure::Entropy ? "entropy" : "renyi";
}

double mixedness(std::span<const double> p, MixednessMeasure m) {
  detail::require(!p.empty(), "mixedness: empty distribution");
  double sum = 0.0;
  for (double v : p) {
    detail::require(v >= 0.0, "mixedness: negative weight");
    sum += v;
  }
  detail::require(std::abs(sum - 1.0) <= 1e-10, "mixedness: weights do not sum to 1");
  double out = m == MixednessMeasure::Entropy ? 0.0 : 1.0;
  for (double v : p) {
    if (m == MixednessMeasure::Entropy) {
      if (v > 0.0) out -= v * std::log(v);
    } else {
      out -= v * v;
    }
  }
  return out;
}

CMatrix Ensemble::density() const {
  detail::require(!states.empty() && weights.size() == states.size(), "Ensemble: malformed");
  const auto d = static_cast<Eigen::Index>(states.front().dim());
  CMatrix rho = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i) rho += weights[i] * states[i].projector();
  return rho;
}

namespace {

// f(V) = sum over columns v of K sum_a (v^dag x_a v)^2 / (v^dag v), the
// weighted purity of the ensemble read off from V.
class RoofObjective {
 public:
  explicit RoofObjective(const ObservableAlgebra& alg)
      : basis_(alg.basis()), k_(alg.normalization()) {}

  double value(const CMatrix& v) const {
    double f = 0.0;
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      const CVector col = v.col(c);
      const double n = col.squaredNorm();
      if (n < 1e-300) continue;
      double s2 = 0.0;
      for (const SparseCMatrix& x : basis_) {
        const double s = col.dot(x * col).real();
        s2 += s * s;
      }
      f += k_ * s2 / n;
    }
    return f;
  }

  // Wirtinger gradient dF/d(conj V), column by column.
  double value_and_gradient(const CMatrix& v, CMatrix& grad) const {
    grad.setZero(v.rows(), v.cols());
    double f = 0.0;
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      const CVector col = v.col(c);
      const double n = col.squaredNorm();
      if (n < 1e-300) continue;
      double s2 = 0.0;
      CVector acc = CVector::Zero(v.rows());
      for (const SparseCMatrix& x : basis_) {
        const CVector xv = x * col;
        const double s = col.dot(xv).real();
        s2 += s * s;
        acc += s * xv;
      }
      f += k_ * s2 / n;
      grad.col(c) = k_ * (2.0 / n * acc - s2 / (n * n) * col);
    }
    return f;
  }

 private:
  std::span<const SparseCMatrix> basis_;
  double k_;
};

CMatrix cayley(const CMatrix& a, double t) {
  const auto n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  return (id - 0.5 * t * a).partialPivLu().solve(id + 0.5 * t * a);
}

struct AscentResult {
  double f = 0.0;
  CMatrix v;
};

AscentResult ascend(const RoofObjective& obj, CMatrix v, const RoofOptions& opts) {
  CMatrix grad;
  double f = obj.value_and_gradient(v, grad);
  double step = -1.0;
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    const CMatrix m = grad.adjoint() * v;
    const CMatrix a = m.adjoint() - m;
    const double anorm = a.norm();
    if (anorm < 1e-12) break;
    const double slope = 2.0 * (m * a).trace().real();
    if (slope <= 0.0) break;
    if (step < 0.0) step = 0.1 / anorm;
    bool accepted = false;
    double f_new = f;
    CMatrix v_new;
    for (int halving = 0; halving < 50; ++halving) {
      v_new = v * cayley(a, step);
      f_new = obj.value(v_new);
      if (f_new >= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double gain = f_new - f;
    v = std::move(v_new);
    f = obj.value_and_gradient(v, grad);
    step *= 2.0;
    if (gain < 1e-12) break;
  }
  return {f, std::move(v)};
}

Ensemble ensemble_from_columns(const CMatrix& v) {
  Ensemble e;
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    const double w = v.col(c).squaredNorm();
    if (w < 1e-15) continue;
    e.weights.push_back(w);
    e.states.push_back(PureState::normalized(v.col(c)));
  }
  const double total = std::accumulate(e.weights.begin(), e.weights.end(), 0.0);
  for (double& w : e.weights) w /= total;
  return e;
}

}  // namespace

RoofResult roof_purity_deficit(const DensityMatrix& rho, const ObservableAlgebra& alg,
                               const RoofOptions& opts) {
  detail::require(rho.dim() == alg.dim(), "roof_purity_deficit: dimension mismatch");
  detail::require(opts.restarts >= 1, "roof_purity_deficit: restarts must be >= 1");
  const Spectrum spec = hermitian_eig(Operator::hermitian_part(rho.matrix()));
  const auto d = static_cast<Eigen::Index>(rho.dim());
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = d - 1; i >= 0; --i)
    if (spec.eigenvalues(i) > 1e-12) support.push_back(i);
  const std::size_t rank = support.size();
  detail::require(rank >= 1, "roof_purity_deficit: zero density matrix");

  RoofResult result;
  if (rank == 1) {
    const PureState psi = PureState::normalized(spec.eigenvectors.col(support.front()));
    result.value = result.baseline = 1.0 - h_purity(psi, alg);
    result.ensemble = {{1.0}, {psi}};
    return result;
  }

  const std::size_t members = opts.ensemble_size == 0 ? rank * rank : opts.ensemble_size;
  detail::require(members >= rank, "roof_purity_deficit: ensemble size below rank(rho)");
  const auto k = static_cast<Eigen::Index>(members);
  CMatrix psi0 = CMatrix::Zero(d, k);
  for (std::size_t j = 0; j < rank; ++j)
    psi0.col(static_cast<Eigen::Index>(j)) =
        std::sqrt(spec.eigenvalues(support[j])) * spec.eigenvectors.col(support[j]);

  const RoofObjective obj(alg);
  result.baseline = 1.0 - obj.value(psi0);

  std::vector<AscentResult> runs(opts.restarts);
  parallel_for(
      opts.restarts,
      [&](std::size_t r) {
        CMatrix start = psi0;
        if (r > 0) {
          std::mt19937_64 rng(derive_seed(opts.seed, r));
          start = psi0 * haar_unitary(members, rng);
        }
        runs[r] = ascend(obj, std::move(start), opts);
      },
      opts.threads);

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].f > runs[best].f) best = r;

  const CMatrix& v = runs[best].f >= 1.0 - result.baseline ? runs[best].v : psi0;
  result.value = std::min(result.baseline, 1.0 - runs[best].f);
  result.ensemble = ensemble_from_columns(v);
  const double err = (result.ensemble.density() - rho.matrix()).cwiseAbs().maxCoeff();
  if (err > 1e-8)
    throw NumericalError("roof_purity_deficit: certificate ensemble misses rho by " +
                         std::to_string(err));
  return result;
}

double wootters_concurrence(const DensityMatrix& rho) {
  detail::require(rho.dim() == 4, "wootters_concurrence: expected a two-qubit density matrix");
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMatrix& r = rho.matrix();
  const CMatrix flipped = yy * r.conjugate() * yy;
  const Spectrum s = hermitian_eig(Operator::hermitian_part(r));
  const RVector root = s.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  const CMatrix sq = s.eigenvectors * root.asDiagonal() * s.eigenvectors.adjoint();
  const Spectrum rs = hermitian_eig(Operator::hermitian_part(sq * flipped * sq));
  std::vector<double> l(4);
  for (int i = 0; i < 4; ++i) l[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, rs.eigenvalues(i)));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

namespace {

std::vector<RVector> bloch_vectors(const DensityMatrix& rho, const ObservableAlgebra& alg) {
  std::vector<RVector> out;
  const CMatrix& m = rho.matrix();
  auto expect = [&](const SparseCMatrix& x) {
    cplx acc = 0.0;
    for (int k = 0; k < x.outerSize(); ++k)
      for (SparseCMatrix::InnerIterator it(x, k); it; ++it) acc += it.value() * m(it.col(), it.row());
    return acc.real();
  };
  if (alg.kind() == AlgebraKind::Spin) {
    const double j = alg.spin();
    const SpinMatrices s = spin_matrices(j);
    RVector r(3);
    r << expect(s.jx) / j, expect(s.jy) / j, expect(s.jz) / j;
    out.push_back(r);
    return out;
  }
  const std::size_t n = alg.copies();
  const std::vector<std::size_t> dims(n, 2);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t keep[1] = {q};
    const CMatrix rq = partial_trace(m, dims, keep);
    RVector r(3);
    r << 2.0 * rq(1, 0).real(), 2.0 * rq(1, 0).imag(), (rq(0, 0) - rq(1, 1)).real();
    out.push_back(r);
  }
  return out;
}

BlochVector to_bloch(const RVector& v) { return {v(0), v(1), v(2)}; }

RVector perpendicular(const RVector& u) {
  RVector e(3);
  if (std::abs(u(0)) < 0.9) e << 1.0, 0.0, 0.0;
  else e << 0.0, 1.0, 0.0;
  e -= e.dot(u) * u;
  return e.normalized();
}

}  // namespace

ReducedDecomposition reduced_mixedness(const DensityMatrix& rho, const ObservableAlgebra& alg,
                                       MixednessMeasure m) {
  detail::require(alg.kind() == AlgebraKind::Spin || alg.kind() == AlgebraKind::LocalQubits,
                  "reduced_mixedness: unsupported algebra '" + alg.name() +
                      "' (needs single spin j or local qubits)");
  detail::require(rho.dim() == alg.dim(), "reduced_mixedness: dimension mismatch");
  const std::vector<RVector> r = bloch_vectors(rho, alg);
  double rmin = 1.0;
  for (const RVector& v : r) rmin = std::min(rmin, std::min(1.0, v.norm()));

  ReducedDecomposition out;
  const double p = 0.5 * (1.0 + rmin);
  if (rmin >= 1.0 - 1e-12) {
    out.weights = {1.0};
    std::vector<BlochVector> atom;
    for (const RVector& v : r) atom.push_back(to_bloch(v.normalized()));
    out.atoms.push_back(std::move(atom));
  } else {
    out.weights = {p, 1.0 - p};
    std::vector<BlochVector> a_atoms, b_atoms;
    for (const RVector& v : r) {
      const double s = std::min(1.0, v.norm());
      RVector a(3);
      if (s < 1e-15) {
        a << 0.0, 0.0, 1.0;
      } else {
        const RVector u = v / v.norm();
        const double c = std::clamp((s * s + rmin) / (2.0 * p * s), -1.0, 1.0);
        a = c * u + std::sqrt(std::max(0.0, 1.0 - c * c)) * perpendicular(u);
      }
      const RVector b = ((v - p * a) / (1.0 - p)).normalized();
      a_atoms.push_back(to_bloch(a));
      b_atoms.push_back(to_bloch(b));
    }
    out.atoms = {std::move(a_atoms), std::move(b_atoms)};
  }
  out.value = mixedness(out.weights, m);
  return out;
}

}  // namespace genent
