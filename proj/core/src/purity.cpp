#include "genent/purity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "genent/error.hpp"
#include "genent/parallel.hpp"

namespace genent {

double ReducedState::purity() const {
  double s = 0.0;
  for (double e : expectations) s += e * e;
  return algebra.normalization() * s;
}

ReducedState reduce(const PureState& psi, const ObservableAlgebra& alg) {
  return {alg, alg.expectations(psi)};
}

ReducedState reduce(const DensityMatrix& rho, const ObservableAlgebra& alg) {
  return {alg, alg.expectations(rho.matrix())};
}

double h_purity(const PureState& psi, const ObservableAlgebra& alg) {
  return reduce(psi, alg).purity();
}

double meyer_wallach(const PureState& psi) {
  const std::size_t dim = psi.dim();
  detail::require(dim >= 2 && (dim & (dim - 1)) == 0, "meyer_wallach: dimension is not a power of 2");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  const CVector& a = psi.amplitudes();
  double sum = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    cplx r00 = 0.0, r11 = 0.0, r01 = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
      if (b & bit) continue;
      const cplx u = a(static_cast<Eigen::Index>(b));
      const cplx d = a(static_cast<Eigen::Index>(b | bit));
      r00 += u * std::conj(u);
      r11 += d * std::conj(d);
      r01 += u * std::conj(d);
    }
    const double tr2 = r00.real() * r00.real() + r11.real() * r11.real() + 2.0 * std::norm(r01);
    sum += 1.0 - tr2;
  }
  return 2.0 * sum / static_cast<double>(n);
}

bool is_unentangled(const PureState& psi, const ObservableAlgebra& alg, double tol) {
  return h_purity(psi, alg) >= 1.0 - tol;
}

GroundStateReport ground_state_check(const PureState& psi, const ObservableAlgebra& alg,
                                     double degeneracy_threshold) {
  std::vector<double> e = alg.expectations(psi);
  for (double& v : e) v = -v;
  GroundStateReport report;
  const Spectrum s = hermitian_eig(Operator::hermitian_part(alg.combination(e)));
  const RVector& w = s.eigenvalues;
  report.width = w(w.size() - 1) - w(0);
  report.overlap = std::norm(s.eigenvectors.col(0).dot(psi.amplitudes()));
  if (w.size() < 2 || report.width <= 1e-14) return report;
  report.gap = w(1) - w(0);
  report.is_unique_ground =
      report.overlap > 1.0 - 1e-8 && report.gap > degeneracy_threshold * report.width;
  return report;
}

bool lowest_weight_check(const PureState& psi, std::span<const SparseCMatrix> lowering, double tol) {
  for (const SparseCMatrix& l : lowering)
    if ((l * psi.amplitudes()).norm() >= tol) return false;
  return true;
}

bool lowest_weight_check(const PureState& psi, std::span<const CMatrix> lowering, double tol) {
  for (const CMatrix& l : lowering)
    if ((l * psi.amplitudes()).norm() >= tol) return false;
  return true;
}

bool lowest_weight_check(const PureState& psi, const ObservableAlgebra& alg, double tol) {
  if (alg.lowering_ops().empty())
    detail::fail("lowest_weight_check: algebra '" + alg.name() + "' has no lowering operators");
  return lowest_weight_check(psi, alg.lowering_ops(), tol);
}

TheoremReport theorem_suite(const ObservableAlgebra& alg, const TheoremOptions& opts) {
  if (!alg.irreducible())
    detail::fail("theorem_suite: algebra '" + alg.name() + "' is not irreducible");
  if (!alg.lowest_weight_state())
    detail::fail("theorem_suite: algebra '" + alg.name() + "' has no lowest-weight state");
  const PureState& lowest = *alg.lowest_weight_state();

  TheoremReport report;
  report.samples.resize(opts.orbit_samples + opts.random_samples);
  std::vector<std::size_t> rejected(opts.random_samples, 0);

  parallel_for(
      report.samples.size(),
      [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(opts.seed, i));
        TheoremSample& out = report.samples[i];
        if (i < opts.orbit_samples) {
          const CMatrix u = random_group_unitary(alg, rng);
          const PureState psi = PureState::normalized(u * lowest.amplitudes());
          out.orbit = true;
          out.purity = h_purity(psi, alg);
          out.ground = ground_state_check(psi, alg, opts.degeneracy_threshold);
          std::vector<CMatrix> conj;
          conj.reserve(alg.lowering_ops().size());
          for (const SparseCMatrix& l : alg.lowering_ops()) conj.push_back(u * (l * u.adjoint()));
          out.lowest_weight = lowest_weight_check(psi, std::span<const CMatrix>(conj));
          return;
        }
        for (int attempt = 0; attempt < 1000; ++attempt) {
          const PureState psi = haar_random(alg.dim(), rng);
          const double p = h_purity(psi, alg);
          if (p >= 1.0 - 1e-3) {
            ++rejected[i - opts.orbit_samples];
            continue;
          }
          out.purity = p;
          out.ground = ground_state_check(psi, alg, opts.degeneracy_threshold);
          return;
        }
        out.skipped = true;
      },
      opts.threads);

  for (const TheoremSample& s : report.samples) {
    if (s.orbit) {
      const bool ok = std::abs(s.purity - 1.0) <= opts.purity_tolerance && s.ground.is_unique_ground &&
                      s.lowest_weight.value_or(false);
      if (!ok) ++report.orbit_failures;
    } else if (!s.skipped && s.ground.is_unique_ground) {
      ++report.random_failures;
    }
  }
  for (std::size_t r : rejected) report.random_rejected += r;
  return report;
}

}  // namespace genent
