#pragma once

#include <random>

namespace genent {

template <class Rng>
CMatrix haar_unitary(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix z(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = cplx(re, im);
    }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& r = qr.matrixQR();
  // Fix the phases of R's diagonal so the distribution is exactly Haar.
  for (Eigen::Index c = 0; c < n; ++c) {
    const cplx d = r(c, c);
    const double a = std::abs(d);
    if (a > 0.0) q.col(c) *= d / a;
  }
  return q;
}

}  // namespace genent
