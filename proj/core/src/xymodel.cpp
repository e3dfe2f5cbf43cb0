#include "genent/xymodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "genent/algebra.hpp"
#include "genent/error.hpp"
#include "genent/parallel.hpp"

namespace genent::xy {

void validate(const XYParams& p) {
  detail::require(p.n >= 2 && p.n % 2 == 0, "XYParams: n must be even and >= 2, got " + std::to_string(p.n));
  detail::require(std::isfinite(p.g) && p.g >= 0.0, "XYParams: g must be finite and >= 0");
  detail::require(p.eta >= 0.0 && p.eta <= 1.0, "XYParams: eta must lie in [0, 1]");
}

namespace {

void require_dense(const XYParams& p, const char* who) {
  validate(p);
  if (p.n > kMaxDenseSites)
    detail::fail(std::string(who) + ": n = " + std::to_string(p.n) + " exceeds the dense limit of " +
                 std::to_string(kMaxDenseSites));
}

struct Sector {
  std::vector<std::size_t> indices;
  SymmetricGround ground;
};

Sector solve_sector(const SparseCMatrix& h, std::vector<std::size_t> indices) {
  std::vector<long> position(static_cast<std::size_t>(h.rows()), -1);
  for (std::size_t s = 0; s < indices.size(); ++s) position[indices[s]] = static_cast<long>(s);
  const auto sd = static_cast<Eigen::Index>(indices.size());
  RMatrix block = RMatrix::Zero(sd, sd);
  for (int k = 0; k < h.outerSize(); ++k)
    for (SparseCMatrix::InnerIterator it(h, k); it; ++it) {
      const long r = position[static_cast<std::size_t>(it.row())];
      const long c = position[static_cast<std::size_t>(it.col())];
      if (r < 0 && c < 0) continue;
      if (r < 0 || c < 0)
        throw NumericalError("exact_ground: Hamiltonian couples the two parity sectors");
      block(r, c) = it.value().real();
    }
  return {std::move(indices), symmetric_ground(block)};
}

PureState embed_sector(const Sector& s, std::size_t dim) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < s.indices.size(); ++i)
    v(static_cast<Eigen::Index>(s.indices[i])) = s.ground.ground_vector(static_cast<Eigen::Index>(i));
  return PureState::normalized(std::move(v));
}

}  // namespace

SparseCMatrix build_hamiltonian(const XYParams& p) {
  require_dense(p, "build_hamiltonian");
  const std::size_t n = p.n;
  const std::size_t dim = std::size_t{1} << n;
  auto bit = [n](std::size_t b, std::size_t site) { return (b >> (n - 1 - site)) & 1u; };
  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::size_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) diag += bit(b, i) == 0 ? 0.5 : -0.5;
    trips.emplace_back(static_cast<int>(b), static_cast<int>(b), diag);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      // J_x J_x and J_y J_y both flip the two spins; they add for antiparallel
      // pairs (hopping) and partly cancel for parallel pairs (pairing).
      const double amp = bit(b, i) == bit(b, j) ? -0.5 * p.g * p.eta : -0.5 * p.g;
      if (amp == 0.0) continue;
      const std::size_t flipped = b ^ (std::size_t{1} << (n - 1 - i)) ^ (std::size_t{1} << (n - 1 - j));
      trips.emplace_back(static_cast<int>(flipped), static_cast<int>(b), amp);
    }
  }
  SparseCMatrix h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.setFromTriplets(trips.begin(), trips.end());
  return h;
}

ExactGround exact_ground(const XYParams& p) {
  require_dense(p, "exact_ground");
  const SparseCMatrix h = build_hamiltonian(p);
  const std::size_t dim = std::size_t{1} << p.n;
  const Sector even = solve_sector(h, even_parity_indices(p.n));
  const Sector odd = solve_sector(h, odd_parity_indices(p.n));

  std::vector<double> all(even.ground.eigenvalues.data(),
                          even.ground.eigenvalues.data() + even.ground.eigenvalues.size());
  all.insert(all.end(), odd.ground.eigenvalues.data(),
             odd.ground.eigenvalues.data() + odd.ground.eigenvalues.size());
  std::sort(all.begin(), all.end());

  const double e_even = even.ground.eigenvalues(0);
  const double e_odd = odd.ground.eigenvalues(0);
  PureState even_state = embed_sector(even, dim);
  const bool odd_wins = e_odd < e_even;
  ExactGround out{odd_wins ? embed_sector(odd, dim) : even_state,
                  std::min(e_even, e_odd),
                  odd_wins ? -1 : 1,
                  even_state,
                  e_even,
                  e_odd,
                  all[1] - all[0],
                  false};
  out.near_degenerate = out.gap < 1e-10;
  return out;
}

BogoliubovSolution solve_bogoliubov(const XYParams& p) {
  validate(p);
  const std::size_t n = p.n;
  BogoliubovSolution s;
  s.k.resize(n);
  s.theta.resize(n);
  s.lambda.resize(n);
  s.vk2.resize(n);
  double energy = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < n; ++m) {
    const double k = (2.0 * static_cast<double>(m) + 1.0 - static_cast<double>(n)) * std::numbers::pi /
                     static_cast<double>(n);
    const double eps = 1.0 - p.g * std::cos(k);
    const double delta = p.g * p.eta * std::sin(k);
    const double lambda = std::hypot(eps, delta);
    s.k[m] = k;
    s.lambda[m] = lambda;
    if (lambda > 0.0) {
      s.theta[m] = 0.5 * std::atan2(delta, eps);
      s.vk2[m] = 0.5 * (1.0 - eps / lambda);
    } else {
      s.theta[m] = std::numbers::pi / 4.0;
      s.vk2[m] = 0.5;
    }
    energy -= 0.5 * lambda;
    min_gap = std::min(min_gap, lambda);
  }
  s.ground_energy = energy;
  s.min_gap = min_gap;
  return s;
}

double bcs_purity(const BogoliubovSolution& s) {
  double acc = 0.0;
  for (double v : s.vk2) acc += (v - 0.5) * (v - 0.5);
  return 4.0 * acc / static_cast<double>(s.vk2.size());
}

double bcs_purity(const XYParams& p) { return bcs_purity(solve_bogoliubov(p)); }

PureState bcs_state(const XYParams& p) {
  require_dense(p, "bcs_state");
  const BogoliubovSolution s = solve_bogoliubov(p);
  const FermionRep rep = jordan_wigner(p.n);
  const auto n = static_cast<double>(p.n);
  auto momentum_creation = [&](double k) {
    SparseCMatrix c(static_cast<Eigen::Index>(rep.dim()), static_cast<Eigen::Index>(rep.dim()));
    for (std::size_t j = 0; j < p.n; ++j)
      c += (std::polar(1.0, k * static_cast<double>(j)) / std::sqrt(n)) * rep.creation(j);
    return c;
  };
  CVector psi = fock_vacuum(p.n).amplitudes();
  for (std::size_t m = p.n / 2; m < p.n; ++m) {
    const double k = s.k[m];
    const SparseCMatrix pair = momentum_creation(k) * momentum_creation(-k);
    const cplx u = std::cos(s.theta[m]);
    const cplx v = cplx(0.0, std::sin(s.theta[m]));
    psi = (u * psi + v * (pair * psi)).eval();
  }
  return PureState::normalized(std::move(psi));
}

std::vector<ScanRow> purity_scan(std::span<const double> g_grid, double eta, std::size_t n,
                                 std::size_t threads) {
  std::vector<ScanRow> rows(g_grid.size());
  parallel_for(
      g_grid.size(),
      [&](std::size_t i) {
        const BogoliubovSolution s = solve_bogoliubov({n, g_grid[i], eta});
        rows[i] = {g_grid[i], bcs_purity(s), s.min_gap};
      },
      threads);
  return rows;
}

std::vector<double> linear_grid(double gmin, double gmax, std::size_t steps) {
  detail::require(steps >= 1, "linear_grid: steps must be >= 1");
  detail::require(gmax >= gmin, "linear_grid: gmax must be >= gmin");
  if (steps == 1) return {gmin};
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i)
    g[i] = gmin + (gmax - gmin) * static_cast<double>(i) / static_cast<double>(steps - 1);
  return g;
}

namespace {

double derivative_peak(const std::vector<ScanRow>& rows) {
  const std::size_t m = rows.size();
  detail::require(m >= 5, "estimate_critical: scan needs at least 5 points");
  std::vector<double> d(m, 0.0);
  for (std::size_t i = 1; i + 1 < m; ++i)
    d[i] = std::abs((rows[i + 1].purity - rows[i - 1].purity) / (rows[i + 1].g - rows[i - 1].g));
  std::size_t best = 1;
  for (std::size_t i = 2; i + 1 < m; ++i)
    if (d[i] > d[best]) best = i;
  if (best < 2 || best + 2 >= m) return rows[best].g;
  // Vertex of the parabola through the peak and its two neighbours.
  const double x0 = rows[best - 1].g, x1 = rows[best].g, x2 = rows[best + 1].g;
  const double y0 = d[best - 1], y1 = d[best], y2 = d[best + 1];
  const double den = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / den;
  const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / den;
  if (a >= 0.0) return x1;
  return std::clamp(-b / (2.0 * a), x0, x2);
}

double interpolate(const std::vector<ScanRow>& rows, double g) {
  if (g <= rows.front().g) return rows.front().purity;
  if (g >= rows.back().g) return rows.back().purity;
  const auto it = std::lower_bound(rows.begin(), rows.end(), g,
                                   [](const ScanRow& r, double x) { return r.g < x; });
  const ScanRow& hi = *it;
  const ScanRow& lo = *(it - 1);
  const double t = (g - lo.g) / (hi.g - lo.g);
  return lo.purity + t * (hi.purity - lo.purity);
}

// Least-squares slope and intercept of y on x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

}  // namespace

CriticalEstimate estimate_critical(std::span<const std::vector<ScanRow>> scans,
                                   std::span<const std::size_t> sizes, const CriticalWindow& window) {
  detail::require(!scans.empty() && scans.size() == sizes.size(),
                  "estimate_critical: need one chain length per scan");
  detail::require(window.lo > 0.0 && window.hi > window.lo, "estimate_critical: invalid window");
  for (const auto& scan : scans)
    for (std::size_t i = 1; i < scan.size(); ++i)
      detail::require(scan[i].g > scan[i - 1].g, "estimate_critical: g grid must be increasing");

  CriticalEstimate est;
  est.sizes.assign(sizes.begin(), sizes.end());
  for (const auto& scan : scans) est.peaks.push_back(derivative_peak(scan));
  if (scans.size() == 1) {
    est.g_c_hat = est.peaks.front();
  } else {
    std::vector<double> inv;
    for (std::size_t n : sizes) inv.push_back(1.0 / static_cast<double>(n));
    est.g_c_hat = fit_line(inv, est.peaks).second;
  }

  const std::size_t largest =
      static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  const std::vector<ScanRow>& rows = scans[largest];
  const double pc = interpolate(rows, est.g_c_hat);
  std::vector<double> x, y;
  for (const ScanRow& r : rows) {
    const double dist = est.g_c_hat - r.g;
    const double sing = r.purity - pc;
    if (dist >= window.lo && dist <= window.hi && sing > 0.0) {
      x.push_back(std::log(dist));
      y.push_back(std::log(sing));
    }
  }
  if (x.size() < 5)
    detail::fail("estimate_critical: window holds " + std::to_string(x.size()) + " points, need >= 5");
  est.fit_points = x.size();
  est.nu_hat = fit_line(x, y).first;
  return est;
}

CriticalEstimate estimate_critical(std::span<const double> g_grid, double eta, std::size_t n,
                                   const CriticalWindow& window, std::size_t threads) {
  std::vector<std::size_t> sizes;
  for (std::size_t div : {1, 2, 4}) {
    std::size_t m = n / div;
    m -= m % 2;
    if (m >= 4 && std::find(sizes.begin(), sizes.end(), m) == sizes.end()) sizes.push_back(m);
  }
  detail::require(!sizes.empty(), "estimate_critical: chain too short");
  std::vector<std::vector<ScanRow>> scans;
  for (std::size_t m : sizes) scans.push_back(purity_scan(g_grid, eta, m, threads));
  return estimate_critical(scans, sizes, window);
}

}  // namespace genent::xy
