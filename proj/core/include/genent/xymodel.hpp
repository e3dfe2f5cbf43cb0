#pragma once

#include <span>
#include <vector>

#include "genent/linalg.hpp"
#include "genent/states.hpp"

namespace genent::xy {

// H = sum_i J_z^i - g sum_i [(1 + eta) J_x^i J_x^{i+1} + (1 - eta) J_y^i J_y^{i+1}]
// with J = sigma/2 and periodic closure. Fermions via
// c_i = prod_{k<i}(1 - 2 n_k) sigma^-_i, n = |up><up|, so
// H = sum_k eps_k n_k - N/2 + sum_{k>0} (Delta_k c_k^dag c_-k^dag + h.c.),
// eps_k = 1 - g cos k, Delta_k = -i g eta sin k,
// c_k^dag = N^{-1/2} sum_j e^{ikj} c_j^dag, antiperiodic k in the even sector.
struct XYParams {
  std::size_t n = 0;
  double g = 0.0;
  double eta = 1.0;
};

/// Throws unless n >= 2 is even, g >= 0 and eta in [0, 1].
void validate(const XYParams& p);

inline constexpr std::size_t kMaxDenseSites = 12;

/// Full 2^N Hamiltonian (N <= 12).
SparseCMatrix build_hamiltonian(const XYParams& p);

struct ExactGround {
  PureState state;       // global ground state
  double energy = 0.0;
  int parity = 1;        // +1 even, -1 odd fermion parity of `state`
  PureState even_state;  // ground state of the even-parity block
  double even_energy = 0.0;
  double odd_energy = 0.0;
  double gap = 0.0;      // global first gap
  bool near_degenerate = false;  // gap < 1e-10
};

/// Dense diagonalization in both parity blocks.
ExactGround exact_ground(const XYParams& p);

struct BogoliubovSolution {
  std::vector<double> k;       // k_m = (2m + 1 - N) pi / N, m = 0..N-1
  std::vector<double> theta;   // tan 2 theta = g eta sin k / eps_k
  std::vector<double> lambda;  // sqrt(eps_k^2 + (g eta sin k)^2)
  std::vector<double> vk2;     // sin^2 theta
  double ground_energy = 0.0;  // -1/2 sum_k lambda_k
  double min_gap = 0.0;        // min_k lambda_k
};

BogoliubovSolution solve_bogoliubov(const XYParams& p);

/// u(N) purity of the BCS state, (4/N) sum_k (v_k^2 - 1/2)^2.
double bcs_purity(const BogoliubovSolution& s);
double bcs_purity(const XYParams& p);

/// prod_{k>0} (u_k + v_k c_k^dag c_-k^dag)|vac> with u = cos theta,
/// v = i sin theta, in the full 2^N space (N <= 12).
PureState bcs_state(const XYParams& p);

struct ScanRow {
  double g = 0.0;
  double purity = 0.0;
  double min_gap = 0.0;
};

/// Purity curve over a grid of g values (grid order kept).
std::vector<ScanRow> purity_scan(std::span<const double> g_grid, double eta, std::size_t n,
                                 std::size_t threads = 0);

/// `steps` points from gmin to gmax inclusive.
std::vector<double> linear_grid(double gmin, double gmax, std::size_t steps);

struct CriticalWindow {
  double lo = 0.01;  // fit over g_c_hat - g in [lo, hi]
  double hi = 0.1;
};

struct CriticalEstimate {
  double g_c_hat = 0.0;
  double nu_hat = 0.0;
  std::vector<std::size_t> sizes;  // chain lengths used for the extrapolation
  std::vector<double> peaks;       // |dP/dg| peak location per size
  std::size_t fit_points = 0;
};

/// g_c_hat: the |dP/dg| peak of each scan (parabolic refinement), extrapolated
/// linearly in 1/N. nu_hat: slope of log(P - P(g_c_hat)) against
/// log(g_c_hat - g) on the g < g_c_hat side, using the largest-N scan. Scans
/// must share one monotone grid. Throws when fewer than 5 points fall in the
/// window.
CriticalEstimate estimate_critical(std::span<const std::vector<ScanRow>> scans,
                                   std::span<const std::size_t> sizes, const CriticalWindow& window = {});

/// Scans N, N/2 and N/4 (rounded to even) on the grid and estimates.
CriticalEstimate estimate_critical(std::span<const double> g_grid, double eta, std::size_t n,
                                   const CriticalWindow& window = {}, std::size_t threads = 0);

}  // namespace genent::xy
