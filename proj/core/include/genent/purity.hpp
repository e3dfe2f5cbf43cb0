#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "genent/algebra.hpp"
#include "genent/states.hpp"

namespace genent {

/// Expectations of the trace-orthonormal basis elements of an algebra.
struct ReducedState {
  ObservableAlgebra algebra;
  std::vector<double> expectations;

  /// K * |expectations|^2.
  double purity() const;
};

ReducedState reduce(const PureState& psi, const ObservableAlgebra& alg);
ReducedState reduce(const DensityMatrix& rho, const ObservableAlgebra& alg);

double h_purity(const PureState& psi, const ObservableAlgebra& alg);

/// Q = (2/N) sum_i (1 - tr rho_i^2) from single-qubit partial traces.
double meyer_wallach(const PureState& psi);

inline constexpr double kUnentangledTolerance = 1e-8;
inline constexpr double kDegeneracyThreshold = 1e-8;

bool is_unentangled(const PureState& psi, const ObservableAlgebra& alg,
                    double tol = kUnentangledTolerance);

struct GroundStateReport {
  bool is_unique_ground = false;
  double gap = 0.0;      // lambda_1 - lambda_0 of H = -sum_i <x_i> x_i
  double overlap = 0.0;  // |<ground|psi>|^2
  double width = 0.0;    // lambda_max - lambda_min
};

/// Unique ground iff overlap > 1 - 1e-8 and gap > threshold * width. A zero
/// reduced state (H = 0) is reported as not unique.
GroundStateReport ground_state_check(const PureState& psi, const ObservableAlgebra& alg,
                                     double degeneracy_threshold = kDegeneracyThreshold);

/// True iff |L psi| < tol for every lowering operator of the algebra. Throws
/// when the algebra has none.
bool lowest_weight_check(const PureState& psi, const ObservableAlgebra& alg, double tol = 1e-8);
/// Same with explicitly supplied (for example conjugated) lowering operators.
bool lowest_weight_check(const PureState& psi, std::span<const SparseCMatrix> lowering,
                         double tol = 1e-8);
bool lowest_weight_check(const PureState& psi, std::span<const CMatrix> lowering,
                         double tol = 1e-8);

struct TheoremSample {
  bool orbit = false;  // group-orbit point (true) or Haar sample (false)
  double purity = 0.0;
  GroundStateReport ground;
  std::optional<bool> lowest_weight;  // orbit samples only
  bool skipped = false;  // no Haar draw below the purity cut (e.g. su(d) defining rep)
};

struct TheoremReport {
  std::vector<TheoremSample> samples;
  std::size_t orbit_failures = 0;   // purity, ground or lowest-weight check failed
  std::size_t random_failures = 0;  // low-purity state passed the ground check
  std::size_t random_rejected = 0;  // Haar draws discarded for purity >= 1 - 1e-3
};

struct TheoremOptions {
  std::size_t orbit_samples = 100;
  std::size_t random_samples = 100;
  std::uint64_t seed = 0;
  double purity_tolerance = kUnentangledTolerance;
  double degeneracy_threshold = kDegeneracyThreshold;
  std::size_t threads = 0;
};

/// Orbit points psi = U |lowest weight> (U a random group element) must have
/// purity 1, be the unique ground state of -sum <x_i> x_i and be annihilated
/// by the conjugated lowering operators U L U^dagger. Haar states with purity
/// below 1 - 1e-3 must fail the ground-state check; a random sample is skipped
/// after 1000 draws without one (every pure state is coherent for su(d) in its
/// defining representation). Requires an irreducible algebra.
TheoremReport theorem_suite(const ObservableAlgebra& alg, const TheoremOptions& opts = {});

}  // namespace genent
