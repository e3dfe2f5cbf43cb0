#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "genent/algebra.hpp"
#include "genent/states.hpp"

namespace genent {

enum class MixednessMeasure { Entropy, Renyi };

const char* to_string(MixednessMeasure m);

/// Entropy -sum p ln p or Renyi-2 deficit 1 - sum p^2. Throws on negative
/// weights or a sum off 1 by more than 1e-10.
double mixedness(std::span<const double> p, MixednessMeasure m);

struct Ensemble {
  std::vector<double> weights;
  std::vector<PureState> states;

  CMatrix density() const;
};

struct RoofOptions {
  std::size_t restarts = 32;
  double tolerance = 1e-4;
  std::size_t max_iterations = 2000;
  std::size_t ensemble_size = 0;  // 0 -> rank(rho)^2
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

struct RoofResult {
  double value = 0.0;     // best found 1 - sum_i p_i P(psi_i)
  double baseline = 0.0;  // same on the eigen-decomposition ensemble
  Ensemble ensemble;
};

/// Convex-roof purity deficit min over pure-state ensembles of rho of
/// 1 - sum_i p_i P(psi_i). Ensembles are the columns of Psi0 W with Psi0 the
/// scaled eigenvectors of rho and W unitary; W is optimized by Riemannian
/// gradient ascent from the identity and restarts-1 Haar points. The result
/// is an upper bound and never worse than the eigen-ensemble baseline. Pure
/// input returns 1 - P exactly.
RoofResult roof_purity_deficit(const DensityMatrix& rho, const ObservableAlgebra& alg,
                               const RoofOptions& opts = {});

/// Two-qubit concurrence max(0, l1 - l2 - l3 - l4).
double wootters_concurrence(const DensityMatrix& rho);

struct ReducedDecomposition {
  double value = 0.0;
  std::vector<double> weights;
  // atoms[k][f]: unit Bloch direction of factor f in the k-th coherent state.
  std::vector<std::vector<BlochVector>> atoms;
};

/// Minimal mixedness over decompositions of the reduced state into reduced
/// coherent states. Supported: a single spin j and local qubits. The optimum
/// is the two-point split with weights ((1 + r)/2, (1 - r)/2), r the smallest
/// normalized Bloch radius over factors.
ReducedDecomposition reduced_mixedness(const DensityMatrix& rho, const ObservableAlgebra& alg,
                                       MixednessMeasure m);

}  // namespace genent
