#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "genent/algebra.hpp"
#include "genent/measures.hpp"
#include "genent/states.hpp"

namespace genent {

enum class TraceProperty { Preserving, NonIncreasing };

/// CP map rho -> sum_i A_i rho A_i^dagger. The constructor certifies
/// sum_i A_i^dagger A_i <= 1 (max eigenvalue <= 1 + 1e-10), with equality
/// within 1e-10 when the map is declared trace preserving.
class CPMap {
 public:
  CPMap(std::vector<CMatrix> hk_ops, TraceProperty property);

  static CPMap identity(std::size_t dim);
  /// Trace property inferred from the HK operators.
  static CPMap from_hk(std::vector<CMatrix> hk_ops);

  std::size_t dim() const { return static_cast<std::size_t>(hk_.front().rows()); }
  std::span<const CMatrix> hk_ops() const { return hk_; }
  TraceProperty trace_property() const { return property_; }

  /// Possibly subnormalized output for trace-nonincreasing maps.
  CMatrix apply(const CMatrix& rho) const;
  /// Requires a trace-preserving map.
  DensityMatrix apply(const DensityMatrix& rho) const;

  /// Column-stacked superoperator sum_i conj(A_i) (x) A_i.
  CMatrix superoperator() const;

 private:
  std::vector<CMatrix> hk_;
  TraceProperty property_;
};

/// HK operators {B_ij A_i}: branch i follows outcome i of the first map.
CPMap conditional_compose(const CPMap& first, std::span<const CPMap> branches);

enum class GloccStage {
  RandomUnitary,          // {sqrt(p_a) e^{i h_a}} on one factor
  ProjectiveMeasurement,  // {e^{i h_a} P_a}, P_a the factor's reference eigenbasis
};

struct GloccOptions {
  std::size_t depth = 1;
  std::size_t outcomes = 2;  // HK operators per stage (RandomUnitary)
  double scale = 1.0;        // spread of the random generators h
  GloccStage stage = GloccStage::RandomUnitary;
};

/// Factors of an algebra for GLOCC sampling: the layout when present, else the
/// whole algebra as one factor on a single slot. Throws on overlapping slots.
FactorLayout glocc_factors(const ObservableAlgebra& alg);

/// Depth-fold conditional composition. Every stage acts on one randomly chosen
/// factor; each HK branch of the previous stage gets an independently drawn
/// stage, so a depth-d map has outcomes^d HK operators.
CPMap sample_unitary_glocc(const FactorLayout& factors, const GloccOptions& opts, std::uint64_t seed);

struct GloccTrial {
  std::size_t index = 0;
  double before = 0.0;
  double after = 0.0;
  double excess = 0.0;  // after - before
  bool flagged = false;        // excess > 2 * tolerance
  bool rerun = false;          // re-evaluated at 4x restarts
  double rerun_excess = 0.0;
  bool resolved = false;       // rerun brought the excess within bound
  std::size_t hk_count = 0;
};

struct GloccAuditReport {
  std::vector<GloccTrial> trials;
  std::size_t violations = 0;            // flagged on the first pass
  std::size_t unresolved = 0;            // still flagged after the rerun
  double max_excess = 0.0;               // first pass, over all trials
  double threshold = 0.0;
};

struct GloccAuditOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  GloccOptions glocc{.depth = 2};
  RoofOptions roof;
  bool rerun_flagged = true;
  std::size_t threads = 0;
};

/// Trial t applies a map sampled with seed derive_seed(seed, t) to
/// states[t % states.size()] and compares the roof purity deficit of the
/// non-selective output with that of the input.
GloccAuditReport monotonicity_audit(std::span<const DensityMatrix> states, const ObservableAlgebra& alg,
                                    const GloccAuditOptions& opts);

}  // namespace genent
