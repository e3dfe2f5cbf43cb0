#include "genent/channels.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "genent/error.hpp"
#include "genent/parallel.hpp"

namespace genent {
namespace {

CMatrix hk_sum(const std::vector<CMatrix>& ops) {
  CMatrix s = CMatrix::Zero(ops.front().rows(), ops.front().cols());
  for (const CMatrix& a : ops) s += a.adjoint() * a;
  return s;
}

bool is_identity(const CMatrix& s, double tol) {
  return (s - CMatrix::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

CPMap::CPMap(std::vector<CMatrix> hk_ops, TraceProperty property)
    : hk_(std::move(hk_ops)), property_(property) {
  detail::require(!hk_.empty(), "CPMap: no HK operators");
  const auto d = hk_.front().rows();
  for (const CMatrix& a : hk_)
    detail::require(a.rows() == d && a.cols() == d, "CPMap: HK operators must be square and equal-sized");
  const CMatrix s = hk_sum(hk_);
  const Spectrum spec = hermitian_eig(Operator::hermitian_part(s));
  if (spec.eigenvalues(spec.eigenvalues.size() - 1) > 1.0 + 1e-10)
    detail::fail("CPMap: CP certificate violated (sum A^dag A exceeds identity)");
  if (property_ == TraceProperty::Preserving && !is_identity(s, 1e-10))
    detail::fail("CPMap: CP certificate violated (map declared trace preserving)");
}

CPMap CPMap::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return CPMap({CMatrix::Identity(d, d)}, TraceProperty::Preserving);
}

CPMap CPMap::from_hk(std::vector<CMatrix> hk_ops) {
  detail::require(!hk_ops.empty(), "CPMap: no HK operators");
  const bool preserving = is_identity(hk_sum(hk_ops), 1e-10);
  return CPMap(std::move(hk_ops), preserving ? TraceProperty::Preserving : TraceProperty::NonIncreasing);
}

CMatrix CPMap::apply(const CMatrix& rho) const {
  detail::require(rho.rows() == hk_.front().rows() && rho.cols() == rho.rows(), "CPMap::apply: dimension mismatch");
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const CMatrix& a : hk_) out += a * rho * a.adjoint();
  return out;
}

DensityMatrix CPMap::apply(const DensityMatrix& rho) const {
  detail::require(property_ == TraceProperty::Preserving,
                  "CPMap::apply: trace-nonincreasing map yields a subnormalized matrix");
  const CMatrix out = apply(rho.matrix());
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

CMatrix CPMap::superoperator() const {
  const auto d = hk_.front().rows();
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (const CMatrix& a : hk_) s += kron(CMatrix(a.conjugate()), a);
  return s;
}

CPMap conditional_compose(const CPMap& first, std::span<const CPMap> branches) {
  if (branches.size() != first.hk_ops().size())
    detail::fail("conditional_compose: need one branch per HK operator (" +
                 std::to_string(first.hk_ops().size()) + "), got " + std::to_string(branches.size()));
  bool preserving = first.trace_property() == TraceProperty::Preserving;
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    detail::require(branches[i].dim() == first.dim(), "conditional_compose: branch dimension mismatch");
    preserving = preserving && branches[i].trace_property() == TraceProperty::Preserving;
    for (const CMatrix& b : branches[i].hk_ops()) ops.push_back(b * first.hk_ops()[i]);
  }
  return CPMap(std::move(ops), preserving ? TraceProperty::Preserving : TraceProperty::NonIncreasing);
}

FactorLayout glocc_factors(const ObservableAlgebra& alg) {
  FactorLayout layout;
  if (alg.layout()) {
    layout = *alg.layout();
  } else {
    layout.slot_dims = {alg.dim()};
    layout.factors = {{std::make_shared<const ObservableAlgebra>(alg), 0}};
  }
  std::set<std::size_t> used;
  for (const TensorFactor& f : layout.factors) {
    detail::require(f.slot < layout.slot_dims.size(), "glocc_factors: factor slot out of range");
    detail::require(f.algebra->dim() == layout.slot_dims[f.slot], "glocc_factors: factor dimension mismatch");
    if (!used.insert(f.slot).second) detail::fail("glocc_factors: overlapping factors on one slot");
  }
  return layout;
}

namespace {

CPMap sample_stage(const FactorLayout& layout, const GloccOptions& opts, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, layout.factors.size() - 1);
  const TensorFactor& f = layout.factors[pick(rng)];
  const ObservableAlgebra& alg = *f.algebra;
  std::vector<CMatrix> ops;
  if (opts.stage == GloccStage::RandomUnitary) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(opts.outcomes);
    double total = 0.0;
    for (double& x : w) total += (x = expo(rng));
    for (std::size_t a = 0; a < opts.outcomes; ++a) {
      const CMatrix u = random_group_unitary(alg, rng, opts.scale);
      ops.push_back(std::sqrt(w[a] / total) * embed(u, layout.slot_dims, f.slot));
    }
  } else {
    std::vector<double> e = alg.expectations(alg.reference_state());
    for (double& x : e) x = -x;
    const Spectrum s = hermitian_eig(Operator::hermitian_part(alg.combination(e)));
    for (Eigen::Index a = 0; a < s.eigenvectors.cols(); ++a) {
      const CMatrix proj = s.eigenvectors.col(a) * s.eigenvectors.col(a).adjoint();
      const CMatrix u = random_group_unitary(alg, rng, opts.scale);
      ops.push_back(embed(CMatrix(u * proj), layout.slot_dims, f.slot));
    }
  }
  return CPMap::from_hk(std::move(ops));
}

}  // namespace

CPMap sample_unitary_glocc(const FactorLayout& factors, const GloccOptions& opts, std::uint64_t seed) {
  detail::require(opts.depth >= 1, "sample_unitary_glocc: depth must be >= 1");
  detail::require(opts.outcomes >= 1, "sample_unitary_glocc: outcomes must be >= 1");
  detail::require(!factors.factors.empty(), "sample_unitary_glocc: no factors");
  std::mt19937_64 rng(seed);
  CPMap map = sample_stage(factors, opts, rng);
  for (std::size_t level = 1; level < opts.depth; ++level) {
    std::vector<CPMap> branches;
    branches.reserve(map.hk_ops().size());
    for (std::size_t i = 0; i < map.hk_ops().size(); ++i) branches.push_back(sample_stage(factors, opts, rng));
    map = conditional_compose(map, branches);
  }
  return map;
}

GloccAuditReport monotonicity_audit(std::span<const DensityMatrix> states, const ObservableAlgebra& alg,
                                    const GloccAuditOptions& opts) {
  detail::require(!states.empty(), "monotonicity_audit: no states");
  const FactorLayout layout = glocc_factors(alg);
  RoofOptions roof = opts.roof;
  roof.threads = 1;
  RoofOptions heavy = roof;
  heavy.restarts = 4 * roof.restarts;
  heavy.seed = derive_seed(roof.seed, 0x5eed);

  GloccAuditReport report;
  report.threshold = 2.0 * roof.tolerance;
  const std::size_t distinct = std::min(states.size(), opts.trials);
  std::vector<double> before(distinct);
  parallel_for(distinct, [&](std::size_t i) { before[i] = roof_purity_deficit(states[i], alg, roof).value; },
               opts.threads);

  report.trials.resize(opts.trials);
  parallel_for(
      opts.trials,
      [&](std::size_t t) {
        const std::size_t s = t % states.size();
        const CPMap map = sample_unitary_glocc(layout, opts.glocc, derive_seed(opts.seed, t));
        const DensityMatrix out = map.apply(states[s]);
        GloccTrial& tr = report.trials[t];
        tr.index = t;
        tr.hk_count = map.hk_ops().size();
        tr.before = before[s];
        tr.after = roof_purity_deficit(out, alg, roof).value;
        tr.excess = tr.after - tr.before;
        tr.flagged = tr.excess > report.threshold;
        if (tr.flagged && opts.rerun_flagged) {
          tr.rerun = true;
          const double b = roof_purity_deficit(states[s], alg, heavy).value;
          const double a = roof_purity_deficit(out, alg, heavy).value;
          // Both roofs are upper bounds; keep the best value found for each.
          tr.rerun_excess = std::min(a, tr.after) - std::min(b, tr.before);
          tr.resolved = tr.rerun_excess <= report.threshold;
        }
      },
      opts.threads);

  for (const GloccTrial& tr : report.trials) {
    report.max_excess = tr.index == 0 ? tr.excess : std::max(report.max_excess, tr.excess);
    if (tr.flagged) {
      ++report.violations;
      if (!tr.resolved) ++report.unresolved;
    }
  }
  return report;
}

}  // namespace genent
