#include "genent/algebra.hpp"

#include <cmath>
#include <sstream>

#include "genent/error.hpp"

namespace genent {
namespace {

using Triplet = Eigen::Triplet<cplx>;

SparseCMatrix from_triplets(std::size_t dim, const std::vector<Triplet>& trips) {
  const auto n = static_cast<Eigen::Index>(dim);
  SparseCMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

// |a><b| on C^dim.
SparseCMatrix unit_matrix(std::size_t dim, std::size_t a, std::size_t b) {
  return from_triplets(dim, {Triplet(static_cast<int>(a), static_cast<int>(b), 1.0)});
}

SparseCMatrix pauli_x() { return from_triplets(2, {Triplet(0, 1, 1.0), Triplet(1, 0, 1.0)}); }
SparseCMatrix pauli_y() {
  return from_triplets(2, {Triplet(0, 1, cplx(0, -1)), Triplet(1, 0, cplx(0, 1))});
}
SparseCMatrix pauli_z() { return from_triplets(2, {Triplet(0, 0, 1.0), Triplet(1, 1, -1.0)}); }
// |down><up|: annihilates |down>.
SparseCMatrix pauli_minus() { return unit_matrix(2, 1, 0); }

std::vector<SparseCMatrix> gell_mann(std::size_t d) {
  std::vector<SparseCMatrix> out;
  out.reserve(d * d - 1);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      const int ia = static_cast<int>(a), ib = static_cast<int>(b);
      out.push_back(from_triplets(d, {Triplet(ia, ib, 1.0), Triplet(ib, ia, 1.0)}));
      out.push_back(from_triplets(d, {Triplet(ia, ib, cplx(0, -1)), Triplet(ib, ia, cplx(0, 1))}));
    }
  for (std::size_t l = 1; l < d; ++l) {
    const double c = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    std::vector<Triplet> trips;
    for (std::size_t k = 0; k < l; ++k) trips.emplace_back(static_cast<int>(k), static_cast<int>(k), c);
    trips.emplace_back(static_cast<int>(l), static_cast<int>(l), -c * static_cast<double>(l));
    out.push_back(from_triplets(d, trips));
  }
  return out;
}

std::vector<SparseCMatrix> su_lowering(std::size_t d) {
  std::vector<SparseCMatrix> out;
  for (std::size_t a = 1; a < d; ++a)
    for (std::size_t b = 0; b < a; ++b) out.push_back(unit_matrix(d, a, b));
  return out;
}

std::string label(const std::string& base, std::initializer_list<std::size_t> args) {
  std::ostringstream os;
  os << base << "(";
  bool first = true;
  for (std::size_t a : args) {
    os << (first ? "" : ",") << a;
    first = false;
  }
  os << ")";
  return os.str();
}

std::shared_ptr<const ObservableAlgebra> shared(ObservableAlgebra alg) {
  return std::make_shared<const ObservableAlgebra>(std::move(alg));
}

SparseCMatrix restrict_to(const SparseCMatrix& m, const std::vector<long>& position,
                          std::size_t sector_dim) {
  std::vector<Triplet> trips;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseCMatrix::InnerIterator it(m, k); it; ++it) {
      const long r = position[static_cast<std::size_t>(it.row())];
      const long c = position[static_cast<std::size_t>(it.col())];
      if (r >= 0 && c >= 0) trips.emplace_back(static_cast<int>(r), static_cast<int>(c), it.value());
    }
  return from_triplets(sector_dim, trips);
}

void require_modes(std::size_t modes, const char* who) {
  if (modes < 2 || modes > 12) {
    std::ostringstream os;
    os << who << ": mode count " << modes << " out of range [2, 12]";
    detail::fail(os.str());
  }
}

}  // namespace

const char* to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::LocalQubits: return "local-qubits";
    case AlgebraKind::Bipartite: return "bipartite";
    case AlgebraKind::Spin: return "spin";
    case AlgebraKind::CollectiveSpin: return "collective-spin";
    case AlgebraKind::SpecialUnitary: return "su";
    case AlgebraKind::FermionU: return "fermion-u";
    case AlgebraKind::FermionSO: return "fermion-so";
    case AlgebraKind::FermionSOEven: return "fermion-so-even";
    case AlgebraKind::Custom: return "custom";
  }
  return "custom";
}

NormalizedBasis normalize(std::span<const SparseCMatrix> generators, const PureState& reference,
                          double dependence_threshold) {
  detail::require(!generators.empty(), "normalize: no generators");
  for (const SparseCMatrix& g : generators)
    detail::require(static_cast<std::size_t>(g.rows()) == reference.dim(),
                    "normalize: generator and reference dimensions differ");
  NormalizedBasis out;
  out.basis = trace_orthonormalize(generators, dependence_threshold);
  double raw = 0.0;
  const CVector& psi = reference.amplitudes();
  for (const SparseCMatrix& x : out.basis) {
    const double e = psi.dot(x * psi).real();
    raw += e * e;
  }
  if (raw < 1e-14) detail::fail("normalize: reference state has zero raw purity");
  out.normalization = 1.0 / raw;
  return out;
}

struct ObservableAlgebra::Impl {
  std::string name;
  AlgebraKind kind;
  std::size_t dim;
  std::vector<SparseCMatrix> basis;
  double normalization;
  PureState reference;
  std::vector<SparseCMatrix> lowering;
  std::optional<PureState> lowest;
  std::optional<FactorLayout> layout;
  bool irreducible;
  double spin;
  std::size_t copies;
};

ObservableAlgebra::ObservableAlgebra(Spec spec) {
  const std::size_t dim = spec.reference_state.dim();
  for (const SparseCMatrix& g : spec.generators)
    detail::require(g.rows() == g.cols() && static_cast<std::size_t>(g.rows()) == dim,
                    "ObservableAlgebra: generator dimension mismatch");
  for (const SparseCMatrix& l : spec.lowering_ops)
    detail::require(static_cast<std::size_t>(l.rows()) == dim,
                    "ObservableAlgebra: lowering operator dimension mismatch");
  if (spec.lowest_weight_state)
    detail::require(spec.lowest_weight_state->dim() == dim,
                    "ObservableAlgebra: lowest-weight state dimension mismatch");
  NormalizedBasis nb = normalize(spec.generators, spec.reference_state);
  impl_ = std::make_shared<const Impl>(Impl{std::move(spec.name), spec.kind, dim,
                                            std::move(nb.basis), nb.normalization,
                                            std::move(spec.reference_state),
                                            std::move(spec.lowering_ops),
                                            std::move(spec.lowest_weight_state),
                                            std::move(spec.layout), spec.irreducible, spec.spin,
                                            spec.copies});
}

const std::string& ObservableAlgebra::name() const { return impl_->name; }
AlgebraKind ObservableAlgebra::kind() const { return impl_->kind; }
std::size_t ObservableAlgebra::dim() const { return impl_->dim; }
std::span<const SparseCMatrix> ObservableAlgebra::basis() const { return impl_->basis; }
double ObservableAlgebra::normalization() const { return impl_->normalization; }
const PureState& ObservableAlgebra::reference_state() const { return impl_->reference; }
std::span<const SparseCMatrix> ObservableAlgebra::lowering_ops() const { return impl_->lowering; }
const std::optional<PureState>& ObservableAlgebra::lowest_weight_state() const {
  return impl_->lowest;
}
const std::optional<FactorLayout>& ObservableAlgebra::layout() const { return impl_->layout; }
bool ObservableAlgebra::irreducible() const { return impl_->irreducible; }
double ObservableAlgebra::spin() const { return impl_->spin; }
std::size_t ObservableAlgebra::copies() const { return impl_->copies; }

std::vector<double> ObservableAlgebra::expectations(const PureState& psi) const {
  detail::require(psi.dim() == dim(), "expectations: state dimension does not match the algebra");
  std::vector<double> out;
  out.reserve(size());
  const CVector& v = psi.amplitudes();
  for (const SparseCMatrix& x : impl_->basis) out.push_back(v.dot(x * v).real());
  return out;
}

std::vector<double> ObservableAlgebra::expectations(const CMatrix& rho) const {
  detail::require(static_cast<std::size_t>(rho.rows()) == dim() && rho.rows() == rho.cols(),
                  "expectations: density matrix dimension does not match the algebra");
  std::vector<double> out;
  out.reserve(size());
  for (const SparseCMatrix& x : impl_->basis) {
    cplx acc = 0.0;
    for (int k = 0; k < x.outerSize(); ++k)
      for (SparseCMatrix::InnerIterator it(x, k); it; ++it) acc += it.value() * rho(it.col(), it.row());
    out.push_back(acc.real());
  }
  return out;
}

CMatrix ObservableAlgebra::combination(std::span<const double> coefficients) const {
  detail::require(coefficients.size() == size(), "combination: coefficient count mismatch");
  const auto n = static_cast<Eigen::Index>(dim());
  CMatrix h = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (coefficients[i] != 0.0) h += coefficients[i] * CMatrix(impl_->basis[i]);
  return h;
}

double ObservableAlgebra::closure_residual() const {
  const auto& b = impl_->basis;
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      SparseCMatrix c = (b[i] * b[j] - b[j] * b[i]).pruned();
      c *= cplx(0, -1);
      SparseCMatrix r = c;
      for (const SparseCMatrix& x : b) {
        const double coeff = trace_inner(x, c);
        if (coeff != 0.0) r -= coeff * x;
      }
      worst = std::max(worst, r.norm());
    }
  return worst;
}

ObservableAlgebra ObservableAlgebra::with_basis(std::vector<SparseCMatrix> basis) const {
  detail::require(!basis.empty(), "with_basis: empty basis");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    detail::require(static_cast<std::size_t>(basis[i].rows()) == dim(), "with_basis: dimension mismatch");
    for (std::size_t j = 0; j <= i; ++j) {
      const double g = trace_inner(basis[i], basis[j]);
      detail::require(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10,
                      "with_basis: basis is not trace-orthonormal");
    }
  }
  auto impl = std::make_shared<Impl>(*impl_);
  impl->basis = std::move(basis);
  double raw = 0.0;
  const CVector& psi = impl->reference.amplitudes();
  for (const SparseCMatrix& x : impl->basis) {
    const double e = psi.dot(x * psi).real();
    raw += e * e;
  }
  if (raw < 1e-14) detail::fail("with_basis: reference state has zero raw purity");
  impl->normalization = 1.0 / raw;
  return ObservableAlgebra(std::shared_ptr<const Impl>(std::move(impl)));
}

CMatrix random_group_unitary(const ObservableAlgebra& alg, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coeff(alg.size());
  const double s = scale * std::sqrt(static_cast<double>(alg.dim()));
  for (double& c : coeff) c = s * normal(rng);
  return unitary_from_generator(alg.combination(coeff), 1.0);
}

ObservableAlgebra special_unitary_algebra(std::size_t dim) {
  detail::require(dim >= 2 && dim <= 4096, "special_unitary_algebra: dim must be in [2, 4096]");
  return ObservableAlgebra({.name = label("su", {dim}),
                            .kind = AlgebraKind::SpecialUnitary,
                            .generators = gell_mann(dim),
                            .reference_state = PureState::basis(dim, 0),
                            .lowering_ops = su_lowering(dim),
                            .lowest_weight_state = PureState::basis(dim, dim - 1),
                            .layout = std::nullopt,
                            .irreducible = true});
}

ObservableAlgebra local_qubit_algebra(std::size_t qubits) {
  if (qubits < 1 || qubits > 12) {
    std::ostringstream os;
    os << "local_qubit_algebra: qubit count " << qubits << " out of range [1, 12]";
    detail::fail(os.str());
  }
  const std::vector<std::size_t> dims(qubits, 2);
  std::vector<SparseCMatrix> gens, lowering;
  const SparseCMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
  for (std::size_t i = 0; i < qubits; ++i) {
    for (const SparseCMatrix& p : paulis) gens.push_back(embed(p, dims, i));
    lowering.push_back(embed(pauli_minus(), dims, i));
  }
  const std::size_t d = std::size_t{1} << qubits;
  FactorLayout layout{dims, {}};
  auto su2 = shared(special_unitary_algebra(2));
  for (std::size_t i = 0; i < qubits; ++i) layout.factors.push_back({su2, i});
  return ObservableAlgebra({.name = label("local-qubits", {qubits}),
                            .kind = AlgebraKind::LocalQubits,
                            .generators = std::move(gens),
                            .reference_state = PureState::basis(d, 0),
                            .lowering_ops = std::move(lowering),
                            .lowest_weight_state = PureState::basis(d, d - 1),
                            .layout = std::move(layout),
                            .irreducible = true,
                            .spin = 0.5,
                            .copies = qubits});
}

ObservableAlgebra bipartite_algebra(std::size_t dim_a, std::size_t dim_b) {
  detail::require(dim_a >= 2 && dim_b >= 2, "bipartite_algebra: factor dimensions must be >= 2");
  if (dim_a * dim_b > 4096) {
    std::ostringstream os;
    os << "bipartite_algebra: total dimension " << dim_a * dim_b << " exceeds 4096";
    detail::fail(os.str());
  }
  const std::vector<std::size_t> dims{dim_a, dim_b};
  std::vector<SparseCMatrix> gens, lowering;
  for (const SparseCMatrix& g : gell_mann(dim_a)) gens.push_back(embed(g, dims, 0));
  for (const SparseCMatrix& g : gell_mann(dim_b)) gens.push_back(embed(g, dims, 1));
  for (const SparseCMatrix& l : su_lowering(dim_a)) lowering.push_back(embed(l, dims, 0));
  for (const SparseCMatrix& l : su_lowering(dim_b)) lowering.push_back(embed(l, dims, 1));
  const std::size_t d = dim_a * dim_b;
  FactorLayout layout{dims,
                      {{shared(special_unitary_algebra(dim_a)), 0},
                       {shared(special_unitary_algebra(dim_b)), 1}}};
  return ObservableAlgebra({.name = label("bipartite", {dim_a, dim_b}),
                            .kind = AlgebraKind::Bipartite,
                            .generators = std::move(gens),
                            .reference_state = PureState::basis(d, 0),
                            .lowering_ops = std::move(lowering),
                            .lowest_weight_state = PureState::basis(d, d - 1),
                            .layout = std::move(layout),
                            .irreducible = true});
}

SpinMatrices spin_matrices(double j) {
  const std::size_t d = spin_dim(j);
  std::vector<Triplet> z, plus, minus;
  for (std::size_t a = 0; a < d; ++a) {
    const double m = j - static_cast<double>(a);
    z.emplace_back(static_cast<int>(a), static_cast<int>(a), m);
    if (a + 1 < d) {
      // J_- |m> = sqrt(j(j+1) - m(m-1)) |m-1>, index a -> a+1.
      const double c = std::sqrt(j * (j + 1) - m * (m - 1));
      minus.emplace_back(static_cast<int>(a + 1), static_cast<int>(a), c);
      plus.emplace_back(static_cast<int>(a), static_cast<int>(a + 1), c);
    }
  }
  SpinMatrices s;
  s.jz = from_triplets(d, z);
  s.jminus = from_triplets(d, minus);
  const SparseCMatrix jplus = from_triplets(d, plus);
  s.jx = 0.5 * (jplus + s.jminus);
  s.jy = cplx(0, -0.5) * (jplus - s.jminus);
  return s;
}

ObservableAlgebra spin_algebra(double j, std::size_t copies) {
  const std::size_t d = spin_dim(j);
  detail::require(copies >= 1, "spin_algebra: copies must be >= 1");
  std::size_t total = 1;
  for (std::size_t c = 0; c < copies; ++c) {
    total *= d;
    detail::require(total <= 4096, "spin_algebra: (2j+1)^copies exceeds 4096");
  }
  const SpinMatrices s = spin_matrices(j);
  const std::vector<std::size_t> dims(copies, d);
  auto collective = [&](const SparseCMatrix& local) {
    SparseCMatrix acc(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
    for (std::size_t c = 0; c < copies; ++c) acc += embed(local, dims, c);
    return acc;
  };
  std::vector<SparseCMatrix> gens{collective(s.jx), collective(s.jy), collective(s.jz)};
  std::ostringstream name;
  name << (copies == 1 ? "spin" : "collective-spin") << "(j=" << j << ",copies=" << copies << ")";
  return ObservableAlgebra({.name = name.str(),
                            .kind = copies == 1 ? AlgebraKind::Spin : AlgebraKind::CollectiveSpin,
                            .generators = std::move(gens),
                            .reference_state = tensor_power(spin_basis_state(j, j), copies),
                            .lowering_ops = {collective(s.jminus)},
                            .lowest_weight_state = tensor_power(spin_basis_state(j, -j), copies),
                            .layout = std::nullopt,
                            .irreducible = copies == 1,
                            .spin = j,
                            .copies = copies});
}

SparseCMatrix FermionRep::creation(std::size_t i) const {
  return SparseCMatrix(annihilation.at(i).adjoint());
}

SparseCMatrix FermionRep::number(std::size_t i) const {
  return (creation(i) * annihilation.at(i)).pruned();
}

FermionRep jordan_wigner(std::size_t modes) {
  detail::require(modes >= 1 && modes <= 12, "jordan_wigner: mode count must be in [1, 12]");
  FermionRep rep;
  rep.modes = modes;
  const std::size_t d = std::size_t{1} << modes;
  auto occupied = [modes](std::size_t index, std::size_t mode) {
    return ((index >> (modes - 1 - mode)) & 1u) == 0;  // |up> = digit 0 = occupied
  };
  for (std::size_t i = 0; i < modes; ++i) {
    std::vector<Triplet> trips;
    const std::size_t flip = std::size_t{1} << (modes - 1 - i);
    for (std::size_t b = 0; b < d; ++b) {
      if (!occupied(b, i)) continue;
      int sign = 1;
      for (std::size_t k = 0; k < i; ++k)
        if (occupied(b, k)) sign = -sign;
      trips.emplace_back(static_cast<int>(b | flip), static_cast<int>(b), static_cast<double>(sign));
    }
    rep.annihilation.push_back(from_triplets(d, trips));
  }
  std::vector<Triplet> par;
  for (std::size_t b = 0; b < d; ++b) {
    int sign = 1;
    for (std::size_t k = 0; k < modes; ++k)
      if (occupied(b, k)) sign = -sign;
    par.emplace_back(static_cast<int>(b), static_cast<int>(b), static_cast<double>(sign));
  }
  rep.parity = from_triplets(d, par);
  return rep;
}

namespace {

std::vector<std::size_t> parity_indices(std::size_t modes, bool even) {
  const std::size_t d = std::size_t{1} << modes;
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < d; ++b) {
    // Occupied modes are digit 0, so the occupation count is modes - popcount.
    const auto occ = modes - static_cast<std::size_t>(__builtin_popcountll(b));
    if ((occ % 2 == 0) == even) out.push_back(b);
  }
  return out;
}

struct FermionBilinears {
  std::vector<SparseCMatrix> number_conserving;
  std::vector<SparseCMatrix> pairing;
  std::vector<SparseCMatrix> hop_lowering;   // c_i^dag c_j, i > j
  std::vector<SparseCMatrix> pair_lowering;  // c_i c_j, i < j
};

FermionBilinears fermion_bilinears(const FermionRep& rep, bool with_pairing) {
  const std::size_t n = rep.modes;
  const std::size_t d = rep.dim();
  FermionBilinears out;
  std::vector<SparseCMatrix> cdag(n);
  for (std::size_t i = 0; i < n; ++i) cdag[i] = rep.creation(i);
  const SparseCMatrix id = sparse_identity(d);
  const double r2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) out.number_conserving.push_back(rep.number(i) - 0.5 * id);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const SparseCMatrix hop = (cdag[i] * rep.annihilation[j]).pruned();
      const SparseCMatrix hop_dag = SparseCMatrix(hop.adjoint());
      out.number_conserving.push_back(r2 * (hop + hop_dag));
      out.number_conserving.push_back(cplx(0, -r2) * (hop - hop_dag));
      out.hop_lowering.push_back(hop_dag);  // c_j^dag c_i with j > i
      if (with_pairing) {
        const SparseCMatrix pair = (cdag[i] * cdag[j]).pruned();
        const SparseCMatrix pair_dag = SparseCMatrix(pair.adjoint());  // c_j c_i
        out.pairing.push_back(r2 * (pair + pair_dag));
        out.pairing.push_back(cplx(0, -r2) * (pair - pair_dag));
        out.pair_lowering.push_back((rep.annihilation[i] * rep.annihilation[j]).pruned());
      }
    }
  return out;
}

}  // namespace

std::vector<std::size_t> even_parity_indices(std::size_t modes) { return parity_indices(modes, true); }
std::vector<std::size_t> odd_parity_indices(std::size_t modes) { return parity_indices(modes, false); }

PureState fock_vacuum(std::size_t modes) {
  detail::require(modes >= 1 && modes <= 12, "fock_vacuum: mode count must be in [1, 12]");
  const std::size_t d = std::size_t{1} << modes;
  return PureState::basis(d, d - 1);
}

ObservableAlgebra fermion_u_algebra(std::size_t modes) {
  require_modes(modes, "fermion_u_algebra");
  const FermionRep rep = jordan_wigner(modes);
  FermionBilinears b = fermion_bilinears(rep, false);
  return ObservableAlgebra({.name = label("fermion-u", {modes}),
                            .kind = AlgebraKind::FermionU,
                            .generators = std::move(b.number_conserving),
                            .reference_state = fock_vacuum(modes),
                            .lowering_ops = std::move(b.hop_lowering),
                            .lowest_weight_state = fock_vacuum(modes),
                            .layout = std::nullopt,
                            .irreducible = false,
                            .copies = modes});
}

ObservableAlgebra fermion_so_algebra(std::size_t modes) {
  require_modes(modes, "fermion_so_algebra");
  const FermionRep rep = jordan_wigner(modes);
  FermionBilinears b = fermion_bilinears(rep, true);
  std::vector<SparseCMatrix> gens = std::move(b.number_conserving);
  for (auto& p : b.pairing) gens.push_back(std::move(p));
  std::vector<SparseCMatrix> lowering = std::move(b.hop_lowering);
  for (auto& p : b.pair_lowering) lowering.push_back(std::move(p));
  return ObservableAlgebra({.name = label("fermion-so", {modes}),
                            .kind = AlgebraKind::FermionSO,
                            .generators = std::move(gens),
                            .reference_state = fock_vacuum(modes),
                            .lowering_ops = std::move(lowering),
                            .lowest_weight_state = fock_vacuum(modes),
                            .layout = std::nullopt,
                            .irreducible = false,
                            .copies = modes});
}

ObservableAlgebra fermion_so_even_algebra(std::size_t modes) {
  require_modes(modes, "fermion_so_even_algebra");
  const FermionRep rep = jordan_wigner(modes);
  FermionBilinears b = fermion_bilinears(rep, true);
  const std::vector<std::size_t> even = even_parity_indices(modes);
  std::vector<long> position(rep.dim(), -1);
  for (std::size_t s = 0; s < even.size(); ++s) position[even[s]] = static_cast<long>(s);
  const std::size_t sd = even.size();
  std::vector<SparseCMatrix> gens, lowering;
  for (const auto& x : b.number_conserving) gens.push_back(restrict_to(x, position, sd));
  for (const auto& x : b.pairing) gens.push_back(restrict_to(x, position, sd));
  for (const auto& x : b.hop_lowering) lowering.push_back(restrict_to(x, position, sd));
  for (const auto& x : b.pair_lowering) lowering.push_back(restrict_to(x, position, sd));
  const auto vac = static_cast<std::size_t>(position[rep.dim() - 1]);
  return ObservableAlgebra({.name = label("fermion-so-even", {modes}),
                            .kind = AlgebraKind::FermionSOEven,
                            .generators = std::move(gens),
                            .reference_state = PureState::basis(sd, vac),
                            .lowering_ops = std::move(lowering),
                            .lowest_weight_state = PureState::basis(sd, vac),
                            .layout = std::nullopt,
                            .irreducible = true,
                            .copies = modes});
}

NormalizationAudit audit_normalization(const ObservableAlgebra& alg, std::size_t samples,
                                       std::size_t ascents, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  NormalizationAudit audit;
  auto purity = [&](const PureState& psi) {
    double s = 0.0;
    for (double e : alg.expectations(psi)) s += e * e;
    return alg.normalization() * s;
  };
  for (std::size_t i = 0; i < samples; ++i)
    audit.max_sampled = std::max(audit.max_sampled, purity(haar_random(alg.dim(), rng)));
  for (std::size_t i = 0; i < ascents; ++i) {
    PureState psi = haar_random(alg.dim(), rng);
    double p = purity(psi);
    for (int it = 0; it < 500; ++it) {
      const std::vector<double> e = alg.expectations(psi);
      const Spectrum s = hermitian_eig(Operator::hermitian_part(alg.combination(e)));
      PureState next = PureState::normalized(s.eigenvectors.col(s.eigenvectors.cols() - 1));
      const double q = purity(next);
      psi = std::move(next);
      const bool converged = std::abs(q - p) < 1e-15;
      p = q;
      if (converged) break;
    }
    audit.max_ascent = std::max(audit.max_ascent, p);
  }
  return audit;
}

}  // namespace genent
