#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "genent/linalg.hpp"
#include "genent/states.hpp"

namespace genent {

enum class AlgebraKind {
  LocalQubits,     // (+)_i su(2)_i on N qubits
  Bipartite,       // su(m) (+) su(n) on C^m (x) C^n
  Spin,            // su(2) in the spin-j irrep
  CollectiveSpin,  // total-spin su(2) on copies of spin j
  SpecialUnitary,  // su(d) in its defining representation
  FermionU,        // u(N) number-conserving bilinears on Fock space
  FermionSO,       // so(2N) all bilinears on Fock space
  FermionSOEven,   // so(2N) restricted to the even-parity spinor irrep
  Custom,
};

const char* to_string(AlgebraKind kind);

class ObservableAlgebra;

/// A simple summand of a semisimple algebra acting on one tensor slot.
struct TensorFactor {
  std::shared_ptr<const ObservableAlgebra> algebra;
  std::size_t slot = 0;
};

struct FactorLayout {
  std::vector<std::size_t> slot_dims;
  std::vector<TensorFactor> factors;
};

struct NormalizedBasis {
  std::vector<SparseCMatrix> basis;
  double normalization = 0.0;  // K
};

/// Trace-orthonormalizes the generators and fixes K = 1 / sum_i <ref|x_i|ref>^2,
/// so the purity of the reference state is exactly 1. Throws when the
/// reference has zero raw purity.
NormalizedBasis normalize(std::span<const SparseCMatrix> generators, const PureState& reference,
                          double dependence_threshold = kDependenceThreshold);

/// Distinguished observable algebra: trace-orthonormal Hermitian basis plus
/// purity normalization. Immutable and cheap to copy.
class ObservableAlgebra {
 public:
  struct Spec {
    std::string name;
    AlgebraKind kind = AlgebraKind::Custom;
    std::vector<SparseCMatrix> generators;
    PureState reference_state;
    std::vector<SparseCMatrix> lowering_ops;
    std::optional<PureState> lowest_weight_state;
    std::optional<FactorLayout> layout;
    bool irreducible = false;
    double spin = 0.0;
    std::size_t copies = 1;
  };

  explicit ObservableAlgebra(Spec spec);

  const std::string& name() const;
  AlgebraKind kind() const;
  std::size_t dim() const;
  std::size_t size() const { return basis().size(); }
  std::span<const SparseCMatrix> basis() const;
  double normalization() const;
  const PureState& reference_state() const;
  std::span<const SparseCMatrix> lowering_ops() const;
  const std::optional<PureState>& lowest_weight_state() const;
  const std::optional<FactorLayout>& layout() const;
  bool irreducible() const;
  double spin() const;
  std::size_t copies() const;

  /// <psi|x_i|psi> for each basis element.
  std::vector<double> expectations(const PureState& psi) const;
  /// tr(rho x_i).
  std::vector<double> expectations(const CMatrix& rho) const;

  /// H = sum_i c_i x_i as a dense matrix.
  CMatrix combination(std::span<const double> coefficients) const;

  /// Largest Frobenius residual of -i[x_i, x_j] after projecting onto the
  /// span of the basis (zero for a Lie algebra).
  double closure_residual() const;

  /// Same algebra with a different trace-orthonormal basis of the same span
  /// (used to check basis independence).
  ObservableAlgebra with_basis(std::vector<SparseCMatrix> basis) const;

 private:
  struct Impl;
  explicit ObservableAlgebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Random group element e^{i h} with h = scale * sqrt(dim) * sum_i g_i x_i,
/// g_i standard normal.
CMatrix random_group_unitary(const ObservableAlgebra& alg, std::mt19937_64& rng,
                             double scale = 1.0);

// Built-in algebras.

ObservableAlgebra local_qubit_algebra(std::size_t qubits);
ObservableAlgebra bipartite_algebra(std::size_t dim_a, std::size_t dim_b);
ObservableAlgebra special_unitary_algebra(std::size_t dim);
ObservableAlgebra spin_algebra(double j, std::size_t copies = 1);
ObservableAlgebra fermion_u_algebra(std::size_t modes);
ObservableAlgebra fermion_so_algebra(std::size_t modes);
ObservableAlgebra fermion_so_even_algebra(std::size_t modes);

/// Spin matrices for a single spin j (index a <-> m = j - a).
struct SpinMatrices {
  SparseCMatrix jx, jy, jz, jminus;
};
SpinMatrices spin_matrices(double j);

/// Jordan-Wigner fermions on N modes: c_i = prod_{k<i}(1 - 2 n_k) sigma^-_i
/// with n_k = |up><up|_k, so the Fock vacuum is |down ... down>.
struct FermionRep {
  std::size_t modes = 0;
  std::vector<SparseCMatrix> annihilation;
  SparseCMatrix parity;  // prod_k (1 - 2 n_k)

  SparseCMatrix creation(std::size_t i) const;
  SparseCMatrix number(std::size_t i) const;
  std::size_t dim() const { return std::size_t{1} << modes; }
};

FermionRep jordan_wigner(std::size_t modes);
/// Basis indices of the even-parity sector (even number of occupied modes),
/// ascending.
std::vector<std::size_t> even_parity_indices(std::size_t modes);
std::vector<std::size_t> odd_parity_indices(std::size_t modes);
PureState fock_vacuum(std::size_t modes);

struct NormalizationAudit {
  double max_sampled = 0.0;  // over Haar-random states
  double max_ascent = 0.0;   // over self-consistent ascents from random states
};

/// Checks that no state exceeds purity 1: Haar samples plus monotone
/// self-consistent ascent psi <- top eigenvector of sum_i <x_i> x_i.
NormalizationAudit audit_normalization(const ObservableAlgebra& alg, std::size_t samples,
                                       std::size_t ascents, std::uint64_t seed);

}  // namespace genent
