#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <random>
#include <span>
#include <vector>

#include "genent/linalg.hpp"

namespace genent {

// Basis convention used everywhere: qubit i is tensor factor i, factor 0 is
// the most significant digit of the basis index, and |up> is digit 0. For a
// spin j the local index a corresponds to projection m = j - a.

class PureState {
 public:
  /// Throws unless the vector has unit norm within 1e-12.
  explicit PureState(CVector amplitudes);

  /// Normalizes; throws on a zero vector.
  static PureState normalized(CVector amplitudes);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  CMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  CVector amps_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), unit trace (1e-12) and min eigenvalue
  /// >= -1e-10. The stored matrix is the Hermitian part of the input.
  explicit DensityMatrix(const CMatrix& m);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix mixture(std::span<const double> weights,
                               std::span<const PureState> states);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }

 private:
  struct Trusted {};
  DensityMatrix(CMatrix m, Trusted) : m_(std::move(m)) {}
  CMatrix m_;
};

struct BlochVector {
  double x = 0.0, y = 0.0, z = 1.0;
  double norm() const;
};

PureState ghz(std::size_t qubits);
PureState w_state(std::size_t qubits);

/// One qubit per Bloch vector; each vector must have unit length (1e-10).
PureState product_state(std::span<const BlochVector> bloch);
PureState qubit_state(const BlochVector& bloch);

/// 2j must be a positive integer.
void validate_spin(double j);
std::size_t spin_dim(double j);
PureState spin_basis_state(double j, double m);
/// e^{-i phi J_z} e^{-i theta J_y}|j, j> up to a global phase;
/// spin_coherent(j, 0, 0) = |j, m = j>.
PureState spin_coherent(double j, double theta, double phi);

/// Tensor power |psi>^{(x) copies}.
PureState tensor_power(const PureState& psi, std::size_t copies);
PureState tensor_product(const PureState& a, const PureState& b);

/// Normalized complex-Gaussian vector; bit-reproducible for a fixed seed.
PureState haar_random(std::size_t dim, std::uint64_t seed);
PureState haar_random(std::size_t dim, std::mt19937_64& rng);

/// Induced-measure mixed state: trace of a Haar pure state on dim x rank.
DensityMatrix random_mixed(std::size_t dim, std::size_t rank, std::mt19937_64& rng);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Amplitude CSV: one "index,re,im" row per nonzero amplitude; blank lines
/// and lines starting with '#' are skipped. Missing indices are zero. The
/// vector is normalized after loading.
PureState read_amplitudes_csv(std::istream& in, std::size_t dim);
PureState read_amplitudes_csv(const std::filesystem::path& path, std::size_t dim);

/// Density-matrix CSV: "row,col,re,im" rows, same comment rules.
DensityMatrix read_density_csv(std::istream& in, std::size_t dim);
DensityMatrix read_density_csv(const std::filesystem::path& path, std::size_t dim);

}  // namespace genent
