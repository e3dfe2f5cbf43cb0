#include "genent/states.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "genent/error.hpp"

namespace genent {
namespace {

constexpr double kNormTolerance = 1e-12;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  return out;
}

bool skip_line(const std::string& line) {
  const auto b = line.find_first_not_of(" \t\r");
  return b == std::string::npos || line[b] == '#';
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    detail::fail("csv line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
  }
}

std::size_t parse_index(const std::string& s, std::size_t line_no, std::size_t dim) {
  const double v = parse_double(s, line_no);
  if (v < 0 || v != std::floor(v) || v >= static_cast<double>(dim))
    detail::fail("csv line " + std::to_string(line_no) + ": index '" + s + "' out of range");
  return static_cast<std::size_t>(v);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) detail::fail("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

PureState::PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
  detail::require(amps_.size() >= 1, "PureState: empty amplitude vector");
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "PureState: amplitude vector has norm " << n << ", expected 1";
    detail::fail(os.str());
  }
}

PureState PureState::normalized(CVector amplitudes) {
  const double n = amplitudes.norm();
  detail::require(n > 0.0 && std::isfinite(n), "PureState::normalized: zero or non-finite vector");
  return PureState(amplitudes / n);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  detail::require(dim >= 1 && index < dim, "PureState::basis: index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(const CMatrix& m) {
  detail::require(m.rows() == m.cols() && m.rows() >= 1, "DensityMatrix: square input expected");
  const double herm = hermiticity_residual(m);
  if (herm >= 1e-12) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (residual " << herm << ")";
    detail::fail(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << ", expected 1";
    detail::fail(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("DensityMatrix: eigensolver failed");
  if (solver.eigenvalues()(0) < -1e-10) {
    std::ostringstream os;
    os << "DensityMatrix: not positive semidefinite (min eigenvalue " << solver.eigenvalues()(0)
       << ")";
    detail::fail(os.str());
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector(), Trusted{});
}

DensityMatrix DensityMatrix::mixture(std::span<const double> weights,
                                     std::span<const PureState> states) {
  detail::require(!weights.empty() && weights.size() == states.size(),
                  "DensityMatrix::mixture: weights and states must match");
  const auto d = static_cast<Eigen::Index>(states.front().dim());
  CMatrix m = CMatrix::Zero(d, d);
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    detail::require(weights[i] >= 0.0, "DensityMatrix::mixture: negative weight");
    detail::require(states[i].dim() == states.front().dim(),
                    "DensityMatrix::mixture: mixed dimensions");
    m += weights[i] * states[i].projector();
    total += weights[i];
  }
  detail::require(std::abs(total - 1.0) < 1e-10, "DensityMatrix::mixture: weights must sum to 1");
  m /= total;
  return DensityMatrix(0.5 * (m + m.adjoint()), Trusted{});
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

PureState ghz(std::size_t qubits) {
  detail::require(qubits >= 2 && qubits <= 12, "ghz: qubit count must be in [2, 12]");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  CVector v = CVector::Zero(d);
  v(0) = v(d - 1) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(v));
}

PureState w_state(std::size_t qubits) {
  detail::require(qubits >= 2 && qubits <= 12, "w_state: qubit count must be in [2, 12]");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  CVector v = CVector::Zero(d);
  const double a = 1.0 / std::sqrt(static_cast<double>(qubits));
  for (std::size_t i = 0; i < qubits; ++i) v(Eigen::Index{1} << (qubits - 1 - i)) = a;
  return PureState(std::move(v));
}

PureState qubit_state(const BlochVector& r) {
  const double n = r.norm();
  if (std::abs(n - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "qubit_state: Bloch vector has length " << n << ", expected 1";
    detail::fail(os.str());
  }
  const double theta = std::acos(std::clamp(r.z / n, -1.0, 1.0));
  const double phi = std::atan2(r.y, r.x);
  CVector v(2);
  v(0) = std::cos(theta / 2);
  v(1) = std::polar(std::sin(theta / 2), phi);
  return PureState::normalized(std::move(v));
}

PureState product_state(std::span<const BlochVector> bloch) {
  detail::require(!bloch.empty() && bloch.size() <= 12, "product_state: 1 to 12 qubits");
  PureState out = qubit_state(bloch.front());
  for (std::size_t i = 1; i < bloch.size(); ++i) out = tensor_product(out, qubit_state(bloch[i]));
  return out;
}

void validate_spin(double j) {
  const double twice = 2.0 * j;
  if (!(j >= 0.5) || std::abs(twice - std::round(twice)) > 1e-12 || twice > 4095.0) {
    std::ostringstream os;
    os << "invalid spin j = " << j << " (need 2j a positive integer)";
    detail::fail(os.str());
  }
}

std::size_t spin_dim(double j) {
  validate_spin(j);
  return static_cast<std::size_t>(std::llround(2.0 * j)) + 1;
}

PureState spin_basis_state(double j, double m) {
  const std::size_t d = spin_dim(j);
  const double a = j - m;
  if (std::abs(a - std::round(a)) > 1e-12 || a < -1e-12 || a > 2.0 * j + 1e-12) {
    std::ostringstream os;
    os << "spin_basis_state: m = " << m << " is not a projection of j = " << j;
    detail::fail(os.str());
  }
  return PureState::basis(d, static_cast<std::size_t>(std::llround(a)));
}

PureState spin_coherent(double j, double theta, double phi) {
  const std::size_t d = spin_dim(j);
  const double n = static_cast<double>(d - 1);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  CVector v(static_cast<Eigen::Index>(d));
  for (std::size_t a = 0; a < d; ++a) {
    const double ad = static_cast<double>(a);
    const double log_binom = std::lgamma(n + 1) - std::lgamma(ad + 1) - std::lgamma(n - ad + 1);
    const double mag = std::exp(0.5 * log_binom) * std::pow(c, n - ad) * std::pow(s, ad);
    v(static_cast<Eigen::Index>(a)) = std::polar(1.0, ad * phi) * mag;
  }
  return PureState::normalized(std::move(v));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  detail::require(a.dim() * b.dim() <= 4096, "tensor_product: dimension exceeds 4096");
  CVector v(static_cast<Eigen::Index>(a.dim() * b.dim()));
  const auto nb = static_cast<Eigen::Index>(b.dim());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  return PureState::normalized(std::move(v));
}

PureState tensor_power(const PureState& psi, std::size_t copies) {
  detail::require(copies >= 1, "tensor_power: copies must be >= 1");
  PureState out = psi;
  for (std::size_t i = 1; i < copies; ++i) out = tensor_product(out, psi);
  return out;
}

PureState haar_random(std::size_t dim, std::mt19937_64& rng) {
  detail::require(dim >= 1, "haar_random: dim must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return PureState::normalized(std::move(v));
}

PureState haar_random(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_random(dim, rng);
}

DensityMatrix random_mixed(std::size_t dim, std::size_t rank, std::mt19937_64& rng) {
  detail::require(rank >= 1 && rank <= dim, "random_mixed: need 1 <= rank <= dim");
  const PureState big = haar_random(dim * rank, rng);
  const auto d = static_cast<Eigen::Index>(dim), r = static_cast<Eigen::Index>(rank);
  CMatrix a(d, r);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < r; ++k) a(i, k) = big.amplitudes()(i * r + k);
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  CMatrix r = partial_trace(rho.matrix(), dims, keep);
  return DensityMatrix(0.5 * (r + r.adjoint()));
}

PureState read_amplitudes_csv(std::istream& in, std::size_t dim) {
  detail::require(dim >= 1, "read_amplitudes_csv: dim must be >= 1");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto f = split_fields(line);
    if (f.size() != 3) detail::fail("csv line " + std::to_string(line_no) + ": expected index,re,im");
    const std::size_t idx = parse_index(f[0], line_no, dim);
    v(static_cast<Eigen::Index>(idx)) = cplx(parse_double(f[1], line_no), parse_double(f[2], line_no));
  }
  return PureState::normalized(std::move(v));
}

PureState read_amplitudes_csv(const std::filesystem::path& path, std::size_t dim) {
  auto in = open_or_throw(path);
  return read_amplitudes_csv(in, dim);
}

DensityMatrix read_density_csv(std::istream& in, std::size_t dim) {
  detail::require(dim >= 1, "read_density_csv: dim must be >= 1");
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix m = CMatrix::Zero(d, d);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto f = split_fields(line);
    if (f.size() != 4)
      detail::fail("csv line " + std::to_string(line_no) + ": expected row,col,re,im");
    const auto r = static_cast<Eigen::Index>(parse_index(f[0], line_no, dim));
    const auto c = static_cast<Eigen::Index>(parse_index(f[1], line_no, dim));
    m(r, c) = cplx(parse_double(f[2], line_no), parse_double(f[3], line_no));
  }
  return DensityMatrix(m);
}

DensityMatrix read_density_csv(const std::filesystem::path& path, std::size_t dim) {
  auto in = open_or_throw(path);
  return read_density_csv(in, dim);
}

}  // namespace genent
