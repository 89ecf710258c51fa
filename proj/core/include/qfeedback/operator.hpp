// Copyright 2026 The qfeedback Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <concepts>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qfb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kCompletenessTolerance = 1e-9;
/// Eigenvalues below this are treated as exact zeros in log-domain functionals.
inline constexpr double kEigenvalueFloor = 1e-12;

/*******************************************************************************
 * VALIDATION
 ******************************************************************************/

struct Violation {
  std::string invariant;
  double residual = 0.0;
};

/**
 * Outcome of checking an operator (or list of operators) against the
 * invariants of its intended role. Never throws; an empty violation list
 * means the input is acceptable.
 */
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  const Violation* find(const std::string& invariant) const;
  std::string to_string() const;
};

ValidationReport validate_hermitian(const ComplexMatrix& m);
ValidationReport validate_density(const ComplexMatrix& m);
/// Each element Hermitian and PSD, and the elements sum to the identity.
ValidationReport validate_povm(std::span<const ComplexMatrix> elements);

class InvalidOperator : public std::invalid_argument {
 public:
  InvalidOperator(const std::string& what, ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/*******************************************************************************
 * OPERATOR TYPES
 ******************************************************************************/

/**
 * Square complex matrix equal to its adjoint up to kHermiticityTolerance.
 * The stored matrix is symmetrized on construction, so it is exactly
 * Hermitian afterwards.
 */
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m);

  static HermitianOperator identity(Index dim);
  static HermitianOperator zero(Index dim);
  static HermitianOperator diagonal(const RealVector& entries);

  const ComplexMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  struct Trusted {};
  HermitianOperator(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  friend HermitianOperator make_hermitian_unchecked(ComplexMatrix m);

  ComplexMatrix m_;
};

/**
 * Unit-trace positive semidefinite Hermitian matrix. The spectrum computed
 * during validation is kept, so entropy evaluation does not repeat the
 * eigendecomposition.
 */
class DensityOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& m);

  static DensityOperator maximally_mixed(Index dim);
  static DensityOperator pure(const ComplexVector& psi);
  static DensityOperator diagonal(const RealVector& probabilities);

  const ComplexMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }
  /// Ascending eigenvalues.
  const RealVector& spectrum() const { return spectrum_; }
  HermitianOperator as_hermitian() const;

 private:
  ComplexMatrix m_;
  RealVector spectrum_;
};

/// (A + A^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Max-abs entrywise norm.
double max_abs(const ComplexMatrix& a);

/*******************************************************************************
 * TENSOR STRUCTURE
 ******************************************************************************/

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);

/// Ordered labeled tensor factors, e.g. S (x) B1 (x) B2.
class CompositeSpace {
 public:
  CompositeSpace(std::vector<Index> dims, std::vector<std::string> labels);

  const std::vector<Index>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return dims_.size(); }
  Index total_dim() const;
  /// Throws std::out_of_range for an unknown label.
  std::size_t position(const std::string& label) const;
  Index dim_of(const std::string& label) const { return dims_[position(label)]; }

  /// Embeds an operator acting on one factor as op (x) identity elsewhere.
  ComplexMatrix embed(const ComplexMatrix& op, const std::string& label) const;

 private:
  std::vector<Index> dims_;
  std::vector<std::string> labels_;
};

/**
 * Traces out every factor not listed in `keep`. The kept factors retain
 * their order in `space`, independent of the order in `keep`.
 */
ComplexMatrix partial_trace(const ComplexMatrix& rho, const CompositeSpace& space,
                            std::span<const std::string> keep);
ComplexMatrix partial_trace(const ComplexMatrix& rho, const CompositeSpace& space,
                            std::initializer_list<std::string> keep);

/*******************************************************************************
 * SPECTRAL CALCULUS
 ******************************************************************************/

struct Spectrum {
  RealVector values;     ///< ascending
  ComplexMatrix vectors; ///< columns are eigenvectors
};

Spectrum eigh(const ComplexMatrix& hermitian);
inline Spectrum eigh(const HermitianOperator& h) { return eigh(h.matrix()); }
RealVector eigenvalues(const ComplexMatrix& hermitian);

/// V diag(f(lambda)) V^dagger for complex-valued f.
template <typename F>
  requires std::invocable<F, double>
ComplexMatrix spectral_map(const Spectrum& s, F&& f) {
  ComplexVector mapped(s.values.size());
  for (Index i = 0; i < s.values.size(); ++i) mapped(i) = Complex(f(s.values(i)));
  return s.vectors * mapped.asDiagonal() * s.vectors.adjoint();
}

HermitianOperator make_hermitian_unchecked(ComplexMatrix m);

/**
 * Applies a real scalar function through the spectral decomposition and
 * symmetrizes the result.
 */
template <typename F>
  requires std::invocable<F, double>
HermitianOperator hermitian_matfunc(const HermitianOperator& h, F&& f) {
  const Spectrum s = eigh(h);
  return make_hermitian_unchecked(
      hermitian_part(spectral_map(s, [&](double x) { return static_cast<double>(f(x)); })));
}

HermitianOperator hermitian_exp(const HermitianOperator& h);
/// Eigenvalues in [-kPsdTolerance, 0] clamp to 0; below that throws InvalidOperator.
HermitianOperator hermitian_sqrt(const HermitianOperator& h);
/// Eigenvalues below kEigenvalueFloor are clipped to the floor; negative
/// eigenvalues beyond -kPsdTolerance throw InvalidOperator.
HermitianOperator hermitian_log(const HermitianOperator& h);

/// sqrt(d) rho sqrt(d); the result is PSD with trace tr(d rho).
HermitianOperator matrix_sqrt_sandwich(const HermitianOperator& d, const DensityOperator& rho);
HermitianOperator matrix_sqrt_sandwich(const HermitianOperator& d, const HermitianOperator& rho);

/// -sum lambda ln lambda with 0 ln 0 = 0 below kEigenvalueFloor.
/// Throws InvalidOperator when an eigenvalue is below -kPsdTolerance.
double entropy_of_spectrum(const RealVector& eigenvalues);

} // namespace qfb
