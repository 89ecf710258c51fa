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

#include "qfeedback/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace qfb {

namespace {

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionMismatch(os.str());
  }
}

} // namespace

/*******************************************************************************
 * VALIDATION
 ******************************************************************************/

const Violation* ValidationReport::find(const std::string& invariant) const {
  for (const auto& v : violations)
    if (v.invariant == invariant) return &v;
  return nullptr;
}

std::string ValidationReport::to_string() const {
  if (violations.empty()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].invariant << " (residual " << violations[i].residual << ")";
  }
  return os.str();
}

InvalidOperator::InvalidOperator(const std::string& what, ValidationReport report)
    : std::invalid_argument(what + ": " + report.to_string()), report_(std::move(report)) {}

ValidationReport validate_hermitian(const ComplexMatrix& m) {
  ValidationReport report;
  if (m.rows() != m.cols() || m.rows() == 0) {
    report.violations.push_back({"square", 1.0});
    return report;
  }
  const double residual = max_abs(m - m.adjoint());
  if (residual > kHermiticityTolerance) report.violations.push_back({"hermitian", residual});
  return report;
}

ValidationReport validate_density(const ComplexMatrix& m) {
  ValidationReport report = validate_hermitian(m);
  if (report.find("square")) return report;
  const double trace_residual = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_residual > kTraceTolerance) report.violations.push_back({"unit_trace", trace_residual});
  const RealVector ev = eigenvalues(hermitian_part(m));
  if (ev(0) < -kPsdTolerance) report.violations.push_back({"positive_semidefinite", -ev(0)});
  return report;
}

ValidationReport validate_povm(std::span<const ComplexMatrix> elements) {
  ValidationReport report;
  if (elements.empty()) {
    report.violations.push_back({"non_empty", 1.0});
    return report;
  }
  const Index dim = elements.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto& d = elements[k];
    if (d.rows() != dim || d.cols() != dim) {
      report.violations.push_back({"element_" + std::to_string(k) + "_dimension", 1.0});
      return report;
    }
    for (auto v : validate_hermitian(d).violations) {
      v.invariant = "element_" + std::to_string(k) + "_" + v.invariant;
      report.violations.push_back(std::move(v));
    }
    const double min_ev = eigenvalues(hermitian_part(d))(0);
    if (min_ev < -kPsdTolerance)
      report.violations.push_back({"element_" + std::to_string(k) + "_positive_semidefinite", -min_ev});
    sum += d;
  }
  const double residual = max_abs(sum - ComplexMatrix::Identity(dim, dim));
  if (residual > kCompletenessTolerance) report.violations.push_back({"completeness", residual});
  return report;
}

/*******************************************************************************
 * OPERATOR TYPES
 ******************************************************************************/

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  check_square(m, "HermitianOperator");
  auto report = validate_hermitian(m);
  if (!report.ok()) throw InvalidOperator("HermitianOperator", std::move(report));
  m_ = hermitian_part(m);
}

HermitianOperator make_hermitian_unchecked(ComplexMatrix m) {
  return HermitianOperator(std::move(m), HermitianOperator::Trusted{});
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return make_hermitian_unchecked(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return make_hermitian_unchecked(ComplexMatrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(const RealVector& entries) {
  return make_hermitian_unchecked(entries.cast<Complex>().asDiagonal());
}

DensityOperator::DensityOperator(const ComplexMatrix& m) {
  check_square(m, "DensityOperator");
  auto report = validate_hermitian(m);
  if (!report.ok()) throw InvalidOperator("DensityOperator", std::move(report));
  m_ = hermitian_part(m);
  const double trace_residual = std::abs(m_.trace() - Complex(1.0, 0.0));
  if (trace_residual > kTraceTolerance) report.violations.push_back({"unit_trace", trace_residual});
  spectrum_ = eigenvalues(m_);
  if (spectrum_(0) < -kPsdTolerance) report.violations.push_back({"positive_semidefinite", -spectrum_(0)});
  if (!report.ok()) throw InvalidOperator("DensityOperator", std::move(report));
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const ComplexVector unit = psi.normalized();
  return DensityOperator(unit * unit.adjoint());
}

DensityOperator DensityOperator::diagonal(const RealVector& probabilities) {
  return DensityOperator(probabilities.cast<Complex>().asDiagonal());
}

HermitianOperator DensityOperator::as_hermitian() const { return make_hermitian_unchecked(m_); }

/*******************************************************************************
 * TENSOR STRUCTURE
 ******************************************************************************/

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::Identity(1, 1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

CompositeSpace::CompositeSpace(std::vector<Index> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size())
    throw DimensionMismatch("CompositeSpace: dims and labels differ in length");
  if (dims_.empty()) throw std::invalid_argument("CompositeSpace: no factors");
  for (Index d : dims_)
    if (d < 1) throw std::invalid_argument("CompositeSpace: factor dimension must be positive");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw std::invalid_argument("CompositeSpace: labels must be unique");
}

Index CompositeSpace::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), Index{1}, std::multiplies<>());
}

std::size_t CompositeSpace::position(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("CompositeSpace: unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

ComplexMatrix CompositeSpace::embed(const ComplexMatrix& op, const std::string& label) const {
  const std::size_t pos = position(label);
  if (op.rows() != dims_[pos] || op.cols() != dims_[pos])
    throw DimensionMismatch("CompositeSpace::embed: operator does not match factor '" + label + "'");
  std::vector<ComplexMatrix> factors;
  factors.reserve(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i)
    factors.push_back(i == pos ? op : ComplexMatrix::Identity(dims_[i], dims_[i]));
  return tensor(factors);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const CompositeSpace& space,
                            std::span<const std::string> keep) {
  const Index total = space.total_dim();
  if (rho.rows() != total || rho.cols() != total)
    throw DimensionMismatch("partial_trace: operator dimension does not match the composite space");

  std::vector<bool> kept(space.size(), false);
  for (const auto& label : keep) kept[space.position(label)] = true;

  const auto& dims = space.dims();
  const std::size_t n = dims.size();
  Index kept_dim = 1;
  for (std::size_t f = 0; f < n; ++f)
    if (kept[f]) kept_dim *= dims[f];

  // Split every full index into (kept index, traced index), both row-major.
  std::vector<Index> kept_of(total), traced_of(total);
  for (Index i = 0; i < total; ++i) {
    Index rem = i, k = 0, t = 0, kstride = 1, tstride = 1;
    for (std::size_t f = n; f-- > 0;) {
      const Index digit = rem % dims[f];
      rem /= dims[f];
      if (kept[f]) {
        k += digit * kstride;
        kstride *= dims[f];
      } else {
        t += digit * tstride;
        tstride *= dims[f];
      }
    }
    kept_of[i] = k;
    traced_of[i] = t;
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (Index i = 0; i < total; ++i)
    for (Index j = 0; j < total; ++j)
      if (traced_of[i] == traced_of[j]) out(kept_of[i], kept_of[j]) += rho(i, j);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const CompositeSpace& space,
                            std::initializer_list<std::string> keep) {
  return partial_trace(rho, space, std::span<const std::string>(keep.begin(), keep.size()));
}

/*******************************************************************************
 * SPECTRAL CALCULUS
 ******************************************************************************/

Spectrum eigh(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigenvalues(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues: eigendecomposition failed");
  return solver.eigenvalues();
}

HermitianOperator hermitian_exp(const HermitianOperator& h) {
  return hermitian_matfunc(h, [](double x) { return std::exp(x); });
}

namespace {

void require_psd_spectrum(const RealVector& values, const char* what) {
  if (values.size() && values(0) < -kPsdTolerance) {
    ValidationReport report;
    report.violations.push_back({"positive_semidefinite", -values(0)});
    throw InvalidOperator(what, std::move(report));
  }
}

} // namespace

HermitianOperator hermitian_sqrt(const HermitianOperator& h) {
  const Spectrum s = eigh(h);
  require_psd_spectrum(s.values, "hermitian_sqrt");
  return make_hermitian_unchecked(
      hermitian_part(spectral_map(s, [](double x) { return std::sqrt(std::max(x, 0.0)); })));
}

HermitianOperator hermitian_log(const HermitianOperator& h) {
  const Spectrum s = eigh(h);
  require_psd_spectrum(s.values, "hermitian_log");
  return make_hermitian_unchecked(
      hermitian_part(spectral_map(s, [](double x) { return std::log(std::max(x, kEigenvalueFloor)); })));
}

HermitianOperator matrix_sqrt_sandwich(const HermitianOperator& d, const HermitianOperator& rho) {
  if (d.dim() != rho.dim()) throw DimensionMismatch("matrix_sqrt_sandwich: dimension mismatch");
  const ComplexMatrix root = hermitian_sqrt(d).matrix();
  return make_hermitian_unchecked(hermitian_part(root * rho.matrix() * root));
}

HermitianOperator matrix_sqrt_sandwich(const HermitianOperator& d, const DensityOperator& rho) {
  return matrix_sqrt_sandwich(d, rho.as_hermitian());
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    const double x = eigenvalues(i);
    if (x < -kPsdTolerance) {
      ValidationReport report;
      report.violations.push_back({"positive_semidefinite", -x});
      throw InvalidOperator("entropy_of_spectrum", std::move(report));
    }
    if (x > kEigenvalueFloor) s -= x * std::log(x);
  }
  return s;
}

} // namespace qfb
