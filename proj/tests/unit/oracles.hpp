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

// Reference implementations for tests. Plain loops over indices, no shared
// code with the library beyond the matrix type.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qfeedback/operator.hpp"

namespace qfb::testing {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  EXPECT_EQ(a.rows(), b.rows());
  EXPECT_EQ(a.cols(), b.cols());
  double worst = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

inline ComplexMatrix kron_loops(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Bipartite A (x) B; keep_first selects which factor survives.
inline ComplexMatrix partial_trace_loops(const ComplexMatrix& rho, Index da, Index db, bool keep_first) {
  if (keep_first) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Index i = 0; i < da; ++i)
      for (Index j = 0; j < da; ++j)
        for (Index k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Index k = 0; k < db; ++k)
    for (Index l = 0; l < db; ++l)
      for (Index i = 0; i < da; ++i) out(k, l) += rho(i * db + k, i * db + l);
  return out;
}

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// I(X;K) from the joint table p(i, k) = q_i p(k|i).
inline double joint_mutual_information(const std::vector<double>& q, const std::vector<std::vector<double>>& cond) {
  std::vector<double> pk(cond.front().size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t k = 0; k < pk.size(); ++k) pk[k] += q[i] * cond[i][k];
  double info = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t k = 0; k < pk.size(); ++k) {
      const double joint = q[i] * cond[i][k];
      if (joint > 0.0) info += joint * std::log(joint / (q[i] * pk[k]));
    }
  return info;
}

inline ComplexMatrix diag(std::initializer_list<double> entries) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(entries.size()), static_cast<Index>(entries.size()));
  Index i = 0;
  for (double e : entries) {
    m(i, i) = e;
    ++i;
  }
  return m;
}

inline RealVector rvec(std::initializer_list<double> entries) {
  RealVector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (double e : entries) v(i++) = e;
  return v;
}

} // namespace qfb::testing
