// Copyright 2026 The qsw Authors
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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qsw {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using SpMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr double kHermTol = 1e-12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an iterative routine fails to converge or produces a state
// outside its admissible set.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief Eigenvalues in descending order with orthonormal eigenvector columns.
struct EigenSystem {
  RVector values;
  CMatrix vectors;
};

/// @brief Entry (i*rows_b + k, j*cols_b + l) equals a(i,j) * b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);
SpMatrix kron(const SpMatrix& a, const SpMatrix& b);

/// @brief Row-major vectorization: vec(|x><y|) = |x> (x) |y>, index x*cols + y.
CVector vec(const CMatrix& b);
/// @brief Inverse of vec for square matrices.
CMatrix unvec(const CVector& v);

bool is_hermitian(const CMatrix& h, double tol = kHermTol);

/// @brief Hermitian eigendecomposition, eigenvalues sorted descending.
/// Real symmetric input is routed through the real solver.
EigenSystem eig_hermitian(const CMatrix& h);
EigenSystem eig_hermitian(const RMatrix& h);

/// @brief All eigenvalues of a general square matrix (Hessenberg + shifted QR).
std::vector<cplx> eig_general(const CMatrix& m);

/// @brief Action y = A x of a linear operator, written into a preallocated y.
using LinearOperator = std::function<void(const CVector& x, CVector& y)>;

/// @brief e^{t m} v by scaled Taylor steps on the action.
CVector expm_apply(const CMatrix& m, const CVector& v, double t, double tol = 1e-10);

/// @brief Matrix-free variant. `norm_bound` must bound the induced 1-norm of
/// the operator; it only controls the step size.
CVector expm_apply(const LinearOperator& op, double norm_bound, const CVector& v, double t,
                   double tol = 1e-10);

/// @brief e^{-itH} psi via a cached eigendecomposition.
class HermitianPropagator {
 public:
  explicit HermitianPropagator(const CMatrix& h);
  explicit HermitianPropagator(EigenSystem es);

  CVector apply(const CVector& psi, double t) const;
  /// @brief <x| e^{-itH} |psi> for many times at once.
  std::vector<cplx> amplitude(const CVector& x, const CVector& psi,
                              const std::vector<double>& times) const;
  const EigenSystem& eigensystem() const { return es_; }

 private:
  EigenSystem es_;
};

CVector unitary_apply(const CMatrix& h, const CVector& psi, double t);

/// @brief Maximum absolute column sum.
double norm1(const CMatrix& m);
double norm1(const SpMatrix& m);

}  // namespace qsw
