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

#include "qsw/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace qsw {

namespace {

// Taylor steps are taken with ||h A||_1 <= kStepNorm; the term count then stays
// below ~40 for double precision.
constexpr double kStepNorm = 3.5;
constexpr int kMaxTerms = 80;

EigenSystem sorted_descending(const RVector& values, const CMatrix& vectors) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
  EigenSystem es;
  es.values.resize(n);
  es.vectors.resize(vectors.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    es.values(k) = values(order[static_cast<size_t>(k)]);
    es.vectors.col(k) = vectors.col(order[static_cast<size_t>(k)]);
  }
  return es;
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SpMatrix kron(const SpMatrix& a, const SpMatrix& b) {
  SpMatrix out = Eigen::kroneckerProduct(a, b).eval();
  out.makeCompressed();
  return out;
}

CVector vec(const CMatrix& b) {
  CVector v(b.size());
  for (Eigen::Index x = 0; x < b.rows(); ++x) {
    for (Eigen::Index y = 0; y < b.cols(); ++y) v(x * b.cols() + y) = b(x, y);
  }
  return v;
}

CMatrix unvec(const CVector& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) {
    throw DimensionError("unvec: length " + std::to_string(v.size()) + " is not a perfect square");
  }
  CMatrix b(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) b(x, y) = v(x * n + y);
  }
  return b;
}

bool is_hermitian(const CMatrix& h, double tol) {
  if (h.rows() != h.cols()) return false;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = i; j < h.cols(); ++j) {
      if (std::abs(h(i, j) - std::conj(h(j, i))) > tol) return false;
    }
  }
  return true;
}

EigenSystem eig_hermitian(const RMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("eig_hermitian: matrix is not square");
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eig_hermitian: solver failed");
  return sorted_descending(solver.eigenvalues(), solver.eigenvectors().cast<cplx>());
}

EigenSystem eig_hermitian(const CMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("eig_hermitian: matrix is not square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!is_hermitian(h, kHermTol * scale)) throw NotHermitian("eig_hermitian: input is not Hermitian");
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    return eig_hermitian(RMatrix(h.real()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eig_hermitian: solver failed");
  return sorted_descending(solver.eigenvalues(), solver.eigenvectors());
}

std::vector<cplx> eig_general(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eig_general: matrix is not square");
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix> solver;
  solver.setMaxIterations(30 * static_cast<Eigen::Index>(m.rows()));
  solver.compute(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eig_general: shifted QR did not converge");
  }
  const CVector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double norm1(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

double norm1(const SpMatrix& m) {
  // SpMatrix is column-major, so outer iteration runs over columns.
  double best = 0.0;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    double s = 0.0;
    for (SpMatrix::InnerIterator it(m, k); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

CVector expm_apply(const LinearOperator& op, double norm_bound, const CVector& v, double t,
                   double tol) {
  if (t == 0.0 || norm_bound == 0.0 || v.size() == 0) return v;
  if (!std::isfinite(norm_bound) || norm_bound < 0.0) {
    throw DimensionError("expm_apply: invalid operator norm bound");
  }
  const double total = std::abs(t) * norm_bound;
  const auto steps = static_cast<long>(std::max(1.0, std::ceil(total / kStepNorm)));
  const double h = t / static_cast<double>(steps);
  const double step_tol = std::max(tol / static_cast<double>(steps), 1e-17);

  CVector x = v;
  CVector term(v.size());
  CVector next(v.size());
  for (long s = 0; s < steps; ++s) {
    CVector sum = x;
    term = x;
    double prev_norm = term.lpNorm<Eigen::Infinity>();
    bool converged = false;
    for (int k = 1; k <= kMaxTerms; ++k) {
      op(term, next);
      term = next * (h / static_cast<double>(k));
      sum += term;
      const double tn = term.lpNorm<Eigen::Infinity>();
      if (tn + prev_norm <= step_tol * sum.lpNorm<Eigen::Infinity>()) {
        converged = true;
        break;
      }
      prev_norm = tn;
    }
    if (!converged) throw NumericalFailure("expm_apply: Taylor series did not converge");
    if (!sum.allFinite()) throw NumericalFailure("expm_apply: non-finite result");
    x.swap(sum);
  }
  return x;
}

CVector expm_apply(const CMatrix& m, const CVector& v, double t, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("expm_apply: matrix is not square");
  if (m.cols() != v.size()) throw DimensionError("expm_apply: dimension mismatch");
  LinearOperator op = [&m](const CVector& x, CVector& y) { y.noalias() = m * x; };
  return expm_apply(op, norm1(m), v, t, tol);
}

HermitianPropagator::HermitianPropagator(const CMatrix& h) : es_(eig_hermitian(h)) {}

HermitianPropagator::HermitianPropagator(EigenSystem es) : es_(std::move(es)) {}

CVector HermitianPropagator::apply(const CVector& psi, double t) const {
  if (psi.size() != es_.vectors.rows()) throw DimensionError("unitary_apply: dimension mismatch");
  if (t == 0.0) return psi;
  CVector c = es_.vectors.adjoint() * psi;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(cplx(0.0, -t * es_.values(k)));
  return es_.vectors * c;
}

std::vector<cplx> HermitianPropagator::amplitude(const CVector& x, const CVector& psi,
                                                 const std::vector<double>& times) const {
  if (psi.size() != es_.vectors.rows() || x.size() != psi.size()) {
    throw DimensionError("amplitude: dimension mismatch");
  }
  const CVector c = es_.vectors.adjoint() * psi;
  const CVector d = es_.vectors.adjoint() * x;
  std::vector<cplx> out;
  out.reserve(times.size());
  for (double t : times) {
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      acc += std::conj(d(k)) * c(k) * std::exp(cplx(0.0, -t * es_.values(k)));
    }
    out.push_back(acc);
  }
  return out;
}

CVector unitary_apply(const CMatrix& h, const CVector& psi, double t) {
  return HermitianPropagator(h).apply(psi, t);
}

}  // namespace qsw
