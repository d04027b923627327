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

#include <string>
#include <vector>

#include "qsw/gksl.hpp"
#include "qsw/graphs.hpp"
#include "qsw/numkernel.hpp"

namespace qsw {

// ---------------------------------------------------------------------------
// Propagation

/// @brief sum_k pos_k^2 p_k.
double second_moment(const RVector& p, const std::vector<double>& positions);

struct PropagationTrace {
  std::vector<double> times;
  std::vector<double> mu2;
  std::vector<double> alphas;     // one slope per batch
  std::vector<double> midpoints;  // (t_i + t_{i+l-1}) / 2
};

/// @brief Least-squares slope of log f against log t over every window of
/// `batch` consecutive points.
PropagationTrace scaling_exponents(const std::vector<double>& times, const std::vector<double>& f, int batch);

struct LimitFit {
  double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0;
  double residual = 0.0;  // Euclidean norm of the residual vector
  bool degenerate = false;
  int iterations = 0;
};

/// @brief Fits f(t; p) = p1 - p2 / (t - p3)^p4 with p4 > 0 and p3 < min t by
/// Levenberg-Marquardt.
LimitFit fit_limit_model(const std::vector<double>& t, const std::vector<double>& y, int max_iterations = 500);

/// @brief Second moments of a walk on a path of n vertices (positions
/// -(n-1)/2 .. (n-1)/2, n odd) started at the centre.
/// NGQSW uses the symmetrised two-Lindblad generator with the standard
/// Hamiltonians and starts in the uniform mixture of the two centre copies.
std::vector<double> path_mu2(Model model, double omega, int n, const std::vector<double>& times);

// ---------------------------------------------------------------------------
// Closed forms for the standard global walk on paths

/// @brief Probability of vertex k at time t on the n-vertex path started at
/// vertex l (both 1-based), from the double sine sum.
double path_probability_closed_form(int n, int l, int k, double t, double omega);

/// @brief p_k(t) on the infinite path started at 0, by nested trapezoid
/// refinement of the double integral over [-pi, pi]^2.
double infinite_path_probability(int k, double t, double omega, double tol = 1e-8);

/// @brief A_{n,k} = (-1)^{n+k} 2^{-n} C(2n,n) C(2n,n+k).
double taylor_A(int n, int k);
/// @brief Coefficient of t^n / n! in p_k(t) for omega in [0, 1].
double taylor_B(int n, int k, double omega);
/// @brief sum_n A_{n,k} t^n / n!.
double series_A(int k, double t);
/// @brief sum_n B_{n,k}(omega) t^n / n!.
double series_B(int k, double t, double omega);
/// @brief 2 omega t + 2 (1 - omega)^2 t^2.
double moment_mu2(double omega, double t);

// ---------------------------------------------------------------------------
// Convergence

enum class ConvergenceClass { Relaxing, ConvergentNonRelaxing, PossiblyPeriodic };

std::string to_string(ConvergenceClass c);

struct ConvergenceReport {
  ConvergenceClass classification = ConvergenceClass::Relaxing;
  int zero_multiplicity = 0;
  double second_smallest_abs = 0.0;
  int imaginary_count = 0;
  double tol = 1e-10;
  std::vector<cplx> spectrum;
};

/// @brief Spectrum-based classification. |lambda| < tol counts as zero;
/// |Re| < tol with |Im| > tol counts as purely imaginary.
ConvergenceReport classify_convergence(const EvolutionGenerator& gen, double tol = 1e-10, long cap = 2500);

/// @brief Distance from `target` to the nearest eigenvalue in the report.
double nearest_eigenvalue_distance(const ConvergenceReport& r, cplx target);

struct StructureMeasures {
  double p_s = 0.0;
  double mu_s = 0.0;
};

/// @brief Mass on the unique sink component and sum_v d(v, sink)^2 p_v.
StructureMeasures structure_measures(const DiGraph& g, const RVector& p);

/// @brief Smallest time from which ||p(t) - p(T_max)||_2 never increases.
double convergence_profile(const std::vector<RVector>& trace, const std::vector<double>& times);

}  // namespace qsw
