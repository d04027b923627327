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

#include "qsw/graphs.hpp"
#include "qsw/numkernel.hpp"

namespace qsw {

enum class Model { CTQW, CTRW, LQSW, GQSW, NGQSW };

std::string to_string(Model m);
Model model_from_string(const std::string& name);

class DensityInvariantViolated : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

struct DensityTolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-8;
};

/// @brief Throws DensityInvariantViolated unless rho is Hermitian, unit-trace
/// and positive semidefinite within the given tolerances.
void validate_density(const CMatrix& rho, const DensityTolerances& tol = {});

/// @brief |k><k| in dimension n.
CMatrix basis_state(int n, int k);

/// @brief Operators and weights defining one walk:
///   d rho/dt = -i ham_weight [H, rho] + diss_weight sum_L (L rho L^+ - {L^+ L, rho}/2).
struct WalkSpec {
  Model model = Model::CTQW;
  double omega = 0.0;
  SpMatrix hamiltonian;
  std::vector<SpMatrix> lindblads;
  double ham_weight = 1.0;
  double diss_weight = 0.0;
};

/// @brief Standard CTQW: H = A(G), no dissipation.
WalkSpec ctqw_spec(const Graph& g);
/// @brief Classical walk as the omega = 1 end of the local model on the
/// symmetric digraph of g.
WalkSpec ctrw_spec(const Graph& g);
/// @brief Standard local-interaction walk: H = A(underlying), one Lindblad
/// |j><i| per arc (i, j); weights (1 - omega, omega).
WalkSpec lqsw_spec(const DiGraph& g, double omega);
/// @brief Standard global-interaction walk: H = A(underlying), L = A(g).
WalkSpec gqsw_spec(const DiGraph& g, double omega);

/// @brief GKSL generator S acting on row-major vec(rho). Operators are kept in
/// sparse form; the right-hand side is applied matrix-free and the dense
/// n^2 x n^2 matrix is assembled on request.
class EvolutionGenerator {
 public:
  EvolutionGenerator(SpMatrix h, std::vector<SpMatrix> lindblads, double ham_weight, double diss_weight,
                     Model model = Model::CTQW, double omega = 0.0);

  int dim() const { return dim_; }
  Model model() const { return model_; }
  double omega() const { return omega_; }
  const SpMatrix& hamiltonian() const { return h_; }
  const std::vector<SpMatrix>& lindblads() const { return lindblads_; }
  double ham_weight() const { return ham_weight_; }
  double diss_weight() const { return diss_weight_; }

  /// @brief Right-hand side of the master equation at rho.
  CMatrix apply(const CMatrix& rho) const;
  void apply_vec(const CVector& x, CVector& y) const;
  /// @brief Dense S; throws DimensionError if dim^2 exceeds max_rows.
  CMatrix dense(long max_rows = 40000) const;
  /// @brief Upper bound on the induced 1-norm of S.
  double norm_bound() const { return norm_bound_; }

 private:
  int dim_ = 0;
  SpMatrix h_;
  std::vector<SpMatrix> lindblads_;
  std::vector<SpMatrix> lindblads_adj_;
  SpMatrix k_sum_;  // sum of L^+ L
  double ham_weight_ = 1.0;
  double diss_weight_ = 0.0;
  Model model_ = Model::CTQW;
  double omega_ = 0.0;
  double norm_bound_ = 0.0;
};

EvolutionGenerator build_generator(const CMatrix& h, const std::vector<CMatrix>& lindblads, double ham_weight,
                                   double diss_weight);
EvolutionGenerator build_generator(const WalkSpec& spec);

/// @brief rho(t) = unvec(exp(S t) vec(rho0)).
CMatrix evolve(const EvolutionGenerator& gen, const CMatrix& rho0, double t);
/// @brief States at ascending times, stepping incrementally between them.
std::vector<CMatrix> evolve_trace(const EvolutionGenerator& gen, const CMatrix& rho0,
                                  const std::vector<double>& times);

/// @brief Canonical-basis measurement: diagonal real parts clipped at 0.
RVector measure(const CMatrix& rho);

/// @brief Spectrum of the standard global walk on an undirected graph, where H
/// and L commute: lambda_ij = -i(1-omega)(d_i-d_j) - (omega/2)(d_i-d_j)^2.
std::vector<cplx> gqsw_spectrum_commuting(const Graph& g, double omega);

/// @brief Classical master-equation rate matrix A - D (columns sum to zero).
RMatrix ctrw_rate_matrix(const Graph& g);
/// @brief p(t) = exp(t (A - D)) p0.
RVector ctrw_evolve(const Graph& g, const RVector& p0, double t);

}  // namespace qsw
