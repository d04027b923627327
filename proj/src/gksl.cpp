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

#include "qsw/gksl.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qsw {

namespace {

using RowMajorC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kDriftTol = 1e-7;

SpMatrix identity_sparse(int n) {
  SpMatrix id(n, n);
  id.setIdentity();
  return id;
}

RVector column_abs_sums(const SpMatrix& m) {
  RVector c = RVector::Zero(m.cols());
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SpMatrix::InnerIterator it(m, k); it; ++it) c(k) += std::abs(it.value());
  }
  return c;
}

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::CTQW:
      return "ctqw";
    case Model::CTRW:
      return "ctrw";
    case Model::LQSW:
      return "lqsw";
    case Model::GQSW:
      return "gqsw";
    case Model::NGQSW:
      return "ngqsw";
  }
  return "unknown";
}

Model model_from_string(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "ctqw") return Model::CTQW;
  if (s == "ctrw") return Model::CTRW;
  if (s == "lqsw") return Model::LQSW;
  if (s == "gqsw") return Model::GQSW;
  if (s == "ngqsw") return Model::NGQSW;
  throw std::invalid_argument("unknown model '" + name + "'");
}

void validate_density(const CMatrix& rho, const DensityTolerances& tol) {
  if (rho.rows() != rho.cols()) throw DensityInvariantViolated("density: matrix is not square");
  if (!rho.allFinite()) throw DensityInvariantViolated("density: non-finite entries");
  if (!is_hermitian(rho, tol.hermitian)) throw DensityInvariantViolated("density: not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol.trace) throw DensityInvariantViolated("density: trace differs from 1");
  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().size() > 0 && solver.eigenvalues().minCoeff() < tol.min_eigenvalue) {
    throw DensityInvariantViolated("density: negative eigenvalue");
  }
}

CMatrix basis_state(int n, int k) {
  if (k < 0 || k >= n) throw DimensionError("basis_state: index out of range");
  CMatrix rho = CMatrix::Zero(n, n);
  rho(k, k) = 1.0;
  return rho;
}

// ---------------------------------------------------------------------------
// Walk specifications

WalkSpec ctqw_spec(const Graph& g) {
  WalkSpec s;
  s.model = Model::CTQW;
  s.omega = 0.0;
  s.hamiltonian = adjacency_sparse(g);
  s.ham_weight = 1.0;
  s.diss_weight = 0.0;
  return s;
}

WalkSpec lqsw_spec(const DiGraph& g, double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("lqsw_spec: omega must lie in [0, 1]");
  WalkSpec s;
  s.model = Model::LQSW;
  s.omega = omega;
  s.hamiltonian = adjacency_sparse(underlying(g));
  for (const auto& [i, j] : g.arcs()) {
    SpMatrix l(g.n(), g.n());
    l.insert(j, i) = 1.0;
    l.makeCompressed();
    s.lindblads.push_back(std::move(l));
  }
  s.ham_weight = 1.0 - omega;
  s.diss_weight = omega;
  return s;
}

WalkSpec ctrw_spec(const Graph& g) {
  WalkSpec s = lqsw_spec(DiGraph::from_graph(g), 1.0);
  s.model = Model::CTRW;
  return s;
}

WalkSpec gqsw_spec(const DiGraph& g, double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("gqsw_spec: omega must lie in [0, 1]");
  WalkSpec s;
  s.model = Model::GQSW;
  s.omega = omega;
  s.hamiltonian = adjacency_sparse(underlying(g));
  s.lindblads.push_back(adjacency_sparse(g));
  s.ham_weight = 1.0 - omega;
  s.diss_weight = omega;
  return s;
}

// ---------------------------------------------------------------------------
// Generator

EvolutionGenerator::EvolutionGenerator(SpMatrix h, std::vector<SpMatrix> lindblads, double ham_weight,
                                       double diss_weight, Model model, double omega)
    : dim_(static_cast<int>(h.rows())),
      h_(std::move(h)),
      lindblads_(std::move(lindblads)),
      ham_weight_(ham_weight),
      diss_weight_(diss_weight),
      model_(model),
      omega_(omega) {
  if (h_.rows() != h_.cols()) throw DimensionError("build_generator: Hamiltonian is not square");
  if (ham_weight < 0.0 || diss_weight < 0.0) throw std::invalid_argument("build_generator: negative weight");
  if (!is_hermitian(CMatrix(h_), kHermTol * std::max(1.0, norm1(h_)))) {
    throw NotHermitian("build_generator: Hamiltonian is not Hermitian");
  }
  k_sum_ = SpMatrix(dim_, dim_);
  RMatrix col_products = RMatrix::Zero(dim_, dim_);
  for (auto& l : lindblads_) {
    if (l.rows() != dim_ || l.cols() != dim_) throw DimensionError("build_generator: Lindblad dimension mismatch");
    l.makeCompressed();
    SpMatrix adj = l.adjoint();
    k_sum_ += SpMatrix(adj * l);
    const RVector c = column_abs_sums(l);
    col_products += c * c.transpose();
    lindblads_adj_.push_back(std::move(adj));
  }
  k_sum_.makeCompressed();
  h_.makeCompressed();
  // ||H (x) I - I (x) conj(H)||_1 <= 2||H||_1; ||sum L (x) conj(L)||_1 is bounded
  // by max_{a,b} sum_L c_L(a) c_L(b) with c_L the column sums of |L|.
  const double diss = (lindblads_.empty() ? 0.0 : col_products.maxCoeff()) + norm1(k_sum_);
  norm_bound_ = ham_weight_ * 2.0 * norm1(h_) + diss_weight_ * diss;
}

CMatrix EvolutionGenerator::apply(const CMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw DimensionError("generator: state dimension mismatch");
  CMatrix out = CMatrix::Zero(dim_, dim_);
  if (ham_weight_ != 0.0 && h_.nonZeros() > 0) {
    CMatrix hr = h_ * rho;
    // rho H = (H rho^+)^+ for Hermitian H and rho; the general form is kept so
    // that the action stays linear on non-Hermitian inputs.
    CMatrix rh = rho * h_;
    out += cplx(0.0, -ham_weight_) * (hr - rh);
  }
  if (diss_weight_ != 0.0 && !lindblads_.empty()) {
    CMatrix acc = CMatrix::Zero(dim_, dim_);
    for (size_t k = 0; k < lindblads_.size(); ++k) {
      const SpMatrix& l = lindblads_[k];
      if (l.nonZeros() == 1) {
        // c|j><i| rho (c|j><i|)^+ = |c|^2 rho_ii |j><j|.
        for (Eigen::Index col = 0; col < l.outerSize(); ++col) {
          for (SpMatrix::InnerIterator it(l, col); it; ++it) {
            acc(it.row(), it.row()) += std::norm(it.value()) * rho(col, col);
          }
        }
        continue;
      }
      CMatrix lr = l * rho;
      acc += lr * lindblads_adj_[k];
    }
    acc -= 0.5 * (k_sum_ * rho);
    acc -= 0.5 * (rho * k_sum_);
    out += diss_weight_ * acc;
  }
  return out;
}

void EvolutionGenerator::apply_vec(const CVector& x, CVector& y) const {
  Eigen::Map<const RowMajorC> rho_map(x.data(), dim_, dim_);
  const CMatrix rho = rho_map;
  const CMatrix out = apply(rho);
  y.resize(x.size());
  Eigen::Map<RowMajorC>(y.data(), dim_, dim_) = out;
}

CMatrix EvolutionGenerator::dense(long max_rows) const {
  const long rows = static_cast<long>(dim_) * dim_;
  if (rows > max_rows) {
    throw DimensionError("generator: dense form of size " + std::to_string(rows) + " exceeds cap");
  }
  const SpMatrix id = identity_sparse(dim_);
  SpMatrix s(rows, rows);
  if (ham_weight_ != 0.0) {
    const SpMatrix hbar = h_.conjugate();
    s += SpMatrix(cplx(0.0, -ham_weight_) * (kron(h_, id) - kron(id, hbar)));
  }
  if (diss_weight_ != 0.0 && !lindblads_.empty()) {
    SpMatrix d(rows, rows);
    for (const auto& l : lindblads_) {
      d += kron(l, SpMatrix(l.conjugate()));
    }
    const SpMatrix kt = k_sum_.transpose();
    d -= 0.5 * kron(k_sum_, id);
    d -= 0.5 * kron(id, kt);
    s += diss_weight_ * d;
  }
  return CMatrix(s);
}

EvolutionGenerator build_generator(const CMatrix& h, const std::vector<CMatrix>& lindblads, double ham_weight,
                                   double diss_weight) {
  if (h.rows() != h.cols()) throw DimensionError("build_generator: Hamiltonian is not square");
  std::vector<SpMatrix> ls;
  ls.reserve(lindblads.size());
  for (const auto& l : lindblads) {
    if (l.rows() != h.rows() || l.cols() != h.cols()) {
      throw DimensionError("build_generator: Lindblad dimension mismatch");
    }
    ls.push_back(l.sparseView());
  }
  return EvolutionGenerator(h.sparseView(), std::move(ls), ham_weight, diss_weight);
}

EvolutionGenerator build_generator(const WalkSpec& spec) {
  return EvolutionGenerator(spec.hamiltonian, spec.lindblads, spec.ham_weight, spec.diss_weight, spec.model,
                            spec.omega);
}

// ---------------------------------------------------------------------------
// Evolution

namespace {

CMatrix propagate(const EvolutionGenerator& gen, const CMatrix& rho, double dt) {
  LinearOperator op = [&gen](const CVector& x, CVector& y) { gen.apply_vec(x, y); };
  return unvec(expm_apply(op, gen.norm_bound(), vec(rho), dt));
}

void check_drift(const CMatrix& rho, cplx trace0, double hermitian_scale) {
  if (!rho.allFinite()) throw DensityInvariantViolated("evolve: non-finite state");
  if (std::abs(rho.trace() - trace0) > kDriftTol * std::max(1.0, std::abs(trace0))) {
    throw DensityInvariantViolated("evolve: trace drift exceeds tolerance");
  }
  if (!is_hermitian(rho, kDriftTol * hermitian_scale)) {
    throw DensityInvariantViolated("evolve: Hermiticity drift exceeds tolerance");
  }
}

}  // namespace

CMatrix evolve(const EvolutionGenerator& gen, const CMatrix& rho0, double t) {
  if (t < 0.0) throw std::invalid_argument("evolve: negative time");
  if (rho0.rows() != gen.dim() || rho0.cols() != gen.dim()) throw DimensionError("evolve: dimension mismatch");
  if (t == 0.0) return rho0;
  const bool hermitian_input = is_hermitian(rho0, 1e-12);
  CMatrix rho = propagate(gen, rho0, t);
  if (hermitian_input) {
    check_drift(rho, rho0.trace(), std::max(1.0, std::abs(rho0.trace())));
    rho = 0.5 * (rho + rho.adjoint()).eval();
  }
  return rho;
}

std::vector<CMatrix> evolve_trace(const EvolutionGenerator& gen, const CMatrix& rho0,
                                  const std::vector<double>& times) {
  std::vector<CMatrix> out;
  out.reserve(times.size());
  CMatrix rho = rho0;
  double now = 0.0;
  for (double t : times) {
    if (t < now) throw std::invalid_argument("evolve_trace: times must be ascending and nonnegative");
    rho = evolve(gen, rho, t - now);
    now = t;
    out.push_back(rho);
  }
  return out;
}

RVector measure(const CMatrix& rho) {
  RVector p(rho.rows());
  for (Eigen::Index k = 0; k < rho.rows(); ++k) p(k) = std::max(0.0, rho(k, k).real());
  return p;
}

std::vector<cplx> gqsw_spectrum_commuting(const Graph& g, double omega) {
  const EigenSystem es = eig_hermitian(adjacency_real(g));
  std::vector<cplx> out;
  out.reserve(static_cast<size_t>(g.n()) * static_cast<size_t>(g.n()));
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
      const double d = es.values(i) - es.values(j);
      out.emplace_back(-0.5 * omega * d * d, -(1.0 - omega) * d);
    }
  }
  return out;
}

RMatrix ctrw_rate_matrix(const Graph& g) { return -laplacian_real(g); }

RVector ctrw_evolve(const Graph& g, const RVector& p0, double t) {
  if (p0.size() != g.n()) throw DimensionError("ctrw_evolve: dimension mismatch");
  Eigen::SparseMatrix<double> rate(g.n(), g.n());
  std::vector<Eigen::Triplet<double>> trip;
  int max_deg = 0;
  for (const auto& [u, v] : g.edges()) {
    trip.emplace_back(u, v, 1.0);
    trip.emplace_back(v, u, 1.0);
  }
  for (int v = 0; v < g.n(); ++v) {
    trip.emplace_back(v, v, -static_cast<double>(g.degree(v)));
    max_deg = std::max(max_deg, g.degree(v));
  }
  rate.setFromTriplets(trip.begin(), trip.end());
  const SpMatrix rate_c = rate.cast<cplx>();
  LinearOperator op = [&rate_c](const CVector& x, CVector& y) { y.noalias() = rate_c * x; };
  const CVector out = expm_apply(op, 2.0 * max_deg, p0.cast<cplx>(), t);
  return out.real();
}

}  // namespace qsw
