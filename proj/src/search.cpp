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

#include "qsw/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qsw/rng.hpp"

namespace qsw {

namespace {

constexpr double kTopTol = 1e-10;

void check_vertex(int n, int w, const char* where) {
  if (w < 0 || w >= n) throw std::out_of_range(std::string(where) + ": marked vertex out of range");
}

void check_symmetric(const RMatrix& h, const char* where) {
  if (h.rows() != h.cols()) throw DimensionError(std::string(where) + ": matrix is not square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > kHermTol * scale) {
    throw NotHermitian(std::string(where) + ": matrix is not symmetric");
  }
}

}  // namespace

RealEigenSystem eig_symmetric(const RMatrix& h) {
  check_symmetric(h, "eig_symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eig_symmetric: solver failed");
  const Eigen::Index n = h.rows();
  RealEigenSystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    es.values(i) = solver.eigenvalues()(n - 1 - i);
    es.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return es;
}

RMatrix graph_hamiltonian(const Graph& g, GraphMatrixKind kind) {
  const int n = g.n();
  switch (kind) {
    case GraphMatrixKind::Adjacency: {
      if (g.num_edges() == 0) throw GraphError("graph_hamiltonian: graph has no edges");
      const RMatrix a = adjacency_real(g);
      Eigen::SelfAdjointEigenSolver<RMatrix> solver(a, Eigen::EigenvaluesOnly);
      return a / solver.eigenvalues()(n - 1);
    }
    case GraphMatrixKind::Laplacian: {
      if (!is_connected(g)) throw DisconnectedGraph("graph_hamiltonian: Laplacian kinds need a connected graph");
      const RMatrix l = laplacian_real(g);
      if (n == 1) return RMatrix::Identity(1, 1);
      Eigen::SelfAdjointEigenSolver<RMatrix> solver(l, Eigen::EigenvaluesOnly);
      return RMatrix::Identity(n, n) - l / solver.eigenvalues()(n - 1);
    }
    case GraphMatrixKind::NormalizedLaplacian: {
      if (!is_connected(g)) throw DisconnectedGraph("graph_hamiltonian: Laplacian kinds need a connected graph");
      return RMatrix::Identity(n, n) - normalized_laplacian_real(g);
    }
  }
  throw std::invalid_argument("graph_hamiltonian: unknown kind");
}

std::string to_string(GraphMatrixKind k) {
  switch (k) {
    case GraphMatrixKind::Adjacency:
      return "adjacency";
    case GraphMatrixKind::Laplacian:
      return "laplacian";
    case GraphMatrixKind::NormalizedLaplacian:
      return "normalized-laplacian";
  }
  return "unknown";
}

GraphMatrixKind matrix_kind_from_string(const std::string& name) {
  if (name == "adjacency") return GraphMatrixKind::Adjacency;
  if (name == "laplacian") return GraphMatrixKind::Laplacian;
  if (name == "normalized-laplacian") return GraphMatrixKind::NormalizedLaplacian;
  throw std::invalid_argument("unknown matrix kind '" + name + "'");
}

ShiftRescaleResult shift_rescale(const RMatrix& h) {
  check_symmetric(h, "shift_rescale");
  const Eigen::Index n = h.rows();
  if (n < 2) throw DimensionError("shift_rescale: need at least two eigenvalues");
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(h, Eigen::EigenvaluesOnly);
  const RVector& ev = solver.eigenvalues();
  const double l1 = ev(n - 1), l2 = ev(n - 2), ln = ev(0);
  if (l1 - l2 <= 1e-12) throw DegenerateTop("shift_rescale: top eigenvalue is not simple");
  ShiftRescaleResult r;
  r.shift = -0.5 * (l2 + ln);
  r.scale = 1.0 / (l1 + r.shift);
  r.h = r.scale * (h + r.shift * RMatrix::Identity(n, n));
  r.c = r.scale * 0.5 * (l2 - ln);
  return r;
}

double optimal_shift_success_bound(double lambda2, double lambdan) {
  if (!(lambdan <= lambda2 && lambda2 < 1.0)) {
    throw std::invalid_argument("optimal_shift_success_bound: need lambda_n <= lambda_2 < 1");
  }
  return (1.0 - lambda2) / (1.0 - lambdan);
}

SearchStats search_stats(const RealEigenSystem& es, int w, double c_const) {
  const Eigen::Index n = es.values.size();
  check_vertex(static_cast<int>(n), w, "search_stats");
  if (std::abs(es.values(0) - 1.0) > kTopTol) throw std::invalid_argument("search_stats: lambda_1 must equal 1");
  if (n > 1 && es.values(0) - es.values(1) <= 1e-12) throw DegenerateTop("search_stats: top eigenvalue is not simple");
  SearchStats s;
  s.c_const = c_const;
  s.eps = es.vectors(w, 0) * es.vectors(w, 0);
  for (Eigen::Index i = 1; i < n; ++i) {
    const double o = es.vectors(w, i) * es.vectors(w, i);
    const double d = 1.0 - es.values(i);
    s.s1 += o / d;
    s.s2 += o / (d * d);
    s.s3 += o / (d * d * d);
  }
  s.gap = n > 1 ? es.values(0) - es.values(1) : 0.0;
  if (s.s1 > 0.0 && s.s3 > 0.0) {
    const double rhs = c_const * std::min(s.s1 * s.s2 / s.s3, s.gap * std::sqrt(s.s2));
    s.condition_holds = std::sqrt(s.eps) < rhs;
  }
  s.predicted_t = s.eps > 0.0 && s.s1 > 0.0 ? std::sqrt(s.s2) / (std::sqrt(s.eps) * s.s1)
                                              : std::numeric_limits<double>::infinity();
  s.gamma = s.s1;
  return s;
}

SearchStats search_stats(const RMatrix& hg, int w, double c_const) {
  return search_stats(eig_symmetric(hg), w, c_const);
}

std::string to_string(GammaRule r) {
  switch (r) {
    case GammaRule::S1:
      return "s1";
    case GammaRule::Caption:
      return "caption";
    case GammaRule::Manual:
      return "manual";
  }
  return "unknown";
}

GammaRule gamma_rule_from_string(const std::string& name) {
  if (name == "s1") return GammaRule::S1;
  if (name == "caption") return GammaRule::Caption;
  if (name == "manual") return GammaRule::Manual;
  throw std::invalid_argument("unknown gamma rule '" + name + "'");
}

double caption_gamma(const RealEigenSystem& es, int w) {
  check_vertex(static_cast<int>(es.values.size()), w, "caption_gamma");
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 1; i < es.values.size(); ++i) {
    const double o = es.vectors(w, i) * es.vectors(w, i);
    num += o / (1.0 - es.values(i));
    den += o;
  }
  if (den <= 0.0) throw std::invalid_argument("caption_gamma: marked vertex has no weight outside lambda_1");
  return num / den;
}

SearchRun run_search(const RMatrix& hg, int w, GammaRule rule, const std::vector<double>& times,
                     InitialState initial, double manual_gamma) {
  check_symmetric(hg, "run_search");
  const int n = static_cast<int>(hg.rows());
  check_vertex(n, w, "run_search");
  SearchRun run;
  run.initial = initial;
  run.times = times;

  RealEigenSystem es;
  const bool need_eig = rule != GammaRule::Manual || initial == InitialState::Principal;
  if (need_eig) es = eig_symmetric(hg);
  switch (rule) {
    case GammaRule::S1:
      run.gamma = search_stats(es, w).gamma;
      break;
    case GammaRule::Caption:
      run.gamma = caption_gamma(es, w);
      break;
    case GammaRule::Manual:
      run.gamma = manual_gamma;
      break;
  }

  CVector psi0;
  if (initial == InitialState::Principal) {
    psi0 = es.vectors.col(0).cast<cplx>();
  } else {
    psi0 = CVector::Constant(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  }
  RMatrix h = run.gamma * hg;
  h(w, w) += 1.0;
  const HermitianPropagator prop(eig_hermitian(h));
  CVector ew = CVector::Zero(n);
  ew(w) = 1.0;
  const std::vector<cplx> amp = prop.amplitude(ew, psi0, times);
  run.success.reserve(amp.size());
  for (size_t i = 0; i < amp.size(); ++i) {
    const double p = std::min(1.0, std::norm(amp[i]));
    run.success.push_back(p);
    if (i == 0 || p > run.p_max) {
      run.p_max = p;
      run.argmax_t = times[i];
    }
  }
  return run;
}

double classical_mfpt(const Graph& g, int w) {
  check_vertex(g.n(), w, "classical_mfpt");
  const RealEigenSystem es = eig_symmetric(graph_hamiltonian(g, GraphMatrixKind::NormalizedLaplacian));
  double s1 = 0.0;
  for (Eigen::Index i = 1; i < es.values.size(); ++i) {
    s1 += es.vectors(w, i) * es.vectors(w, i) / (1.0 - es.values(i));
  }
  return 2.0 * static_cast<double>(g.num_edges()) / g.degree(w) * s1;
}

double classical_mfpt_mc(const Graph& g, int w, long walks, std::uint64_t seed) {
  check_vertex(g.n(), w, "classical_mfpt_mc");
  if (walks <= 0) throw std::invalid_argument("classical_mfpt_mc: walks must be positive");
  if (!is_connected(g)) throw DisconnectedGraph("classical_mfpt_mc: graph must be connected");
  std::vector<double> deg(static_cast<size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) deg[static_cast<size_t>(v)] = g.degree(v);
  std::discrete_distribution<int> start(deg.begin(), deg.end());
  Rng rng = make_rng(seed);
  double total = 0.0;
  for (long k = 0; k < walks; ++k) {
    int v = start(rng);
    long steps = 0;
    while (v != w) {
      const auto& nb = g.neighbors(v);
      v = nb[std::uniform_int_distribution<size_t>(0, nb.size() - 1)(rng)];
      ++steps;
    }
    total += static_cast<double>(steps);
  }
  return total / static_cast<double>(walks);
}

ScheduleResult geometric_schedule(double beta0, double beta1, double kprime, int n,
                                  const std::function<bool(double)>& oracle, double c) {
  if (!(beta1 > 0.0) || !(kprime > 0.0)) throw std::invalid_argument("geometric_schedule: need beta1 > 0 and K' > 0");
  if (n < 2) throw std::invalid_argument("geometric_schedule: n must be at least 2");
  const double big_k = kprime * std::log(static_cast<double>(n));
  ScheduleResult r;
  for (int k = 0; k <= big_k; ++k) {
    const double t = c * std::pow(static_cast<double>(n), beta0 + k * beta1 / big_k);
    r.run_times.push_back(t);
    r.total_time += t;
    if (oracle(t)) {
      r.k_w = k;
      return r;
    }
  }
  throw OracleNeverSucceeds("geometric_schedule: oracle never succeeded up to k = K");
}

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1 / e

// Halley iteration on w e^w - x from the given start.
double lambert_halley(double x, double w) {
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    if (!std::isfinite(step)) break;
    w -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

// Series of both branches around the branch point x = -1/e.
double branch_point_series(double x, double sign) {
  const double p = sign * std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
  return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
}

}  // namespace

double lambert_w0(double x) {
  if (x < -kInvE - 1e-16) throw std::domain_error("lambert_w0: x < -1/e");
  if (x <= -kInvE) return -1.0;
  if (x == 0.0) return 0.0;
  double w;
  if (x < -0.25) {
    w = branch_point_series(x, 1.0);
  } else if (x < 3.0) {
    w = std::log1p(x);
  } else {
    const double l1 = std::log(x);
    w = l1 - std::log(l1);
  }
  return lambert_halley(x, w);
}

double lambert_wm1(double x) {
  if (x < -kInvE - 1e-16 || x >= 0.0) throw std::domain_error("lambert_wm1: x outside [-1/e, 0)");
  if (x <= -kInvE) return -1.0;
  double w;
  if (x < -0.25) {
    w = branch_point_series(x, -1.0);
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  return lambert_halley(x, w);
}

double lambert_bound(double p0) {
  if (!(p0 > 1.0)) throw std::domain_error("lambert_bound: p0 must exceed 1");
  const double x = (1.0 - p0) / (std::numbers::e * p0);
  return lambert_w0(x) / lambert_wm1(x);
}

SpectralReport spectral_report(const Graph& g, GraphMatrixKind kind) {
  const int n = g.n();
  SpectralReport r;
  RMatrix h;
  switch (kind) {
    case GraphMatrixKind::Adjacency:
      h = adjacency_real(g);
      break;
    case GraphMatrixKind::Laplacian:
      h = graph_hamiltonian(g, kind);
      break;
    case GraphMatrixKind::NormalizedLaplacian:
      h = graph_hamiltonian(g, kind);
      break;
  }
  RealEigenSystem es = eig_symmetric(h);
  if (kind == GraphMatrixKind::Adjacency) {
    r.normalizer = es.values(0);
  } else if (kind == GraphMatrixKind::Laplacian) {
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(laplacian_real(g), Eigen::EigenvaluesOnly);
    r.normalizer = solver.eigenvalues()(n - 1);
  }
  r.lambda1 = es.values(0);
  r.lambda2 = n > 1 ? es.values(1) : es.values(0);
  r.lambdan = es.values(n - 1);
  r.gap = r.lambda1 - r.lambda2;
  RVector v = es.vectors.col(0);
  const double sq = 1.0 / std::sqrt(static_cast<double>(n));
  if (v.sum() < 0.0) v = -v;
  r.overlap = std::abs(v.sum() * sq);
  r.maxdev = (v.array() - sq).abs().maxCoeff();
  return r;
}

// ---------------------------------------------------------------------------
// Sample experiments

ErP0Sample er_p0_sample(int n, double p0, int marked, std::uint64_t seed) {
  if (n < 2 || marked < 1) throw std::invalid_argument("er_p0_sample: need n >= 2 and marked >= 1");
  const double p = std::min(1.0, p0 * std::log(static_cast<double>(n)) / n);
  const Graph g = giant_component(gen_er(n, p, derive_seed(seed, 0)));
  ErP0Sample out;
  out.n_giant = g.n();
  if (g.n() < 2) throw DisconnectedGraph("er_p0_sample: giant component is a single vertex");
  const RMatrix hg = graph_hamiltonian(g, GraphMatrixKind::Laplacian);
  const RealEigenSystem es = eig_symmetric(hg);
  {
    const Eigen::Index m = es.values.size();
    const double l2 = es.values(1), ln = es.values(m - 1);
    const double c = 0.5 * (l2 - ln) / (1.0 - 0.5 * (l2 + ln));
    out.shift_bound = (1.0 - c) / (1.0 + c);
  }
  std::vector<int> order(static_cast<size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) order[static_cast<size_t>(v)] = v;
  Rng rng = make_rng(seed, 1);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(static_cast<size_t>(std::min(marked, g.n())));
  out.marked = order;
  const double t = std::numbers::pi * std::sqrt(static_cast<double>(g.n())) / 2.0;
  out.min = 1.0;
  for (int w : out.marked) {
    const double gamma = caption_gamma(es, w);
    const SearchRun run = run_search(hg, w, GammaRule::Manual, {t}, InitialState::Uniform, gamma);
    out.success.push_back(run.success[0]);
    out.mean += run.success[0];
    out.min = std::min(out.min, run.success[0]);
  }
  out.mean /= static_cast<double>(out.success.size());
  return out;
}

std::vector<BaPoint> ba_trajectory(const std::vector<int>& sizes, int m0, std::uint64_t seed) {
  if (sizes.empty()) throw std::invalid_argument("ba_trajectory: no sizes");
  const int nmax = *std::max_element(sizes.begin(), sizes.end());
  const Graph full = gen_ba(nmax, m0, seed);
  std::vector<BaPoint> out;
  for (int n : sizes) {
    std::vector<int> prefix(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) prefix[static_cast<size_t>(v)] = v;
    const Graph g = induced_subgraph(full, prefix);
    const RMatrix hg = graph_hamiltonian(g, GraphMatrixKind::NormalizedLaplacian);
    const int w = n - 1;
    const SearchStats st = search_stats(hg, w);
    const SearchRun run = run_search(hg, w, GammaRule::Manual, {st.predicted_t}, InitialState::Principal, st.gamma);
    out.push_back({n, st.predicted_t, run.success[0]});
  }
  return out;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("regression_slope: need two or more pairs");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("regression_slope: x has no spread");
  return sxy / sxx;
}

}  // namespace qsw
