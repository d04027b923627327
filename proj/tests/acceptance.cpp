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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion also has a wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "qsw/analysis.hpp"
#include "qsw/nonmoral.hpp"
#include "qsw/search.hpp"

using namespace qsw;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<double> grid(double a, double h, double b) {
  std::vector<double> v;
  for (double t = a; t <= b + 0.5 * h; t += h) v.push_back(t);
  return v;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// 1. GQSW on path(21) against the finite-path closed form.
Outcome closed_form_match() {
  const int n = 21;
  double worst = 0.0;
  for (double omega : {0.0, 0.3, 0.7, 1.0}) {
    const EvolutionGenerator gen = build_generator(gqsw_spec(DiGraph::from_graph(path_graph(n)), omega));
    for (int l : {1, 6, 11}) {
      const std::vector<CMatrix> tr = evolve_trace(gen, basis_state(n, l - 1), {0.5, 2.0, 5.0});
      for (size_t i = 0; i < tr.size(); ++i) {
        const double t = i == 0 ? 0.5 : (i == 1 ? 2.0 : 5.0);
        for (int k = 1; k <= n; ++k)
          worst = std::max(worst, std::abs(tr[i](k - 1, k - 1).real() - path_probability_closed_form(n, l, k, t, omega)));
      }
    }
  }
  return {worst <= 1e-8, "max |diff| = " + sci(worst)};
}

// 2. Second-moment law on path(121).
Outcome moment_law() {
  const std::vector<double> times = grid(1.0, 1.0, 10.0);
  double worst = 0.0;
  for (double omega : {0.25, 0.5, 0.75}) {
    const std::vector<double> mu = path_mu2(Model::GQSW, omega, 121, times);
    for (size_t i = 0; i < times.size(); ++i) {
      const double ref = moment_mu2(omega, times[i]);
      worst = std::max(worst, std::abs(mu[i] - ref) / ref);
    }
  }
  return {worst <= 1e-3, "max relative error = " + sci(worst)};
}

// 3. Final scaling exponents on the grid 6:6:300 with batch 5. The CTQW path
// is long enough that the light cone never reaches its ends.
Outcome scaling_exponents_check() {
  const std::vector<double> times = grid(6.0, 6.0, 300.0);
  const double ctqw = scaling_exponents(times, path_mu2(Model::CTQW, 0.0, 1501, times), 5).alphas.back();
  const double ctrw = scaling_exponents(times, path_mu2(Model::CTRW, 0.0, 201, times), 5).alphas.back();
  const double gqsw = scaling_exponents(times, path_mu2(Model::GQSW, 1.0, 201, times), 5).alphas.back();
  const bool ok = std::abs(ctqw - 2.0) <= 0.05 && std::abs(ctrw - 1.0) <= 0.05 && std::abs(gqsw - 1.0) <= 0.05;
  return {ok, "alpha CTQW = " + sci(ctqw) + ", CTRW = " + sci(ctrw) + ", GQSW(omega=1) = " + sci(gqsw)};
}

// 4. Spontaneous moralization and its removal on the moral triangle.
Outcome moralization() {
  const double p_gqsw = measure(evolve(build_generator(gqsw_spec(moral_triangle(), 1.0)), basis_state(3, 0), 20.0))(1);
  const DemoralizedGraph dg = demoralize(moral_triangle());
  const EvolutionGenerator gen = ngqsw_generator(dg, standard_operators(dg), 1.0);
  CMatrix rho0 = CMatrix::Zero(dg.dim, dg.dim);
  rho0(dg.index(0, 0), dg.index(0, 0)) = 1.0;
  double worst = 0.0;
  for (const CMatrix& rho : evolve_trace(gen, rho0, grid(0.5, 0.5, 20.0))) worst = std::max(worst, natural_measure(rho, dg)(1));
  const bool ok = std::abs(p_gqsw - 0.25) <= 1e-6 && worst <= 1e-10;
  return {ok, "GQSW p(v2; 20) = " + sci(p_gqsw) + ", NGQSW max p(v2) = " + sci(worst)};
}

// 5. Premature localization. Zero rotating Hamiltonian: checked at t = 200.
// Standard rotating Hamiltonian: no time is prescribed; the slowest decay
// rate is about 0.037, so the grid 200, 300, ... is scanned for the first
// time the error drops below 1e-6.
Outcome premature_localization() {
  const DemoralizedGraph dg = demoralize(premature_graph());
  CMatrix rho0 = CMatrix::Zero(7, 7);
  rho0(0, 0) = 1.0;
  CMatrix stuck(7, 7);
  stuck << 5, 1, 1, 0, -5, -1, -1, 1, 1, 1, 0, -1, -1, -1, 1, 1, 1, 0, -1, -1, -1, 0, 0, 0, 2, 0, 0, 0, -5, -1, -1, 0, 5, 1, 1,
      -1, -1, -1, 0, 1, 1, 1, -1, -1, -1, 0, 1, 1, 1;
  stuck /= 16.0;
  NonmoralOperators zero_ops = standard_operators(dg);
  zero_ops.h_rot.setZero();
  const double err_zero = max_abs(evolve(ngqsw_generator(dg, zero_ops, 1.0), rho0, 200.0) - stuck);

  CMatrix sink = CMatrix::Zero(7, 7);
  sink(dg.index(3, 0), dg.index(3, 0)) = 1.0;
  const std::vector<double> times = grid(200.0, 100.0, 2000.0);
  const std::vector<CMatrix> tr = evolve_trace(ngqsw_generator(dg, standard_operators(dg), 1.0), rho0, times);
  const double err_200 = max_abs(tr[0] - sink);
  double reached = -1.0, err_reached = 0.0;
  for (size_t i = 0; i < times.size(); ++i) {
    const double e = max_abs(tr[i] - sink);
    if (e <= 1e-6) {
      reached = times[i];
      err_reached = e;
      break;
    }
  }
  const bool ok = err_zero <= 1e-6 && reached > 0.0;
  std::string d = "zero H_rot error at t=200 = " + sci(err_zero) + "; standard H_rot error at t=200 = " + sci(err_200);
  d += reached > 0.0 ? ", <= 1e-6 from t=" + sci(reached) + " (" + sci(err_reached) + ")" : ", never <= 1e-6 up to t=2000";
  return {ok, d};
}

// 6. Symmetrized two-Lindblad walk on a 61-vertex segment.
Outcome symmetrization() {
  const int n = 61, c = 30;
  const DemoralizedGraph dg = demoralize(DiGraph::from_graph(path_graph(n)));
  auto [l1, l2] = symmetrized_path_lindblads(dg);
  const NonmoralOperators ops{nonmoral_hamiltonian(dg), standard_rotating_hamiltonian(dg), {l1, l2}};
  CMatrix rho0 = CMatrix::Zero(dg.dim, dg.dim);
  for (int k = 0; k < dg.block_size(c); ++k) rho0(dg.index(c, k), dg.index(c, k)) = 1.0 / dg.block_size(c);
  const RVector p = natural_measure(evolve(ngqsw_generator(dg, ops, 0.5), rho0, 100.0), dg);
  double asym = 0.0;
  for (int k = 0; k < n; ++k) asym = std::max(asym, std::abs(p(k) - p(n - 1 - k)));
  return {asym <= 1e-8, "omega = 0.5, max |p(k) - p(-k)| = " + sci(asym)};
}

// 7. Spectral convergence classification.
Outcome classifier() {
  std::mt19937_64 rng(7);
  int relaxing = 0, tried = 0;
  while (tried < 20) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const DiGraph g = gen_er_directed(n, 0.45, rng());
    if (!is_strongly_connected(g)) continue;
    ++tried;
    const double omega = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    relaxing += classify_convergence(build_generator(lqsw_spec(g, omega))).classification == ConvergenceClass::Relaxing;
  }
  const double omega = 0.5;
  const ConvergenceReport circ = classify_convergence(build_generator(gqsw_spec(circulant_jump2(8), omega)));
  const double d_circ = nearest_eigenvalue_distance(circ, cplx(0.0, 2.0 * (1.0 - omega)));
  const DemoralizedGraph dg = demoralize(ngqsw_period_graph());
  const ConvergenceReport per = classify_convergence(ngqsw_generator(dg, standard_operators(dg), omega));
  const double w = 2.0 * std::sqrt(3.0) * omega;
  const double d_per = std::max(nearest_eigenvalue_distance(per, cplx(0.0, w)), nearest_eigenvalue_distance(per, cplx(0.0, -w)));
  const bool ok = relaxing == 20 && circ.classification == ConvergenceClass::PossiblyPeriodic && d_circ <= 1e-8 &&
                  per.classification == ConvergenceClass::PossiblyPeriodic && d_per <= 1e-8;
  return {ok, "LQSW relaxing " + std::to_string(relaxing) + "/20; circulant " + to_string(circ.classification) +
                  " (dist " + sci(d_circ) + "); period graph " + to_string(per.classification) + " (dist " + sci(d_per) + ")"};
}

// 8. Search on K_n with gamma = 1/(n - 2) from the uniform superposition.
Outcome complete_search() {
  std::vector<double> x, y;
  double worst = 1.0;
  for (int n : {64, 256, 1024}) {
    const RMatrix a = adjacency_real(complete_graph(n));
    const double t_opt = kPi * std::sqrt(static_cast<double>(n)) / 2;
    const SearchRun r = run_search(a, n - 1, GammaRule::Manual, grid(0.0, t_opt / 1000, 2 * t_opt), InitialState::Uniform,
                                   1.0 / (n - 2));
    const SearchRun at = run_search(a, n - 1, GammaRule::Manual, {t_opt}, InitialState::Uniform, 1.0 / (n - 2));
    worst = std::min(worst, at.success[0]);
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(r.argmax_t));
  }
  const double slope = regression_slope(x, y);
  return {worst >= 0.9 && std::abs(slope - 0.5) <= 0.05, "min p(pi sqrt(n)/2) = " + sci(worst) + ", argmax slope = " + sci(slope)};
}

// 9. Star graph: balanced shift and leaf search at (pi/2) T.
Outcome star_search() {
  double c = 0.0, worst = 1.0;
  for (int n : {64, 256}) {
    const ShiftRescaleResult sr = shift_rescale(graph_hamiltonian(star_graph(n), GraphMatrixKind::Adjacency));
    c = sr.c;
    if (std::abs(c - 1.0 / 3.0) > 1e-9) return {false, "c = " + sci(c)};
    const SearchStats st = search_stats(sr.h, 1);
    const SearchRun r = run_search(sr.h, 1, GammaRule::S1, {kPi / 2 * st.predicted_t});
    worst = std::min(worst, r.success[0]);
  }
  return {worst >= 0.45, "c = " + sci(c) + ", min leaf success = " + sci(worst)};
}

// 10. Classical mean first passage time: spectral formula vs Monte Carlo.
Outcome mfpt() {
  struct Case {
    Graph g;
    int w;
  };
  const Graph er = giant_component(gen_er(50, 0.2, 10));
  const std::vector<Case> cases = {{complete_graph(5), 0}, {star_graph(20), 0}, {star_graph(20), 5}, {er, 0}, {er, er.n() / 2}};
  double worst = 0.0;
  bool bound = true;
  std::uint64_t seed = 1;
  for (const Case& cs : cases) {
    const double f = classical_mfpt(cs.g, cs.w);
    worst = std::max(worst, std::abs(classical_mfpt_mc(cs.g, cs.w, 100000, seed++) / f - 1.0));
    bound &= f >= static_cast<double>(cs.g.num_edges()) / cs.g.degree(cs.w) - 0.5 - 1e-9;
  }
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Graph g = giant_component(gen_er(30, 0.15, 500 + s));
    for (int w = 0; w < g.n(); ++w) bound &= classical_mfpt(g, w) >= static_cast<double>(g.num_edges()) / g.degree(w) - 0.5 - 1e-9;
  }
  return {worst <= 0.05 && bound, "max relative MC error = " + sci(worst) + ", lower bound " + (bound ? "holds" : "violated")};
}

// 11. ER Laplacian search around the connectivity threshold.
Outcome er_p0() {
  std::ostringstream d;
  bool ok = true;
  for (double p0 : {1.5, 2.0}) {
    double mean = 0.0;
    for (int s = 0; s < 20; ++s) mean += er_p0_sample(500, p0, 5, 1000 * static_cast<std::uint64_t>(p0 * 10) + s).mean / 20;
    const double b = lambert_bound(p0);
    ok &= mean >= b - 0.05;
    d << "p0=" << p0 << ": mean " << sci(mean) << " vs bound " << sci(b) << "; ";
  }
  return {ok, d.str()};
}

// 12. BA normalized-Laplacian search exponent, pooled over trajectories.
Outcome ba_exponent() {
  std::vector<int> sizes;
  for (int n = 100; n <= 1000; n += 100) sizes.push_back(n);
  std::vector<double> x, y;
  double lo = 1e9, hi = -1e9;
  for (std::uint64_t tr = 0; tr < 20; ++tr) {
    std::vector<double> tx, ty;
    for (const BaPoint& p : ba_trajectory(sizes, 3, 3000 + tr)) {
      tx.push_back(std::log(static_cast<double>(p.n)));
      ty.push_back(std::log(p.t / p.p));
    }
    const double s = regression_slope(tx, ty);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    x.insert(x.end(), tx.begin(), tx.end());
    y.insert(y.end(), ty.begin(), ty.end());
  }
  const double slope = regression_slope(x, y);
  return {slope >= 0.4 && slope <= 0.7,
          "pooled exponent = " + sci(slope) + " (per-trajectory range " + sci(lo) + " .. " + sci(hi) + ")"};
}

// 13. Taylor series of the infinite-path probabilities vs quadrature.
Outcome series() {
  double worst = 0.0;
  for (int k = -3; k <= 3; ++k) {
    for (double t : {0.25, 0.5, 0.75, 1.0}) {
      worst = std::max(worst, std::abs(series_A(k, t) - infinite_path_probability(k, t, 1.0)));
      for (double omega : {0.5, 1.0}) worst = std::max(worst, std::abs(series_B(k, t, omega) - infinite_path_probability(k, t, omega)));
    }
  }
  return {worst <= 1e-6, "max |series - quadrature| = " + sci(worst)};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "closed-form path evolution", 10, closed_form_match},
      {2, "second-moment law", 60, moment_law},
      {3, "scaling exponents", 120, scaling_exponents_check},
      {4, "moralization", 10, moralization},
      {5, "premature localization", 10, premature_localization},
      {6, "symmetrization", 60, symmetrization},
      {7, "convergence classifier", 120, classifier},
      {8, "complete-graph search", 120, complete_search},
      {9, "star-graph search", 10, star_search},
      {10, "classical MFPT", 120, mfpt},
      {11, "ER p0 sweep", 600, er_p0},
      {12, "BA search exponent", 900, ba_exponent},
      {13, "Taylor series vs quadrature", 60, series},
  };
  // Optional arguments restrict the run to the listed criterion numbers.
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over the " + sci(c.budget_s) + " s budget";
    }
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
