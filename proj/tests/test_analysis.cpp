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

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "qsw/analysis.hpp"

using namespace qsw;

namespace {

std::vector<double> centred_positions(int n) {
  std::vector<double> pos(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<size_t>(i)] = i - (n - 1) / 2;
  return pos;
}

// Oracle: nested adaptive Gauss-Kronrod over [-pi, pi]^2 of the Fourier
// integrand for the global walk on the infinite path.
double kronrod_infinite_path(int k, double t, double omega) {
  using boost::math::quadrature::gauss_kronrod;
  auto inner = [&](double x) {
    auto f = [&](double y) {
      const double d = std::cos(x) - std::cos(y);
      return std::cos(k * x) * std::cos(k * y) * std::exp(-2.0 * omega * t * d * d) *
             std::cos(2.0 * t * (1.0 - omega) * d);
    };
    return gauss_kronrod<double, 61>::integrate(f, -M_PI, M_PI, 15, 1e-13);
  };
  return gauss_kronrod<double, 61>::integrate(inner, -M_PI, M_PI, 15, 1e-13) / (4.0 * M_PI * M_PI);
}

std::vector<double> grid(double a, double h, double b) {
  std::vector<double> v;
  for (double t = a; t <= b + 0.5 * h; t += h) v.push_back(t);
  return v;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("second moment") {
    CHECK(second_moment(RVector::Unit(3, 1), {-1, 0, 1}) == 0.0);
    RVector p(3);
    p << 0.5, 0.0, 0.5;
    CHECK(second_moment(p, {-1, 0, 1}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(second_moment(RVector::Zero(3), {-1, 0, 1}), std::invalid_argument);
  }

  TEST_CASE("scaling exponents of exact power laws") {
    const std::vector<double> t = grid(1.0, 0.5, 10.0);
    std::vector<double> sq, cst;
    for (double x : t) {
      sq.push_back(x * x);
      cst.push_back(3.0);
    }
    const PropagationTrace a = scaling_exponents(t, sq, 4);
    REQUIRE(a.alphas.size() == t.size() - 3);
    for (double s : a.alphas) CHECK(s == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.midpoints[0] == doctest::Approx((t[0] + t[3]) / 2));
    for (double s : scaling_exponents(t, cst, 4).alphas) CHECK(std::abs(s) <= 1e-12);
    std::vector<double> bad = sq;
    bad[2] = 0.0;
    CHECK_THROWS(scaling_exponents(t, bad, 4));
  }

  TEST_CASE("limit-model fit") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> noise(0.0, 1e-6);
    std::vector<double> t, y, c;
    for (double x = 10.0; x <= 300.0; x += 10.0) {
      t.push_back(x);
      y.push_back(2.0 - 1.0 / x + noise(rng));
      c.push_back(1.25);
    }
    const LimitFit f = fit_limit_model(t, y);
    CHECK(std::abs(f.p1 - 2.0) <= 1e-3);
    CHECK(f.p4 > 0.0);
    const LimitFit g = fit_limit_model(t, c);
    CHECK(std::abs(g.p1 - 1.25) <= 1e-6);
    CHECK_THROWS(fit_limit_model({1, 2, 3}, {1, 1, 1}));
  }

  TEST_CASE("finite path closed form") {
    for (int k = 1; k <= 7; ++k) CHECK(path_probability_closed_form(7, 4, k, 0.0, 0.3) == doctest::Approx(k == 4 ? 1.0 : 0.0));
    // omega = 0 is the unitary walk.
    const Graph g = path_graph(9);
    CVector psi = CVector::Zero(9);
    psi(2) = 1.0;
    const CVector phi = unitary_apply(adjacency(g), psi, 1.9);
    for (int k = 1; k <= 9; ++k) CHECK(std::abs(path_probability_closed_form(9, 3, k, 1.9, 0.0) - std::norm(phi(k - 1))) <= 1e-12);
    // Generator oracle.
    const EvolutionGenerator gen = build_generator(gqsw_spec(DiGraph::from_graph(path_graph(21)), 0.6));
    const RVector p = measure(evolve(gen, basis_state(21, 10), 3.0));
    for (int k = 1; k <= 21; ++k) CHECK(std::abs(path_probability_closed_form(21, 11, k, 3.0, 0.6) - p(k - 1)) <= 1e-8);
    CHECK_THROWS(path_probability_closed_form(5, 0, 1, 1.0, 0.5));
  }

  TEST_CASE("infinite path: normalisation, truncation and quadrature oracles") {
    CHECK(infinite_path_probability(0, 0.0, 0.4) == doctest::Approx(1.0));
    CHECK(std::abs(infinite_path_probability(3, 0.0, 0.4)) <= 1e-12);
    double total = 0.0;
    for (int k = -40; k <= 40; ++k) total += infinite_path_probability(k, 1.0, 0.5);
    CHECK(std::abs(total - 1.0) <= 1e-6);
    for (double t : {1.0, 5.0}) {
      for (int k : {0, 1, 4, -3}) {
        const double a = infinite_path_probability(k, t, 0.7);
        CHECK(std::abs(a - path_probability_closed_form(201, 101, 101 + k, t, 0.7)) <= 1e-5);
      }
    }
    for (int k : {0, 2}) CHECK(std::abs(infinite_path_probability(k, 2.0, 0.3) - kronrod_infinite_path(k, 2.0, 0.3)) <= 1e-8);
    // omega = 0 is J_k(2t)^2.
    CHECK(std::abs(infinite_path_probability(3, 1.5, 0.0) - std::pow(std::cyl_bessel_j(3.0, 3.0), 2)) <= 1e-8);
  }

  TEST_CASE("Taylor coefficients and series") {
    CHECK(taylor_A(0, 0) == 1.0);
    for (int n = 0; n < 4; ++n) {
      CHECK(taylor_A(n, 4) == 0.0);
      CHECK(taylor_A(n, -4) == 0.0);
    }
    CHECK(taylor_A(1, 0) == doctest::Approx(-2.0));
    CHECK(taylor_A(1, 1) == doctest::Approx(1.0));
    for (int n = 0; n < 12; ++n)
      for (int k = -3; k <= 3; ++k) CHECK(taylor_B(n, k, 1.0) == doctest::Approx(taylor_A(n, k)).epsilon(1e-12));
    for (int k = 0; k <= 3; ++k) CHECK(std::abs(series_A(k, 0.5) - infinite_path_probability(k, 0.5, 1.0)) <= 1e-7);
    for (int k = -3; k <= 3; ++k)
      for (double t : {0.3, 1.0}) CHECK(std::abs(series_B(k, t, 0.5) - kronrod_infinite_path(k, t, 0.5)) <= 1e-6);
    CHECK(moment_mu2(0.5, 5.0) == doctest::Approx(17.5));
  }

  TEST_CASE("second moment of the global walk on a long path") {
    const std::vector<double> times = {2.0, 5.0, 10.0};
    for (double omega : {0.25, 0.5, 0.75}) {
      const std::vector<double> mu = path_mu2(Model::GQSW, omega, 121, times);
      for (size_t i = 0; i < times.size(); ++i) {
        const double ref = moment_mu2(omega, times[i]);
        CHECK(std::abs(mu[i] - ref) / ref <= 1e-3);
      }
    }
    const RVector p = measure(evolve(build_generator(gqsw_spec(DiGraph::from_graph(path_graph(121)), 0.5)),
                                     basis_state(121, 60), 5.0));
    CHECK(second_moment(p, centred_positions(121)) == doctest::Approx(17.5).epsilon(0.01));
  }

  TEST_CASE("propagation exponents at the ends of the interpolation") {
    const std::vector<double> ts = grid(10.0, 5.0, 60.0);
    const PropagationTrace diff = scaling_exponents(ts, path_mu2(Model::GQSW, 1.0, 101, ts), 5);
    CHECK(std::abs(diff.alphas.back() - 1.0) <= 0.05);
    const std::vector<double> tb = grid(4.0, 2.0, 20.0);
    const PropagationTrace ball = scaling_exponents(tb, path_mu2(Model::CTQW, 0.0, 121, tb), 5);
    CHECK(std::abs(ball.alphas.back() - 2.0) <= 0.05);
    const PropagationTrace cl = scaling_exponents(ts, path_mu2(Model::CTRW, 0.0, 61, ts), 5);
    CHECK(std::abs(cl.alphas.back() - 1.0) <= 0.05);
  }

  TEST_CASE("convergence classification") {
    const ConvergenceReport lq = classify_convergence(build_generator(lqsw_spec(circulant_jump2(8), 0.5)));
    CHECK(lq.classification == ConvergenceClass::Relaxing);
    CHECK(lq.zero_multiplicity == 1);
    const ConvergenceReport gu = classify_convergence(build_generator(gqsw_spec(DiGraph::from_graph(path_graph(4)), 0.5)));
    CHECK(gu.classification != ConvergenceClass::Relaxing);
    CHECK(gu.zero_multiplicity >= 1);
    const ConvergenceReport per = classify_convergence(build_generator(gqsw_spec(circulant_jump2(8), 0.5)));
    CHECK(per.classification == ConvergenceClass::PossiblyPeriodic);
    CHECK(nearest_eigenvalue_distance(per, cplx(0.0, 1.0)) <= 1e-8);
    CHECK(to_string(ConvergenceClass::Relaxing) == "Relaxing");
    CHECK_THROWS_AS(classify_convergence(build_generator(gqsw_spec(DiGraph::from_graph(path_graph(60)), 0.5))),
                    DimensionError);
  }

  TEST_CASE("structure measures") {
    const DiGraph g = directed_path(3);
    const StructureMeasures a = structure_measures(g, RVector::Unit(3, 2));
    CHECK(a.p_s == 1.0);
    CHECK(a.mu_s == 0.0);
    RVector p(3);
    p << 0.5, 0.5, 0.0;
    const StructureMeasures b = structure_measures(g, p);
    CHECK(b.p_s == 0.0);
    CHECK(b.mu_s == doctest::Approx(2.5));
    CHECK_THROWS_AS(structure_measures(oriented_k12(), RVector::Unit(3, 0)), MultipleSinks);
  }

  TEST_CASE("structure observance on a directed path") {
    const DiGraph g = directed_path(6);
    const EvolutionGenerator pure = build_generator(lqsw_spec(g, 1.0));
    CHECK(structure_measures(g, measure(evolve(pure, basis_state(6, 0), 200.0))).p_s >= 1 - 1e-9);
    const EvolutionGenerator mixed = build_generator(lqsw_spec(g, 0.5));
    CHECK(structure_measures(g, measure(evolve(mixed, basis_state(6, 0), 400.0))).p_s < 0.99);
  }

  TEST_CASE("convergence profile") {
    const std::vector<double> times = {0, 1, 2, 3};
    const std::vector<RVector> constant(4, RVector::Constant(2, 0.5));
    CHECK(convergence_profile(constant, times) == 0.0);
    std::vector<RVector> decay;
    for (double t : times) decay.push_back((RVector(2) << 1 - 0.5 * std::exp(-t), 0.5 * std::exp(-t)).finished());
    CHECK(convergence_profile(decay, times) == 0.0);
    std::vector<RVector> bump = decay;
    bump[1] = (RVector(2) << 0.0, 1.0).finished();
    CHECK(convergence_profile(bump, times) == 1.0);
  }
}
