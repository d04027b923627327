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

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "qsw/gksl.hpp"

using namespace qsw;

namespace {

const cplx kI(0.0, 1.0);

// Oracle: master-equation right-hand side written out with dense products.
CMatrix direct_rhs(const CMatrix& h, const std::vector<CMatrix>& ls, double hw, double dw, const CMatrix& rho) {
  CMatrix out = -kI * hw * (h * rho - rho * h);
  for (const CMatrix& l : ls) {
    const CMatrix ll = l.adjoint() * l;
    out += dw * (l * rho * l.adjoint() - 0.5 * (ll * rho + rho * ll));
  }
  return out;
}

CMatrix random_density(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  CMatrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

CMatrix random_operator(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("gksl") {
  TEST_CASE("model names round trip") {
    for (Model m : {Model::CTQW, Model::CTRW, Model::LQSW, Model::GQSW, Model::NGQSW})
      CHECK(model_from_string(to_string(m)) == m);
    CHECK_THROWS(model_from_string("nope"));
  }

  TEST_CASE("density validation") {
    CHECK_NOTHROW(validate_density(basis_state(3, 1)));
    CHECK_THROWS_AS(validate_density(2.0 * basis_state(3, 1)), DensityInvariantViolated);
    CMatrix bad = basis_state(2, 0);
    bad(0, 1) = 0.3;
    CHECK_THROWS_AS(validate_density(bad), DensityInvariantViolated);
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(validate_density(neg), DensityInvariantViolated);
  }

  TEST_CASE("generator matches the dense master equation") {
    std::mt19937_64 rng(5);
    const int n = 4;
    CMatrix h = random_operator(n, rng);
    h = 0.5 * (h + h.adjoint()).eval();
    const std::vector<CMatrix> ls = {random_operator(n, rng), random_operator(n, rng)};
    const EvolutionGenerator gen = build_generator(h, ls, 0.3, 0.7);
    const CMatrix rho = random_density(n, 11);
    const CMatrix expect = direct_rhs(h, ls, 0.3, 0.7, rho);
    CHECK(max_abs(gen.apply(rho) - expect) <= 1e-12);
    const CMatrix s = gen.dense();
    CHECK(max_abs(unvec(s * vec(rho)) - expect) <= 1e-12);
    CVector y;
    gen.apply_vec(vec(rho), y);
    CHECK(max_abs(unvec(y) - expect) <= 1e-12);
    // The induced 1-norm of S is bounded as advertised.
    double col_max = 0.0;
    for (int c = 0; c < s.cols(); ++c) col_max = std::max(col_max, s.col(c).cwiseAbs().sum());
    CHECK(col_max <= gen.norm_bound() * (1 + 1e-12));
  }

  TEST_CASE("dense assembly respects the size cap") {
    const EvolutionGenerator gen = build_generator(gqsw_spec(DiGraph::from_graph(path_graph(10)), 0.5));
    CHECK_THROWS_AS(gen.dense(50), DimensionError);
  }

  TEST_CASE("walk specifications") {
    const DiGraph g = moral_triangle();
    const WalkSpec l = lqsw_spec(g, 0.25);
    CHECK(l.lindblads.size() == 2);
    CHECK(l.ham_weight == doctest::Approx(0.75));
    CHECK(l.diss_weight == doctest::Approx(0.25));
    const WalkSpec gq = gqsw_spec(g, 0.25);
    REQUIRE(gq.lindblads.size() == 1);
    CHECK(max_abs(CMatrix(gq.lindblads[0]) - adjacency(g)) == 0.0);
    CHECK(max_abs(CMatrix(gq.hamiltonian) - adjacency(underlying(g))) == 0.0);
  }

  TEST_CASE("local walk on a directed edge settles in the sink") {
    const EvolutionGenerator gen = build_generator(lqsw_spec(DiGraph(2, {{0, 1}}), 1.0));
    const CMatrix rho = evolve(gen, basis_state(2, 0), 40.0);
    CHECK(max_abs(rho - basis_state(2, 1)) <= 1e-12);
  }

  TEST_CASE("global walk on the moral triangle: closed form") {
    const EvolutionGenerator gen = build_generator(gqsw_spec(moral_triangle(), 1.0));
    for (double t : {0.1, 0.7, 2.0, 5.0}) {
      const CMatrix rho = evolve(gen, basis_state(3, 0), t);
      const double e = std::exp(-t);
      CHECK(std::abs(rho(0, 0) - 0.25 * (e + 1) * (e + 1)) <= 1e-12);
      CHECK(std::abs(rho(1, 1) - 0.25 * (e - 1) * (e - 1)) <= 1e-12);
      CHECK(std::abs(rho(0, 1) - 0.25 * (e * e - 1)) <= 1e-12);
      CHECK(std::abs(rho(2, 2) - e * std::sinh(t)) <= 1e-12);
      CHECK(std::abs(rho(0, 2)) <= 1e-12);
    }
  }

  TEST_CASE("commuting global walk: eigenbasis oracle and spectrum formula") {
    // With H = L = A the generator is diagonal in the eigenbasis of A.
    const Graph g = path_graph(5);
    const double omega = 0.4;
    const EvolutionGenerator gen = build_generator(gqsw_spec(DiGraph::from_graph(g), omega));
    const EigenSystem es = eig_hermitian(adjacency(g));
    const CMatrix rho0 = random_density(5, 3);
    const double t = 1.3;
    CMatrix r = es.vectors.adjoint() * rho0 * es.vectors;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const double d = es.values(i) - es.values(j);
        r(i, j) *= std::exp(cplx(-omega / 2 * d * d, -(1 - omega) * d) * t);
      }
    const CMatrix expect = es.vectors * r * es.vectors.adjoint();
    CHECK(max_abs(evolve(gen, rho0, t) - expect) <= 1e-11);

    std::vector<cplx> a = gqsw_spectrum_commuting(g, omega);
    std::vector<cplx> b = eig_general(gen.dense());
    auto key = [](const cplx& x, const cplx& y) {
      return std::abs(x.real() - y.real()) > 1e-8 ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), key);
    std::sort(b.begin(), b.end(), key);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-8);
  }

  TEST_CASE("evolution invariants: trace, positivity, semigroup") {
    const DiGraph g = random_orientation(gen_er(6, 0.6, 8), 4);
    for (double omega : {0.0, 0.3, 1.0}) {
      for (bool local : {false, true}) {
        const EvolutionGenerator gen = build_generator(local ? lqsw_spec(g, omega) : gqsw_spec(g, omega));
        const CMatrix rho0 = random_density(6, 21);
        const CMatrix a = evolve(gen, rho0, 0.8);
        CHECK_NOTHROW(validate_density(a));
        const CMatrix b = evolve(gen, evolve(gen, rho0, 0.3), 0.5);
        CHECK(max_abs(a - b) <= 1e-11);
        const std::vector<CMatrix> tr = evolve_trace(gen, rho0, {0.0, 0.3, 0.8});
        CHECK(max_abs(tr[0] - rho0) <= 1e-14);
        CHECK(max_abs(tr[2] - a) <= 1e-11);
        for (const cplx& z : eig_general(gen.dense())) CHECK(z.real() <= 1e-9);
      }
    }
  }

  TEST_CASE("omega = 0 reduces to the quantum walk") {
    const Graph g = path_graph(6);
    const EvolutionGenerator gen = build_generator(gqsw_spec(DiGraph::from_graph(g), 0.0));
    CVector psi = CVector::Zero(6);
    psi(2) = 1.0;
    const CVector phi = unitary_apply(adjacency(g), psi, 2.1);
    const CMatrix rho = evolve(gen, basis_state(6, 2), 2.1);
    CHECK(max_abs(rho - phi * phi.adjoint()) <= 1e-11);
    const EvolutionGenerator q = build_generator(ctqw_spec(g));
    CHECK(max_abs(evolve(q, basis_state(6, 2), 2.1) - rho) <= 1e-11);
  }

  TEST_CASE("classical walk: quantum spec and rate-matrix evolution agree") {
    const Graph g = gen_er(7, 0.5, 2);
    const RMatrix q = ctrw_rate_matrix(g);
    CHECK(q.colwise().sum().cwiseAbs().maxCoeff() <= 1e-14);
    RVector p0 = RVector::Zero(7);
    p0(0) = 1.0;
    const double t = 0.9;
    // Oracle: spectral decomposition of the symmetric rate matrix.
    const EigenSystem es = eig_hermitian(q);
    RVector lam = es.values;
    const CMatrix u = es.vectors;
    CVector c = u.adjoint() * p0.cast<cplx>();
    for (int i = 0; i < 7; ++i) c(i) *= std::exp(lam(i) * t);
    const RVector expect = (u * c).real();
    CHECK((ctrw_evolve(g, p0, t) - expect).cwiseAbs().maxCoeff() <= 1e-12);
    const EvolutionGenerator gen = build_generator(ctrw_spec(g));
    CHECK((measure(evolve(gen, basis_state(7, 0), t)) - expect).cwiseAbs().maxCoeff() <= 1e-11);
  }

  TEST_CASE("measurement clips small negative diagonals") {
    CMatrix r = CMatrix::Zero(2, 2);
    r(0, 0) = 1.0 + 1e-15;
    r(1, 1) = -1e-15;
    const RVector p = measure(r);
    CHECK(p(1) == 0.0);
    CHECK(p(0) == doctest::Approx(1.0));
  }
}
