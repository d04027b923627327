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

#include "qsw/nonmoral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qsw/rng.hpp"

namespace qsw {

namespace {

constexpr double kOrthTol = 1e-12;

int parent_column(const DiGraph& g, int v, int w) {
  const auto& parents = g.in_neighbors(v);
  const auto it = std::lower_bound(parents.begin(), parents.end(), w);
  return static_cast<int>(it - parents.begin());
}

void check_orthogonal_columns(const CMatrix& m, int v) {
  for (Eigen::Index a = 0; a < m.cols(); ++a) {
    for (Eigen::Index b = a + 1; b < m.cols(); ++b) {
      const double scale = std::max(1.0, m.col(a).norm() * m.col(b).norm());
      if (std::abs(m.col(a).dot(m.col(b))) > kOrthTol * scale) {
        throw NonOrthogonalColumns("nonmoral Lindblad: columns of L_v for vertex " + std::to_string(v) +
                                   " are not orthogonal");
      }
    }
  }
}

// Cross-vertex blocks of L^+ L must vanish.
void check_cross_blocks(const DemoralizedGraph& dg, const CMatrix& l) {
  const CMatrix k = l.adjoint() * l;
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  for (int a = 0; a < dg.dim; ++a) {
    for (int b = 0; b < dg.dim; ++b) {
      if (dg.vertex_of[static_cast<size_t>(a)] != dg.vertex_of[static_cast<size_t>(b)] &&
          std::abs(k(a, b)) > kOrthTol * scale) {
        throw NonOrthogonalColumns("nonmoral Lindblad: L^+L couples different base vertices");
      }
    }
  }
}

}  // namespace

DemoralizedGraph demoralize(const DiGraph& g) {
  DemoralizedGraph dg;
  dg.base = g;
  const int n = g.n();
  dg.blocks.assign(static_cast<size_t>(n), {});
  int max_size = 0;
  for (int v = 0; v < n; ++v) max_size = std::max(max_size, std::max(g.indeg(v), 1));
  int next = 0;
  for (int k = 0; k < max_size; ++k) {
    for (int v = 0; v < n; ++v) {
      if (k < std::max(g.indeg(v), 1)) {
        dg.blocks[static_cast<size_t>(v)].push_back(next++);
        dg.vertex_of.push_back(v);
        dg.copy_of.push_back(k);
      }
    }
  }
  dg.dim = next;
  std::vector<Edge> arcs;
  for (const auto& [w, v] : g.arcs()) {
    for (int a : dg.blocks[static_cast<size_t>(w)]) {
      for (int b : dg.blocks[static_cast<size_t>(v)]) arcs.emplace_back(a, b);
    }
  }
  dg.arcs = DiGraph(dg.dim, std::move(arcs));
  return dg;
}

CMatrix fourier_matrix(int n) {
  if (n < 1) throw DimensionError("fourier_matrix: n must be positive");
  CMatrix f(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      // Reduce jk mod n first so that the phase stays exact for small n.
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / n;
      f(j, k) = std::polar(1.0, phase);
    }
  }
  // Snap the real and imaginary parts of +-1 and +-i to exact values.
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    double re = f(i).real();
    double im = f(i).imag();
    if (std::abs(re) < 1e-15) re = 0.0;
    if (std::abs(im) < 1e-15) im = 0.0;
    f(i) = cplx(re, im);
  }
  return f;
}

LindbladFamily fourier_family() {
  return [](int /*v*/, int indeg) { return fourier_matrix(indeg); };
}

CMatrix build_nonmoral_lindblad(const DemoralizedGraph& dg, const LindbladFamily& family) {
  const DiGraph& g = dg.base;
  CMatrix l = CMatrix::Zero(dg.dim, dg.dim);
  for (int v = 0; v < g.n(); ++v) {
    const int d = g.indeg(v);
    if (d == 0) continue;
    const CMatrix lv = family(v, d);
    if (lv.rows() != dg.block_size(v) || lv.cols() != d) {
      throw DimensionError("nonmoral Lindblad: L_v for vertex " + std::to_string(v) + " has wrong shape");
    }
    check_orthogonal_columns(lv, v);
    for (int w : g.in_neighbors(v)) {
      const int col = parent_column(g, v, w);
      for (int k = 0; k < dg.block_size(v); ++k) {
        for (int c = 0; c < dg.block_size(w); ++c) l(dg.index(v, k), dg.index(w, c)) = lv(k, col);
      }
    }
  }
  check_cross_blocks(dg, l);
  return l;
}

CMatrix nonmoral_hamiltonian(const DemoralizedGraph& dg) {
  CMatrix h = CMatrix::Zero(dg.dim, dg.dim);
  for (const auto& [a, b] : dg.arcs.arcs()) {
    h(a, b) = 1.0;
    h(b, a) = 1.0;
  }
  return h;
}

CMatrix standard_rotating_hamiltonian(const DemoralizedGraph& dg, RotationRule rule) {
  CMatrix h = CMatrix::Zero(dg.dim, dg.dim);
  const cplx i(0.0, 1.0);
  for (int v = 0; v < dg.base.n(); ++v) {
    const int d = dg.block_size(v);
    for (int k = 0; k < d; ++k) {
      if (rule == RotationRule::Open) {
        if (k + 1 < d) h(dg.index(v, k), dg.index(v, k + 1)) += i;
        if (k - 1 >= 0) h(dg.index(v, k), dg.index(v, k - 1)) -= i;
      } else {
        h(dg.index(v, k), dg.index(v, (k + 1) % d)) += i;
        h(dg.index(v, k), dg.index(v, (k + d - 1) % d)) -= i;
      }
    }
  }
  return h;
}

CMatrix random_rotating_hamiltonian(const DemoralizedGraph& dg, RotationEnsemble ensemble, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  CMatrix h = CMatrix::Zero(dg.dim, dg.dim);
  for (int v = 0; v < dg.base.n(); ++v) {
    const int d = dg.block_size(v);
    CMatrix block(d, d);
    switch (ensemble) {
      case RotationEnsemble::GOE: {
        RMatrix x(d, d);
        for (Eigen::Index e = 0; e < x.size(); ++e) x(e) = normal(rng);
        block = (0.5 * (x + x.transpose())).cast<cplx>();
        break;
      }
      case RotationEnsemble::GUE: {
        CMatrix x(d, d);
        for (Eigen::Index e = 0; e < x.size(); ++e) x(e) = cplx(normal(rng), normal(rng)) / std::sqrt(2.0);
        block = 0.5 * (x + x.adjoint());
        break;
      }
      case RotationEnsemble::XY: {
        RMatrix x(d, d);
        RMatrix y(d, d);
        for (Eigen::Index e = 0; e < x.size(); ++e) x(e) = uniform(rng);
        for (Eigen::Index e = 0; e < y.size(); ++e) y(e) = uniform(rng);
        block = (x + x.transpose()).cast<cplx>() + cplx(0.0, 1.0) * (y - y.transpose()).cast<cplx>();
        break;
      }
    }
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) h(dg.index(v, a), dg.index(v, b)) = block(a, b);
    }
  }
  return h;
}

NonmoralOperators standard_operators(const DemoralizedGraph& dg) {
  NonmoralOperators ops;
  ops.h = nonmoral_hamiltonian(dg);
  ops.h_rot = standard_rotating_hamiltonian(dg);
  ops.lindblads.push_back(build_nonmoral_lindblad(dg, fourier_family()));
  return ops;
}

void validate_operators(const DemoralizedGraph& dg, const NonmoralOperators& ops) {
  auto check_dim = [&](const CMatrix& m, const char* what) {
    if (m.rows() != dg.dim || m.cols() != dg.dim) {
      throw DimensionError(std::string("nonmoral operators: ") + what + " has wrong dimension");
    }
  };
  check_dim(ops.h, "H");
  check_dim(ops.h_rot, "H_rot");
  if (!is_hermitian(ops.h, kHermTol) || !is_hermitian(ops.h_rot, kHermTol)) {
    throw NotHermitian("nonmoral operators: Hamiltonians must be Hermitian");
  }
  const Graph enlarged_edges = underlying(dg.arcs);
  for (int a = 0; a < dg.dim; ++a) {
    for (int b = 0; b < dg.dim; ++b) {
      if (ops.h(a, b) != 0.0 && !enlarged_edges.has_edge(a, b)) {
        throw WrongTopology("nonmoral operators: H has support outside the enlarged edges");
      }
      if (ops.h_rot(a, b) != 0.0 && dg.vertex_of[static_cast<size_t>(a)] != dg.vertex_of[static_cast<size_t>(b)]) {
        throw WrongTopology("nonmoral operators: H_rot is not block diagonal");
      }
    }
  }
  for (const auto& l : ops.lindblads) {
    check_dim(l, "L");
    for (int a = 0; a < dg.dim; ++a) {
      for (int b = 0; b < dg.dim; ++b) {
        if (l(a, b) != 0.0 && !dg.arcs.has_arc(b, a)) {
          throw WrongTopology("nonmoral operators: L has support outside the enlarged arcs");
        }
      }
    }
    check_cross_blocks(dg, l);
  }
}

EvolutionGenerator ngqsw_generator(const DemoralizedGraph& dg, const NonmoralOperators& ops, double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("ngqsw_generator: omega must lie in [0, 1]");
  validate_operators(dg, ops);
  CMatrix h = omega * ops.h_rot;
  if (omega < 1.0) h += (1.0 - omega) * ops.h;
  std::vector<SpMatrix> ls;
  for (const auto& l : ops.lindblads) ls.push_back(l.sparseView());
  return EvolutionGenerator(h.sparseView(), std::move(ls), 1.0, omega, Model::NGQSW, omega);
}

std::pair<CMatrix, CMatrix> symmetrized_path_lindblads(const DemoralizedGraph& dg) {
  const DiGraph& g = dg.base;
  const int n = g.n();
  if (!(g == DiGraph::from_graph(path_graph(n)))) {
    throw WrongTopology("symmetrized_path_lindblads: base graph must be the undirected path 0-1-...-(n-1)");
  }
  auto family = [](const CMatrix& two) -> LindbladFamily {
    return [two](int /*v*/, int indeg) -> CMatrix {
      if (indeg == 1) return CMatrix::Ones(1, 1);
      return two;
    };
  };
  CMatrix l1(2, 2);
  l1 << 1.0, 1.0, 1.0, -1.0;
  CMatrix l2(2, 2);
  l2 << 1.0, 1.0, -1.0, 1.0;
  return {build_nonmoral_lindblad(dg, family(l1)), build_nonmoral_lindblad(dg, family(l2))};
}

RVector natural_measure(const CMatrix& rho, const DemoralizedGraph& dg) {
  if (rho.rows() != dg.dim || rho.cols() != dg.dim) throw DimensionError("natural_measure: dimension mismatch");
  const RVector p = measure(rho);
  RVector out = RVector::Zero(dg.base.n());
  for (int a = 0; a < dg.dim; ++a) out(dg.vertex_of[static_cast<size_t>(a)]) += p(a);
  return out;
}

CMatrix uniform_block_state(const DemoralizedGraph& dg) {
  CMatrix rho = CMatrix::Zero(dg.dim, dg.dim);
  const double nv = dg.base.n();
  for (int v = 0; v < dg.base.n(); ++v) {
    for (int a : dg.blocks[static_cast<size_t>(v)]) rho(a, a) = 1.0 / (nv * dg.block_size(v));
  }
  return rho;
}

}  // namespace qsw
