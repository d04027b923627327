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

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsw/gksl.hpp"
#include "qsw/graphs.hpp"

namespace qsw {

class NonOrthogonalColumns : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class WrongTopology : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// @brief Enlarged vertex set: base vertex v owns max(indeg(v), 1) copies.
/// Basis order is copy-major: all copies 0 in base-vertex order, then all
/// copies 1, and so on.
struct DemoralizedGraph {
  DiGraph base;
  std::vector<std::vector<int>> blocks;  // blocks[v][k] = enlarged index of copy k of v
  std::vector<int> vertex_of;            // natural homomorphism f
  std::vector<int> copy_of;
  DiGraph arcs;                          // enlarged arcs, complete bipartite per base arc
  int dim = 0;

  int block_size(int v) const { return static_cast<int>(blocks[static_cast<size_t>(v)].size()); }
  int index(int v, int k) const { return blocks[static_cast<size_t>(v)][static_cast<size_t>(k)]; }
};

DemoralizedGraph demoralize(const DiGraph& g);

/// @brief <j|F|k> = exp(2 pi i jk / n).
CMatrix fourier_matrix(int n);

/// @brief Maps a base vertex v (with indeg(v) > 0) to a |V_v| x indeg(v) matrix
/// with pairwise orthogonal columns. Column c corresponds to the c-th
/// in-neighbour of v in ascending label order.
using LindbladFamily = std::function<CMatrix(int v, int indeg)>;

LindbladFamily fourier_family();

/// @brief <v^k|L|w^l> = <k|L_v|col(w)> on every enlarged arc over (w, v).
CMatrix build_nonmoral_lindblad(const DemoralizedGraph& dg, const LindbladFamily& family);

/// @brief All-ones Hamiltonian on the underlying enlarged edges.
CMatrix nonmoral_hamiltonian(const DemoralizedGraph& dg);

/// @brief How the block rule i at l = k+1, -i at l = k-1 treats the ends of a
/// block. Open: no wrap-around (tridiagonal blocks). Cyclic: indices taken
/// mod the block size with the two cases added.
enum class RotationRule { Open, Cyclic };

enum class RotationEnsemble { GOE, GUE, XY };

CMatrix standard_rotating_hamiltonian(const DemoralizedGraph& dg, RotationRule rule = RotationRule::Open);
CMatrix random_rotating_hamiltonian(const DemoralizedGraph& dg, RotationEnsemble ensemble, std::uint64_t seed);

struct NonmoralOperators {
  CMatrix h;
  CMatrix h_rot;
  std::vector<CMatrix> lindblads;
};

/// @brief All-ones H, standard rotating Hamiltonian and Fourier Lindblad.
NonmoralOperators standard_operators(const DemoralizedGraph& dg);

/// @brief Checks supports, block structure and the cross-block L^+L condition.
void validate_operators(const DemoralizedGraph& dg, const NonmoralOperators& ops);

/// @brief Coherent part (1 - omega) H + omega H_rot, dissipator weight omega.
EvolutionGenerator ngqsw_generator(const DemoralizedGraph& dg, const NonmoralOperators& ops, double omega);

/// @brief The two Lindblads built from [[1,1],[1,-1]] and [[1,1],[-1,1]] on an
/// undirected path labelled 0..n-1 in order.
std::pair<CMatrix, CMatrix> symmetrized_path_lindblads(const DemoralizedGraph& dg);

/// @brief p(v) = sum over copies of v of the canonical probabilities.
RVector natural_measure(const CMatrix& rho, const DemoralizedGraph& dg);

/// @brief Diagonal state with weight 1 / (|V| |V_v|) on every copy of v.
CMatrix uniform_block_state(const DemoralizedGraph& dg);

}  // namespace qsw
