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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsw/numkernel.hpp"

namespace qsw {

using Edge = std::pair<int, int>;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class IsolatedVertex : public GraphError {
 public:
  using GraphError::GraphError;
};
class DisconnectedGraph : public GraphError {
 public:
  using GraphError::GraphError;
};
class MultipleSinks : public GraphError {
 public:
  using GraphError::GraphError;
};
class ProbabilityOverflow : public GraphError {
 public:
  using GraphError::GraphError;
};

/// @brief Simple undirected graph on vertices 0..n-1. Edges are stored as
/// (u, v) with u < v, sorted.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int u, int v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

/// @brief Simple directed graph. An arc (v, w) points from v to w. Arcs are
/// sorted lexicographically; neighbor lists are ascending.
class DiGraph {
 public:
  DiGraph() = default;
  DiGraph(int n, std::vector<Edge> arcs);
  /// @brief Symmetric digraph with both arcs for every undirected edge.
  static DiGraph from_graph(const Graph& g);

  int n() const { return n_; }
  const std::vector<Edge>& arcs() const { return arcs_; }
  std::size_t num_arcs() const { return arcs_.size(); }
  const std::vector<int>& out_neighbors(int v) const { return out_[static_cast<size_t>(v)]; }
  const std::vector<int>& in_neighbors(int v) const { return in_[static_cast<size_t>(v)]; }
  int indeg(int v) const { return static_cast<int>(in_neighbors(v).size()); }
  int outdeg(int v) const { return static_cast<int>(out_neighbors(v).size()); }
  bool has_arc(int v, int w) const;

  friend bool operator==(const DiGraph& a, const DiGraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

enum class GraphMatrixKind { Adjacency, Laplacian, NormalizedLaplacian };

struct Condensation {
  std::vector<std::vector<int>> partition;  // strongly connected components
  std::vector<int> component_of;            // vertex -> component index
  DiGraph dag;                              // arcs between components
  std::vector<int> sinks;                   // components with outdegree 0
};

// Graph matrices. <w|A|v> = 1 exactly when (v, w) is an arc.
CMatrix adjacency(const Graph& g);
CMatrix adjacency(const DiGraph& g);
SpMatrix adjacency_sparse(const Graph& g);
SpMatrix adjacency_sparse(const DiGraph& g);
RMatrix adjacency_real(const Graph& g);
CMatrix laplacian(const Graph& g);
CMatrix normalized_laplacian(const Graph& g);
RMatrix laplacian_real(const Graph& g);
RMatrix normalized_laplacian_real(const Graph& g);

Graph underlying(const DiGraph& g);
DiGraph random_orientation(const Graph& g, std::uint64_t seed);

Condensation condensation(const DiGraph& g);
bool is_strongly_connected(const DiGraph& g);
bool is_connected(const Graph& g);
std::vector<std::vector<int>> connected_components(const Graph& g);
/// @brief Induced subgraph on the largest connected component, relabelled in
/// ascending order of the original labels.
Graph giant_component(const Graph& g, std::vector<int>* original_labels = nullptr);
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

/// @brief Directed BFS distance from every vertex to the unique sink component.
/// Unreachable vertices get -1.
std::vector<int> distances_to_sink_set(const DiGraph& g);
std::vector<int> distances_to_sink_set(const DiGraph& g, const Condensation& c);

// Random graph models. All samplers are deterministic functions of their
// arguments and the seed.
Graph gen_er(int n, double p, std::uint64_t seed);
DiGraph gen_er_directed(int n, double p, std::uint64_t seed);
Graph gen_cl(const std::vector<double>& omega, std::uint64_t seed);
std::vector<double> cl_powerlaw_omega(int n, double a, double b);
Graph gen_ba(int n, int m0, std::uint64_t seed);
DiGraph gen_ba_directed(int n, int m0, std::uint64_t seed);

// Fixture graphs.
Graph path_graph(int n);
Graph complete_graph(int n);
/// @brief K_{n-1,1}: vertex 0 is the hub, 1..n-1 are leaves.
Graph star_graph(int n);
/// @brief K_n plus a leaf attached to vertex 0; the leaf has label n.
Graph complete_plus_leaf(int n);
DiGraph directed_path(int n);
/// @brief Ring of size 4k with both ring arcs per edge plus arcs (i+2) -> i.
DiGraph circulant_jump2(int n);
/// @brief Arcs v1 -> v3 and v2 -> v3 (labels 0, 1, 2).
DiGraph moral_triangle();
/// @brief Edges v1v2, v1v3, v2v3 (both arcs) plus arc v1 -> v4.
DiGraph premature_graph();
/// @brief Star v0 - {v1..v5} plus edge v5 - v4, both arcs per edge.
DiGraph ngqsw_period_graph();
/// @brief Oriented K_{1,2} with arcs 1 -> 2 and 1 -> 3.
DiGraph oriented_k12();

// Graph JSON: {"n": int, "directed": bool, "edges": [[u, v], ...]} with
// 1-based labels.
struct AnyGraph {
  bool directed = false;
  Graph undirected;
  DiGraph digraph;
  DiGraph as_digraph() const { return directed ? digraph : DiGraph::from_graph(undirected); }
  Graph as_graph() const { return directed ? underlying(digraph) : undirected; }
  int n() const { return directed ? digraph.n() : undirected.n(); }
};
std::string to_json(const Graph& g);
std::string to_json(const DiGraph& g);
AnyGraph graph_from_json(const std::string& text);

}  // namespace qsw
