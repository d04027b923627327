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

#include "qsw/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

#include <json.hpp>

#include "qsw/rng.hpp"

namespace qsw {

namespace {

void check_vertex(int n, int v, const char* what) {
  if (v < 0 || v >= n) {
    throw GraphError(std::string(what) + ": vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph / DiGraph

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), adj_(static_cast<size_t>(std::max(n, 0))) {
  if (n < 0) throw GraphError("Graph: negative vertex count");
  for (auto& e : edges) {
    check_vertex(n, e.first, "Graph");
    check_vertex(n, e.second, "Graph");
    if (e.first == e.second) throw GraphError("Graph: self-loop at " + std::to_string(e.first));
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw GraphError("Graph: duplicate edge");
  }
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adj_[static_cast<size_t>(u)].push_back(v);
    adj_[static_cast<size_t>(v)].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  const auto& list = neighbors(u);
  return std::binary_search(list.begin(), list.end(), v);
}

DiGraph::DiGraph(int n, std::vector<Edge> arcs)
    : n_(n), out_(static_cast<size_t>(std::max(n, 0))), in_(static_cast<size_t>(std::max(n, 0))) {
  if (n < 0) throw GraphError("DiGraph: negative vertex count");
  for (const auto& a : arcs) {
    check_vertex(n, a.first, "DiGraph");
    check_vertex(n, a.second, "DiGraph");
    if (a.first == a.second) throw GraphError("DiGraph: self-loop at " + std::to_string(a.first));
  }
  std::sort(arcs.begin(), arcs.end());
  if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end()) {
    throw GraphError("DiGraph: duplicate arc");
  }
  arcs_ = std::move(arcs);
  for (const auto& [v, w] : arcs_) {
    out_[static_cast<size_t>(v)].push_back(w);
    in_[static_cast<size_t>(w)].push_back(v);
  }
  for (auto& list : in_) std::sort(list.begin(), list.end());
}

DiGraph DiGraph::from_graph(const Graph& g) {
  std::vector<Edge> arcs;
  arcs.reserve(2 * g.num_edges());
  for (const auto& [u, v] : g.edges()) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  return DiGraph(g.n(), std::move(arcs));
}

bool DiGraph::has_arc(int v, int w) const {
  if (v < 0 || w < 0 || v >= n_ || w >= n_) return false;
  const auto& list = out_neighbors(v);
  return std::binary_search(list.begin(), list.end(), w);
}

// ---------------------------------------------------------------------------
// Graph matrices

SpMatrix adjacency_sparse(const DiGraph& g) {
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(g.num_arcs());
  for (const auto& [v, w] : g.arcs()) trip.emplace_back(w, v, 1.0);
  SpMatrix a(g.n(), g.n());
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

SpMatrix adjacency_sparse(const Graph& g) { return adjacency_sparse(DiGraph::from_graph(g)); }

CMatrix adjacency(const DiGraph& g) { return CMatrix(adjacency_sparse(g)); }

CMatrix adjacency(const Graph& g) { return adjacency_real(g).cast<cplx>(); }

RMatrix adjacency_real(const Graph& g) {
  RMatrix a = RMatrix::Zero(g.n(), g.n());
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

RMatrix laplacian_real(const Graph& g) {
  RMatrix l = -adjacency_real(g);
  for (int v = 0; v < g.n(); ++v) l(v, v) = g.degree(v);
  return l;
}

RMatrix normalized_laplacian_real(const Graph& g) {
  RVector inv_sqrt(g.n());
  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) == 0) throw IsolatedVertex("normalized_laplacian: vertex " + std::to_string(v) + " is isolated");
    inv_sqrt(v) = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
  }
  RMatrix l = RMatrix::Identity(g.n(), g.n());
  for (const auto& [u, v] : g.edges()) {
    l(u, v) = -inv_sqrt(u) * inv_sqrt(v);
    l(v, u) = l(u, v);
  }
  return l;
}

CMatrix laplacian(const Graph& g) { return laplacian_real(g).cast<cplx>(); }

CMatrix normalized_laplacian(const Graph& g) { return normalized_laplacian_real(g).cast<cplx>(); }

// ---------------------------------------------------------------------------
// Structure

Graph underlying(const DiGraph& g) {
  std::set<Edge> edges;
  for (auto [v, w] : g.arcs()) edges.emplace(std::min(v, w), std::max(v, w));
  return Graph(g.n(), std::vector<Edge>(edges.begin(), edges.end()));
}

DiGraph random_orientation(const Graph& g, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<Edge> arcs;
  arcs.reserve(g.num_edges());
  for (const auto& [u, v] : g.edges()) {
    if (coin(rng)) {
      arcs.emplace_back(u, v);
    } else {
      arcs.emplace_back(v, u);
    }
  }
  return DiGraph(g.n(), std::move(arcs));
}

Condensation condensation(const DiGraph& g) {
  // Iterative Tarjan.
  const int n = g.n();
  std::vector<int> index(static_cast<size_t>(n), -1);
  std::vector<int> low(static_cast<size_t>(n), 0);
  std::vector<char> on_stack(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  std::vector<int> comp(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> parts;
  int counter = 0;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    std::vector<std::pair<int, size_t>> call{{root, 0}};
    index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      const auto& out = g.out_neighbors(v);
      if (next < out.size()) {
        const int w = out[next++];
        if (index[static_cast<size_t>(w)] == -1) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
        }
        continue;
      }
      if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
        std::vector<int> part;
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<size_t>(w)] = 0;
          comp[static_cast<size_t>(w)] = static_cast<int>(parts.size());
          part.push_back(w);
        } while (w != v);
        std::sort(part.begin(), part.end());
        parts.push_back(std::move(part));
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[static_cast<size_t>(parent)] =
            std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(finished)]);
      }
    }
  }

  std::set<Edge> dag_arcs;
  for (const auto& [v, w] : g.arcs()) {
    const int a = comp[static_cast<size_t>(v)];
    const int b = comp[static_cast<size_t>(w)];
    if (a != b) dag_arcs.emplace(a, b);
  }
  Condensation c;
  c.partition = std::move(parts);
  c.component_of = std::move(comp);
  c.dag = DiGraph(static_cast<int>(c.partition.size()), std::vector<Edge>(dag_arcs.begin(), dag_arcs.end()));
  for (int k = 0; k < c.dag.n(); ++k) {
    if (c.dag.outdeg(k) == 0) c.sinks.push_back(k);
  }
  return c;
}

bool is_strongly_connected(const DiGraph& g) {
  return g.n() <= 1 || condensation(g).partition.size() == 1;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> seen(static_cast<size_t>(g.n()), 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.n(); ++s) {
    if (seen[static_cast<size_t>(s)]) continue;
    std::vector<int> part{s};
    seen[static_cast<size_t>(s)] = 1;
    for (size_t head = 0; head < part.size(); ++head) {
      for (int w : g.neighbors(part[head])) {
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          part.push_back(w);
        }
      }
    }
    std::sort(part.begin(), part.end());
    out.push_back(std::move(part));
  }
  return out;
}

bool is_connected(const Graph& g) { return g.n() <= 1 || connected_components(g).size() == 1; }

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> relabel(static_cast<size_t>(g.n()), -1);
  for (size_t k = 0; k < vertices.size(); ++k) relabel[static_cast<size_t>(vertices[k])] = static_cast<int>(k);
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    const int a = relabel[static_cast<size_t>(u)];
    const int b = relabel[static_cast<size_t>(v)];
    if (a >= 0 && b >= 0) edges.emplace_back(a, b);
  }
  return Graph(static_cast<int>(vertices.size()), std::move(edges));
}

Graph giant_component(const Graph& g, std::vector<int>* original_labels) {
  auto parts = connected_components(g);
  if (parts.empty()) return Graph(0, {});
  // Ties resolve to the component containing the smallest label.
  const auto best = std::max_element(parts.begin(), parts.end(),
                                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
  if (original_labels != nullptr) *original_labels = *best;
  return induced_subgraph(g, *best);
}

std::vector<int> distances_to_sink_set(const DiGraph& g, const Condensation& c) {
  if (c.sinks.size() != 1) {
    throw MultipleSinks("distances_to_sink_set: condensation has " + std::to_string(c.sinks.size()) + " sinks");
  }
  // BFS on reversed arcs from every sink vertex.
  std::vector<int> dist(static_cast<size_t>(g.n()), -1);
  std::queue<int> queue;
  for (int v : c.partition[static_cast<size_t>(c.sinks.front())]) {
    dist[static_cast<size_t>(v)] = 0;
    queue.push(v);
  }
  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop();
    for (int v : g.in_neighbors(w)) {
      if (dist[static_cast<size_t>(v)] == -1) {
        dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(w)] + 1;
        queue.push(v);
      }
    }
  }
  return dist;
}

std::vector<int> distances_to_sink_set(const DiGraph& g) {
  return distances_to_sink_set(g, condensation(g));
}

// ---------------------------------------------------------------------------
// Random models

Graph gen_er(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw GraphError("gen_er: p must lie in [0, 1]");
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (u(rng) < p) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

DiGraph gen_er_directed(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw GraphError("gen_er: p must lie in [0, 1]");
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && u(rng) < p) arcs.emplace_back(i, j);
    }
  }
  return DiGraph(n, std::move(arcs));
}

Graph gen_cl(const std::vector<double>& omega, std::uint64_t seed) {
  const int n = static_cast<int>(omega.size());
  double total = 0.0;
  for (double w : omega) {
    if (!(w >= 0.0 && w <= n - 1)) throw GraphError("gen_cl: weights must lie in [0, n-1]");
    total += w;
  }
  if (total == 0.0) return Graph(n, {});
  // The largest pair product decides whether every probability is at most 1.
  std::vector<double> sorted = omega;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (n >= 2 && sorted[0] * sorted[1] > total) {
    throw ProbabilityOverflow("gen_cl: some pair probability exceeds 1");
  }
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (u(rng) < omega[static_cast<size_t>(i)] * omega[static_cast<size_t>(j)] / total) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

std::vector<double> cl_powerlaw_omega(int n, double a, double b) {
  if (!(a > 0.0 && b > 0.0 && a + b <= 1.0)) {
    throw GraphError("cl_powerlaw_omega: requires 0 < a < a + b <= 1");
  }
  std::vector<double> omega(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    omega[static_cast<size_t>(i - 1)] = std::pow(static_cast<double>(n), a + b * i / static_cast<double>(n));
  }
  return omega;
}

namespace {

// Preferential attachment core shared by both BA variants. Emits, for every new
// vertex v, the list of m0 distinct earlier vertices it attaches to.
template <typename Emit>
void ba_process(int n, int m0, std::uint64_t seed, Emit emit) {
  if (m0 < 1 || n < m0) throw GraphError("gen_ba: requires n >= m0 >= 1");
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> degree(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < m0; ++i) degree[static_cast<size_t>(i)] = m0 - 1;
  std::vector<int> targets;
  for (int v = m0; v < n; ++v) {
    std::vector<double> weight(degree.begin(), degree.begin() + v);
    double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    targets.clear();
    for (int k = 0; k < m0; ++k) {
      int chosen = -1;
      if (total <= 0.0) {
        // Only K_1 has zero total degree; the choice is then uniform.
        std::vector<int> free;
        for (int w = 0; w < v; ++w) {
          if (std::find(targets.begin(), targets.end(), w) == targets.end()) free.push_back(w);
        }
        chosen = free[static_cast<size_t>(u(rng) * static_cast<double>(free.size())) % free.size()];
      } else {
        const double r = u(rng) * total;
        double acc = 0.0;
        for (int w = 0; w < v; ++w) {
          acc += weight[static_cast<size_t>(w)];
          if (weight[static_cast<size_t>(w)] > 0.0 && r < acc) {
            chosen = w;
            break;
          }
        }
        if (chosen < 0) {
          for (int w = v - 1; w >= 0; --w) {
            if (weight[static_cast<size_t>(w)] > 0.0) {
              chosen = w;
              break;
            }
          }
        }
      }
      targets.push_back(chosen);
      total -= weight[static_cast<size_t>(chosen)];
      weight[static_cast<size_t>(chosen)] = 0.0;
    }
    for (int w : targets) {
      degree[static_cast<size_t>(w)] += 1.0;
      emit(w, v);
    }
    degree[static_cast<size_t>(v)] = m0;
  }
}

}  // namespace

Graph gen_ba(int n, int m0, std::uint64_t seed) {
  std::vector<Edge> edges;
  for (int i = 0; i < m0; ++i) {
    for (int j = i + 1; j < m0; ++j) edges.emplace_back(i, j);
  }
  ba_process(n, m0, seed, [&](int w, int v) { edges.emplace_back(w, v); });
  return Graph(n, std::move(edges));
}

DiGraph gen_ba_directed(int n, int m0, std::uint64_t seed) {
  std::vector<Edge> arcs;
  for (int i = 0; i < m0; ++i) {
    for (int j = 0; j < m0; ++j) {
      if (i != j) arcs.emplace_back(i, j);
    }
  }
  ba_process(n, m0, seed, [&](int w, int v) { arcs.emplace_back(w, v); });
  return DiGraph(n, std::move(arcs));
}

// ---------------------------------------------------------------------------
// Fixtures

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, std::move(edges));
}

Graph star_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph(n, std::move(edges));
}

Graph complete_plus_leaf(int n) {
  auto edges = complete_graph(n).edges();
  edges.emplace_back(0, n);
  return Graph(n + 1, std::move(edges));
}

DiGraph directed_path(int n) {
  std::vector<Edge> arcs;
  for (int i = 0; i + 1 < n; ++i) arcs.emplace_back(i, i + 1);
  return DiGraph(n, std::move(arcs));
}

DiGraph circulant_jump2(int n) {
  if (n % 4 != 0 || n < 8) throw GraphError("circulant_jump2: size must be 4k with k > 1");
  std::vector<Edge> arcs;
  for (int i = 0; i < n; ++i) {
    arcs.emplace_back(i, (i + 1) % n);
    arcs.emplace_back((i + 1) % n, i);
    arcs.emplace_back((i + 2) % n, i);
  }
  return DiGraph(n, std::move(arcs));
}

DiGraph moral_triangle() { return DiGraph(3, {{0, 2}, {1, 2}}); }

DiGraph premature_graph() {
  return DiGraph(4, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}, {0, 3}});
}

DiGraph ngqsw_period_graph() {
  Graph g(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {4, 5}});
  return DiGraph::from_graph(g);
}

DiGraph oriented_k12() { return DiGraph(3, {{0, 1}, {0, 2}}); }

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string edges_json(int n, bool directed, const std::vector<Edge>& edges) {
  nlohmann::json j;
  j["n"] = n;
  j["directed"] = directed;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [u, v] : edges) list.push_back({u + 1, v + 1});
  j["edges"] = list;
  return j.dump();
}

}  // namespace

std::string to_json(const Graph& g) { return edges_json(g.n(), false, g.edges()); }

std::string to_json(const DiGraph& g) { return edges_json(g.n(), true, g.arcs()); }

AnyGraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphError(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw GraphError("graph JSON: expected keys \"n\" and \"edges\"");
  }
  if (!j["n"].is_number_integer() || !j["edges"].is_array()) {
    throw GraphError("graph JSON: malformed \"n\" or \"edges\"");
  }
  const int n = j["n"].get<int>();
  const bool directed = j.value("directed", false);
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw GraphError("graph JSON: every edge must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
  }
  AnyGraph out;
  out.directed = directed;
  if (directed) {
    out.digraph = DiGraph(n, std::move(edges));
  } else {
    out.undirected = Graph(n, std::move(edges));
  }
  return out;
}

}  // namespace qsw
