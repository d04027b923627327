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

#include "qsw/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsw/analysis.hpp"
#include "qsw/gksl.hpp"
#include "qsw/nonmoral.hpp"
#include "qsw/rng.hpp"
#include "qsw/search.hpp"

namespace qsw::cli {

using nlohmann::json;

namespace {

// Thrown for configuration problems detected after CLI11 parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss << std::setprecision(17) << x;
  return ss.str();
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Wraps a result object with the provenance every output JSON carries.
json envelope(const std::string& command, const json& config, std::uint64_t seed,
              std::chrono::steady_clock::time_point start, const json& result) {
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return json{{"command", command},
              {"config", config},
              {"seed", seed},
              {"version", QSW_VERSION},
              {"wall_clock", {{"finished_utc", utc_now()}, {"elapsed_seconds", elapsed}}},
              {"result", result}};
}

int positive_int(const std::string& s, const std::string& what) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " '" + s + "'");
  }
  if (pos != s.size() || v < 1) throw UsageError("bad " + what + " '" + s + "'");
  return v;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

// Runs body(i) for i in [0, count) on a small pool. Results must be written
// into per-index slots by the caller; the first exception is rethrown.
template <typename Body>
void parallel_for(int count, int threads, Body body) {
  threads = std::max(1, std::min(threads, count));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<double> parse_time_grid(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty time grid");
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad time value '" + s + "'");
    }
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument("bad time value '" + s + "'");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw std::invalid_argument("time grid must be start:step:stop");
    const double a = number(parts[0]), h = number(parts[1]), b = number(parts[2]);
    if (!(h > 0.0) || b < a) throw std::invalid_argument("time grid needs step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((b - a) / h + 0.5));
    if (count > 10'000'000) throw std::invalid_argument("time grid too long");
    for (long i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * h);
  } else {
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw std::invalid_argument("empty time grid");
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0.0 || (i > 0 && !(out[i] > out[i - 1]))) {
      throw std::invalid_argument("time grid must be nonnegative and strictly ascending");
    }
  }
  return out;
}

AnyGraph parse_graph_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  AnyGraph g;
  auto undirected = [&](Graph x) {
    g.directed = false;
    g.undirected = std::move(x);
  };
  auto directed = [&](DiGraph x) {
    g.directed = true;
    g.digraph = std::move(x);
  };
  if (head == "file") {
    if (arg.empty()) throw UsageError("file: needs a path");
    return graph_from_json(read_file(arg));
  }
  if (head == "path") {
    undirected(path_graph(positive_int(arg, "path size")));
  } else if (head == "complete") {
    undirected(complete_graph(positive_int(arg, "complete size")));
  } else if (head == "star") {
    undirected(star_graph(positive_int(arg, "star size")));
  } else if (head == "complete-plus-leaf") {
    undirected(complete_plus_leaf(positive_int(arg, "complete size")));
  } else if (head == "dpath") {
    directed(directed_path(positive_int(arg, "path size")));
  } else if (head == "circulant2") {
    directed(circulant_jump2(positive_int(arg, "circulant size")));
  } else if (head == "moral-triangle" && arg.empty()) {
    directed(moral_triangle());
  } else if (head == "premature" && arg.empty()) {
    directed(premature_graph());
  } else if (head == "period" && arg.empty()) {
    directed(ngqsw_period_graph());
  } else if (head == "oriented-k12" && arg.empty()) {
    directed(oriented_k12());
  } else {
    throw UsageError("unknown graph spec '" + spec + "'");
  }
  return g;
}

namespace {

// ---------------------------------------------------------------------------
// graphgen

struct GraphgenOpts {
  std::string model = "er";
  int n = 0;
  double p = 0.0;
  int m0 = 1;
  double a = 0.0, b = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_graphgen(const GraphgenOpts& o, std::ostream& out) {
  if (o.n < 1) throw UsageError("--n must be positive");
  std::string text;
  const std::uint64_t s = derive_seed(o.seed, 0);
  if (o.model == "er") {
    text = to_json(gen_er(o.n, o.p, s));
  } else if (o.model == "er-directed") {
    text = to_json(gen_er_directed(o.n, o.p, s));
  } else if (o.model == "ba") {
    text = to_json(gen_ba(o.n, o.m0, s));
  } else if (o.model == "ba-directed") {
    text = to_json(gen_ba_directed(o.n, o.m0, s));
  } else if (o.model == "cl") {
    text = to_json(gen_cl(cl_powerlaw_omega(o.n, o.a, o.b), s));
  } else {
    throw UsageError("unknown graph model '" + o.model + "'");
  }
  emit(o.out, text + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// propagate

struct PropagateOpts {
  std::string model = "gqsw";
  double omega = 1.0;
  int n = 201;
  std::string times = "6:6:300";
  int batch = 5;
  std::string csv;
  std::string json_out;
};

int cmd_propagate(const PropagateOpts& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> times = parse_time_grid(o.times);
  const Model model = model_from_string(o.model);
  if (!(o.omega >= 0.0 && o.omega <= 1.0)) throw UsageError("--omega must lie in [0, 1]");
  if (times.front() <= 0.0) throw UsageError("propagation times must be positive");
  const std::vector<double> mu2 = path_mu2(model, o.omega, o.n, times);
  const PropagationTrace tr = scaling_exponents(times, mu2, o.batch);

  std::ostringstream csv;
  csv << "t,mu2,alpha_mid,alpha\n";
  for (size_t i = 0; i < times.size(); ++i) {
    csv << fmt(times[i]) << ',' << fmt(mu2[i]) << ',';
    if (i < tr.alphas.size()) csv << fmt(tr.midpoints[i]) << ',' << fmt(tr.alphas[i]);
    else csv << ',';
    csv << '\n';
  }
  json result{{"final_alpha", tr.alphas.back()}, {"batches", tr.alphas.size()}};
  if (tr.alphas.size() >= 8) {
    const LimitFit fit = fit_limit_model(tr.midpoints, tr.alphas);
    result["fit"] = {{"p1", fit.p1},           {"p2", fit.p2},
                     {"p3", fit.p3},           {"p4", fit.p4},
                     {"residual", fit.residual}, {"degenerate", fit.degenerate}};
  } else {
    result["fit"] = nullptr;
  }
  const json config{{"model", o.model}, {"omega", o.omega}, {"n", o.n},
                    {"times", o.times}, {"batch", o.batch}};
  emit(o.csv, csv.str(), out);
  if (!o.json_out.empty()) write_file(o.json_out, envelope("propagate", config, 0, start, result).dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// converge

struct ConvergeOpts {
  std::string model = "lqsw";
  std::string graph;
  double omega = 0.5;
  double tol = 1e-10;
  int samples = 0;
  int sample_n = 6;
  double sample_p = 0.4;
  std::uint64_t seed = 0;
  std::string out;
};

EvolutionGenerator converge_generator(const std::string& model, const DiGraph& g, double omega) {
  if (model == "lqsw") return build_generator(lqsw_spec(g, omega));
  if (model == "gqsw") return build_generator(gqsw_spec(g, omega));
  if (model == "ngqsw") {
    const DemoralizedGraph dg = demoralize(g);
    return ngqsw_generator(dg, standard_operators(dg), omega);
  }
  throw UsageError("converge: model must be lqsw, gqsw or ngqsw");
}

json report_json(const ConvergenceReport& r) {
  json spectrum = json::array();
  for (const cplx& z : r.spectrum) spectrum.push_back({z.real(), z.imag()});
  return json{{"classification", to_string(r.classification)},
              {"zero_multiplicity", r.zero_multiplicity},
              {"second_smallest_abs", r.second_smallest_abs},
              {"imaginary_count", r.imaginary_count},
              {"tol", r.tol},
              {"spectrum", spectrum}};
}

int cmd_converge(const ConvergeOpts& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  if (!(o.omega >= 0.0 && o.omega <= 1.0)) throw UsageError("--omega must lie in [0, 1]");
  if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
  json config{{"model", o.model}, {"omega", o.omega}, {"tol", o.tol}};
  json result;
  if (o.samples > 0) {
    config["samples"] = o.samples;
    config["sample_n"] = o.sample_n;
    config["sample_p"] = o.sample_p;
    json counts{{"Relaxing", 0}, {"ConvergentNonRelaxing", 0}, {"PossiblyPeriodic", 0}};
    for (int i = 0; i < o.samples; ++i) {
      const DiGraph g = gen_er_directed(o.sample_n, o.sample_p, derive_seed(o.seed, static_cast<std::uint64_t>(i)));
      const ConvergenceReport r = classify_convergence(converge_generator(o.model, g, o.omega), o.tol);
      counts[to_string(r.classification)] = counts[to_string(r.classification)].get<int>() + 1;
    }
    result = {{"counts", counts}};
  } else {
    if (o.graph.empty()) throw UsageError("converge: --graph or --samples is required");
    config["graph"] = o.graph;
    const DiGraph g = parse_graph_spec(o.graph).as_digraph();
    result = report_json(classify_convergence(converge_generator(o.model, g, o.omega), o.tol));
  }
  emit(o.out, envelope("converge", config, o.seed, start, result).dump(2) + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// search

struct SearchOpts {
  std::string graph;
  std::string kind = "adjacency";
  int marked = -1;
  std::string gamma_rule = "s1";
  double gamma = 0.0;
  std::string initial = "principal";
  std::string times = "auto";
  double c_const = 0.1;
  std::string csv;
  std::string json_out;
};

int cmd_search(const SearchOpts& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Graph g = parse_graph_spec(o.graph).as_graph();
  const int w = o.marked < 0 ? g.n() - 1 : o.marked;
  if (w >= g.n()) throw UsageError("marked vertex out of range");
  const GraphMatrixKind kind = matrix_kind_from_string(o.kind);
  const GammaRule rule = gamma_rule_from_string(o.gamma_rule);
  InitialState init;
  if (o.initial == "principal") init = InitialState::Principal;
  else if (o.initial == "uniform") init = InitialState::Uniform;
  else throw UsageError("--initial must be principal or uniform");

  const RMatrix hg = graph_hamiltonian(g, kind);
  const SearchStats st = search_stats(hg, w, o.c_const);
  std::vector<double> times;
  if (o.times == "auto") {
    // The first success peak sits near (pi / 2) T; stop before the second.
    const double tmax = std::numbers::pi * st.predicted_t;
    const int points = 3001;
    for (int i = 0; i < points; ++i) times.push_back(tmax * i / (points - 1));
  } else {
    times = parse_time_grid(o.times);
  }
  const SearchRun run = run_search(hg, w, rule, times, init, o.gamma);

  std::ostringstream csv;
  csv << "t,p\n";
  for (size_t i = 0; i < times.size(); ++i) csv << fmt(times[i]) << ',' << fmt(run.success[i]) << '\n';
  const json stats{{"eps", st.eps}, {"S1", st.s1},
                   {"S2", st.s2},   {"S3", st.s3},
                   {"gap", st.gap}, {"condition_holds", st.condition_holds},
                   {"c_const", st.c_const}, {"predicted_t", st.predicted_t},
                   {"gamma_s1", st.gamma}};
  const json result{{"stats", stats}, {"gamma", run.gamma}, {"argmax_t", run.argmax_t}, {"p_max", run.p_max}};
  const json config{{"graph", o.graph},   {"kind", o.kind},       {"marked", w},
                    {"gamma_rule", o.gamma_rule}, {"gamma", o.gamma}, {"initial", o.initial},
                    {"times", o.times},   {"c_const", o.c_const}};
  emit(o.csv, csv.str(), out);
  if (!o.json_out.empty()) write_file(o.json_out, envelope("search", config, 0, start, result).dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

int sweep_er_p0(const json& cfg, const std::string& dir, int threads, std::chrono::steady_clock::time_point start) {
  const auto ns = cfg.at("n").get<std::vector<int>>();
  const auto p0s = cfg.at("p0").get<std::vector<double>>();
  const int samples = cfg.at("samples").get<int>();
  const int marked = cfg.value("marked", 5);
  const auto seed = cfg.value<std::uint64_t>("seed", 0);
  if (samples < 1 || ns.empty() || p0s.empty()) throw UsageError("sweep: zero samples");
  struct Task {
    double p0;
    int n;
    int sample;
  };
  std::vector<Task> tasks;
  for (double p0 : p0s) {
    for (int n : ns) {
      for (int s = 0; s < samples; ++s) tasks.push_back({p0, n, s});
    }
  }
  std::vector<ErP0Sample> results(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), threads, [&](int i) {
    const Task& t = tasks[static_cast<size_t>(i)];
    results[static_cast<size_t>(i)] = er_p0_sample(t.n, t.p0, marked, derive_seed(seed, static_cast<std::uint64_t>(i)));
  });
  std::ostringstream agg;
  agg << "p0,n,min_p,mean_p,bound\n";
  size_t i = 0;
  for (double p0 : p0s) {
    for (int n : ns) {
      double mn = 1.0, mean = 0.0;
      for (int s = 0; s < samples; ++s, ++i) {
        const ErP0Sample& r = results[i];
        mn = std::min(mn, r.min);
        mean += r.mean;
        const json sample{{"p0", p0},           {"n", n},           {"sample", s},
                          {"n_giant", r.n_giant}, {"marked", r.marked}, {"success", r.success},
                          {"shift_bound", r.shift_bound}};
        write_file(dir + "/samples/er_p0_" + std::to_string(i) + ".json", sample.dump(2) + "\n");
      }
      agg << fmt(p0) << ',' << n << ',' << fmt(mn) << ',' << fmt(mean / samples) << ',' << fmt(lambert_bound(p0))
          << '\n';
    }
  }
  write_file(dir + "/aggregate.csv", agg.str());
  write_file(dir + "/summary.json", envelope("sweep", cfg, seed, start, {{"tasks", tasks.size()}}).dump(2) + "\n");
  return kExitOk;
}

int sweep_ba_exponent(const json& cfg, const std::string& dir, int threads,
                      std::chrono::steady_clock::time_point start) {
  const auto sizes = cfg.at("sizes").get<std::vector<int>>();
  const int m0 = cfg.value("m0", 3);
  const int trajectories = cfg.at("trajectories").get<int>();
  const auto seed = cfg.value<std::uint64_t>("seed", 0);
  if (trajectories < 1 || sizes.size() < 2) throw UsageError("sweep: zero samples");
  std::vector<std::vector<BaPoint>> results(static_cast<size_t>(trajectories));
  parallel_for(trajectories, threads, [&](int i) {
    results[static_cast<size_t>(i)] = ba_trajectory(sizes, m0, derive_seed(seed, static_cast<std::uint64_t>(i)));
  });
  std::ostringstream agg;
  agg << "trajectory,n,T,pT\n";
  json slopes = json::array();
  double mean = 0.0;
  for (int i = 0; i < trajectories; ++i) {
    std::vector<double> x, y;
    for (const BaPoint& p : results[static_cast<size_t>(i)]) {
      agg << i << ',' << p.n << ',' << fmt(p.t) << ',' << fmt(p.p) << '\n';
      x.push_back(std::log(static_cast<double>(p.n)));
      y.push_back(std::log(p.t / p.p));
    }
    const double s = regression_slope(x, y);
    slopes.push_back(s);
    mean += s / trajectories;
  }
  write_file(dir + "/aggregate.csv", agg.str());
  write_file(dir + "/summary.json",
             envelope("sweep", cfg, seed, start, {{"slopes", slopes}, {"mean_exponent", mean}}).dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& dir, int threads) {
  const auto start = std::chrono::steady_clock::now();
  json cfg;
  try {
    cfg = json::parse(read_file(config_path));
  } catch (const json::exception& e) {
    throw UsageError(std::string("sweep: bad config: ") + e.what());
  }
  try {
    const std::string kind = cfg.at("experiment").get<std::string>();
    if (kind == "er-p0") return sweep_er_p0(cfg, dir, threads, start);
    if (kind == "ba-exponent") return sweep_ba_exponent(cfg, dir, threads, start);
    throw UsageError("sweep: unknown experiment '" + kind + "'");
  } catch (const json::exception& e) {
    throw UsageError(std::string("sweep: bad config: ") + e.what());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and analysis of classical, quantum and quantum stochastic walks", "qsw-cli"};
  app.set_version_flag("--version", std::string(QSW_VERSION));
  app.require_subcommand(1);

  GraphgenOpts gg;
  auto* c_gg = app.add_subcommand("graphgen", "Sample a random graph and write graph JSON");
  c_gg->add_option("--model", gg.model, "er | er-directed | ba | ba-directed | cl")->capture_default_str();
  c_gg->add_option("--n", gg.n, "Number of vertices")->required();
  c_gg->add_option("--p", gg.p, "Edge probability (er)");
  c_gg->add_option("--m0", gg.m0, "Attachment count (ba)")->capture_default_str();
  c_gg->add_option("--a", gg.a, "Chung-Lu weight exponent offset");
  c_gg->add_option("--b", gg.b, "Chung-Lu weight exponent slope");
  c_gg->add_option("--seed", gg.seed, "Master seed")->capture_default_str();
  c_gg->add_option("--out", gg.out, "Output file (stdout if omitted)");

  PropagateOpts pr;
  auto* c_pr = app.add_subcommand("propagate", "Second moment and scaling exponents on a path");
  c_pr->add_option("--model", pr.model, "ctqw | ctrw | lqsw | gqsw | ngqsw")->capture_default_str();
  c_pr->add_option("--omega", pr.omega, "Interpolation parameter")->capture_default_str();
  c_pr->add_option("--n", pr.n, "Odd path length")->capture_default_str();
  c_pr->add_option("--times", pr.times, "start:step:stop or a comma list")->capture_default_str();
  c_pr->add_option("--batch", pr.batch, "Batch size for slope estimates")->capture_default_str();
  c_pr->add_option("--csv", pr.csv, "CSV output (stdout if omitted)");
  c_pr->add_option("--json", pr.json_out, "JSON fit summary");

  ConvergeOpts cv;
  auto* c_cv = app.add_subcommand("converge", "Classify convergence from the generator spectrum");
  c_cv->add_option("--model", cv.model, "lqsw | gqsw | ngqsw")->capture_default_str();
  c_cv->add_option("--graph", cv.graph, "Graph spec, e.g. circulant2:8 or file:g.json");
  c_cv->add_option("--omega", cv.omega, "Interpolation parameter")->capture_default_str();
  c_cv->add_option("--tol", cv.tol, "Zero threshold")->capture_default_str();
  c_cv->add_option("--samples", cv.samples, "Classify this many random directed ER graphs instead");
  c_cv->add_option("--sample-n", cv.sample_n, "Order of sampled graphs")->capture_default_str();
  c_cv->add_option("--sample-p", cv.sample_p, "Arc probability of sampled graphs")->capture_default_str();
  c_cv->add_option("--seed", cv.seed, "Master seed")->capture_default_str();
  c_cv->add_option("--out", cv.out, "JSON output (stdout if omitted)");

  SearchOpts se;
  auto* c_se = app.add_subcommand("search", "Quantum spatial search on one graph");
  c_se->add_option("--graph", se.graph, "Graph spec")->required();
  c_se->add_option("--kind", se.kind, "adjacency | laplacian | normalized-laplacian")->capture_default_str();
  c_se->add_option("--marked", se.marked, "Marked vertex, 0-based (default: last)");
  c_se->add_option("--gamma-rule", se.gamma_rule, "s1 | caption | manual")->capture_default_str();
  c_se->add_option("--gamma", se.gamma, "Hopping rate for the manual rule");
  c_se->add_option("--initial", se.initial, "principal | uniform")->capture_default_str();
  c_se->add_option("--times", se.times, "Time grid or 'auto'")->capture_default_str();
  c_se->add_option("--c-const", se.c_const, "Constant in the validity condition")->capture_default_str();
  c_se->add_option("--csv", se.csv, "CSV output (stdout if omitted)");
  c_se->add_option("--json", se.json_out, "JSON statistics");

  std::string sw_config, sw_dir;
  int sw_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* c_sw = app.add_subcommand("sweep", "Run a multi-sample experiment from a JSON config");
  c_sw->add_option("--config", sw_config, "Experiment config JSON")->required();
  c_sw->add_option("--out-dir", sw_dir, "Output directory")->required();
  c_sw->add_option("--threads", sw_threads, "Worker threads")->capture_default_str();

  std::vector<std::string> storage{"qsw-cli"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_gg->parsed()) return cmd_graphgen(gg, out);
    if (c_pr->parsed()) return cmd_propagate(pr, out);
    if (c_cv->parsed()) return cmd_converge(cv, out);
    if (c_se->parsed()) return cmd_search(se, out);
    if (c_sw->parsed()) return cmd_sweep(sw_config, sw_dir, sw_threads);
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace qsw::cli
