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

#include "qsw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qsw/nonmoral.hpp"

namespace qsw {

namespace {

constexpr double kPi = std::numbers::pi;

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

bool is_sorted_ascending(const std::vector<double>& t) {
  for (size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Propagation

double second_moment(const RVector& p, const std::vector<double>& positions) {
  if (static_cast<size_t>(p.size()) != positions.size()) throw DimensionError("second_moment: size mismatch");
  if (std::abs(p.sum() - 1.0) > 1e-6) throw std::invalid_argument("second_moment: probabilities must sum to 1");
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) s += positions[static_cast<size_t>(i)] * positions[static_cast<size_t>(i)] * p(i);
  return s;
}

PropagationTrace scaling_exponents(const std::vector<double>& times, const std::vector<double>& f, int batch) {
  if (times.size() != f.size()) throw DimensionError("scaling_exponents: size mismatch");
  if (batch < 2) throw std::invalid_argument("scaling_exponents: batch size must be at least 2");
  if (times.size() < static_cast<size_t>(batch)) throw std::invalid_argument("scaling_exponents: fewer points than batch size");
  if (!is_sorted_ascending(times)) throw std::invalid_argument("scaling_exponents: times must be strictly ascending");
  for (size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || !(f[i] > 0.0)) throw std::invalid_argument("scaling_exponents: nonpositive data");
  }
  PropagationTrace out;
  out.times = times;
  out.mu2 = f;
  const size_t l = static_cast<size_t>(batch);
  std::vector<double> lx(times.size()), ly(times.size());
  for (size_t i = 0; i < times.size(); ++i) {
    lx[i] = std::log(times[i]);
    ly[i] = std::log(f[i]);
  }
  for (size_t i = 0; i + l <= times.size(); ++i) {
    double mx = 0.0, my = 0.0;
    for (size_t j = i; j < i + l; ++j) {
      mx += lx[j];
      my += ly[j];
    }
    mx /= static_cast<double>(l);
    my /= static_cast<double>(l);
    double sxy = 0.0, sxx = 0.0;
    for (size_t j = i; j < i + l; ++j) {
      sxy += (lx[j] - mx) * (ly[j] - my);
      sxx += (lx[j] - mx) * (lx[j] - mx);
    }
    out.alphas.push_back(sxy / sxx);
    out.midpoints.push_back(0.5 * (times[i] + times[i + l - 1]));
  }
  return out;
}

namespace {

// Parametrisation keeping the constraints: p3 = t0 - exp(q3), p4 = exp(q4).
struct LimitModel {
  const std::vector<double>& t;
  const std::vector<double>& y;
  double t0;

  void residuals(const Eigen::Vector4d& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) const {
    const size_t m = t.size();
    r.resize(static_cast<Eigen::Index>(m));
    if (jac) jac->resize(static_cast<Eigen::Index>(m), 4);
    const double p1 = q(0), p2 = q(1);
    const double e3 = std::exp(q(2));
    const double p4 = std::exp(q(3));
    for (size_t i = 0; i < m; ++i) {
      const double s = t[i] - t0 + e3;  // t - p3 > 0
      const double ls = std::log(s);
      const double g = std::exp(-p4 * ls);
      const auto ii = static_cast<Eigen::Index>(i);
      r(ii) = p1 - p2 * g - y[i];
      if (jac) {
        (*jac)(ii, 0) = 1.0;
        (*jac)(ii, 1) = -g;
        (*jac)(ii, 2) = p2 * p4 * g / s * e3;
        (*jac)(ii, 3) = p2 * g * ls * p4;
      }
    }
  }
};

// Best (p1, p2) for fixed (q3, q4) by linear least squares.
double linear_seed(const LimitModel& model, Eigen::Vector4d& q) {
  const size_t m = model.t.size();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(m), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(m));
  const double e3 = std::exp(q(2));
  const double p4 = std::exp(q(3));
  for (size_t i = 0; i < m; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    a(ii, 0) = 1.0;
    a(ii, 1) = -std::pow(model.t[i] - model.t0 + e3, -p4);
    b(ii) = model.y[i];
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  q(0) = c(0);
  q(1) = c(1);
  return (a * c - b).norm();
}

}  // namespace

LimitFit fit_limit_model(const std::vector<double>& t, const std::vector<double>& y, int max_iterations) {
  if (t.size() != y.size()) throw DimensionError("fit_limit_model: size mismatch");
  if (t.size() < 8) throw std::invalid_argument("fit_limit_model: at least 8 points are required");
  if (!is_sorted_ascending(t)) throw std::invalid_argument("fit_limit_model: times must be strictly ascending");
  const LimitModel model{t, y, t.front()};
  const double span = t.back() - t.front();

  // Coarse grid over the nonlinear parameters, (p1, p2) solved exactly.
  Eigen::Vector4d q;
  double best = std::numeric_limits<double>::infinity();
  for (double off : {1e-2, 1e-1, 1.0, 10.0, 100.0}) {
    for (double p4 : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      Eigen::Vector4d c(0.0, 0.0, std::log(off * std::max(span, 1.0) / 100.0 + (t.front() > 0 ? t.front() : 0.0)),
                        std::log(p4));
      const double r = linear_seed(model, c);
      if (r < best) {
        best = r;
        q = c;
      }
    }
  }

  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  model.residuals(q, r, &jac);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  int it = 0;
  bool converged = cost < 1e-28;
  for (; it < max_iterations && !converged; ++it) {
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d jtr = jac.transpose() * r;
    if (jtr.lpNorm<Eigen::Infinity>() < 1e-15 * std::max(1.0, cost)) {
      converged = true;
      break;
    }
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      Eigen::Matrix4d a = jtj;
      for (int d = 0; d < 4; ++d) a(d, d) += lambda * std::max(jtj(d, d), 1e-12);
      const Eigen::Vector4d step = a.ldlt().solve(-jtr);
      Eigen::Vector4d qn = q + step;
      qn(2) = std::clamp(qn(2), -40.0, 40.0);
      qn(3) = std::clamp(qn(3), -40.0, 10.0);
      Eigen::VectorXd rn;
      model.residuals(qn, rn, nullptr);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn <= cost) {
        const double rel = (cost - cn) / std::max(cost, 1e-300);
        const double step_rel = step.norm() / (q.norm() + 1e-12);
        q = qn;
        model.residuals(q, r, &jac);
        cost = cn;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        if (rel < 1e-15 || step_rel < 1e-12 || cost < 1e-28) converged = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!accepted) converged = true;  // no descent direction left: local minimum
  }
  if (!converged) throw NumericalFailure("fit_limit_model: no convergence within the iteration cap");

  LimitFit fit;
  fit.p1 = q(0);
  fit.p2 = q(1);
  fit.p3 = t.front() - std::exp(q(2));
  fit.p4 = std::exp(q(3));
  fit.residual = std::sqrt(cost);
  fit.iterations = it;
  fit.degenerate = fit.p4 < 1e-6;
  return fit;
}

std::vector<double> path_mu2(Model model, double omega, int n, const std::vector<double>& times) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("path_mu2: n must be odd and at least 3");
  if (!is_sorted_ascending(times) || times.empty() || times.front() < 0.0) {
    throw std::invalid_argument("path_mu2: times must be nonnegative and strictly ascending");
  }
  const int c = (n - 1) / 2;
  std::vector<double> pos(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) pos[static_cast<size_t>(v)] = v - c;
  const Graph g = path_graph(n);
  std::vector<double> out;
  out.reserve(times.size());

  switch (model) {
    case Model::CTQW: {
      const HermitianPropagator prop(eig_hermitian(adjacency_real(g)));
      CVector psi0 = CVector::Zero(n);
      psi0(c) = 1.0;
      for (double t : times) out.push_back(second_moment(prop.apply(psi0, t).cwiseAbs2(), pos));
      break;
    }
    case Model::CTRW: {
      RVector p0 = RVector::Zero(n);
      p0(c) = 1.0;
      for (double t : times) {
        RVector p = ctrw_evolve(g, p0, t).cwiseMax(0.0);
        out.push_back(second_moment(p / p.sum(), pos));
      }
      break;
    }
    case Model::LQSW:
    case Model::GQSW: {
      const DiGraph d = DiGraph::from_graph(g);
      const EvolutionGenerator gen =
          build_generator(model == Model::GQSW ? gqsw_spec(d, omega) : lqsw_spec(d, omega));
      for (const CMatrix& rho : evolve_trace(gen, basis_state(n, c), times)) {
        out.push_back(second_moment(measure(rho), pos));
      }
      break;
    }
    case Model::NGQSW: {
      const DemoralizedGraph dg = demoralize(DiGraph::from_graph(g));
      auto [l1, l2] = symmetrized_path_lindblads(dg);
      NonmoralOperators ops{nonmoral_hamiltonian(dg), standard_rotating_hamiltonian(dg), {l1, l2}};
      const EvolutionGenerator gen = ngqsw_generator(dg, ops, omega);
      CMatrix rho0 = CMatrix::Zero(dg.dim, dg.dim);
      for (int k = 0; k < dg.block_size(c); ++k) rho0(dg.index(c, k), dg.index(c, k)) = 1.0 / dg.block_size(c);
      for (const CMatrix& rho : evolve_trace(gen, rho0, times)) {
        out.push_back(second_moment(natural_measure(rho, dg), pos));
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms

double path_probability_closed_form(int n, int l, int k, double t, double omega) {
  if (n < 1 || l < 1 || l > n || k < 1 || k > n) throw std::invalid_argument("path_probability_closed_form: bad index");
  const double h = kPi / (n + 1);
  std::vector<double> lam(static_cast<size_t>(n)), c(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    lam[static_cast<size_t>(i - 1)] = 2.0 * std::cos(i * h);
    c[static_cast<size_t>(i - 1)] = (2.0 / (n + 1)) * std::sin(k * i * h) * std::sin(l * i * h);
  }
  double s = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    for (size_t j = 0; j < c.size(); ++j) {
      const double d = lam[i] - lam[j];
      s += c[i] * c[j] * std::exp(-0.5 * t * omega * d * d) * std::cos(t * (1.0 - omega) * d);
    }
  }
  return s;
}

double infinite_path_probability(int k, double t, double omega, double tol) {
  if (t < 0.0) throw std::invalid_argument("infinite_path_probability: t must be nonnegative");
  // The integrand is smooth and 2 pi-periodic in both variables, so the
  // trapezoid rule converges exponentially; refine by doubling until two
  // successive grids agree. The imaginary part vanishes by the x <-> y symmetry.
  auto trapezoid = [&](int m) {
    const double hstep = 2.0 * kPi / m;
    std::vector<double> cx(static_cast<size_t>(m)), kx(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      const double x = -kPi + i * hstep;
      cx[static_cast<size_t>(i)] = std::cos(x);
      kx[static_cast<size_t>(i)] = std::cos(k * x);
    }
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      double row = 0.0;
      for (int j = 0; j < m; ++j) {
        const double d = cx[static_cast<size_t>(i)] - cx[static_cast<size_t>(j)];
        row += kx[static_cast<size_t>(j)] * std::exp(-2.0 * omega * t * d * d) * std::cos(2.0 * t * (1.0 - omega) * d);
      }
      s += kx[static_cast<size_t>(i)] * row;
    }
    return s / (static_cast<double>(m) * m);
  };
  int m = 32;
  double prev = trapezoid(m);
  while (m < 8192) {
    m *= 2;
    const double cur = trapezoid(m);
    if (std::abs(cur - prev) <= 0.1 * tol) return cur;
    prev = cur;
  }
  throw NumericalFailure("infinite_path_probability: quadrature did not converge");
}

double taylor_A(int n, int k) {
  if (n < 0) throw std::invalid_argument("taylor_A: n must be nonnegative");
  if (std::abs(k) > n) return 0.0;
  const double mag = std::exp(log_binomial(2 * n, n) + log_binomial(2 * n, n + k) - n * std::log(2.0));
  return ((n + k) % 2 == 0) ? mag : -mag;
}

namespace {

// log|B_{n,k}| contributions are summed term by term with explicit signs so
// that large binomials never overflow.
double taylor_B_scaled(int n, int k, double omega, double log_scale) {
  const int ak = std::abs(k);
  if (ak > n) return 0.0;
  const int lmax = std::min(n / 2, n - ak);
  double s = 0.0;
  for (int l = 0; l <= lmax; ++l) {
    if (n - 2 * l > 0 && omega == 0.0) continue;
    if (l > 0 && omega == 1.0) continue;
    double lg = log_binomial(n, 2 * l) + l * std::log(4.0) + log_binomial(2 * n - 2 * l, n - l) +
                log_binomial(2 * n - 2 * l, n - l + k) - n * std::log(2.0) + log_scale;
    if (n - 2 * l > 0) lg += (n - 2 * l) * std::log(omega);
    if (l > 0) lg += 2 * l * std::log(1.0 - omega);
    const double term = std::exp(lg);
    s += ((n + k + l) % 2 == 0) ? term : -term;
  }
  return s;
}

template <typename Coef>
double taylor_sum(int k, double t, Coef coef) {
  if (t < 0.0) throw std::invalid_argument("series: t must be nonnegative");
  if (t == 0.0) return k == 0 ? 1.0 : 0.0;
  const int ak = std::abs(k);
  double s = 0.0;
  for (int n = ak; n <= 2000; ++n) {
    const double term = coef(n, n * std::log(t) - std::lgamma(n + 1.0));
    s += term;
    if (n >= 2 * ak + 10 && std::abs(term) < 1e-14 * std::abs(s)) return s;
    if (n >= 2 * ak + 10 && s == 0.0 && term == 0.0) return s;
  }
  throw NumericalFailure("series: cutoff not reached");
}

}  // namespace

double taylor_B(int n, int k, double omega) {
  if (n < 0) throw std::invalid_argument("taylor_B: n must be nonnegative");
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("taylor_B: omega must lie in [0, 1]");
  return taylor_B_scaled(n, k, omega, 0.0);
}

double series_A(int k, double t) {
  return taylor_sum(k, t, [k](int n, double log_scale) {
    if (std::abs(k) > n) return 0.0;
    const double mag =
        std::exp(log_binomial(2 * n, n) + log_binomial(2 * n, n + k) - n * std::log(2.0) + log_scale);
    return ((n + k) % 2 == 0) ? mag : -mag;
  });
}

double series_B(int k, double t, double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("series_B: omega must lie in [0, 1]");
  return taylor_sum(k, t, [k, omega](int n, double log_scale) { return taylor_B_scaled(n, k, omega, log_scale); });
}

double moment_mu2(double omega, double t) { return 2.0 * omega * t + 2.0 * (1.0 - omega) * (1.0 - omega) * t * t; }

// ---------------------------------------------------------------------------
// Convergence

std::string to_string(ConvergenceClass c) {
  switch (c) {
    case ConvergenceClass::Relaxing:
      return "Relaxing";
    case ConvergenceClass::ConvergentNonRelaxing:
      return "ConvergentNonRelaxing";
    case ConvergenceClass::PossiblyPeriodic:
      return "PossiblyPeriodic";
  }
  return "unknown";
}

ConvergenceReport classify_convergence(const EvolutionGenerator& gen, double tol, long cap) {
  const long d2 = static_cast<long>(gen.dim()) * gen.dim();
  if (d2 > cap) throw DimensionError("classify_convergence: generator dimension exceeds the cap");
  ConvergenceReport rep;
  rep.tol = tol;
  rep.spectrum = eig_general(gen.dense(cap));
  std::vector<double> mags;
  mags.reserve(rep.spectrum.size());
  for (const cplx& z : rep.spectrum) {
    mags.push_back(std::abs(z));
    if (std::abs(z) < tol) {
      ++rep.zero_multiplicity;
    } else if (std::abs(z.real()) < tol && std::abs(z.imag()) > tol) {
      ++rep.imaginary_count;
    }
  }
  std::sort(mags.begin(), mags.end());
  rep.second_smallest_abs = mags.size() > 1 ? mags[1] : 0.0;
  if (rep.imaginary_count > 0) {
    rep.classification = ConvergenceClass::PossiblyPeriodic;
  } else if (rep.zero_multiplicity == 1) {
    rep.classification = ConvergenceClass::Relaxing;
  } else {
    rep.classification = ConvergenceClass::ConvergentNonRelaxing;
  }
  return rep;
}

double nearest_eigenvalue_distance(const ConvergenceReport& r, cplx target) {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& z : r.spectrum) best = std::min(best, std::abs(z - target));
  return best;
}

StructureMeasures structure_measures(const DiGraph& g, const RVector& p) {
  if (p.size() != g.n()) throw DimensionError("structure_measures: size mismatch");
  const Condensation c = condensation(g);
  const std::vector<int> dist = distances_to_sink_set(g, c);
  StructureMeasures m;
  for (int v = 0; v < g.n(); ++v) {
    const int d = dist[static_cast<size_t>(v)];
    if (d == 0) m.p_s += p(v);
    if (d > 0) m.mu_s += static_cast<double>(d) * d * p(v);
  }
  return m;
}

double convergence_profile(const std::vector<RVector>& trace, const std::vector<double>& times) {
  if (trace.size() != times.size()) throw DimensionError("convergence_profile: size mismatch");
  if (trace.size() < 3) throw std::invalid_argument("convergence_profile: at least 3 timepoints are required");
  const RVector& last = trace.back();
  std::vector<double> d(trace.size());
  for (size_t i = 0; i < trace.size(); ++i) d[i] = (trace[i] - last).norm();
  size_t start = trace.size() - 1;
  while (start > 0 && d[start - 1] >= d[start]) --start;
  return times[start];
}

}  // namespace qsw
