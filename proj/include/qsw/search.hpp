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
#include <string>
#include <vector>

#include "qsw/graphs.hpp"
#include "qsw/numkernel.hpp"

namespace qsw {

class DegenerateTop : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OracleNeverSucceeds : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief Real symmetric eigendecomposition, eigenvalues descending.
struct RealEigenSystem {
  RVector values;
  RMatrix vectors;
};

RealEigenSystem eig_symmetric(const RMatrix& h);

/// @brief Adjacency: A / lambda_1(A). Laplacian: I - L / lambda_max(L).
/// NormalizedLaplacian: I - normalized Laplacian. Top eigenvalue is 1.
RMatrix graph_hamiltonian(const Graph& g, GraphMatrixKind kind);

std::string to_string(GraphMatrixKind k);
GraphMatrixKind matrix_kind_from_string(const std::string& name);

struct ShiftRescaleResult {
  RMatrix h;
  double shift = 0.0;  // a in (h + a I) / (lambda_1 + a)
  double scale = 1.0;  // 1 / (lambda_1 + a)
  double c = 0.0;      // |lambda_2| = |lambda_n| after the transformation
};

/// @brief Affine map keeping eigenvectors, sending lambda_1 to 1 and
/// balancing |lambda_2| = |lambda_n|. The shift a = -(lambda_2 + lambda_n)/2
/// minimises max(|lambda_2|, |lambda_n|) / lambda_1 over all shifts.
ShiftRescaleResult shift_rescale(const RMatrix& h);

/// @brief (1 - lambda_2) / (1 - lambda_n).
double optimal_shift_success_bound(double lambda2, double lambdan);

struct SearchStats {
  double eps = 0.0;  // |<w|lambda_1>|^2
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double gap = 0.0;
  double c_const = 0.1;
  bool condition_holds = false;
  double predicted_t = 0.0;  // (1 / sqrt(eps)) sqrt(S2) / S1
  double gamma = 0.0;        // S1
};

SearchStats search_stats(const RealEigenSystem& es, int w, double c_const = 0.1);
SearchStats search_stats(const RMatrix& hg, int w, double c_const = 0.1);

enum class GammaRule { S1, Caption, Manual };
enum class InitialState { Principal, Uniform };

std::string to_string(GammaRule r);
GammaRule gamma_rule_from_string(const std::string& name);

/// @brief sum_{i>=2} |<w|lambda_i>|^2 / (1 - lambda_i) divided by
/// sum_{i>=2} |<w|lambda_i>|^2.
double caption_gamma(const RealEigenSystem& es, int w);

struct SearchRun {
  std::vector<double> times;
  std::vector<double> success;
  double argmax_t = 0.0;
  double p_max = 0.0;
  double gamma = 0.0;
  InitialState initial = InitialState::Principal;
};

/// @brief p(t) = |<w| exp(-it (gamma hG + |w><w|)) |init>|^2 on the grid.
/// Principal starts in the top eigenvector of hG, Uniform in |s>.
SearchRun run_search(const RMatrix& hg, int w, GammaRule rule, const std::vector<double>& times,
                     InitialState initial = InitialState::Principal, double manual_gamma = 0.0);

/// @brief Stationary-start mean first passage time (2|E| / d_w) S1 with S1
/// from I minus the normalized Laplacian.
double classical_mfpt(const Graph& g, int w);
/// @brief Monte Carlo estimate from discrete uniform walks started from the
/// stationary distribution d_v / 2|E|.
double classical_mfpt_mc(const Graph& g, int w, long walks, std::uint64_t seed);

struct ScheduleResult {
  double total_time = 0.0;
  int k_w = 0;
  std::vector<double> run_times;
};

/// @brief Runs t_k = C n^(beta0 + k beta1 / K), K = K' ln n, until the oracle
/// reports success. Throws OracleNeverSucceeds past k = K.
ScheduleResult geometric_schedule(double beta0, double beta1, double kprime, int n,
                                  const std::function<bool(double)>& oracle, double c = 1.0);

/// @brief Principal branch of Lambert W on [-1/e, inf).
double lambert_w0(double x);
/// @brief Lower branch of Lambert W on [-1/e, 0).
double lambert_wm1(double x);
/// @brief W0(x) / W-1(x) with x = (1 - p0) / (e p0), for p0 > 1.
double lambert_bound(double p0);

struct SpectralReport {
  double normalizer = 1.0;  // lambda_1(A) or lambda_max(L); 1 for the normalized Laplacian
  double lambda1 = 0.0, lambda2 = 0.0, lambdan = 0.0;
  double gap = 0.0;
  double overlap = 0.0;  // |<s|lambda_1>|
  double maxdev = 0.0;   // || |lambda_1> - |s> ||_inf with the sign fixed by <s|lambda_1> > 0
};

SpectralReport spectral_report(const Graph& g, GraphMatrixKind kind);

// ---------------------------------------------------------------------------
// Sample experiments shared by the sweep runner and the acceptance suite

/// @brief Success probabilities on the giant component of one ER(n, p0 ln n / n)
/// sample. H_G = I - L / lambda_max(L), caption gamma rule, uniform start,
/// t = pi sqrt(n_giant) / 2, `marked` distinct marked vertices drawn at random.
struct ErP0Sample {
  int n_giant = 0;
  std::vector<int> marked;
  std::vector<double> success;
  double mean = 0.0;
  double min = 0.0;
  double shift_bound = 0.0;  // (1 - c) / (1 + c) of the shift-rescaled H_G
};

ErP0Sample er_p0_sample(int n, double p0, int marked, std::uint64_t seed);

/// @brief One growing BA(m0) graph observed at the given sizes. At each size
/// the newest vertex is marked, H_G = I - normalized Laplacian, gamma = S1, the
/// walk starts in |lambda_1> and is measured at the predicted time T.
struct BaPoint {
  int n = 0;
  double t = 0.0;
  double p = 0.0;
};

std::vector<BaPoint> ba_trajectory(const std::vector<int>& sizes, int m0, std::uint64_t seed);

/// @brief Ordinary least-squares slope of y on x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qsw
