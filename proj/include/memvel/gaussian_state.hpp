// Copyright 2026 The memvel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

namespace memvel {

/// n-mode bosonic Gaussian state in the unit-vacuum convention
/// X = a + a^dag, P = (a - a^dag)/i, so the vacuum covariance is the identity
/// and a coherent amplitude alpha has mean (2 Re alpha, 2 Im alpha).
/// Quadratures are ordered (X_1, P_1, X_2, P_2, ...).
class GaussianState {
 public:
  static GaussianState vacuum(int n_modes);

  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int n_modes() const { return static_cast<int>(mean_.size() / 2); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  /// Total mean photon number sum(mean^2)/4 + (tr cov - 2n)/4.
  double mean_photon_number() const;

  /// Smallest eigenvalue of cov + i Omega; >= 0 for a physical state.
  double uncertainty_margin() const;
  bool is_physical(double tol = 1e-9) const { return uncertainty_margin() >= -tol; }

  /// Applies the real linear map S: mean -> S mean, cov -> S cov S^T,
  /// then adds `noise` to cov.
  GaussianState transformed(const Eigen::MatrixXd& s, const Eigen::MatrixXd& noise) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Coherent displacement of one mode by amplitude alpha = (re, im).
GaussianState displace(GaussianState state, int mode, double alpha_re, double alpha_im);

/// Squeezes the P quadrature of `mode` by e^{-2r}, then rotates the ellipse by theta.
GaussianState squeeze(const GaussianState& state, int mode, double r, double theta = 0.0);

/// Phase shift a -> e^{i phi} a.
GaussianState apply_phase(const GaussianState& state, int mode, double phi);

/// 50:50 mixing (i, j) -> ((i + j)/sqrt2, (i - j)/sqrt2).
GaussianState apply_beamsplitter(const GaussianState& state, int mode_i, int mode_j);

/// Pure-loss channel of transmission eta; couples in vacuum.
GaussianState apply_loss(const GaussianState& state, int mode, double eta);

/// Phase-insensitive number-diagonal noise of mean occupancy p_n: adds 2 p_n
/// to both quadrature variances of `mode`.
GaussianState apply_added_noise(const GaussianState& state, int mode, double p_n);

}  // namespace memvel
