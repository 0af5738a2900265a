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

#include "memvel/gaussian_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace memvel {

namespace {

void check_mode(const GaussianState& s, int mode) {
  if (mode < 0 || mode >= s.n_modes()) throw std::out_of_range("mode index out of range");
}

Eigen::MatrixXd single_mode_map(int n, int mode, const Eigen::Matrix2d& block) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  s.block<2, 2>(2 * mode, 2 * mode) = block;
  return s;
}

Eigen::Matrix2d rotation(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

}  // namespace

GaussianState GaussianState::vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("need at least one mode");
  return {Eigen::VectorXd::Zero(2 * n_modes), Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes)};
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0)
    throw std::invalid_argument("mean vector must have even, nonzero length");
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size())
    throw std::invalid_argument("covariance shape does not match mean");
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, cov_.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("covariance must be symmetric");
}

double GaussianState::mean_photon_number() const {
  return mean_.squaredNorm() / 4.0 + (cov_.trace() - 2.0 * n_modes()) / 4.0;
}

double GaussianState::uncertainty_margin() const {
  const int d = static_cast<int>(mean_.size());
  Eigen::MatrixXcd h = cov_.cast<std::complex<double>>();
  for (int k = 0; k < d; k += 2) {
    h(k, k + 1) += std::complex<double>(0.0, 1.0);
    h(k + 1, k) -= std::complex<double>(0.0, 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

GaussianState GaussianState::transformed(const Eigen::MatrixXd& s, const Eigen::MatrixXd& noise) const {
  Eigen::MatrixXd c = s * cov_ * s.transpose() + noise;
  c = 0.5 * (c + c.transpose()).eval();
  return {s * mean_, std::move(c)};
}

GaussianState displace(GaussianState state, int mode, double alpha_re, double alpha_im) {
  check_mode(state, mode);
  Eigen::VectorXd m = state.mean();
  m(2 * mode) += 2.0 * alpha_re;
  m(2 * mode + 1) += 2.0 * alpha_im;
  return {std::move(m), state.cov()};
}

GaussianState squeeze(const GaussianState& state, int mode, double r, double theta) {
  check_mode(state, mode);
  Eigen::Matrix2d sq = Eigen::Vector2d(std::exp(r), std::exp(-r)).asDiagonal();
  const int d = 2 * state.n_modes();
  return state.transformed(single_mode_map(state.n_modes(), mode, rotation(theta) * sq),
                           Eigen::MatrixXd::Zero(d, d));
}

GaussianState apply_phase(const GaussianState& state, int mode, double phi) {
  check_mode(state, mode);
  const int d = 2 * state.n_modes();
  return state.transformed(single_mode_map(state.n_modes(), mode, rotation(phi)),
                           Eigen::MatrixXd::Zero(d, d));
}

GaussianState apply_beamsplitter(const GaussianState& state, int mode_i, int mode_j) {
  check_mode(state, mode_i);
  check_mode(state, mode_j);
  if (mode_i == mode_j) throw std::invalid_argument("beam splitter needs two distinct modes");
  const int d = 2 * state.n_modes();
  const double h = std::numbers::sqrt2 / 2.0;
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(d, d);
  for (int q = 0; q < 2; ++q) {
    const int i = 2 * mode_i + q, j = 2 * mode_j + q;
    s(i, i) = h;
    s(i, j) = h;
    s(j, i) = h;
    s(j, j) = -h;
  }
  return state.transformed(s, Eigen::MatrixXd::Zero(d, d));
}

GaussianState apply_loss(const GaussianState& state, int mode, double eta) {
  check_mode(state, mode);
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("loss transmission must lie in [0,1]");
  const int d = 2 * state.n_modes();
  const double t = std::sqrt(eta);
  Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(d, d);
  noise(2 * mode, 2 * mode) = 1.0 - eta;
  noise(2 * mode + 1, 2 * mode + 1) = 1.0 - eta;
  return state.transformed(single_mode_map(state.n_modes(), mode, t * Eigen::Matrix2d::Identity()),
                           noise);
}

GaussianState apply_added_noise(const GaussianState& state, int mode, double p_n) {
  check_mode(state, mode);
  if (!(p_n >= 0.0)) throw std::domain_error("added noise must be >= 0");
  Eigen::MatrixXd c = state.cov();
  c(2 * mode, 2 * mode) += 2.0 * p_n;
  c(2 * mode + 1, 2 * mode + 1) += 2.0 * p_n;
  return {state.mean(), std::move(c)};
}

}  // namespace memvel
