#pragma once

// Hamiltonian of the horizontal wave operator -X_1^2 + X_2^2 + ... in terms of
// the frame momenta p = xi + 1/2 J(theta) x:
//   H = 1/2 p^T S p,  S = diag(-1, 1, ...)
// whose flow is
//   x' = S p,   z'_k = 1/2 <I_k x, x'>,   xi' = 1/2 J(theta) x',   theta' = 0.

#include "sublorentz/causal.hpp"

namespace sublorentz {

template <typename Scalar, int H, int C>
struct CovectorState {
  Point<Scalar, H, C> position;
  Eigen::Matrix<Scalar, H, 1> xi = Eigen::Matrix<Scalar, H, 1>::Zero();
  Eigen::Matrix<Scalar, C, 1> theta = Eigen::Matrix<Scalar, C, 1>::Zero();
};

using HeisCovector = CovectorState<double, 2, 1>;
using QuatCovector = CovectorState<double, 4, 3>;

template <typename Scalar, int H, int C>
Eigen::Matrix<Scalar, H, 1> frame_momenta(const CovectorState<Scalar, H, C>& s) {
  return s.xi + Scalar(0.5) * j_operator<Scalar, H, C>(s.theta) * s.position.x;
}

template <typename Scalar, int H, int C>
Scalar hamiltonian(const CovectorState<Scalar, H, C>& s) {
  const auto p = frame_momenta(s);
  return Scalar(0.5) * q_form(p, p);
}

/// Fully expanded quaternion Hamiltonian; must agree with hamiltonian().
template <typename Scalar>
Scalar hamiltonian_expanded(const CovectorState<Scalar, 4, 3>& s) {
  const auto& x = s.position.x;
  const auto& xi = s.xi;
  const Scalar t1 = s.theta(0), t2 = s.theta(1), t3 = s.theta(2);
  const Scalar x1 = x(0), x2 = x(1), x3 = x(2), x4 = x(3);
  const Scalar e1 = xi(0), e2 = xi(1), e3 = xi(2), e4 = xi(3);
  return Scalar(0.5) * (-e1 * e1 + e2 * e2 + e3 * e3 + e4 * e4) +
         Scalar(0.5) * (x2 * x4 * t1 * t2 + x2 * x3 * t1 * t3 - x3 * x4 * t2 * t3) +
         t1 * t1 * (x1 * x1 - x2 * x2 + x3 * x3 + x4 * x4) / 8 +
         t2 * t2 * (x1 * x1 + x2 * x2 + x3 * x3 - x4 * x4) / 8 +
         t3 * t3 * (x1 * x1 + x2 * x2 - x3 * x3 + x4 * x4) / 8 +
         Scalar(0.5) * t1 * (-x2 * e1 - x1 * e2 + x4 * e3 - x3 * e4) +
         Scalar(0.5) * t2 * (x4 * e1 - x3 * e2 + x2 * e3 + x1 * e4) +
         Scalar(0.5) * t3 * (x3 * e1 + x4 * e2 + x1 * e3 - x2 * e4);
}

/// Expanded Lorentzian Heisenberg Hamiltonian
/// 1/2 (-xi^2 + eta^2) - 1/8 (-x^2 + y^2) theta^2 + 1/2 (-y xi - x eta) theta.
template <typename Scalar>
Scalar hamiltonian_expanded(const CovectorState<Scalar, 2, 1>& s) {
  const Scalar x = s.position.x(0), y = s.position.x(1);
  const Scalar xi = s.xi(0), eta = s.xi(1), th = s.theta(0);
  return Scalar(0.5) * (-xi * xi + eta * eta) - (-x * x + y * y) * th * th / 8 +
         Scalar(0.5) * (-y * xi - x * eta) * th;
}

template <typename Scalar, int H, int C>
struct HamiltonianRate {
  Eigen::Matrix<Scalar, H, 1> xdot;
  Eigen::Matrix<Scalar, C, 1> zdot;
  Eigen::Matrix<Scalar, H, 1> xidot;
};

template <typename Scalar, int H, int C>
HamiltonianRate<Scalar, H, C> hamiltonian_rate(const CovectorState<Scalar, H, C>& s) {
  HamiltonianRate<Scalar, H, C> r;
  const auto j = j_operator<Scalar, H, C>(s.theta);
  r.xdot = signature<Scalar, H>().cwiseProduct(s.xi + Scalar(0.5) * j * s.position.x);
  r.zdot = center_form<Scalar, H, C>(s.position.x, r.xdot);
  r.xidot = Scalar(0.5) * j * r.xdot;
  return r;
}

/// Covector at the origin whose geodesic leaves with horizontal velocity v0.
template <typename Scalar, int H, int C>
CovectorState<Scalar, H, C> initial_covector(const Eigen::Matrix<Scalar, H, 1>& v0,
                                             const Eigen::Matrix<Scalar, C, 1>& theta) {
  CovectorState<Scalar, H, C> s;
  s.xi = signature<Scalar, H>().cwiseProduct(v0);
  s.theta = theta;
  return s;
}

}  // namespace sublorentz
