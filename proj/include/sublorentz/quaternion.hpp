#pragma once

// Geodesics of the quaternion H-type group through the origin.
// The horizontal velocity solves the linear system xddot = M xdot with
// M = S J(theta), whose spectrum is {a, -a, ia, -ia}, a = |theta|:
//   x(t) = A sinh(at) + B cosh(at) + C sin(at) + D cos(at) + E
//   z(t) = a alpha0 t + beta1 sh sn + beta2 (ch cs - 1) + beta3 sh cs + beta4 ch sn
//          + 1/2 (alpha5 sh + alpha6 ch + alpha7 sn + alpha8 cs)

#include "sublorentz/causal.hpp"
#include "sublorentz/path.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>
#include <vector>

namespace sublorentz {

template <typename Scalar>
struct QuatIVP {
  Eigen::Matrix<Scalar, 4, 1> v0 = Eigen::Matrix<Scalar, 4, 1>::Zero();
  Eigen::Matrix<Scalar, 3, 1> theta = Eigen::Matrix<Scalar, 3, 1>::Zero();
};

using QuatIVPd = QuatIVP<double>;

enum class QuatBranch { Generic, Degenerate, Straight };

inline const char* to_string(QuatBranch b) {
  switch (b) {
    case QuatBranch::Generic: return "generic";
    case QuatBranch::Degenerate: return "degenerate";
    case QuatBranch::Straight: return "straight";
  }
  return "?";
}

template <typename Scalar>
struct QuatClosedForm {
  using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

  QuatIVP<Scalar> ivp;
  QuatBranch branch = QuatBranch::Straight;
  Scalar a = 0;
  Vec4 c = Vec4::Zero();  // c1..c4
  Scalar k = 0;
  Vec4 A = Vec4::Zero(), B = Vec4::Zero(), C = Vec4::Zero(), D = Vec4::Zero(), E = Vec4::Zero();
  Eigen::Matrix<Scalar, 3, 9> alpha = Eigen::Matrix<Scalar, 3, 9>::Zero();  // column n: alpha_n over z-index
  Eigen::Matrix<Scalar, 3, 4> beta = Eigen::Matrix<Scalar, 3, 4>::Zero();   // column m-1: beta_m
  Eigen::Matrix<Scalar, 4, 4> system = Eigen::Matrix<Scalar, 4, 4>::Zero();
};

using QuatClosedFormd = QuatClosedForm<double>;

/// Matrix of the reduced system xddot = M xdot.
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> reduced_system(const Eigen::Matrix<Scalar, 3, 1>& theta) {
  return signature<Scalar, 4>().asDiagonal() * j_operator<Scalar, 4, 3>(theta);
}

/// Coefficient tables for the closed form. `eps` is the relative threshold on
/// theta1^2 + theta2^2 below which the eigenvector formulas are abandoned;
/// very slow rotation (a < min_rate) is routed the same way because the tables
/// carry 1/a^2 cancellations.
template <typename Scalar>
QuatClosedForm<Scalar> closed_form(const QuatIVP<Scalar>& ivp, Scalar eps = Scalar(1e-10),
                                   Scalar min_rate = Scalar(1e-3)) {
  QuatClosedForm<Scalar> cf;
  cf.ivp = ivp;
  const Scalar t1 = ivp.theta(0), t2 = ivp.theta(1), t3 = ivp.theta(2);
  const Scalar a = ivp.theta.norm();
  const Scalar w = t1 * t1 + t2 * t2;
  cf.a = a;
  cf.system = reduced_system<Scalar>(ivp.theta);
  if (a == Scalar(0)) {
    cf.branch = QuatBranch::Straight;
    return cf;
  }
  if (w <= eps * a * a || a < min_rate) {
    cf.branch = QuatBranch::Degenerate;
    return cf;
  }
  cf.branch = QuatBranch::Generic;

  const Scalar x1 = ivp.v0(0), x2 = ivp.v0(1), x3 = ivp.v0(2), x4 = ivp.v0(3);
  const Scalar c1 = (a * x1 - t1 * x2 + t3 * x3 + t2 * x4) / (2 * a * a);
  const Scalar c2 = (a * x1 + t1 * x2 - t3 * x3 - t2 * x4) / (2 * a * a);
  const Scalar c3 = (t1 * t3 * x2 + w * x3 - t2 * t3 * x4) / (2 * a * a * w);
  const Scalar c4 = -(t2 * x2 + t1 * x4) / (2 * a * w);
  const Scalar k = (c3 * c3 + c4 * c4) * w;
  cf.c << c1, c2, c3, c4;
  cf.k = k;

  const Scalar s = c1 + c2, d = c1 - c2;
  cf.A << s, t1 * (c2 - c1) / a, t3 * d / a, t2 * d / a;
  cf.B << d, -t1 * s / a, t3 * s / a, t2 * s / a;
  cf.C << 0, 2 * (c3 * t1 * t3 - c4 * a * t2) / a, 2 * c3 * w / a, -2 * (c4 * a * t1 + c3 * t2 * t3) / a;
  cf.D << 0, 2 * (c4 * t1 * t3 + c3 * a * t2) / a, 2 * c4 * w / a, 2 * (c3 * a * t1 - c4 * t2 * t3) / a;
  cf.E << c2 - c1, t1 * s / a - cf.D(1), -t3 * s / a - cf.D(2), -t2 * s / a - cf.D(3);

  auto& al = cf.alpha;
  const Scalar m = -c1 * c2 + k;
  al.col(0) << 2 * t1 / a * m, 2 * t2 / a * m, 2 * t3 / a * m;
  al.col(1) << 4 / a * s * (c3 * t1 * t3 - a * c4 * t2), 4 / a * s * (c3 * t2 * t3 + a * c4 * t1), -4 * c3 / a * s * w;
  al.col(2) << 4 / a * d * (c3 * t1 * t3 - a * c4 * t2), 4 / a * d * (c3 * t2 * t3 + a * c4 * t1), -4 * c3 / a * d * w;
  al.col(3) << 4 / a * s * (c4 * t1 * t3 + a * c3 * t2), 4 / a * s * (c4 * t2 * t3 - a * c3 * t1), -4 * c4 / a * s * w;
  al.col(4) << 4 / a * d * (c4 * t1 * t3 + a * c3 * t2), 4 / a * d * (c4 * t2 * t3 - a * c3 * t1), -4 * c4 / a * d * w;
  const Scalar p = c3 * s - c4 * d, q = c3 * d + c4 * s, r = c3 * s + c4 * d, u = -c3 * d + c4 * s;
  al.col(5) << -2 * t2 * p + 4 * c1 * c2 * t1 / a - 2 * t1 * t3 / a * q,
      2 * t1 * p + 4 * c1 * c2 * t2 / a - 2 * t2 * t3 / a * q,
      2 / a * w * q + 4 * c1 * c2 * t3 / a;
  al.col(6) << 2 * t2 * u - 2 * t1 * t3 / a * r,
      -2 * t1 * u - 2 * t2 * t3 / a * r,
      2 / a * w * r;
  al.col(7) << -2 * t2 * r - 2 * t1 * t3 / a * u - 4 / a * t1 * k,
      2 * t1 * r - 2 * t2 * t3 / a * u - 4 / a * t2 * k,
      2 / a * w * u - 4 / a * t3 * k;
  al.col(8) = -al.col(6);

  cf.beta.col(0) = (al.col(1) + al.col(4)) / 4;
  cf.beta.col(1) = (-al.col(1) + al.col(4)) / 4;
  cf.beta.col(2) = (-al.col(2) + al.col(3)) / 4;
  cf.beta.col(3) = (al.col(2) + al.col(3)) / 4;
  return cf;
}

namespace detail {

/// Top blocks of exp([[M, I], [0, 0]] t): (exp(Mt), int_0^t exp(Ms) ds).
template <typename Scalar>
std::pair<Eigen::Matrix<Scalar, 4, 4>, Eigen::Matrix<Scalar, 4, 4>> flow_blocks(
    const Eigen::Matrix<Scalar, 4, 4>& m, Scalar t) {
  Eigen::Matrix<Scalar, 8, 8> aug = Eigen::Matrix<Scalar, 8, 8>::Zero();
  aug.template topLeftCorner<4, 4>() = m * t;
  aug.template topRightCorner<4, 4>() = Eigen::Matrix<Scalar, 4, 4>::Identity() * t;
  const Eigen::Matrix<Scalar, 8, 8> e = aug.exp();
  return {e.template topLeftCorner<4, 4>(), e.template topRightCorner<4, 4>()};
}

}  // namespace detail

template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> shoot_x(const QuatClosedForm<Scalar>& cf, Scalar t) {
  switch (cf.branch) {
    case QuatBranch::Straight:
      return t * cf.ivp.v0;
    case QuatBranch::Degenerate:
      return detail::flow_blocks(cf.system, t).second * cf.ivp.v0;
    case QuatBranch::Generic:
      break;
  }
  const Scalar at = cf.a * t;
  return cf.A * std::sinh(at) + cf.B * std::cosh(at) + cf.C * std::sin(at) + cf.D * std::cos(at) + cf.E;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> shoot_xdot(const QuatClosedForm<Scalar>& cf, Scalar t) {
  switch (cf.branch) {
    case QuatBranch::Straight:
      return cf.ivp.v0;
    case QuatBranch::Degenerate:
      return (cf.system * t).exp() * cf.ivp.v0;
    case QuatBranch::Generic:
      break;
  }
  const Scalar at = cf.a * t;
  return cf.a * (cf.A * std::cosh(at) + cf.B * std::sinh(at) + cf.C * std::cos(at) - cf.D * std::sin(at));
}

/// z by adaptive Gauss-Kronrod quadrature of the horizontality ODE along the
/// matrix-exponential solution.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> shoot_z_quadrature(const QuatClosedForm<Scalar>& cf, Scalar t,
                                               Scalar tol = Scalar(1e-12)) {
  Eigen::Matrix<Scalar, 3, 1> z = Eigen::Matrix<Scalar, 3, 1>::Zero();
  if (t == Scalar(0)) return z;
  for (int k = 0; k < 3; ++k) {
    auto f = [&](Scalar s) {
      const auto [flow, integral] = detail::flow_blocks(cf.system, s);
      const Eigen::Matrix<Scalar, 4, 1> x = integral * cf.ivp.v0;
      const Eigen::Matrix<Scalar, 4, 1> xd = flow * cf.ivp.v0;
      return center_form<Scalar, 4, 3>(x, xd)(k);
    };
    z(k) = boost::math::quadrature::gauss_kronrod<Scalar, 31>::integrate(f, Scalar(0), t, 10, tol);
  }
  return z;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> shoot_z(const QuatClosedForm<Scalar>& cf, Scalar t) {
  switch (cf.branch) {
    case QuatBranch::Straight:
      return Eigen::Matrix<Scalar, 3, 1>::Zero();
    case QuatBranch::Degenerate:
      return shoot_z_quadrature(cf, t);
    case QuatBranch::Generic:
      break;
  }
  const Scalar at = cf.a * t;
  const Scalar sh = std::sinh(at), ch = std::cosh(at), sn = std::sin(at), cs = std::cos(at);
  const auto& al = cf.alpha;
  const auto& be = cf.beta;
  return al.col(0) * at + be.col(0) * (sh * sn) + be.col(1) * (ch * cs - 1) + be.col(2) * (sh * cs) +
         be.col(3) * (ch * sn) +
         Scalar(0.5) * (al.col(5) * sh + al.col(6) * ch + al.col(7) * sn + al.col(8) * cs);
}

template <typename Scalar>
QuatPoint<Scalar> shoot(const QuatClosedForm<Scalar>& cf, Scalar t) {
  return {shoot_x(cf, t), shoot_z(cf, t)};
}

/// Closed-form path on [0, t1] with exact velocities. The Hamiltonian is
/// constant on the flow, so every sample carries 1/2 Q(v0, v0).
template <typename Scalar>
GeodesicPath<Scalar, 4, 3> sample_path(const QuatClosedForm<Scalar>& cf, Scalar t1, int samples) {
  if (samples < 2) throw std::invalid_argument("sample_path: need at least two samples");
  GeodesicPath<Scalar, 4, 3> path;
  path.samples.resize(samples);
  const Scalar h = Scalar(0.5) * q_form(cf.ivp.v0, cf.ivp.v0);
  for (int i = 0; i < samples; ++i) {
    auto& s = path.samples[i];
    s.t = t1 * Scalar(i) / Scalar(samples - 1);
    s.point = shoot(cf, s.t);
    s.velocity = shoot_xdot(cf, s.t);
    s.hamiltonian = h;
    s.theta = cf.ivp.theta;
  }
  finalize_path(path);
  return path;
}

struct IdentityReport {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double residual = 0;  // |lhs - rhs|
  double scale = 0;     // largest term entering the identity
  bool asserted = true;
  std::vector<double> v0;
  std::vector<double> theta;
  double t = 0;

  double relative() const { return residual == 0 ? 0 : residual / std::max(scale, 1e-300); }
};

/// -x1^2 + x2^2 + x3^2 + x4^2 against -16 c1 c2 sinh^2(at/2) + 16 k sin^2(at/2).
IdentityReport norm_identity_x(const QuatClosedFormd& cf, double t);

/// |z|^2 against the candidate closed expression
///   4 (at(-c1c2+k) + 2c1c2 sinh(at) - 2k sin(at))^2
///   - 4k (c1^2 e^{at} + c2^2 e^{-at}) (4 sin sinh + 5 cos - 5 cosh)
///   + 8 c1c2k (5 sin sinh + 4 cos - 4 cosh).
/// Reported only; see norm_identity_z_gram for the form that holds.
IdentityReport norm_identity_z(const QuatClosedFormd& cf, double t);

/// |z|^2 against the expression obtained from the Gram matrix of the z
/// coefficients:
///   4 (T(k - c1c2) + c1c2 sinh T - k sin T)^2
///   - 8k (c1^2 e^T + c2^2 e^{-T} - 2 c1c2) (sinh T sin T + cos T - cosh T),  T = at.
IdentityReport norm_identity_z_gram(const QuatClosedFormd& cf, double t);

/// Every scalar relation among the coefficient tables.
std::vector<IdentityReport> coefficient_identities(const QuatIVPd& ivp);

}  // namespace sublorentz
