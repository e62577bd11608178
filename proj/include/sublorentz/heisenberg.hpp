#pragma once

// Geodesics of the Lorentzian Heisenberg group through the origin.
//
// With signed momentum theta and u = theta t the Hamiltonian flow projects to
//   x'(t) =  x0' cosh u - y0' sinh u,      y'(t) = -x0' sinh u + y0' cosh u,
//   z(t)  = |v0|^2 (theta t - sinh theta t) / (2 theta^2),  |v0|^2 = -x0'^2 + y0'^2.
// For theta > 0 these coincide with the |theta| forms usually written down;
// keeping the sign makes negative theta (z of the opposite sign) exact too.

#include "sublorentz/path.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace sublorentz {

class NoSolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotConnectable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// mu(tau) = tau / sinh^2(tau) - coth(tau), extended by mu(0) = 0. Odd and
/// strictly decreasing from 1 to -1.
template <typename Scalar>
Scalar mu(Scalar tau) {
  using std::abs;
  using std::exp;
  using std::expm1;
  const Scalar a = abs(tau);
  if (a < Scalar(0.1)) {
    const Scalar t2 = tau * tau;
    return tau * (Scalar(-2) / 3 +
                  t2 * (Scalar(4) / 45 +
                        t2 * (Scalar(-4) / 315 +
                              t2 * (Scalar(8) / 4725 +
                                    t2 * (Scalar(-4) / 18711 + t2 * (Scalar(5528) / 212837625))))));
  }
  // exp(-2|tau|) form: no overflow for large |tau|
  const Scalar q = exp(Scalar(-2) * a);
  const Scalar om = -expm1(Scalar(-2) * a);
  const Scalar sgn = tau < 0 ? Scalar(-1) : Scalar(1);
  return Scalar(4) * tau * q / (om * om) - sgn * (Scalar(1) + q) / om;
}

/// 1 - |mu(tau)| without cancellation, resolving mu where it sits within
/// an ulp of +-1.
template <typename Scalar>
Scalar mu_tail(Scalar tau) {
  using std::abs;
  using std::exp;
  using std::expm1;
  const Scalar a = abs(tau);
  if (a < Scalar(1)) return Scalar(1) - abs(mu(tau));
  const Scalar q = exp(Scalar(-2) * a);
  const Scalar om = -expm1(Scalar(-2) * a);
  return Scalar(2) * q * (Scalar(2) * a - Scalar(1) + q) / (om * om);
}

/// d mu / d tau = 2 (1 - tau coth tau) / sinh^2 tau.
template <typename Scalar>
Scalar mu_derivative(Scalar tau) {
  using std::abs;
  using std::exp;
  using std::expm1;
  const Scalar a = abs(tau);
  if (a < Scalar(0.1)) {
    const Scalar t2 = tau * tau;
    return Scalar(-2) / 3 +
           t2 * (Scalar(12) / 45 +
                 t2 * (Scalar(-20) / 315 +
                       t2 * (Scalar(56) / 4725 + t2 * (Scalar(-36) / 18711 + t2 * (Scalar(60808) / 212837625)))));
  }
  const Scalar q = exp(Scalar(-2) * a);
  const Scalar om = -expm1(Scalar(-2) * a);
  const Scalar inv_sinh2 = Scalar(4) * q / (om * om);
  return Scalar(2) * inv_sinh2 * (Scalar(1) - a * (Scalar(1) + q) / om);
}

/// Unique tau with mu(tau) = r, for |r| < 1. Bracketing bisection followed by
/// a Newton polish kept inside the bracket.
template <typename Scalar>
Scalar solve_mu(Scalar r) {
  using std::abs;
  if (!(abs(r) < Scalar(1))) throw NoSolution("solve_mu: |r| must be < 1");
  if (r == Scalar(0)) return Scalar(0);
  // mu is decreasing, so r < 0 needs tau > 0
  Scalar lo = 0, hi = 0;
  Scalar far = r < 0 ? Scalar(1) : Scalar(-1);
  while ((r < 0 && mu(far) > r) || (r > 0 && mu(far) < r)) {
    far *= 2;
    if (abs(far) > Scalar(1e4)) throw NoSolution("solve_mu: r too close to +-1 to resolve");
  }
  lo = std::min(Scalar(0), far);
  hi = std::max(Scalar(0), far);
  // invariant: mu(lo) >= r >= mu(hi)
  while (hi - lo > Scalar(1e-13) * std::max(Scalar(1), abs(lo + hi))) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    if (mu(mid) > r)
      lo = mid;
    else
      hi = mid;
  }
  Scalar tau = Scalar(0.5) * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const Scalar d = mu_derivative(tau);
    if (d == Scalar(0)) break;
    const Scalar next = tau - (mu(tau) - r) / d;
    if (!(next >= lo && next <= hi)) break;
    tau = next;
  }
  return tau;
}

namespace detail {

/// sinh(u) / u
template <typename Scalar>
Scalar sinhc(Scalar u) {
  return u == Scalar(0) ? Scalar(1) : std::sinh(u) / u;
}

/// (cosh(u) - 1) / u
template <typename Scalar>
Scalar coshm1c(Scalar u) {
  if (u == Scalar(0)) return Scalar(0);
  const Scalar s = std::sinh(Scalar(0.5) * u);
  return Scalar(2) * s * s / u;
}

/// (u - sinh u) / u^2, series below |u| = 1 to avoid cancellation.
template <typename Scalar>
Scalar sinh_defect(Scalar u) {
  using std::abs;
  if (abs(u) < Scalar(1)) {
    const Scalar u2 = u * u;
    Scalar term = u / Scalar(6);  // u^(2n-1) / (2n+1)!
    Scalar sum = term;
    for (int n = 2; n <= 10; ++n) {
      term *= u2 / Scalar((2 * n) * (2 * n + 1));
      sum += term;
    }
    return -sum;
  }
  return (u - std::sinh(u)) / (u * u);
}

/// (theta/2) coth(theta/2), equal to 1 at theta = 0.
template <typename Scalar>
Scalar half_coth(Scalar theta) {
  if (theta == Scalar(0)) return Scalar(1);
  const Scalar h = Scalar(0.5) * theta;
  return h / std::tanh(h);
}

}  // namespace detail

template <typename Scalar>
struct HeisIVP {
  Eigen::Matrix<Scalar, 2, 1> v0 = Eigen::Matrix<Scalar, 2, 1>::Zero();  // (x0', y0')
  Scalar theta = 0;
};

template <typename Scalar>
struct HeisState {
  HeisPoint<Scalar> point;
  Eigen::Matrix<Scalar, 2, 1> velocity = Eigen::Matrix<Scalar, 2, 1>::Zero();
};

template <typename Scalar>
Scalar causal_speed(const HeisIVP<Scalar>& ivp) {
  return q_form(ivp.v0, ivp.v0);
}

/// Closed-form geodesic from the origin at time t. theta = 0 gives the
/// straight line t v0.
template <typename Scalar>
HeisState<Scalar> shoot(const HeisIVP<Scalar>& ivp, Scalar t) {
  const Scalar u = ivp.theta * t;
  const Scalar xd = ivp.v0(0), yd = ivp.v0(1);
  const Scalar s1 = t * detail::sinhc(u);
  const Scalar c1 = t * detail::coshm1c(u);
  HeisState<Scalar> out;
  out.point.x << xd * s1 - yd * c1, -xd * c1 + yd * s1;
  out.point.z(0) = Scalar(0.5) * causal_speed(ivp) * t * t * detail::sinh_defect(u);
  const Scalar ch = std::cosh(u), sh = std::sinh(u);
  out.velocity << xd * ch - yd * sh, -xd * sh + yd * ch;
  return out;
}

/// -x^2 + y^2 along the geodesic, from the closed identity
/// 4 |v0|^2 sinh^2(theta t / 2) / theta^2.
template <typename Scalar>
Scalar horizontal_norm_identity(const HeisIVP<Scalar>& ivp, Scalar t) {
  const Scalar sh = t * detail::sinhc(Scalar(0.5) * ivp.theta * t);  // sinh(theta t/2) / (theta/2)
  return causal_speed(ivp) * sh * sh;
}

enum class TargetKind { TimelikeConnectable, SpacelikeConnectable, LightlikeRay, Unreachable };

inline const char* to_string(TargetKind k) {
  switch (k) {
    case TargetKind::TimelikeConnectable: return "TimelikeConnectable";
    case TargetKind::SpacelikeConnectable: return "SpacelikeConnectable";
    case TargetKind::LightlikeRay: return "LightlikeRay";
    case TargetKind::Unreachable: return "Unreachable";
  }
  return "?";
}

struct TargetClass {
  TargetKind kind = TargetKind::Unreachable;
  Orientation orientation = Orientation::Unoriented;  // set for timelike targets

  friend bool operator==(const TargetClass&, const TargetClass&) = default;
};

/// Which geodesic (if any) joins the origin to A = (x, y, z).
template <typename Scalar>
TargetClass classify_target(const HeisPoint<Scalar>& a) {
  using std::abs;
  const Scalar x = a.x(0), y = a.x(1), z = a.z(0);
  const Scalar h = -x * x + y * y;
  TargetClass out;
  if (h < 0 && Scalar(4) * abs(z) < -h) {
    out.kind = TargetKind::TimelikeConnectable;
    out.orientation = x > 0 ? Orientation::FutureDirected : Orientation::PastDirected;
  } else if (h > 0 && Scalar(4) * abs(z) < h) {
    out.kind = TargetKind::SpacelikeConnectable;
  } else if ((x == y || x == -y) && z == Scalar(0)) {
    out.kind = TargetKind::LightlikeRay;
  }
  return out;
}

/// Constants of a connecting geodesic parametrised on [0, 1].
template <typename Scalar>
struct HeisClosedForm {
  HeisPoint<Scalar> target;
  TargetClass target_class;
  Scalar theta = 0;
  HeisIVP<Scalar> ivp;
  Scalar endpoint_error = 0;
};

template <typename Scalar>
struct HeisConnection {
  HeisClosedForm<Scalar> params;
  GeodesicPath<Scalar, 2, 1> path;
};

/// Initial velocity of the geodesic with momentum theta reaching (x, y) at t = 1.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> connecting_velocity(const HeisPoint<Scalar>& a, Scalar theta) {
  const Scalar hc = detail::half_coth(theta);
  const Scalar h = Scalar(0.5) * theta;
  return {a.x(0) * hc + h * a.x(1), a.x(1) * hc + h * a.x(0)};
}

template <typename Scalar>
struct ConnectionCandidate {
  Scalar theta = 0;
  Eigen::Matrix<Scalar, 2, 1> v0;
  Scalar endpoint_error = 0;
};

/// Both sign branches theta = +-2 tau, tau = solve_mu(4z / (-x^2 + y^2)),
/// with the endpoint error each one produces.
template <typename Scalar>
std::pair<ConnectionCandidate<Scalar>, ConnectionCandidate<Scalar>> connection_candidates(
    const HeisPoint<Scalar>& a) {
  const Scalar h = -a.x(0) * a.x(0) + a.x(1) * a.x(1);
  if (h == Scalar(0)) throw NotConnectable("connect: target on the light cone");
  const Scalar tau = solve_mu(Scalar(4) * a.z(0) / h);
  auto make = [&](Scalar theta) {
    ConnectionCandidate<Scalar> c;
    c.theta = theta;
    c.v0 = connecting_velocity(a, theta);
    const auto end = shoot(HeisIVP<Scalar>{c.v0, theta}, Scalar(1));
    c.endpoint_error = (end.point.coords() - a.coords()).cwiseAbs().maxCoeff();
    return c;
  };
  return {make(Scalar(2) * tau), make(Scalar(-2) * tau)};
}

/// The unique timelike or spacelike geodesic on [0, 1] from the origin to A.
template <typename Scalar>
HeisClosedForm<Scalar> connect_params(const HeisPoint<Scalar>& a) {
  HeisClosedForm<Scalar> p;
  p.target = a;
  p.target_class = classify_target(a);
  if (p.target_class.kind != TargetKind::TimelikeConnectable &&
      p.target_class.kind != TargetKind::SpacelikeConnectable)
    throw NotConnectable(std::string("connect: target is ") + to_string(p.target_class.kind));
  const auto [c1, c2] = connection_candidates(a);
  const auto& best = c2.endpoint_error < c1.endpoint_error ? c2 : c1;
  p.theta = best.theta;
  p.ivp = HeisIVP<Scalar>{best.v0, best.theta};
  p.endpoint_error = best.endpoint_error;
  return p;
}

template <typename Scalar>
GeodesicPath<Scalar, 2, 1> sample_path(const HeisIVP<Scalar>& ivp, Scalar t1, int samples) {
  if (samples < 2) throw std::invalid_argument("sample_path: need at least two samples");
  GeodesicPath<Scalar, 2, 1> path;
  path.samples.resize(samples);
  for (int i = 0; i < samples; ++i) {
    auto& s = path.samples[i];
    s.t = t1 * Scalar(i) / Scalar(samples - 1);
    const auto st = shoot(ivp, s.t);
    s.point = st.point;
    s.velocity = st.velocity;
    s.hamiltonian = Scalar(0.5) * causal_speed(ivp);
    s.theta(0) = ivp.theta;
  }
  finalize_path(path);
  return path;
}

template <typename Scalar>
HeisConnection<Scalar> connect(const HeisPoint<Scalar>& a, int samples = 101) {
  HeisConnection<Scalar> c;
  c.params = connect_params(a);
  c.path = sample_path(c.params.ivp, Scalar(1), samples);
  return c;
}

/// The connecting curve written directly in terms of the target:
///   x(t) = sinh^2(theta t/2) (x (coth(theta t/2) coth(theta/2) - 1) + y (coth(theta t/2) - coth(theta/2)))
///   z(t) = z (theta t - sinh theta t) / (theta - sinh theta)
/// expanded so that it stays finite at t = 0 and theta = 0.
template <typename Scalar>
HeisPoint<Scalar> connect_point(const HeisClosedForm<Scalar>& p, Scalar t) {
  const Scalar th = p.theta;
  const Scalar x = p.target.x(0), y = p.target.x(1), z = p.target.z(0);
  const Scalar hc = detail::half_coth(th);  // (theta/2) coth(theta/2)
  // sinh(theta t) coth(theta/2) / 2 = t sinhc(theta t) hc ; sinh(theta t)/2 = t sinhc(theta t) theta/2
  const Scalar a = t * detail::sinhc(th * t);
  const Scalar half = Scalar(0.5) * th * t;
  const Scalar s2 = std::sinh(half) * std::sinh(half);
  // sinh^2(theta t/2) coth(theta/2) = s2 * hc / (theta/2); use t^2 form when theta = 0
  const Scalar s2coth = th == Scalar(0) ? Scalar(0) : s2 * hc / (Scalar(0.5) * th);
  HeisPoint<Scalar> out;
  out.x(0) = a * hc * x - s2 * x + a * Scalar(0.5) * th * y - s2coth * y;
  out.x(1) = a * hc * y - s2 * y + a * Scalar(0.5) * th * x - s2coth * x;
  if (th == Scalar(0))
    out.z(0) = z * t * t * t;
  else
    out.z(0) = z * t * t * detail::sinh_defect(th * t) / detail::sinh_defect(th);
  return out;
}

/// Length of the connecting geodesic: sqrt|h| |theta| / (2 |sinh(theta/2)|),
/// h = -x^2 + y^2 at the target. Equals sqrt|Q(v0, v0)| since the speed is
/// constant on [0, 1].
template <typename Scalar>
Scalar length(const HeisClosedForm<Scalar>& p) {
  const Scalar h = -p.target.x(0) * p.target.x(0) + p.target.x(1) * p.target.x(1);
  return std::sqrt(std::abs(h)) / detail::sinhc(Scalar(0.5) * p.theta);
}

/// l^2 = theta^2 (|h| + 4|z|) / (2 (||theta| - sinh|theta|| + 2 sinh^2(|theta|/2))).
template <typename Scalar>
Scalar length_squared_from_target(const HeisClosedForm<Scalar>& p) {
  using std::abs;
  const Scalar h = -p.target.x(0) * p.target.x(0) + p.target.x(1) * p.target.x(1);
  const Scalar a = abs(p.theta);
  if (a == Scalar(0)) return abs(h);
  const Scalar sh = std::sinh(Scalar(0.5) * a);
  return p.theta * p.theta * (abs(h) + Scalar(4) * abs(p.target.z(0))) /
         (Scalar(2) * (abs(a - std::sinh(a)) + Scalar(2) * sh * sh));
}

/// Left translation of a path by `base`. Frame velocities are unchanged.
template <typename Scalar>
GeodesicPath<Scalar, 2, 1> translate(const HeisPoint<Scalar>& base, GeodesicPath<Scalar, 2, 1> path) {
  for (auto& s : path.samples) s.point = multiply(base, s.point);
  return path;
}

}  // namespace sublorentz
