#pragma once

// Lorentzian metric on the horizontal bundle. In the orthonormal frame
// X_1..X_H the metric is Q = diag(-1, 1, ..., 1); X_1 fixes the time
// orientation.

#include "sublorentz/group.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace sublorentz {

/// Horizontal vector: coefficients in the frame {X_a} at a base point.
template <typename Scalar, int H, int C>
struct HorizontalVector {
  Eigen::Matrix<Scalar, H, 1> coeffs = Eigen::Matrix<Scalar, H, 1>::Zero();
  Point<Scalar, H, C> base;
};

template <typename Scalar, int H, int C>
HorizontalVector<Scalar, H, C> frame_vector(int a, const Point<Scalar, H, C>& base = {}) {
  HorizontalVector<Scalar, H, C> v;
  v.coeffs(a - 1) = Scalar(1);
  v.base = base;
  return v;
}

template <typename Scalar, int H>
Eigen::Matrix<Scalar, H, 1> signature() {
  Eigen::Matrix<Scalar, H, 1> s = Eigen::Matrix<Scalar, H, 1>::Ones();
  s(0) = Scalar(-1);
  return s;
}

template <typename Scalar, int H>
Eigen::Matrix<Scalar, H, H> metric_q() {
  return signature<Scalar, H>().asDiagonal();
}

/// Q on bare frame coefficients.
template <typename Derived1, typename Derived2>
typename Derived1::Scalar q_form(const Eigen::MatrixBase<Derived1>& u, const Eigen::MatrixBase<Derived2>& v) {
  return -u(0) * v(0) + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

template <typename Scalar, int H, int C>
Scalar q_inner(const HorizontalVector<Scalar, H, C>& u, const HorizontalVector<Scalar, H, C>& v) {
  if (u.base.coords() != v.base.coords())
    throw std::invalid_argument("q_inner: vectors live at different base points");
  return q_form(u.coeffs, v.coeffs);
}

enum class CausalKind { Timelike, Spacelike, Null, ZeroVector };
enum class Orientation { FutureDirected, PastDirected, Unoriented };

struct CausalClass {
  CausalKind kind = CausalKind::ZeroVector;
  Orientation orientation = Orientation::Unoriented;

  friend bool operator==(const CausalClass&, const CausalClass&) = default;
};

inline const char* to_string(CausalKind k) {
  switch (k) {
    case CausalKind::Timelike: return "Timelike";
    case CausalKind::Spacelike: return "Spacelike";
    case CausalKind::Null: return "Null";
    case CausalKind::ZeroVector: return "ZeroVector";
  }
  return "?";
}

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::FutureDirected: return "FutureDirected";
    case Orientation::PastDirected: return "PastDirected";
    case Orientation::Unoriented: return "Unoriented";
  }
  return "?";
}

/// Causal character of frame coefficients. `null_tol` is relative to the
/// Euclidean size of v; with the default 0 only exact cancellation is null.
template <typename Derived>
CausalClass classify_coeffs(const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar null_tol = 0) {
  using Scalar = typename Derived::Scalar;
  CausalClass out;
  const Scalar n2 = v.squaredNorm();
  if (n2 == Scalar(0)) return out;
  const Scalar q = q_form(v, v);
  if (std::abs(q) <= null_tol * n2)
    out.kind = CausalKind::Null;
  else
    out.kind = q < 0 ? CausalKind::Timelike : CausalKind::Spacelike;
  if (out.kind != CausalKind::Spacelike) {
    // Q(v, X_1) = -v_1
    const Scalar qt = -v(0);
    out.orientation = qt < 0 ? Orientation::FutureDirected
                      : qt > 0 ? Orientation::PastDirected
                               : Orientation::Unoriented;
  }
  return out;
}

template <typename Scalar, int H, int C>
CausalClass classify(const HorizontalVector<Scalar, H, C>& v, Scalar null_tol = 0) {
  return classify_coeffs(v.coeffs, null_tol);
}

/// Co-metric g_x: the symmetric map T* -> T_h with Q(Y, g xi) = xi(Y).
/// Equals F S F^T for the frame matrix F.
template <typename Scalar, int H, int C>
Eigen::Matrix<Scalar, H + C, H + C> co_metric(const Point<Scalar, H, C>& p) {
  const auto f = horizontal_frame(p);
  return f * signature<Scalar, H>().asDiagonal() * f.transpose();
}

/// eta_alpha = -x_1^2 + x_2^2 + x_3^2 + x_4^2 + alpha (|z_1| + |z_2| + |z_3|).
template <typename Scalar>
Scalar eta(Scalar alpha, const QuatPoint<Scalar>& p) {
  return q_form(p.x, p.x) + alpha * p.z.cwiseAbs().sum();
}

/// Horizontal gradient of eta_alpha. On the open orthant z > 0 this is
///   [2x1 - a/2 (x2 - x3 - x4)] X1 + [2x2 + a/2 (-x1 - x3 + x4)] X2
/// + [2x3 + a/2 (x1 + x2 + x4)] X3 + [2x4 + a/2 (x1 - x2 - x3)] X4;
/// other orthants carry sign(z_k) on the k-th center contribution
/// (sign(0) taken as +1).
template <typename Scalar>
HorizontalVector<Scalar, 4, 3> horizontal_gradient_eta(Scalar alpha, const QuatPoint<Scalar>& p) {
  const auto& I = structure_matrices<Scalar, 4, 3>();
  const Eigen::Matrix<Scalar, 4, 1> s = signature<Scalar, 4>();
  // frame derivatives X_j eta
  Eigen::Matrix<Scalar, 4, 1> xeta = Scalar(2) * s.cwiseProduct(p.x);
  for (int k = 0; k < 3; ++k) {
    const Scalar sigma = p.z(k) < 0 ? Scalar(-1) : Scalar(1);
    xeta += alpha * sigma * Scalar(0.5) * (I[k] * p.x);
  }
  return {s.cwiseProduct(xeta), p};
}

/// Horizontal gradient by central differences along the frame flows
/// p o exp(+-h X_j), which are exact integral curves of X_j.
template <typename Scalar, int H, int C>
HorizontalVector<Scalar, H, C> horizontal_gradient_fd(
    const std::function<Scalar(const Point<Scalar, H, C>&)>& f, const Point<Scalar, H, C>& p,
    Scalar h = Scalar(1e-5)) {
  if (!(h > 0)) throw std::invalid_argument("horizontal_gradient_fd: step must be positive");
  Eigen::Matrix<Scalar, H, 1> xf;
  for (int j = 0; j < H; ++j) {
    Point<Scalar, H, C> step;
    step.x(j) = h;
    const Scalar fp = f(multiply(p, step));
    const Scalar fm = f(multiply(p, inverse(step)));
    xf(j) = (fp - fm) / (Scalar(2) * h);
  }
  return {signature<Scalar, H>().cwiseProduct(xf), p};
}

class NotHorizontal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Scalar>
struct LengthReport {
  Scalar length = 0;
  Scalar defect = 0;
  std::vector<CausalClass> classes;
};

/// L(c) = int |Q(c', c')|^{1/2} dt by the trapezoidal rule on finite
/// difference velocities. Rejects curves whose horizontality defect exceeds
/// `tol`.
template <typename Scalar, int H, int C>
LengthReport<Scalar> curve_length(const DiscreteCurve<Scalar, H, C>& c, Scalar tol = Scalar(1e-6)) {
  LengthReport<Scalar> r;
  if (c.size() >= 3) {
    r.defect = horizontality_defect(c);
    if (r.defect > tol) throw NotHorizontal("curve_length: curve is not horizontal within tolerance");
  }
  const auto v = curve_velocities(c);
  std::vector<Scalar> speed(c.size());
  r.classes.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Eigen::Matrix<Scalar, H, 1> h = v[i].template head<H>();
    speed[i] = std::sqrt(std::abs(q_form(h, h)));
    r.classes[i] = classify_coeffs(h);
  }
  for (std::size_t i = 1; i < c.size(); ++i)
    r.length += Scalar(0.5) * (speed[i] + speed[i - 1]) * (c.t[i] - c.t[i - 1]);
  return r;
}

}  // namespace sublorentz
