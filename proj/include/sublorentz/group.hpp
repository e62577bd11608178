#pragma once

// Two-step nilpotent groups used throughout the library: the Lorentzian
// Heisenberg group (R^2 x R) and the quaternion H-type group (R^4 x R^3).
//
// Everything here is driven by the structure matrices I_k. With them
//   (x,z) o (x',z') = (x + x', z_k + z'_k + 1/2 <I_k x, x'>)
//   X_a = d/dx_a + 1/2 sum_k (I_k x)_a d/dz_k
//   v_k = dz_k - 1/2 <I_k x, dx>
// and [X_i, X_j] = -sum_k (I_k)_ij Z_k.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sublorentz {

enum class GroupId { HeisenbergL, QuaternionH };

inline const char* group_name(GroupId g) {
  return g == GroupId::HeisenbergL ? "heis" : "quat";
}

template <int H, int C>
struct GroupTraits;

template <>
struct GroupTraits<2, 1> {
  static constexpr GroupId id = GroupId::HeisenbergL;
};

template <>
struct GroupTraits<4, 3> {
  static constexpr GroupId id = GroupId::QuaternionH;
};

class GroupMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A group element in normal coordinates. H is the horizontal (x) dimension,
/// C the dimension of the center (z).
template <typename Scalar, int H, int C>
struct Point {
  static constexpr int kHorizontal = H;
  static constexpr int kCenter = C;
  static constexpr int kDim = H + C;
  static constexpr GroupId group = GroupTraits<H, C>::id;

  using HVec = Eigen::Matrix<Scalar, H, 1>;
  using CVec = Eigen::Matrix<Scalar, C, 1>;
  using Coords = Eigen::Matrix<Scalar, H + C, 1>;

  HVec x = HVec::Zero();
  CVec z = CVec::Zero();

  Point() = default;
  Point(const HVec& x_, const CVec& z_) : x(x_), z(z_) {}

  static Point identity() { return Point(); }

  Coords coords() const {
    Coords c;
    c << x, z;
    return c;
  }

  static Point from_coords(const Coords& c) {
    return Point(c.template head<H>(), c.template tail<C>());
  }
};

template <typename Scalar>
using HeisPoint = Point<Scalar, 2, 1>;
template <typename Scalar>
using QuatPoint = Point<Scalar, 4, 3>;

using HeisPointd = HeisPoint<double>;
using QuatPointd = QuatPoint<double>;

template <typename Scalar>
HeisPoint<Scalar> heis_point(Scalar x, Scalar y, Scalar z) {
  return HeisPoint<Scalar>(Eigen::Matrix<Scalar, 2, 1>(x, y),
                           Eigen::Matrix<Scalar, 1, 1>(z));
}

namespace detail {

template <typename Scalar, int H>
using SquareH = Eigen::Matrix<Scalar, H, H>;

template <typename Scalar, int H, int C>
std::array<SquareH<Scalar, H>, C> make_structure_matrices() {
  static_assert((H == 2 && C == 1) || (H == 4 && C == 3), "unsupported group");
  std::array<SquareH<Scalar, H>, C> m;
  if constexpr (H == 2) {
    m[0] << 0, 1,
           -1, 0;
  } else {
    m[0] << 0, 1, 0, 0,
           -1, 0, 0, 0,
            0, 0, 0, 1,
            0, 0, -1, 0;
    m[1] << 0, 0, 0, -1,
            0, 0, -1, 0,
            0, 1, 0, 0,
            1, 0, 0, 0;
    m[2] << 0, 0, -1, 0,
            0, 0, 0, 1,
            1, 0, 0, 0,
            0, -1, 0, 0;
  }
  return m;
}

}  // namespace detail

/// The matrices I_1..I_C defining the group law. For the quaternion group
/// these are the real 4x4 representations of the imaginary quaternion units;
/// for the Heisenberg group the single 2x2 rotation generator.
template <typename Scalar, int H, int C>
const std::array<Eigen::Matrix<Scalar, H, H>, C>& structure_matrices() {
  static const auto m = detail::make_structure_matrices<Scalar, H, C>();
  return m;
}

/// J(theta) = sum_k theta_k I_k.
template <typename Scalar, int H, int C>
Eigen::Matrix<Scalar, H, H> j_operator(const Eigen::Matrix<Scalar, C, 1>& theta) {
  const auto& I = structure_matrices<Scalar, H, C>();
  Eigen::Matrix<Scalar, H, H> j = Eigen::Matrix<Scalar, H, H>::Zero();
  for (int k = 0; k < C; ++k) j += theta(k) * I[k];
  return j;
}

/// The bilinear center term: b_k(x, x') = 1/2 <I_k x, x'>.
template <typename Scalar, int H, int C>
Eigen::Matrix<Scalar, C, 1> center_form(const Eigen::Matrix<Scalar, H, 1>& x,
                                        const Eigen::Matrix<Scalar, H, 1>& xp) {
  const auto& I = structure_matrices<Scalar, H, C>();
  Eigen::Matrix<Scalar, C, 1> b;
  for (int k = 0; k < C; ++k) b(k) = Scalar(0.5) * (I[k] * x).dot(xp);
  return b;
}

template <typename Scalar, int H, int C>
Point<Scalar, H, C> multiply(const Point<Scalar, H, C>& p, const Point<Scalar, H, C>& q) {
  return Point<Scalar, H, C>(p.x + q.x, p.z + q.z + center_form<Scalar, H, C>(p.x, q.x));
}

template <typename Scalar, int H, int C>
Point<Scalar, H, C> inverse(const Point<Scalar, H, C>& p) {
  return Point<Scalar, H, C>(-p.x, -p.z);
}

/// Coordinate components of all horizontal frame fields at a point; column
/// a-1 holds X_a in the basis (d/dx_1.., d/dz_1..).
template <typename Scalar, int H, int C>
Eigen::Matrix<Scalar, H + C, H> horizontal_frame(const Point<Scalar, H, C>& base) {
  const auto& I = structure_matrices<Scalar, H, C>();
  Eigen::Matrix<Scalar, H + C, H> f;
  f.template topRows<H>().setIdentity();
  for (int k = 0; k < C; ++k) f.row(H + k) = Scalar(0.5) * (I[k] * base.x).transpose();
  return f;
}

enum class FrameKind { X, Z };

/// A left-invariant frame field evaluated at a base point. The index is
/// 1-based as in the usual notation X_1..X_H, Z_1..Z_C.
template <typename Scalar, int H, int C>
struct FrameVector {
  FrameKind kind = FrameKind::X;
  int index = 1;
  Point<Scalar, H, C> base;
};

template <typename Scalar, int H, int C>
Eigen::Matrix<Scalar, H + C, 1> frame_coefficients(const FrameVector<Scalar, H, C>& v) {
  const int limit = v.kind == FrameKind::X ? H : C;
  if (v.index < 1 || v.index > limit)
    throw std::out_of_range("frame index " + std::to_string(v.index) + " out of range");
  if (v.kind == FrameKind::Z) {
    Eigen::Matrix<Scalar, H + C, 1> e = Eigen::Matrix<Scalar, H + C, 1>::Zero();
    e(H + v.index - 1) = Scalar(1);
    return e;
  }
  return horizontal_frame(v.base).col(v.index - 1);
}

/// [X_i, X_j] expressed in the Z basis.
struct BracketTerm {
  int sign = 0;     // -1, 0 or +1
  int z_index = 0;  // 1-based; 0 when the bracket vanishes
};

template <int H, int C>
BracketTerm bracket(int i, int j) {
  if (i < 1 || i > H || j < 1 || j > H) throw std::out_of_range("bracket index out of range");
  const auto& I = structure_matrices<double, H, C>();
  BracketTerm out;
  for (int k = 0; k < C; ++k) {
    const double c = -I[k](i - 1, j - 1);
    if (c != 0.0) {
      out.sign = c > 0 ? 1 : -1;
      out.z_index = k + 1;
    }
  }
  return out;
}

/// The dual one-form v_beta evaluated at `base` on the coordinate tangent
/// vector w = (dx, dz).
template <typename Scalar, int H, int C>
Scalar dual_form(int beta, const Eigen::Matrix<Scalar, H + C, 1>& w,
                 const Point<Scalar, H, C>& base) {
  if (beta < 1 || beta > C) throw std::out_of_range("dual form index out of range");
  const auto& I = structure_matrices<Scalar, H, C>();
  return w(H + beta - 1) - Scalar(0.5) * (I[beta - 1] * base.x).dot(w.template head<H>());
}

/// All dual forms at once: the vertical defect of w.
template <typename Scalar, int H, int C>
Eigen::Matrix<Scalar, C, 1> dual_forms(const Eigen::Matrix<Scalar, H + C, 1>& w,
                                       const Point<Scalar, H, C>& base) {
  Eigen::Matrix<Scalar, C, 1> out;
  for (int k = 1; k <= C; ++k) out(k - 1) = dual_form(k, w, base);
  return out;
}

/// A sampled curve. Times must be strictly increasing.
template <typename Scalar, int H, int C>
struct DiscreteCurve {
  std::vector<Scalar> t;
  std::vector<Point<Scalar, H, C>> points;

  std::size_t size() const { return t.size(); }

  void validate() const {
    if (t.size() != points.size()) throw std::invalid_argument("curve: time/point count mismatch");
    if (t.size() < 2) throw std::invalid_argument("curve: need at least two samples");
    for (std::size_t i = 1; i < t.size(); ++i) {
      const Scalar dt = t[i] - t[i - 1];
      if (!(dt > Scalar(0)) || !std::isfinite(static_cast<double>(dt)))
        throw std::invalid_argument("curve: times must be strictly increasing");
    }
  }
};

using HeisCurve = DiscreteCurve<double, 2, 1>;
using QuatCurve = DiscreteCurve<double, 4, 3>;

/// Coordinate velocities by three-point Lagrange differences: centered at
/// interior nodes, one-sided at the ends. Second order on arbitrary grids.
template <typename Scalar, int H, int C>
std::vector<Eigen::Matrix<Scalar, H + C, 1>> curve_velocities(const DiscreteCurve<Scalar, H, C>& c) {
  c.validate();
  using Coords = Eigen::Matrix<Scalar, H + C, 1>;
  const std::size_t n = c.size();
  std::vector<Coords> v(n);
  if (n == 2) {
    const Coords d = (c.points[1].coords() - c.points[0].coords()) / (c.t[1] - c.t[0]);
    v[0] = v[1] = d;
    return v;
  }
  // derivative at node m of the quadratic through nodes (i0, i1, i2)
  auto lagrange = [&](std::size_t i0, std::size_t i1, std::size_t i2, std::size_t m) {
    const Scalar t0 = c.t[i0], t1 = c.t[i1], t2 = c.t[i2], tm = c.t[m];
    const Scalar w0 = ((tm - t1) + (tm - t2)) / ((t0 - t1) * (t0 - t2));
    const Scalar w1 = ((tm - t0) + (tm - t2)) / ((t1 - t0) * (t1 - t2));
    const Scalar w2 = ((tm - t0) + (tm - t1)) / ((t2 - t0) * (t2 - t1));
    return Coords(w0 * c.points[i0].coords() + w1 * c.points[i1].coords() +
                  w2 * c.points[i2].coords());
  };
  v[0] = lagrange(0, 1, 2, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) v[i] = lagrange(i - 1, i, i + 1, i);
  v[n - 1] = lagrange(n - 3, n - 2, n - 1, n - 1);
  return v;
}

/// Largest |v_beta(c'(t_i))| over interior samples and all beta. Zero means
/// horizontal up to the accuracy of the finite differences.
template <typename Scalar, int H, int C>
Scalar horizontality_defect(const DiscreteCurve<Scalar, H, C>& c) {
  if (c.size() < 3) throw std::invalid_argument("horizontality_defect: need at least three samples");
  c.validate();
  const Scalar span = c.t.back() - c.t.front();
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c.t[i] - c.t[i - 1] <= span * Scalar(1e-14))
      throw std::invalid_argument("horizontality_defect: degenerate grid spacing");
  const auto v = curve_velocities(c);
  Scalar worst = 0;
  for (std::size_t i = 1; i + 1 < c.size(); ++i)
    worst = std::max(worst, dual_forms(v[i], c.points[i]).cwiseAbs().maxCoeff());
  return worst;
}

/// Runtime-tagged point, for code paths (CLI, reports) that pick the group
/// at run time.
using AnyPoint = std::variant<HeisPointd, QuatPointd>;

inline GroupId group_of(const AnyPoint& p) {
  return p.index() == 0 ? GroupId::HeisenbergL : GroupId::QuaternionH;
}

inline AnyPoint multiply(const AnyPoint& p, const AnyPoint& q) {
  if (p.index() != q.index()) throw GroupMismatch("multiply: points belong to different groups");
  if (p.index() == 0) return multiply(std::get<0>(p), std::get<0>(q));
  return multiply(std::get<1>(p), std::get<1>(q));
}

inline AnyPoint inverse(const AnyPoint& p) {
  return std::visit([](const auto& v) -> AnyPoint { return inverse(v); }, p);
}

}  // namespace sublorentz
