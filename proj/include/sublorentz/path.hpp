#pragma once

#include "sublorentz/causal.hpp"

#include <vector>

namespace sublorentz {

template <typename Scalar, int H, int C>
struct PathSample {
  Scalar t = 0;
  Point<Scalar, H, C> point;
  Eigen::Matrix<Scalar, H, 1> velocity = Eigen::Matrix<Scalar, H, 1>::Zero();  // frame coefficients
  CausalClass causal;
  Scalar hamiltonian = 0;
  Scalar length = 0;  // accumulated from the first sample
  Eigen::Matrix<Scalar, C, 1> theta = Eigen::Matrix<Scalar, C, 1>::Zero();
};

/// Sampled geodesic with exact (not differenced) horizontal velocities.
template <typename Scalar, int H, int C>
struct GeodesicPath {
  std::vector<PathSample<Scalar, H, C>> samples;

  std::size_t size() const { return samples.size(); }
  const PathSample<Scalar, H, C>& back() const { return samples.back(); }

  DiscreteCurve<Scalar, H, C> curve() const {
    DiscreteCurve<Scalar, H, C> c;
    for (const auto& s : samples) {
      c.t.push_back(s.t);
      c.points.push_back(s.point);
    }
    return c;
  }
};

using HeisPath = GeodesicPath<double, 2, 1>;
using QuatPath = GeodesicPath<double, 4, 3>;

/// Fills causal classes and accumulated trapezoidal length from the stored
/// velocities.
template <typename Scalar, int H, int C>
void finalize_path(GeodesicPath<Scalar, H, C>& path, Scalar null_tol = Scalar(1e-12)) {
  Scalar acc = 0;
  Scalar prev_speed = 0;
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    auto& s = path.samples[i];
    s.causal = classify_coeffs(s.velocity, null_tol);
    const Scalar speed = std::sqrt(std::abs(q_form(s.velocity, s.velocity)));
    if (i > 0) acc += Scalar(0.5) * (speed + prev_speed) * (s.t - path.samples[i - 1].t);
    s.length = acc;
    prev_speed = speed;
  }
}

}  // namespace sublorentz
