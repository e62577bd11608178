#pragma once

#include "sublorentz/hamiltonian.hpp"
#include "sublorentz/path.hpp"
#include "sublorentz/reachable.hpp"

#include <stdexcept>
#include <string>

namespace sublorentz {

enum class Method { RK4, RK45 };

const char* to_string(Method m);
Method parse_method(const std::string& s);

struct IntegrationConfig {
  Method method = Method::RK4;
  double t0 = 0;
  double t1 = 1;
  int steps = 1000;    // RK4 steps over [t0, t1]
  double tol = 1e-10;  // RK45 absolute and relative tolerance
  int samples = 101;   // recorded samples, endpoints included

  /// Throws std::invalid_argument. For RK4, steps must be a multiple of
  /// samples - 1 so that samples land on step boundaries.
  void validate() const;
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrates the Hamiltonian flow from `init`. Velocities are the x-rates of
/// the flow, H is evaluated from the integrated state, theta is carried
/// unchanged.
HeisPath integrate(const HeisCovector& init, const IntegrationConfig& cfg);
QuatPath integrate(const QuatCovector& init, const IntegrationConfig& cfg);

/// Kinematic horizontal curve x' = u, z'_k = 1/2 <I_k x, u> from the origin,
/// with `substeps` RK4 steps per control segment (exact for constant u up to
/// rounding).
HeisCurve integrate_controls(const PiecewiseControls<2>& u, int substeps = 4);
QuatCurve integrate_controls(const PiecewiseControls<4>& u, int substeps = 4);

struct ConservationReport {
  double h_drift = 0;      // max |H - H0| / max(|H0|, 1/2 |v0|^2)
  double theta_drift = 0;  // max |theta - theta0|, componentwise
};

template <int H, int C>
ConservationReport conservation_report(const GeodesicPath<double, H, C>& path) {
  ConservationReport r;
  if (path.samples.empty()) return r;
  const auto& first = path.samples.front();
  const double h0 = first.hamiltonian;
  double scale = std::max(std::abs(h0), 0.5 * first.velocity.squaredNorm());
  if (scale == 0) scale = 1;
  for (const auto& s : path.samples) {
    r.h_drift = std::max(r.h_drift, std::abs(s.hamiltonian - h0) / scale);
    r.theta_drift = std::max(r.theta_drift, (s.theta - first.theta).cwiseAbs().maxCoeff());
  }
  return r;
}

}  // namespace sublorentz
