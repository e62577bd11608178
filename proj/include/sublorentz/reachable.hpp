#pragma once

// Regions bounding the chronological future of the origin in the quaternion
// group:
//   Gamma_a = { eta_a < 0, x1 > 0 }
//   A_a     = { (-1 + 3a^2/16)(x1^2 - |y|^2) + (3a^2/8)|y x n|^2 < 0, x1 > 0 }
// with y = (x2, x3, x4), n = (1, -1, -1)/sqrt(3), and the coordinate slices
// on which the group reduces to the Heisenberg group.

#include "sublorentz/causal.hpp"
#include "sublorentz/heisenberg.hpp"
#include "sublorentz/quaternion.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sublorentz {

inline const double kEtaAlphaMax = 4.0 / std::sqrt(3.0);

/// Validated eta parameter, |alpha| <= 4/sqrt(3).
struct EtaParams {
  double alpha = 0;

  explicit EtaParams(double a) : alpha(a) {
    if (!(std::abs(a) <= kEtaAlphaMax * (1 + 1e-15)))
      throw std::invalid_argument("EtaParams: |alpha| must not exceed 4/sqrt(3)");
  }
};

/// Which pair of horizontal coordinates vanishes on the slice.
enum class Slice { X3X4, X2X3, X2X4 };

const char* to_string(Slice s);
Slice parse_slice(const std::string& s);

enum class RegionKind { Gamma, A, BSlice };

struct RegionId {
  RegionKind kind = RegionKind::Gamma;
  double alpha = 0;
  Slice slice = Slice::X3X4;

  static RegionId gamma(EtaParams p) { return {RegionKind::Gamma, p.alpha, Slice::X3X4}; }
  static RegionId a_region(EtaParams p) { return {RegionKind::A, p.alpha, Slice::X3X4}; }
  static RegionId bslice(Slice s) { return {RegionKind::BSlice, 0, s}; }
};

std::string to_string(const RegionId& r);

/// Left side of the A_alpha inequality.
double a_form(double alpha, const QuatPointd& p);

/// Strict membership; boundary points are outside.
bool in_region(const RegionId& r, const QuatPointd& p);

struct RayParams {
  double phi = 0;       // rapidity
  double psi = 0;       // [0, 2pi]
  double vartheta = 0;  // [0, pi]
};

/// Point at time t > 0 on the unit-speed timelike ray
/// (t cosh phi, t sinh phi sin psi cos vt, t sinh phi sin psi sin vt, t sinh phi cos psi; 0).
QuatPointd ray_point(const RayParams& r, double t);

/// Coordinates (x1, free x, z) of a slice point in the Heisenberg group. The
/// free coordinate changes sign on the x2 = 0 slices so that the group law is
/// preserved.
HeisPointd bslice_reduce(const QuatPointd& p, Slice s, double tol = 1e-12);
QuatPointd bslice_embed(const HeisPointd& h, Slice s);
QuatIVPd bslice_embed(const HeisIVP<double>& ivp, Slice s);

/// Piecewise-constant frame controls: u(t) = values[i] on [breaks[i], breaks[i+1]).
template <int H>
struct PiecewiseControls {
  std::vector<double> breaks;
  std::vector<Eigen::Matrix<double, H, 1>> values;

  void validate() const {
    if (breaks.size() != values.size() + 1 || values.empty())
      throw std::invalid_argument("PiecewiseControls: need n+1 breakpoints for n values");
    for (std::size_t i = 1; i < breaks.size(); ++i)
      if (!(breaks[i] > breaks[i - 1])) throw std::invalid_argument("PiecewiseControls: breakpoints must increase");
    for (const auto& v : values)
      if (!v.allFinite()) throw std::invalid_argument("PiecewiseControls: non-finite control");
  }
};

using QuatControls = PiecewiseControls<4>;

struct ControlSamplerConfig {
  int min_segments = 8;
  int max_segments = 64;
  double duration = 1.0;
  bool strictly_timelike = true;  // otherwise some segments are exactly null
  double max_rapidity = 2.0;
};

/// Random future-directed piecewise-constant controls with u1 >= |(u2, u3, u4)|.
QuatControls sample_controls(const ControlSamplerConfig& cfg, std::uint64_t seed);

class InvalidSample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct InclusionViolation {
  std::size_t index = 0;
  std::string reason;
  QuatPointd endpoint;
};

enum class InclusionMode {
  Strict,   // endpoint must lie in the open region
  Closure,  // endpoint must satisfy eta_0 <= tol and x1 >= |y| - tol
};

struct InclusionReport {
  RegionId region;
  InclusionMode mode = InclusionMode::Strict;
  std::size_t count = 0;
  std::size_t in_a_region = 0;  // endpoints that fell in A_alpha (for A regions)
  std::vector<InclusionViolation> violations;
  double max_eta_increase = 0;  // largest step-to-step increase of eta_0
  double max_cone_deficit = 0;  // largest |y| - x1 at an endpoint
  double max_defect = 0;        // horizontality defect of the samples

  bool passed(double monotone_tol = 1e-6) const {
    return violations.empty() && (mode == InclusionMode::Closure || max_eta_increase <= monotone_tol);
  }
};

using CurveSampler = std::function<QuatCurve(std::size_t)>;

/// Draws n curves from the sampler and checks their endpoints. For Gamma and
/// BSlice regions every endpoint must be in the region; for A_alpha, endpoints
/// inside A_alpha must lie in Gamma_alpha. Samples must be horizontal,
/// nonspacelike and future directed (null_tol relative), otherwise InvalidSample.
InclusionReport verify_inclusion(const CurveSampler& sampler, const RegionId& region, std::size_t n,
                                 InclusionMode mode = InclusionMode::Strict, double null_tol = 1e-9,
                                 double closure_tol = 1e-9, unsigned threads = 1);

}  // namespace sublorentz
