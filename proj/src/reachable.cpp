#include "sublorentz/reachable.hpp"

#include "sublorentz/integrator.hpp"
#include "sublorentz/io.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <thread>

namespace sublorentz {

const char* to_string(Slice s) {
  switch (s) {
    case Slice::X3X4: return "x3x4";
    case Slice::X2X3: return "x2x3";
    case Slice::X2X4: return "x2x4";
  }
  return "?";
}

Slice parse_slice(const std::string& s) {
  if (s == "x3x4") return Slice::X3X4;
  if (s == "x2x3") return Slice::X2X3;
  if (s == "x2x4") return Slice::X2X4;
  throw std::invalid_argument("unknown slice '" + s + "' (expected x3x4, x2x3 or x2x4)");
}

std::string to_string(const RegionId& r) {
  switch (r.kind) {
    case RegionKind::Gamma: return "gamma(" + format_double(r.alpha) + ")";
    case RegionKind::A: return "A(" + format_double(r.alpha) + ")";
    case RegionKind::BSlice: return std::string("bslice(") + to_string(r.slice) + ")";
  }
  return "?";
}

double a_form(double alpha, const QuatPointd& p) {
  const Eigen::Vector3d y = p.x.tail<3>();
  const Eigen::Vector3d n = Eigen::Vector3d(1, -1, -1) / std::sqrt(3.0);
  // the leading coefficient vanishes exactly at the end of the admissible range
  const double lead = std::abs(alpha) >= kEtaAlphaMax ? 0.0 : -1 + 3 * alpha * alpha / 16;
  return lead * (p.x(0) * p.x(0) - y.squaredNorm()) + 3 * alpha * alpha / 8 * y.cross(n).squaredNorm();
}

namespace {

// Indices (0-based) of the horizontal and center coordinates that vanish on a slice.
struct SliceLayout {
  int free_x;
  double free_sign;
  int z;
  std::array<int, 2> zero_x;
  std::array<int, 2> zero_z;
};

SliceLayout layout(Slice s) {
  switch (s) {
    case Slice::X3X4: return {1, 1.0, 0, {2, 3}, {1, 2}};
    case Slice::X2X3: return {3, -1.0, 1, {1, 2}, {0, 2}};
    case Slice::X2X4: return {2, -1.0, 2, {1, 3}, {0, 1}};
  }
  throw std::invalid_argument("bad slice");
}

}  // namespace

bool in_region(const RegionId& r, const QuatPointd& p) {
  switch (r.kind) {
    case RegionKind::Gamma:
      return eta(r.alpha, p) < 0 && p.x(0) > 0;
    case RegionKind::A:
      return a_form(r.alpha, p) < 0 && p.x(0) > 0;
    case RegionKind::BSlice: {
      const auto l = layout(r.slice);
      return p.x(l.zero_x[0]) == 0 && p.x(l.zero_x[1]) == 0;
    }
  }
  return false;
}

QuatPointd ray_point(const RayParams& r, double t) {
  if (!(t > 0)) throw std::invalid_argument("ray_point: t must be positive");
  if (!std::isfinite(r.phi)) throw std::invalid_argument("ray_point: phi must be finite");
  if (!(r.psi >= 0 && r.psi <= 2 * std::numbers::pi)) throw std::invalid_argument("ray_point: psi outside [0, 2pi]");
  if (!(r.vartheta >= 0 && r.vartheta <= std::numbers::pi))
    throw std::invalid_argument("ray_point: vartheta outside [0, pi]");
  const double sh = std::sinh(r.phi);
  QuatPointd p;
  p.x << t * std::cosh(r.phi), t * sh * std::sin(r.psi) * std::cos(r.vartheta),
      t * sh * std::sin(r.psi) * std::sin(r.vartheta), t * sh * std::cos(r.psi);
  return p;
}

HeisPointd bslice_reduce(const QuatPointd& p, Slice s, double tol) {
  const auto l = layout(s);
  for (int i : l.zero_x)
    if (std::abs(p.x(i)) > tol) throw std::invalid_argument("bslice_reduce: point is off the slice");
  for (int i : l.zero_z)
    if (std::abs(p.z(i)) > tol) throw std::invalid_argument("bslice_reduce: point is off the slice");
  return heis_point(p.x(0), l.free_sign * p.x(l.free_x), p.z(l.z));
}

QuatPointd bslice_embed(const HeisPointd& h, Slice s) {
  const auto l = layout(s);
  QuatPointd p;
  p.x(0) = h.x(0);
  p.x(l.free_x) = l.free_sign * h.x(1);
  p.z(l.z) = h.z(0);
  return p;
}

QuatIVPd bslice_embed(const HeisIVP<double>& ivp, Slice s) {
  const auto l = layout(s);
  QuatIVPd q;
  q.v0(0) = ivp.v0(0);
  q.v0(l.free_x) = l.free_sign * ivp.v0(1);
  q.theta(l.z) = ivp.theta;
  return q;
}

QuatControls sample_controls(const ControlSamplerConfig& cfg, std::uint64_t seed) {
  if (cfg.min_segments < 1 || cfg.max_segments < cfg.min_segments)
    throw std::invalid_argument("sample_controls: bad segment range");
  if (!(cfg.duration > 0)) throw std::invalid_argument("sample_controls: duration must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(cfg.min_segments, cfg.max_segments);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  const int n = count(rng);
  std::vector<double> weights(n);
  double total = 0;
  for (auto& w : weights) total += (w = 0.2 + unit(rng));

  QuatControls u;
  u.breaks.push_back(0);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d dir;
    do dir = Eigen::Vector3d(normal(rng), normal(rng), normal(rng));
    while (dir.norm() < 1e-8);
    dir.normalize();
    const double speed = 0.5 + 1.5 * unit(rng);
    const bool null_segment = !cfg.strictly_timelike && unit(rng) < 0.3;
    Eigen::Vector4d v;
    if (null_segment) {
      v << 1, dir;
    } else {
      const double phi = cfg.max_rapidity * unit(rng);
      v << std::cosh(phi), std::sinh(phi) * dir;
    }
    u.values.push_back(speed * v);
    u.breaks.push_back(i + 1 == n ? cfg.duration : u.breaks.back() + cfg.duration * weights[i] / total);
  }
  return u;
}

namespace {

struct SampleOutcome {
  std::optional<InclusionViolation> violation;
  bool in_a = false;
  double eta_increase = 0;
  double cone_deficit = 0;
  double defect = 0;
};

SampleOutcome check_sample(const QuatCurve& c, std::size_t index, const RegionId& region, InclusionMode mode,
                           double null_tol, double closure_tol) {
  SampleOutcome out;
  c.validate();
  if (c.size() < 3) throw InvalidSample("verify_inclusion: sample " + std::to_string(index) + " has < 3 points");
  if (c.points.front().coords().cwiseAbs().maxCoeff() > 1e-14)
    throw InvalidSample("verify_inclusion: sample " + std::to_string(index) + " does not start at the origin");

  const auto v = curve_velocities(c);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Eigen::Vector4d h = v[i].head<4>();
    const auto cls = classify_coeffs(h, null_tol);
    const bool causal = cls.kind == CausalKind::Timelike || cls.kind == CausalKind::Null;
    if (!causal || cls.orientation != Orientation::FutureDirected)
      throw InvalidSample("verify_inclusion: sample " + std::to_string(index) +
                          " is not nonspacelike future directed at node " + std::to_string(i));
  }
  out.defect = horizontality_defect(c);

  double prev = eta(0.0, c.points.front());
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double e = eta(0.0, c.points[i]);
    out.eta_increase = std::max(out.eta_increase, e - prev);
    prev = e;
  }

  const QuatPointd& p = c.points.back();
  const double xs = std::max(1.0, p.x.norm());
  out.cone_deficit = p.x.tail<3>().norm() - p.x(0);

  auto fail = [&](std::string why) { out.violation = InclusionViolation{index, std::move(why), p}; };
  auto in_gamma = [&](double alpha) {
    if (mode == InclusionMode::Strict) return in_region(RegionId{RegionKind::Gamma, alpha, Slice::X3X4}, p);
    return eta(alpha, p) <= closure_tol * xs * xs && out.cone_deficit <= closure_tol * xs;
  };

  switch (region.kind) {
    case RegionKind::Gamma:
      if (!in_gamma(region.alpha)) fail("endpoint outside gamma");
      break;
    case RegionKind::A:
      if (in_region(region, p)) {
        out.in_a = true;
        if (!in_gamma(region.alpha)) fail("endpoint in A but outside gamma");
      }
      break;
    case RegionKind::BSlice:
      if (!in_region(region, p)) fail("endpoint off the slice");
      break;
  }
  return out;
}

}  // namespace

InclusionReport verify_inclusion(const CurveSampler& sampler, const RegionId& region, std::size_t n,
                                 InclusionMode mode, double null_tol, double closure_tol, unsigned threads) {
  std::vector<SampleOutcome> outcomes(n);
  std::vector<std::exception_ptr> errors(std::max(1u, threads));
  auto work = [&](unsigned w, std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i)
        outcomes[i] = check_sample(sampler(i), i, region, mode, null_tol, closure_tol);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    work(0, 0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t b = std::min(n, w * chunk), e = std::min(n, b + chunk);
      pool.emplace_back(work, w, b, e);
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  InclusionReport r;
  r.region = region;
  r.mode = mode;
  r.count = n;
  for (const auto& o : outcomes) {
    if (o.violation) r.violations.push_back(*o.violation);
    r.in_a_region += o.in_a ? 1 : 0;
    r.max_eta_increase = std::max(r.max_eta_increase, o.eta_increase);
    r.max_cone_deficit = std::max(r.max_cone_deficit, o.cone_deficit);
    r.max_defect = std::max(r.max_defect, o.defect);
  }
  return r;
}

}  // namespace sublorentz
