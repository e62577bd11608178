#include "sublorentz/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace sublorentz {

namespace {

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

IdentityReport make_report(std::string name, std::initializer_list<double> terms,
                           std::initializer_list<double> rhs_terms, const QuatIVPd& ivp, double t) {
  IdentityReport r;
  r.name = std::move(name);
  for (double x : terms) {
    r.lhs += x;
    r.scale = std::max(r.scale, std::abs(x));
  }
  for (double x : rhs_terms) {
    r.rhs += x;
    r.scale = std::max(r.scale, std::abs(x));
  }
  r.residual = std::abs(r.lhs - r.rhs);
  r.v0 = to_vec(ivp.v0);
  r.theta = to_vec(ivp.theta);
  r.t = t;
  return r;
}

class Suite {
 public:
  explicit Suite(const QuatIVPd& ivp) : ivp_(ivp) {}

  // Lorentzian contraction over indices 1..4, listed term by term.
  void lorentz(const std::string& name, const Eigen::Vector4d& u, const Eigen::Vector4d& v,
               std::initializer_list<double> rhs) {
    add(name, {-u(0) * v(0), u(1) * v(1), u(2) * v(2), u(3) * v(3)}, rhs);
  }

  // Euclidean contraction over indices 2..4.
  void spatial(const std::string& name, const Eigen::Vector4d& u, const Eigen::Vector4d& v,
               std::initializer_list<double> rhs) {
    add(name, {u(1) * v(1), u(2) * v(2), u(3) * v(3)}, rhs);
  }

  // Contraction over the z-index of two coefficient columns.
  void dot(const std::string& name, const Eigen::Vector3d& u, const Eigen::Vector3d& v,
           std::initializer_list<double> rhs) {
    add(name, {u(0) * v(0), u(1) * v(1), u(2) * v(2)}, rhs);
  }

  void dot2(const std::string& name, const Eigen::Vector3d& u1, const Eigen::Vector3d& v1,
            const Eigen::Vector3d& u2, const Eigen::Vector3d& v2, std::initializer_list<double> rhs) {
    add(name,
        {u1(0) * v1(0), u1(1) * v1(1), u1(2) * v1(2), u2(0) * v2(0), u2(1) * v2(1), u2(2) * v2(2)},
        rhs);
  }

  void add(const std::string& name, std::initializer_list<double> terms, std::initializer_list<double> rhs) {
    out_.push_back(make_report(name, terms, rhs, ivp_, 0));
  }

  std::vector<IdentityReport> take() { return std::move(out_); }

 private:
  QuatIVPd ivp_;
  std::vector<IdentityReport> out_;
};

// Sum of |terms| of each z component in the closed form; the squared
// components bound the terms of |z|^2 before cancellation.
Eigen::Vector3d z_term_magnitude(const QuatClosedFormd& cf, double t) {
  const double at = cf.a * t;
  const double sh = std::sinh(at), ch = std::cosh(at), sn = std::sin(at), cs = std::cos(at);
  const auto al = cf.alpha.cwiseAbs();
  const auto be = cf.beta.cwiseAbs();
  return al.col(0) * std::abs(at) + be.col(0) * std::abs(sh * sn) + be.col(1) * (std::abs(ch * cs) + 1) +
         be.col(2) * std::abs(sh * cs) + be.col(3) * std::abs(ch * sn) +
         0.5 * (al.col(5) * std::abs(sh) + al.col(6) * ch + al.col(7) * std::abs(sn) + al.col(8) * std::abs(cs));
}

}  // namespace

IdentityReport norm_identity_x(const QuatClosedFormd& cf, double t) {
  if (cf.branch != QuatBranch::Generic)
    throw std::invalid_argument("norm_identity_x: coefficients undefined on this branch");
  const Eigen::Vector4d x = shoot_x(cf, t);
  const double c1 = cf.c(0), c2 = cf.c(1), k = cf.k;
  const double sh = std::sinh(0.5 * cf.a * t), sn = std::sin(0.5 * cf.a * t);
  return make_report("x_norm", {-x(0) * x(0), x(1) * x(1), x(2) * x(2), x(3) * x(3)},
                     {-16 * c1 * c2 * sh * sh, 16 * k * sn * sn}, cf.ivp, t);
}

IdentityReport norm_identity_z(const QuatClosedFormd& cf, double t) {
  if (cf.branch != QuatBranch::Generic)
    throw std::invalid_argument("norm_identity_z: coefficients undefined on this branch");
  const Eigen::Vector3d z = shoot_z(cf, t);
  const double c1 = cf.c(0), c2 = cf.c(1), k = cf.k, T = cf.a * t;
  const double sh = std::sinh(T), ch = std::cosh(T), sn = std::sin(T), cs = std::cos(T);
  const double lead = T * (-c1 * c2 + k) + 2 * c1 * c2 * sh - 2 * k * sn;
  auto r = make_report(
      "z_norm_candidate", {z(0) * z(0), z(1) * z(1), z(2) * z(2)},
      {4 * lead * lead,
       -4 * k * (c1 * c1 * std::exp(T) + c2 * c2 * std::exp(-T)) * (4 * sn * sh + 5 * cs - 5 * ch),
       8 * c1 * c2 * k * (5 * sn * sh + 4 * cs - 4 * ch)},
      cf.ivp, t);
  const double lead_mag = std::abs(T * (-c1 * c2 + k)) + std::abs(2 * c1 * c2 * sh) + std::abs(2 * k * sn);
  r.scale = std::max({r.scale, z_term_magnitude(cf, t).squaredNorm(), 4 * lead_mag * lead_mag});
  r.asserted = false;
  return r;
}

IdentityReport norm_identity_z_gram(const QuatClosedFormd& cf, double t) {
  if (cf.branch != QuatBranch::Generic)
    throw std::invalid_argument("norm_identity_z_gram: coefficients undefined on this branch");
  const Eigen::Vector3d z = shoot_z(cf, t);
  const double c1 = cf.c(0), c2 = cf.c(1), k = cf.k, T = cf.a * t;
  const double sh = std::sinh(T), ch = std::cosh(T), sn = std::sin(T), cs = std::cos(T);
  const double lead = T * (k - c1 * c2) + c1 * c2 * sh - k * sn;
  const double growth = c1 * c1 * std::exp(T) + c2 * c2 * std::exp(-T);
  auto r = make_report("z_norm", {z(0) * z(0), z(1) * z(1), z(2) * z(2)},
                       {4 * lead * lead, -8 * k * (growth - 2 * c1 * c2) * (sh * sn + cs - ch)}, cf.ivp, t);
  const double lead_mag = std::abs(T * (k - c1 * c2)) + std::abs(c1 * c2 * sh) + std::abs(k * sn);
  const double tail_mag =
      8 * std::abs(k) * (growth + 2 * std::abs(c1 * c2)) * (std::abs(sh * sn) + std::abs(cs) + ch);
  r.scale = std::max({r.scale, z_term_magnitude(cf, t).squaredNorm(), 4 * lead_mag * lead_mag, tail_mag});
  return r;
}

std::vector<IdentityReport> coefficient_identities(const QuatIVPd& ivp) {
  const auto cf = closed_form(ivp);
  if (cf.branch != QuatBranch::Generic)
    throw std::invalid_argument("coefficient_identities: theta1^2 + theta2^2 too small for the coefficient tables");
  const double c1 = cf.c(0), c2 = cf.c(1), k = cf.k, a = cf.a;
  const auto &A = cf.A, &B = cf.B, &C = cf.C, &D = cf.D, &E = cf.E;
  const Eigen::Vector3d a0 = cf.alpha.col(0), a5 = cf.alpha.col(5), a6 = cf.alpha.col(6),
                        a7 = cf.alpha.col(7), a8 = cf.alpha.col(8);
  const Eigen::Vector3d b1 = cf.beta.col(0), b2 = cf.beta.col(1), b3 = cf.beta.col(2), b4 = cf.beta.col(3);
  const double p = c1 * c2;
  const double sp = (c1 * c1 + c2 * c2) * k;
  const double sm = (c1 * c1 - c2 * c2) * k;
  const double speed = q_form(ivp.v0, ivp.v0);

  Suite s(ivp);
  s.add("-c1c2+k = |v0|^2/(4a^2)", {-p, k}, {speed / (4 * a * a)});

  s.lorentz("-A1^2+A2^2+A3^2+A4^2 = -4c1c2", A, A, {-4 * p});
  s.lorentz("-B1^2+B2^2+B3^2+B4^2 = 4c1c2", B, B, {4 * p});
  s.spatial("C2^2+C3^2+C4^2 = 4k", C, C, {4 * k});
  s.spatial("D2^2+D3^2+D4^2 = 4k", D, D, {4 * k});
  s.lorentz("-E1^2+E2^2+E3^2+E4^2 = 4(c1c2+k)", E, E, {4 * p, 4 * k});
  s.lorentz("-A1B1+A2B2+A3B3+A4B4 = 0", A, B, {});
  s.spatial("A2C2+A3C3+A4C4 = 0", A, C, {});
  s.spatial("A2D2+A3D3+A4D4 = 0", A, D, {});
  s.lorentz("-A1E1+A2E2+A3E3+A4E4 = 0", A, E, {});
  s.spatial("B2C2+B3C3+B4C4 = 0", B, C, {});
  s.spatial("B2D2+B3D3+B4D4 = 0", B, D, {});
  s.lorentz("-B1E1+B2E2+B3E3+B4E4 = -4c1c2", B, E, {-4 * p});
  s.spatial("C2D2+C3D3+C4D4 = 0", C, D, {});
  s.spatial("C2E2+C3E3+C4E4 = 0", C, E, {});
  s.spatial("D2E2+D3E3+D4E4 = -4k", D, E, {-4 * k});

  s.dot("alpha0.alpha0 = 4(-c1c2+k)^2", a0, a0, {4 * (k - p) * (k - p)});
  s.dot("alpha0.alpha0 = |v0|^4/(4a^4)", a0, a0, {speed * speed / (4 * a * a * a * a)});
  s.dot("beta1.beta1 = 2(c1^2+c2^2)k", b1, b1, {2 * sp});
  s.dot("beta2.beta2 = 2(c1^2+c2^2)k", b2, b2, {2 * sp});
  s.dot("beta3.beta3 = 2(c1^2+c2^2)k", b3, b3, {2 * sp});
  s.dot("beta4.beta4 = 2(c1^2+c2^2)k", b4, b4, {2 * sp});
  s.dot("alpha5.alpha5 = 8(c1^2+c2^2)k+16c1^2c2^2", a5, a5, {8 * sp, 16 * p * p});
  s.dot("alpha6.alpha6 = 8(c1^2+c2^2)k", a6, a6, {8 * sp});
  s.dot("alpha7.alpha7 = 8(c1^2+c2^2)k+16k^2", a7, a7, {8 * sp, 16 * k * k});
  s.dot("alpha8.alpha8 = 8(c1^2+c2^2)k", a8, a8, {8 * sp});
  s.dot("alpha0.beta1 = 0", a0, b1, {});
  s.dot("alpha0.beta2 = 0", a0, b2, {});
  s.dot("alpha0.beta3 = 0", a0, b3, {});
  s.dot("alpha0.beta4 = 0", a0, b4, {});
  s.dot("alpha0.alpha5 = -8c1^2c2^2+8c1c2k", a0, a5, {-8 * p * p, 8 * p * k});
  s.dot("alpha0.alpha6 = 0", a0, a6, {});
  s.dot("alpha0.alpha7 = 8c1c2k-8k^2", a0, a7, {8 * p * k, -8 * k * k});
  s.dot("alpha0.alpha8 = 0", a0, a8, {});
  s.dot2("beta1.beta2+beta3.beta4 = 0", b1, b2, b3, b4, {});
  s.dot("beta1.beta3 = 0", b1, b3, {});
  s.dot("beta1.beta4 = 2(c1^2-c2^2)k", b1, b4, {2 * sm});
  s.dot("alpha5.beta1 = -4(c1^2-c2^2)k", a5, b1, {-4 * sm});
  s.dot2("alpha6.beta1+alpha5.beta4 = -8(c1^2+c2^2)k", a6, b1, a5, b4, {-8 * sp});
  s.dot("alpha7.beta1 = 0", a7, b1, {});
  s.dot2("alpha7.beta3+alpha8.beta1 = 0", a7, b3, a8, b1, {});
  s.dot("beta2.beta3 = 2(c1^2-c2^2)k", b2, b3, {2 * sm});
  s.dot("beta2.beta4 = 0", b2, b4, {});
  s.dot2("alpha5.beta2+alpha6.beta3 = 0", a5, b2, a6, b3, {});
  s.dot("alpha6.beta2 = 8c1c2k", a6, b2, {8 * p * k});
  s.dot2("alpha7.beta2+alpha8.beta4 = 0", a7, b2, a8, b4, {});
  s.dot("alpha8.beta2 = -8c1c2k", a8, b2, {-8 * p * k});
  s.dot("alpha5.beta3 = -8c1c2k", a5, b3, {-8 * p * k});
  s.dot("alpha8.beta3 = 0", a8, b3, {});
  s.dot("alpha6.beta4 = -4(c1^2-c2^2)k", a6, b4, {-4 * sm});
  s.dot("alpha7.beta4 = -8c1c2k", a7, b4, {-8 * p * k});
  s.dot("alpha5.alpha6 = 8(c1^2-c2^2)k", a5, a6, {8 * sm});
  s.dot("alpha5.alpha7 = 0", a5, a7, {});
  s.dot("alpha5.alpha8 = -8(c1^2-c2^2)k", a5, a8, {-8 * sm});
  s.dot("alpha6.alpha7 = 0", a6, a7, {});
  s.dot("alpha6.alpha8 = -8(c1^2+c2^2)k", a6, a8, {-8 * sp});
  s.dot("alpha7.alpha8 = 0", a7, a8, {});
  s.dot("beta1.beta2 = -4c1c2k", b1, b2, {-4 * p * k});
  s.dot("alpha5.beta2 = 0", a5, b2, {});
  s.dot("alpha7.beta2 = -4(c1^2-c2^2)k", a7, b2, {-4 * sm});

  // linear relations between the alpha and beta tables
  for (int i = 0; i < 3; ++i) {
    const std::string idx = std::to_string(i + 1);
    const auto& al = cf.alpha;
    s.add("beta1^" + idx + " = (alpha1+alpha4)/4", {b1(i)}, {al(i, 1) / 4, al(i, 4) / 4});
    s.add("beta2^" + idx + " = (-alpha1+alpha4)/4", {b2(i)}, {-al(i, 1) / 4, al(i, 4) / 4});
    s.add("beta3^" + idx + " = (-alpha2+alpha3)/4", {b3(i)}, {-al(i, 2) / 4, al(i, 3) / 4});
    s.add("beta4^" + idx + " = (alpha2+alpha3)/4", {b4(i)}, {al(i, 2) / 4, al(i, 3) / 4});
    s.add("alpha8^" + idx + " = -alpha6", {a8(i)}, {-a6(i)});
  }
  return s.take();
}

}  // namespace sublorentz
