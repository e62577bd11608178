#include "support.hpp"

using namespace sublorentz;
using testing::golden;
using testing::num;
using testing::vec;

namespace {

QuatIVPd fixture_ivp(const nlohmann::json& e) { return {vec<4>(e["v0"]), vec<3>(e["theta"])}; }

}  // namespace

TEST_CASE("closed form against high-precision exponential and quadrature") {
  for (const auto& e : golden()["quat_shoot"]) {
    const auto cf = closed_form(fixture_ivp(e));
    const double t = num(e["t"]);
    CHECK((shoot_x(cf, t) - vec<4>(e["x"])).norm() < 1e-13);
    CHECK((shoot_xdot(cf, t) - vec<4>(e["xdot"])).norm() < 1e-13);
    CHECK((shoot_z(cf, t) - vec<3>(e["z"])).norm() < 1e-12);
  }
}

TEST_CASE("branch selection") {
  const Eigen::Vector4d v(1, 0.2, 0.3, 0.1);
  CHECK(closed_form(QuatIVPd{v, {0.5, 0.4, 0.3}}).branch == QuatBranch::Generic);
  CHECK(closed_form(QuatIVPd{v, {0, 0, 0.7}}).branch == QuatBranch::Degenerate);
  CHECK(closed_form(QuatIVPd{v, {1e-4, 0, 0}}).branch == QuatBranch::Degenerate);
  CHECK(closed_form(QuatIVPd{v, {0, 0, 0}}).branch == QuatBranch::Straight);
  const auto line = closed_form(QuatIVPd{v, {0, 0, 0}});
  CHECK((shoot(line, 2.0).x - 2 * v).norm() == 0);
  CHECK(shoot(line, 2.0).z.norm() == 0);
}

TEST_CASE("generic and matrix-exponential branches agree") {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 40; ++n) {
    const auto ivp = random_quat_ivp(rng);
    const auto g = closed_form(ivp), m = closed_form(ivp, 2.0);
    REQUIRE(g.branch == QuatBranch::Generic);
    REQUIRE(m.branch == QuatBranch::Degenerate);
    for (double t : {0.25, 1.0}) {
      CHECK((shoot_x(g, t) - shoot_x(m, t)).norm() < 1e-11);
      CHECK((shoot_xdot(g, t) - shoot_xdot(m, t)).norm() < 1e-11);
      CHECK((shoot_z(g, t) - shoot_z(m, t)).norm() < 1e-10);
    }
  }
}

TEST_CASE("coefficient tables solve the reduced system") {
  std::mt19937_64 rng(22);
  for (int n = 0; n < 100; ++n) {
    const auto cf = closed_form(random_quat_ivp(rng));
    // x(0) = 0, x'(0) = v0, x'' = M x'
    CHECK(shoot_x(cf, 0.0).norm() < 1e-12 * (1 + cf.c.norm()));
    CHECK((shoot_xdot(cf, 0.0) - cf.ivp.v0).norm() < 1e-12 * (1 + cf.ivp.v0.norm()));
    CHECK(shoot_z(cf, 0.0).norm() < 1e-12 * (1 + cf.alpha.norm()));
    const double t = 0.6, h = 1e-5;
    const Eigen::Vector4d acc = (shoot_xdot(cf, t + h) - shoot_xdot(cf, t - h)) / (2 * h);
    CHECK((acc - cf.system * shoot_xdot(cf, t)).norm() < 1e-7 * (1 + acc.norm()));
    const Eigen::Vector4d vel = (shoot_x(cf, t + h) - shoot_x(cf, t - h)) / (2 * h);
    CHECK((vel - shoot_xdot(cf, t)).norm() < 1e-7 * (1 + vel.norm()));
    // horizontality z' = 1/2 <I_k x, x'>
    const Eigen::Vector3d zd = (shoot_z(cf, t + h) - shoot_z(cf, t - h)) / (2 * h);
    CHECK((zd - center_form<double, 4, 3>(shoot_x(cf, t), shoot_xdot(cf, t))).norm() < 1e-7 * (1 + zd.norm()));
  }
}

TEST_CASE("closed form as a product of the reduced eigen-structure") {
  // a^2 is the eigenvalue of M^2 on the hyperbolic plane, -a^2 on the elliptic one
  const Eigen::Vector3d th(0.4, -1.2, 0.9);
  const Eigen::Matrix4d m = reduced_system<double>(th);
  Eigen::EigenSolver<Eigen::Matrix4d> es(m * m);
  std::vector<double> ev;
  for (int i = 0; i < 4; ++i) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  const double a2 = th.squaredNorm();
  CHECK(ev[0] == doctest::Approx(-a2));
  CHECK(ev[1] == doctest::Approx(-a2));
  CHECK(ev[2] == doctest::Approx(a2));
  CHECK(ev[3] == doctest::Approx(a2));
}

TEST_CASE("coefficient identity suite") {
  std::mt19937_64 rng(23);
  for (int n = 0; n < 50; ++n) {
    const auto r = coefficient_identities(random_quat_ivp(rng));
    CHECK(r.size() >= 40);
    for (const auto& id : r) CHECK_MESSAGE(id.relative() <= 1e-10, id.name);
  }
  CHECK_THROWS_AS(coefficient_identities(QuatIVPd{{1, 0, 0, 0}, {0, 0, 1}}), std::invalid_argument);
}

TEST_CASE("norm identities") {
  std::mt19937_64 rng(24);
  for (int n = 0; n < 100; ++n) {
    const auto cf = closed_form(random_quat_ivp(rng));
    const double t = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    CHECK(norm_identity_x(cf, t).relative() <= 1e-9);
    CHECK(norm_identity_z_gram(cf, t).relative() <= 1e-9);
    CHECK_FALSE(norm_identity_z(cf, t).asserted);
  }
}

TEST_CASE("written-out Hamiltonian agrees with the frame form") {
  std::mt19937_64 rng(25);
  for (int n = 0; n < 100; ++n) {
    QuatCovector q;
    q.position = testing::random_point<4, 3>(rng);
    q.xi = testing::normal<4>(rng);
    q.theta = testing::normal<3>(rng);
    CHECK(hamiltonian_expanded(q) == doctest::Approx(hamiltonian(q)).epsilon(1e-12).scale(1));
    HeisCovector h;
    h.position = testing::random_point<2, 1>(rng);
    h.xi = testing::normal<2>(rng);
    h.theta = testing::normal<1>(rng);
    CHECK(hamiltonian_expanded(h) == doctest::Approx(hamiltonian(h)).epsilon(1e-12).scale(1));
  }
}

TEST_CASE_TEMPLATE("flow rates are Hamilton's equations", S, HeisCovector, QuatCovector) {
  constexpr int H = decltype(S::xi)::RowsAtCompileTime;
  constexpr int C = decltype(S::theta)::RowsAtCompileTime;
  std::mt19937_64 rng(26);
  const double h = 1e-6;
  for (int n = 0; n < 20; ++n) {
    S s;
    s.position = testing::random_point<H, C>(rng);
    s.xi = testing::normal<H>(rng);
    s.theta = testing::normal<C>(rng);
    const auto r = hamiltonian_rate(s);
    for (int i = 0; i < H; ++i) {
      S p = s, m = s;
      p.xi(i) += h;
      m.xi(i) -= h;
      CHECK(r.xdot(i) == doctest::Approx((hamiltonian(p) - hamiltonian(m)) / (2 * h)).epsilon(1e-7).scale(1));
      p = s;
      m = s;
      p.position.x(i) += h;
      m.position.x(i) -= h;
      CHECK(r.xidot(i) == doctest::Approx(-(hamiltonian(p) - hamiltonian(m)) / (2 * h)).epsilon(1e-7).scale(1));
    }
    CHECK((r.zdot - center_form<double, H, C>(s.position.x, r.xdot)).norm() == 0);
  }
}

TEST_CASE("initial covector reproduces the initial velocity") {
  std::mt19937_64 rng(27);
  for (int n = 0; n < 50; ++n) {
    const Eigen::Vector4d v0 = testing::normal<4>(rng);
    const Eigen::Vector3d th = testing::normal<3>(rng);
    const auto s = initial_covector<double, 4, 3>(v0, th);
    CHECK((hamiltonian_rate(s).xdot - v0).norm() == 0);
    CHECK(hamiltonian(s) == doctest::Approx(0.5 * q_form(v0, v0)));
  }
}
