#include "support.hpp"

using namespace sublorentz;
using testing::normal;
using testing::random_point;

TEST_CASE("causal classification of frame coefficients") {
  using V = Eigen::Vector4d;
  CHECK(classify_coeffs(V(2, 1, 0, 0)) == CausalClass{CausalKind::Timelike, Orientation::FutureDirected});
  CHECK(classify_coeffs(V(-2, 1, 0, 0)) == CausalClass{CausalKind::Timelike, Orientation::PastDirected});
  CHECK(classify_coeffs(V(1, 2, 0, 0)).kind == CausalKind::Spacelike);
  CHECK(classify_coeffs(V(1, 2, 0, 0)).orientation == Orientation::Unoriented);
  CHECK(classify_coeffs(V(1, 0, 1, 0)) == CausalClass{CausalKind::Null, Orientation::FutureDirected});
  CHECK(classify_coeffs(V(0, 0, 0, 0)).kind == CausalKind::ZeroVector);
  CHECK(classify_coeffs(Eigen::Vector2d(1, 1 + 1e-13)).kind == CausalKind::Spacelike);
  CHECK(classify_coeffs(Eigen::Vector2d(1, 1 + 1e-13), 1e-12).kind == CausalKind::Null);
}

TEST_CASE("classification is invariant under left translation") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 100; ++n) {
    const auto p = random_point<4, 3>(rng);
    const Eigen::Vector4d c = normal<4>(rng);
    HorizontalVector<double, 4, 3> at_p{c, p}, at_0{c, {}};
    CHECK(classify(at_p) == classify(at_0));
    CHECK(q_inner(at_p, at_p) == q_inner(at_0, at_0));
  }
  CHECK(q_inner(frame_vector<double, 4, 3>(1), frame_vector<double, 4, 3>(1)) == -1);
  CHECK(q_inner(frame_vector<double, 4, 3>(3), frame_vector<double, 4, 3>(3)) == 1);
}

TEST_CASE("co-metric has the horizontal signature and kills the dual forms") {
  std::mt19937_64 rng(11);
  const auto p = random_point<4, 3>(rng);
  const auto g = co_metric(p);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 7, 7>> es(g);
  int neg = 0, pos = 0, zero = 0;
  for (int i = 0; i < 7; ++i) {
    const double e = es.eigenvalues()(i);
    (std::abs(e) < 1e-12 ? zero : e < 0 ? neg : pos)++;
  }
  CHECK(neg == 1);
  CHECK(pos == 3);
  CHECK(zero == 3);
}

TEST_CASE("eta gradient matches differences along the frame flows") {
  std::mt19937_64 rng(17);
  for (double alpha : {0.0, 0.5, 2.0, kEtaAlphaMax}) {
    for (int n = 0; n < 50; ++n) {
      auto p = random_point<4, 3>(rng);
      // keep away from the kinks |z_k| = 0
      for (int k = 0; k < 3; ++k)
        if (std::abs(p.z(k)) < 0.05) p.z(k) += 0.1;
      const auto g = horizontal_gradient_eta(alpha, p);
      const auto fd = horizontal_gradient_fd<double, 4, 3>([&](const QuatPointd& q) { return eta(alpha, q); }, p);
      CHECK((g.coeffs - fd.coeffs).norm() < 1e-7 * (1 + g.coeffs.norm()));
    }
  }
}

TEST_CASE("eta gradient written out on the positive orthant") {
  QuatPointd p;
  p.x << 0.3, -0.7, 1.1, 0.4;
  p.z << 0.2, 0.5, 0.9;
  const double a = 1.3, x1 = 0.3, x2 = -0.7, x3 = 1.1, x4 = 0.4;
  const Eigen::Vector4d expect{2 * x1 - a / 2 * (x2 - x3 - x4), 2 * x2 + a / 2 * (-x1 - x3 + x4),
                              2 * x3 + a / 2 * (x1 + x2 + x4), 2 * x4 + a / 2 * (x1 - x2 - x3)};
  CHECK((horizontal_gradient_eta(a, p).coeffs - expect).norm() < 1e-14);
}

TEST_CASE("length of a straight timelike segment") {
  QuatCurve c;
  const Eigen::Vector4d v(2, 1, 0.5, -0.3);
  for (int i = 0; i <= 10; ++i) {
    c.t.push_back(0.1 * i);
    c.points.push_back(QuatPointd(v * 0.1 * i, Eigen::Vector3d::Zero()));
  }
  const auto r = curve_length(c);
  CHECK(r.length == doctest::Approx(std::sqrt(-q_form(v, v))).epsilon(1e-12));
  for (const auto& k : r.classes) CHECK(k.kind == CausalKind::Timelike);
  c.points[5].z(0) = 0.1;
  CHECK_THROWS_AS(curve_length(c), NotHorizontal);
}
