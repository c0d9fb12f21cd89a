#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include <nlohmann/json.hpp>

#include "zinv/linking.hpp"
#include "zinv/map_degree.hpp"
#include "zinv/propagator.hpp"
#include "zinv/quat.hpp"
#include "zinv/rng.hpp"

using namespace zinv;

TEST_CASE("quaternion product and conjugation") {
  Quat i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  Quat ij = qmul(i, j);
  CHECK(ij.x3 == doctest::Approx(1.0));  // ij = k
  Quat ji = qmul(j, i);
  CHECK(ji.x3 == doctest::Approx(-1.0));
  Quat kk = qmul(k, k);
  CHECK(kk.x0 == doctest::Approx(-1.0));

  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    Quat a = random_unit_quat(rng), b = random_unit_quat(rng),
         c = random_unit_quat(rng);
    Quat ab_c = qmul(qmul(a, b), c);
    Quat a_bc = qmul(a, qmul(b, c));
    CHECK(std::abs(ab_c.x0 - a_bc.x0) < 1e-12);
    CHECK(std::abs(ab_c.x1 - a_bc.x1) < 1e-12);
    CHECK(std::abs(qmul(a, b).norm() - 1.0) < 1e-12);
    Quat aa = qmul(a, qconj(a));
    CHECK(std::abs(aa.x0 - 1.0) < 1e-12);
    CHECK(std::abs(aa.x1) + std::abs(aa.x2) + std::abs(aa.x3) < 1e-12);
  }
}

TEST_CASE("rho lands in SO(3) and kills the sign") {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    Quat q = random_unit_quat(rng);
    Mat3 R = rho(q);
    CHECK((R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(R.determinant() - 1.0) < 1e-12);
    Quat mq{-q.x0, -q.x1, -q.x2, -q.x3};
    CHECK((rho(mq) - R).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((rho_closed_form(q) - R).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK((rho(Quat{1, 0, 0, 0}) - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("non-unit quaternions are rejected") {
  try {
    require_unit(Quat{1, 1, 0, 0});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NonUnit);
  }
}

TEST_CASE("the resolved conjugation identity holds, the plain one fails") {
  Rng rng(13);
  double worst_inverse = 0, worst_plain = 0;
  for (int t = 0; t < 500; ++t) {
    Quat q = random_unit_quat(rng);
    worst_inverse = std::max(worst_inverse, g3_residual_conj_inverse(q));
    worst_plain = std::max(worst_plain, g3_residual_conj_plain(q));
  }
  CHECK(worst_inverse < 1e-12);
  CHECK(worst_plain > 0.1);
}

TEST_CASE("stereographic sphere action matches the matrix action") {
  Rng rng(14);
  double worst = 0;
  for (int t = 0; t < 500; ++t) {
    Quat q = random_unit_quat(rng);
    double a = rng.normal(), b = rng.normal(), c = rng.normal();
    double n = std::sqrt(a * a + b * b + c * c);
    if (n < 1e-6 || c / n < -0.9) {
      --t;
      continue;
    }
    std::complex<double> z(a / n, b / n), z2;
    double h = c / n, h2 = 0;
    g3_stereo_action(q, z, h, z2, h2);
    CHECK(std::abs(std::norm(z2) + h2 * h2 - 1.0) < 1e-10);  // stays on S^2
    double r = (g3(q) * stereo_point(z, h) - stereo_point(z2, h2)).norm();
    worst = std::max(worst, r);
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("right multiplication block diagonalizes") {
  Rng rng(15);
  double worst = 0;
  for (int t = 0; t < 500; ++t)
    worst = std::max(worst, cmr_block_residual(random_unit_quat(rng)));
  CHECK(worst < 1e-12);

  // m_r is unitary for unit q.
  Quat q = random_unit_quat(rng);
  Mat2c m = m_r_complex(q);
  CHECK((m.adjoint() * m - Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mapping degree on calibration maps") {
  auto est_id = map_degree_s3([](const Vec4& p) { return p; }, 20000, 3);
  CHECK(std::abs(est_id.estimate - 1.0) < 1e-4);
  CHECK(est_id.singular == 0);

  auto est_conj = map_degree_s3(
      [](const Vec4& p) { return Vec4(p[0], -p[1], -p[2], -p[3]); }, 20000, 4);
  CHECK(std::abs(est_conj.estimate + 1.0) < 1e-4);

  auto est_rho = map_degree_so3(
      [](const Vec4& p) {
        return rho({p[0], p[1], p[2], p[3]});
      },
      20000, 7);
  CHECK(std::abs(est_rho.estimate - 2.0) < 1e-4);
  CHECK(est_rho.stderr_ < 1e-6);  // the covering Jacobian is constant
}

TEST_CASE("degenerate maps exhaust the resampling budget") {
  try {
    map_degree_s3([](const Vec4&) { return Vec4(1, 0, 0, 0); }, 50, 5);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::SingularSample);
  }
}

TEST_CASE("linking of the standard pair and variants") {
  auto [k1, k2] = hopf_pair();
  LinkingResult hopf = gauss_linking(k1, k2, 64);
  CHECK(std::abs(hopf.estimate - 1.0) < 1e-6);
  CHECK(hopf.integer == 1);
  CHECK(hopf.confidence > 0.99);

  Curve k2r = k2;
  k2r.turns = -1;
  CHECK(std::abs(gauss_linking(k1, k2r, 64).estimate + 1.0) < 1e-6);

  Curve k2d = k2;
  k2d.turns = 2;
  CHECK(std::abs(gauss_linking(k1, k2d, 64).estimate - 2.0) < 1e-5);

  Curve far = circle_curve(Vec3(10, 0, 0), Vec3(0, 0, 1), 1.0);
  LinkingResult split = gauss_linking(k1, far, 64);
  CHECK(std::abs(split.estimate) < 1e-6);
  CHECK(split.integer == 0);
}

TEST_CASE("rho is a homomorphism") {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    Quat a = random_unit_quat(rng);
    Quat b = random_unit_quat(rng);
    CHECK((rho(qmul(a, b)) - rho(a) * rho(b)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("sampled curves reproduce the circle linking") {
  auto [k1, k2] = hopf_pair();
  std::vector<Vec3> s1, s2;
  for (int i = 0; i < 64; ++i) {
    s1.push_back(k1.eval(i / 64.0));
    s2.push_back(k2.eval(i / 64.0));
  }
  LinkingResult r = gauss_linking(sampled_curve(s1), sampled_curve(s2), 128);
  CHECK(std::abs(r.estimate - 1.0) < 0.02);
  CHECK(r.integer == 1);
}

TEST_CASE("linking is symmetric in the two curves") {
  auto [k1, k2] = hopf_pair();
  CHECK(std::abs(gauss_linking(k1, k2, 64).estimate -
                 gauss_linking(k2, k1, 64).estimate) < 1e-9);

  Rng rng(3141);
  auto [c1, c2] = random_link(rng);
  CHECK(std::abs(gauss_linking(c1, c2, 128).estimate -
                 gauss_linking(c2, c1, 128).estimate) < 1e-6);
}

TEST_CASE("linking is invariant under rigid motions of both curves") {
  Rng rng(1618);
  auto [k1, k2] = hopf_pair();
  double base = gauss_linking(k1, k2).estimate;
  for (int t = 0; t < 3; ++t) {
    Mat3 R = rho(random_unit_quat(rng));
    Vec3 shift(rng.normal(), rng.normal(), rng.normal());
    auto moved = [&](const Curve& c) {
      if (c.kind == Curve::Kind::Circle)
        return circle_curve(R * c.center + shift, R * c.normal, c.radius);
      std::vector<Vec3> pts;
      for (const auto& p : c.samples) pts.push_back(R * p + shift);
      return sampled_curve(std::move(pts));
    };
    CHECK(std::abs(gauss_linking(moved(k1), moved(k2)).estimate - base) < 1e-3);
  }
}

TEST_CASE("integer estimates agree with the crossing oracle") {
  Rng rng(2718);
  for (int t = 0; t < 5; ++t) {
    auto [c1, c2] = random_link(rng);
    LinkingResult r = gauss_linking(c1, c2, 256);
    long long oracle = crossing_number_oracle(c1, c2, rng);
    CHECK(r.integer == oracle);
  }

  auto [k1, k2] = hopf_pair();
  CHECK(crossing_number_oracle(k1, k2, rng) == 1);
}

TEST_CASE("curve JSON forms") {
  nlohmann::json jc = {{"kind", "circle"},
                       {"center", {1.0, 0.0, 0.0}},
                       {"normal", {0.0, 1.0, 0.0}},
                       {"radius", 1.0}};
  Curve c = curve_from_json(jc);
  CHECK(c.kind == Curve::Kind::Circle);
  CHECK(curve_to_json(c) == jc);

  nlohmann::json js = {{"samples", {{1.0, 0.0, 0.0},
                                    {0.0, 1.0, 0.0},
                                    {-1.0, 0.0, 0.0},
                                    {0.0, -1.0, 0.0}}}};
  Curve s = curve_from_json(js);
  CHECK(s.kind == Curve::Kind::Samples);
  CHECK(s.samples.size() == 4);
  CHECK(curve_to_json(s) == js);

  SUBCASE("neither samples nor circle") {
    try {
      curve_from_json(nlohmann::json{{"kind", "square"}});
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::MalformedInput);
    }
  }
  SUBCASE("explicitly closed sample list is rejected") {
    nlohmann::json bad = js;
    bad["samples"].push_back({1.0, 0.0, 0.0});  // repeats the first point
    try {
      curve_from_json(bad);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::NotClosed);
    }
  }
  SUBCASE("coincident consecutive samples are rejected") {
    nlohmann::json bad = js;
    bad["samples"].push_back(bad["samples"][3]);
    try {
      curve_from_json(bad);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == Err::CoincidentPoints);
    }
  }
}

TEST_CASE("overlapping curves are refused") {
  Curve a = circle_curve(Vec3::Zero(), Vec3(0, 0, 1), 1.0);
  try {
    gauss_linking(a, a, 64);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::CurvesTooClose);
  }
}

TEST_CASE("minimum distance between offset circles") {
  Curve a = circle_curve(Vec3::Zero(), Vec3(0, 0, 1), 1.0);
  Curve b = circle_curve(Vec3(0, 0, 0.5), Vec3(0, 0, 1), 1.0);
  CHECK(min_curve_distance(a, b) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("propagator boundary extensions are limits of interior values") {
  PropagatorLimitReport r = propagator_limit_check();
  CHECK(r.pass);
  CHECK(r.diagonal_residual < kPropagatorLimitTol);
  CHECK(r.infinity_residual < kPropagatorLimitTol);
  CHECK(r.double_infinity_residual < kPropagatorLimitTol);
  CHECK(r.sequence_points == 10);
}

TEST_CASE("propagator values are unit directions") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    Vec3 x(rng.normal(), rng.normal(), rng.normal());
    Vec3 y(rng.normal(), rng.normal(), rng.normal());
    if ((x - y).norm() < 1e-6) continue;
    CHECK(std::abs(p_interior(x, y).norm() - 1.0) < 1e-12);
    CHECK((p_interior(x, y) + p_interior(y, x)).norm() < 1e-12);
    if (x.norm() > 1e-6 && y.norm() > 1e-6 && (x - y).norm() > 1e-3) {
      CHECK(std::abs(p_diagonal(x).norm() - 1.0) < 1e-12);
      CHECK(std::abs(p_infinity_left(x).norm() - 1.0) < 1e-12);
      CHECK(std::abs(p_infinity_right(y).norm() - 1.0) < 1e-12);
      CHECK(std::abs(p_double_infinity(x, y).norm() - 1.0) < 1e-12);
    }
  }
  try {
    p_interior(Vec3(1, 2, 3), Vec3(1, 2, 3));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Err::CoincidentPoints);
  }
}
