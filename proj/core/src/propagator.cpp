#include "zinv/propagator.hpp"

#include <cmath>

#include "zinv/rng.hpp"

namespace zinv {

Vec3 p_interior(const Vec3& x, const Vec3& y) {
  Vec3 d = y - x;
  double n = d.norm();
  require(n > 1e-13, Err::CoincidentPoints, "direction of a coincident pair");
  return d / n;
}

Vec3 p_diagonal(const Vec3& u) {
  double n = u.norm();
  require(n > 1e-13, Err::DegenerateDirection, "approach direction vanished");
  return u / n;
}

Vec3 p_infinity_left(const Vec3& xdir) {
  double n = xdir.norm();
  require(n > 1e-13, Err::DegenerateDirection, "direction at infinity vanished");
  return -xdir / n;
}

Vec3 p_infinity_right(const Vec3& ydir) {
  double n = ydir.norm();
  require(n > 1e-13, Err::DegenerateDirection, "direction at infinity vanished");
  return ydir / n;
}

Vec3 p_double_infinity(const Vec3& x, const Vec3& y) {
  Vec3 num = x.squaredNorm() * y - y.squaredNorm() * x;
  double n = num.norm();
  require(n > 1e-13, Err::CoincidentPoints,
          "chart points collide up to scale");
  return num / n;
}

PropagatorLimitReport propagator_limit_check() {
  Rng rng(12345);
  PropagatorLimitReport rep;
  rep.sequence_points = 10;
  const int scenarios = 20;

  auto rand_vec = [&](double lo, double hi) {
    while (true) {
      Vec3 v(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      double n = v.norm();
      if (n < 1e-3) continue;
      double target = lo + (hi - lo) * rng.uniform();
      return Vec3(v * (target / n));
    }
  };

  for (int sc = 0; sc < scenarios; ++sc) {
    // Diagonal: y walks into x along a fixed direction.
    Vec3 x0 = rand_vec(0.1, 2.0);
    Vec3 u = rand_vec(1.0, 1.0);
    double eps = 0.1;
    double worst = 0;
    for (int k = 0; k < rep.sequence_points; ++k, eps *= 0.4)
      worst = std::max(worst,
                       (p_interior(x0, Vec3(x0 + eps * u)) - p_diagonal(u)).norm());
    rep.diagonal_residual = std::max(rep.diagonal_residual, worst);

    // One point at infinity, the other fixed: the residual decays like 1/R,
    // so the sequence tail carries the verdict.
    Vec3 dir = rand_vec(1.0, 1.0);
    Vec3 fixed = rand_vec(0.1, 2.0);
    double R = 10;
    double left = 0, right = 0;
    for (int k = 0; k < rep.sequence_points; ++k, R *= 10) {
      left = (p_interior(Vec3(R * dir), fixed) - p_infinity_left(dir)).norm();
      right = (p_interior(fixed, Vec3(R * dir)) - p_infinity_right(dir)).norm();
    }
    rep.infinity_residual =
        std::max(rep.infinity_residual, std::max(left, right));

    // Both at infinity: chart points a, b pulled back through z -> z/||z||^2.
    Vec3 a = rand_vec(0.2, 1.5);
    Vec3 b = rand_vec(0.2, 1.5);
    if ((a.squaredNorm() * b - b.squaredNorm() * a).norm() < 1e-3) {
      --sc;
      continue;
    }
    Vec3 limit = p_double_infinity(a, b);
    eps = 0.1;
    worst = 0;
    for (int k = 0; k < rep.sequence_points; ++k, eps *= 0.4) {
      Vec3 x = a / (eps * a.squaredNorm());
      Vec3 y = b / (eps * b.squaredNorm());
      worst = std::max(worst, (p_interior(x, y) - limit).norm());
    }
    rep.double_infinity_residual = std::max(rep.double_infinity_residual, worst);
  }

  rep.pass = rep.diagonal_residual <= kPropagatorLimitTol &&
             rep.infinity_residual <= kPropagatorLimitTol &&
             rep.double_infinity_residual <= kPropagatorLimitTol;
  return rep;
}

}  // namespace zinv
