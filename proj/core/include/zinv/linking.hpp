#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include <nlohmann/json.hpp>

#include "zinv/rng.hpp"

namespace zinv {

using Vec3 = Eigen::Vector3d;

// Closed parametric curve [0,1) -> R^3: either an exact circle or a periodic
// sample list evaluated through Catmull-Rom interpolation. `turns` repeats the
// traversal (linking is linear in it).
struct Curve {
  enum class Kind { Circle, Samples } kind = Kind::Circle;
  Vec3 center = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  double radius = 1.0;
  std::vector<Vec3> samples;  // distinct points, implicitly closed
  int turns = 1;

  Vec3 eval(double t) const;
  Vec3 deriv(double t) const;
};

void validate_curve(const Curve& c);  // NotClosed / MalformedInput

Curve circle_curve(const Vec3& center, const Vec3& normal, double radius);
Curve sampled_curve(std::vector<Vec3> pts);

Curve curve_from_json(const nlohmann::json& j);
nlohmann::json curve_to_json(const Curve& c);

double min_curve_distance(const Curve& a, const Curve& b, int probe = 512);

struct LinkingResult {
  double estimate = 0;
  double stderr_ = 0;   // quadrature refinement gap, as a confidence proxy
  long long integer = 0;
  double confidence = 0;  // distance from estimate to nearest half-integer gap, normalized
};

// Gauss double integral with product Gauss-Legendre quadrature (nodes per
// curve), adaptive one-step refinement when the curves come near the node
// spacing. CurvesTooClose below 1e-6 separation.
LinkingResult gauss_linking(const Curve& k1, const Curve& k2, int nodes = 256);

// Independent integer oracle: signed crossings of K1 over K2 in a random
// generic plane projection (re-randomized near degeneracies).
long long crossing_number_oracle(const Curve& k1, const Curve& k2, Rng& rng);

// The standard positively linked pair: unit circle in the xy plane at the
// origin, unit circle through it in the xz plane centered at (1,0,0).
std::pair<Curve, Curve> hopf_pair();

// Random smooth closed curves (low-order trigonometric polynomials), rejection
// sampled to keep the pair separated.
std::pair<Curve, Curve> random_link(Rng& rng);

}  // namespace zinv
