#include "zinv/linking.hpp"

#include <algorithm>
#include <cmath>

#include "zinv/errors.hpp"

namespace zinv {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Deterministic right-handed frame (e1, e2, n) for a circle plane.
void plane_frame(const Vec3& normal, Vec3& e1, Vec3& e2) {
  Vec3 n = normal.normalized();
  int k = 0;
  double best = std::abs(n[0]);
  for (int j = 1; j < 3; ++j)
    if (std::abs(n[j]) < best) {
      best = std::abs(n[j]);
      k = j;
    }
  Vec3 axis = Vec3::Unit(k);
  e1 = (axis - axis.dot(n) * n).normalized();
  e2 = n.cross(e1);
}

void catmull_rom(const std::vector<Vec3>& pts, double u, Vec3& pos, Vec3& dpos) {
  const int m = static_cast<int>(pts.size());
  double scaled = u * m;
  int i = static_cast<int>(std::floor(scaled));
  double s = scaled - i;
  i = ((i % m) + m) % m;
  const Vec3& p0 = pts[(i - 1 + m) % m];
  const Vec3& p1 = pts[i];
  const Vec3& p2 = pts[(i + 1) % m];
  const Vec3& p3 = pts[(i + 2) % m];
  Vec3 a = 2.0 * p1;
  Vec3 b = p2 - p0;
  Vec3 c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
  Vec3 d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
  pos = 0.5 * (a + b * s + c * s * s + d * s * s * s);
  dpos = 0.5 * (b + 2.0 * c * s + 3.0 * d * s * s) * m;
}

}  // namespace

Vec3 Curve::eval(double t) const {
  if (kind == Kind::Circle) {
    Vec3 e1, e2;
    plane_frame(normal, e1, e2);
    double a = 2 * kPi * turns * t;
    return center + radius * (std::cos(a) * e1 + std::sin(a) * e2);
  }
  double tau = t * turns - std::floor(t * turns);
  Vec3 pos, dpos;
  catmull_rom(samples, tau, pos, dpos);
  return pos;
}

Vec3 Curve::deriv(double t) const {
  if (kind == Kind::Circle) {
    Vec3 e1, e2;
    plane_frame(normal, e1, e2);
    double a = 2 * kPi * turns * t;
    return radius * 2 * kPi * turns * (-std::sin(a) * e1 + std::cos(a) * e2);
  }
  double tau = t * turns - std::floor(t * turns);
  Vec3 pos, dpos;
  catmull_rom(samples, tau, pos, dpos);
  return dpos * turns;
}

void validate_curve(const Curve& c) {
  require(c.turns != 0, Err::MalformedInput, "turns must be nonzero");
  if (c.kind == Curve::Kind::Circle) {
    require(c.radius > 0, Err::MalformedInput, "radius must be positive");
    require(c.normal.norm() > 1e-12, Err::MalformedInput, "normal vanished");
    return;
  }
  require(c.samples.size() >= 3, Err::MalformedInput,
          "sampled curve needs at least 3 points");
  // The sample list is implicitly closed; an explicit closing duplicate would
  // double the closure segment.
  require((c.samples.front() - c.samples.back()).norm() > 1e-12, Err::NotClosed,
          "drop the duplicated closing point; samples close implicitly");
  for (std::size_t i = 0; i + 1 < c.samples.size(); ++i)
    require((c.samples[i] - c.samples[i + 1]).norm() > 1e-12,
            Err::CoincidentPoints, "adjacent samples coincide");
}

Curve circle_curve(const Vec3& center, const Vec3& normal, double radius) {
  Curve c;
  c.kind = Curve::Kind::Circle;
  c.center = center;
  c.normal = normal;
  c.radius = radius;
  validate_curve(c);
  return c;
}

Curve sampled_curve(std::vector<Vec3> pts) {
  Curve c;
  c.kind = Curve::Kind::Samples;
  c.samples = std::move(pts);
  validate_curve(c);
  return c;
}

Curve curve_from_json(const nlohmann::json& j) {
  require(j.is_object(), Err::MalformedInput, "curve must be a JSON object");
  Curve c;
  c.turns = j.value("turns", 1);
  if (j.contains("samples")) {
    c.kind = Curve::Kind::Samples;
    require(j.at("samples").is_array(), Err::MalformedInput,
            "samples must be an array of 3-vectors");
    for (const auto& a : j.at("samples")) {
      require(a.is_array() && a.size() == 3, Err::MalformedInput,
              "expected a 3-vector");
      c.samples.emplace_back(a[0].get<double>(), a[1].get<double>(),
                             a[2].get<double>());
    }
  } else if (j.value("kind", std::string{}) == "circle") {
    c.kind = Curve::Kind::Circle;
    require(j.contains("center") && j.contains("normal") && j.contains("radius"),
            Err::MalformedInput, "circle needs center, normal, radius");
    auto rd = [](const nlohmann::json& a) {
      require(a.is_array() && a.size() == 3, Err::MalformedInput,
              "expected a 3-vector");
      return Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
    };
    c.center = rd(j.at("center"));
    c.normal = rd(j.at("normal"));
    c.radius = j.at("radius").get<double>();
  } else {
    fail(Err::MalformedInput,
         "curve needs either a samples array or kind \"circle\"");
  }
  validate_curve(c);
  return c;
}

nlohmann::json curve_to_json(const Curve& c) {
  nlohmann::json j;
  if (c.turns != 1) j["turns"] = c.turns;
  if (c.kind == Curve::Kind::Circle) {
    j["kind"] = "circle";
    j["center"] = {c.center[0], c.center[1], c.center[2]};
    j["normal"] = {c.normal[0], c.normal[1], c.normal[2]};
    j["radius"] = c.radius;
  } else {
    auto pts = nlohmann::json::array();
    for (const auto& p : c.samples) pts.push_back({p[0], p[1], p[2]});
    j["samples"] = pts;
  }
  return j;
}

double min_curve_distance(const Curve& a, const Curve& b, int probe) {
  require(probe >= 8, Err::MalformedInput, "probe grid too small");
  std::vector<Vec3> pa(probe), pb(probe);
  for (int i = 0; i < probe; ++i) {
    pa[i] = a.eval((i + 0.5) / probe);
    pb[i] = b.eval((i + 0.5) / probe);
  }
  double best = std::numeric_limits<double>::infinity();
  double ta = 0, tb = 0;
  for (int i = 0; i < probe; ++i)
    for (int j = 0; j < probe; ++j) {
      double d = (pa[i] - pb[j]).squaredNorm();
      if (d < best) {
        best = d;
        ta = (i + 0.5) / probe;
        tb = (j + 0.5) / probe;
      }
    }
  best = std::sqrt(best);
  double span = 1.0 / probe;
  for (int round = 0; round < 4; ++round) {
    double nta = ta, ntb = tb;
    for (int i = -4; i <= 4; ++i)
      for (int j = -4; j <= 4; ++j) {
        double s = ta + i * span / 4, t = tb + j * span / 4;
        double d = (a.eval(s) - b.eval(t)).norm();
        if (d < best) {
          best = d;
          nta = s;
          ntb = t;
        }
      }
    ta = nta;
    tb = ntb;
    span /= 4;
  }
  return best;
}

namespace {

void gauss_legendre(int n, std::vector<double>& x01, std::vector<double>& w01) {
  x01.resize(n);
  w01.resize(n);
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x01[i - 1] = (1.0 - x) / 2.0;
    w01[i - 1] = 1.0 / ((1 - x * x) * pp * pp);
  }
}

double gauss_integral(const Curve& k1, const Curve& k2, int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  std::vector<Vec3> g1(n), d1(n), g2(n), d2(n);
  for (int i = 0; i < n; ++i) {
    g1[i] = k1.eval(x[i]);
    d1[i] = k1.deriv(x[i]);
    g2[i] = k2.eval(x[i]);
    d2[i] = k2.deriv(x[i]);
  }
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    double row = 0;
    for (int j = 0; j < n; ++j) {
      Vec3 r = g1[i] - g2[j];
      double rn = r.norm();
      row += w[j] * d1[i].cross(d2[j]).dot(r) / (rn * rn * rn);
    }
    acc += w[i] * row;
  }
  return acc / (4 * kPi);
}

double curve_length_estimate(const Curve& c, int n = 256) {
  double L = 0;
  Vec3 prev = c.eval(0.0);
  for (int i = 1; i <= n; ++i) {
    Vec3 cur = c.eval(static_cast<double>(i) / n);
    L += (cur - prev).norm();
    prev = cur;
  }
  return L;
}

}  // namespace

LinkingResult gauss_linking(const Curve& k1, const Curve& k2, int nodes) {
  validate_curve(k1);
  validate_curve(k2);
  require(nodes >= 16, Err::MalformedInput, "too few quadrature nodes");
  double sep = min_curve_distance(k1, k2);
  require(sep >= 1e-6, Err::CurvesTooClose, "curves closer than 1e-6");

  // One adaptive refinement step when the gap approaches the node spacing.
  double L = std::max(curve_length_estimate(k1), curve_length_estimate(k2));
  int n = nodes;
  if (sep < 10.0 * L / nodes) n *= 2;

  double coarse = gauss_integral(k1, k2, n);
  double fine = gauss_integral(k1, k2, 2 * n);
  LinkingResult res;
  res.estimate = fine;
  res.stderr_ = std::abs(fine - coarse);
  res.integer = std::llround(fine);
  res.confidence = std::max(0.0, 1.0 - 2.0 * std::abs(fine - res.integer));
  return res;
}

long long crossing_number_oracle(const Curve& k1, const Curve& k2, Rng& rng) {
  validate_curve(k1);
  validate_curve(k2);
  const int N = 1024;
  const double margin = 1e-4;

  for (int attempt = 0; attempt < 64; ++attempt) {
    // Random projection direction with a right-handed (a, b, d) frame.
    Vec3 d;
    do {
      d = Vec3(rng.normal(), rng.normal(), rng.normal());
    } while (d.norm() < 1e-3);
    d.normalize();
    Vec3 a, b;
    plane_frame(d, a, b);
    // plane_frame returns (e1, e2, n) right-handed with e1 x e2 = n; we need
    // a x b = d, so a = e1, b = e2 works directly.

    std::vector<Eigen::Vector2d> p1(N + 1), p2(N + 1);
    std::vector<double> h1(N + 1), h2(N + 1);
    for (int i = 0; i <= N; ++i) {
      double t = static_cast<double>(i) / N;
      Vec3 g1 = k1.eval(t), g2 = k2.eval(t);
      p1[i] = {a.dot(g1), b.dot(g1)};
      h1[i] = d.dot(g1);
      p2[i] = {a.dot(g2), b.dot(g2)};
      h2[i] = d.dot(g2);
    }

    long long total = 0;
    bool degenerate = false;
    for (int i = 0; i < N && !degenerate; ++i) {
      Eigen::Vector2d u = p1[i + 1] - p1[i];
      for (int j = 0; j < N; ++j) {
        Eigen::Vector2d v = p2[j + 1] - p2[j];
        Eigen::Vector2d rhs = p2[j] - p1[i];
        double det = u.x() * (-v.y()) - (-v.x()) * u.y();
        if (std::abs(det) < 1e-12) continue;
        double alpha = (rhs.x() * (-v.y()) - (-v.x()) * rhs.y()) / det;
        double beta = (u.x() * rhs.y() - rhs.x() * u.y()) / det;
        if (alpha < -margin || alpha > 1 + margin || beta < -margin ||
            beta > 1 + margin)
          continue;
        if (alpha < margin || alpha > 1 - margin || beta < margin ||
            beta > 1 - margin) {
          degenerate = true;  // crossing too close to a sample node
          break;
        }
        double hh1 = h1[i] + alpha * (h1[i + 1] - h1[i]);
        double hh2 = h2[j] + beta * (h2[j + 1] - h2[j]);
        if (std::abs(hh1 - hh2) < margin) {
          degenerate = true;
          break;
        }
        if (hh1 < hh2) continue;  // count K1-over-K2 crossings only
        double t1 = (i + alpha) / N;
        double t2 = (j + beta) / N;
        Vec3 g1p = k1.deriv(t1), g2p = k2.deriv(t2);
        Eigen::Vector2d dir1(a.dot(g1p), b.dot(g1p));
        Eigen::Vector2d dir2(a.dot(g2p), b.dot(g2p));
        double s = dir1.x() * dir2.y() - dir1.y() * dir2.x();
        if (std::abs(s) < 1e-9) {
          degenerate = true;
          break;
        }
        total += s > 0 ? 1 : -1;
      }
    }
    if (!degenerate) return total;
  }
  fail(Err::SingularSample, "no generic projection found");
}

std::pair<Curve, Curve> hopf_pair() {
  Curve k1 = circle_curve(Vec3::Zero(), Vec3::UnitZ(), 1.0);
  Curve k2 = circle_curve(Vec3(1, 0, 0), Vec3::UnitY(), 1.0);
  return {k1, k2};
}

std::pair<Curve, Curve> random_link(Rng& rng) {
  auto trig = [&](double scale) {
    const int K = 3;
    Vec3 a[K + 1], b[K + 1];
    for (int k = 0; k <= K; ++k) {
      double damp = scale / (1.0 + k * k);
      a[k] = damp * Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      b[k] = damp * Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    }
    b[0] = Vec3::Zero();
    std::vector<Vec3> pts(256);
    for (int i = 0; i < 256; ++i) {
      double t = 2 * kPi * i / 256;
      Vec3 p = Vec3::Zero();
      for (int k = 0; k <= K; ++k)
        p += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
      pts[i] = p;
    }
    return pts;
  };
  for (int attempt = 0; attempt < 200; ++attempt) {
    Curve k1, k2;
    try {
      k1 = sampled_curve(trig(1.0));
      k2 = sampled_curve(trig(1.0));
    } catch (const Error&) {
      continue;
    }
    if (min_curve_distance(k1, k2, 128) < 0.05) continue;
    // Keep each curve honestly curve-like (no near-collapse to a point).
    if (curve_length_estimate(k1) < 1.0 || curve_length_estimate(k2) < 1.0)
      continue;
    return {k1, k2};
  }
  fail(Err::CoincidentPoints, "random link sampling failed");
}

}  // namespace zinv
