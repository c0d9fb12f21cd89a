#include "zinv/map_degree.hpp"

#include <cmath>

#include "zinv/errors.hpp"

namespace zinv {

Vec4 random_s3_point(Rng& rng) {
  while (true) {
    Vec4 p(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    double n = p.norm();
    if (n < 1e-6) continue;
    return p / n;
  }
}

namespace {

// Positively oriented orthonormal tangent frame at p in S^3: the outward
// normal followed by the frame has det > 0.
void tangent_frame(const Vec4& p, Vec4 t[3]) {
  int skip = 0;
  for (int j = 1; j < 4; ++j)
    if (std::abs(p[j]) > std::abs(p[skip])) skip = j;
  int k = 0;
  for (int j = 0; j < 4; ++j) {
    if (j == skip) continue;
    Vec4 v = Vec4::Unit(j);
    v -= v.dot(p) * p;
    for (int i = 0; i < k; ++i) v -= v.dot(t[i]) * t[i];
    double n = v.norm();
    require(n > 1e-9, Err::SingularSample, "frame construction degenerated");
    t[k++] = v / n;
  }
  Eigen::Matrix4d m;
  m.col(0) = p;
  for (int i = 0; i < 3; ++i) m.col(i + 1) = t[i];
  if (m.determinant() < 0) std::swap(t[1], t[2]);
}

struct Accum {
  double sum = 0, sumsq = 0;
  std::uint64_t n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  double mean() const { return n ? sum / n : 0; }
  double sem() const {
    if (n < 2) return 0;
    double m = mean();
    double var = (sumsq - n * m * m) / (n - 1);
    return std::sqrt(std::max(0.0, var) / n);
  }
};

}  // namespace

DegreeEstimate map_degree_s3(const std::function<Vec4(const Vec4&)>& f,
                             std::uint64_t samples, std::uint64_t seed) {
  require(samples > 0, Err::MalformedInput, "need at least one sample");
  Rng rng(seed);
  Accum acc;
  DegreeEstimate out;
  std::uint64_t guard = 0;
  while (acc.n < samples) {
    require(++guard <= 20 * samples + 100, Err::SingularSample,
            "too many singular samples");
    Vec4 p = random_s3_point(rng);
    Vec4 t[3];
    tangent_frame(p, t);
    Vec4 q = f(p);
    double qn = q.norm();
    if (qn < 1e-9) {
      ++out.singular;
      continue;
    }
    q /= qn;
    Vec4 u[3];
    tangent_frame(q, u);
    Mat3 M;
    for (int k = 0; k < 3; ++k) {
      Vec4 plus = (p + kFiniteDiffStep * t[k]).normalized();
      Vec4 minus = (p - kFiniteDiffStep * t[k]).normalized();
      Vec4 d = (f(plus) - f(minus)) / (2 * kFiniteDiffStep);
      for (int i = 0; i < 3; ++i) M(i, k) = u[i].dot(d);
    }
    double J = M.determinant();
    if (std::abs(J) < kSingularJacobianTol) {
      ++out.singular;
      continue;
    }
    acc.add(J);
  }
  out.estimate = acc.mean();  // vol(domain) = vol(target) = 2 pi^2
  out.stderr_ = acc.sem();
  out.samples = acc.n;
  return out;
}

DegreeEstimate map_degree_so3(const std::function<Mat3(const Vec4&)>& f,
                              std::uint64_t samples, std::uint64_t seed) {
  require(samples > 0, Err::MalformedInput, "need at least one sample");
  Mat3 L[3];
  L[0] << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  L[1] << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  L[2] << 0, -1, 0, 1, 0, 0, 0, 0, 0;

  Rng rng(seed);
  Accum acc;
  DegreeEstimate out;
  std::uint64_t guard = 0;
  while (acc.n < samples) {
    require(++guard <= 20 * samples + 100, Err::SingularSample,
            "too many singular samples");
    Vec4 p = random_s3_point(rng);
    Vec4 t[3];
    tangent_frame(p, t);
    Mat3 R = f(p);
    Mat3 M;
    for (int k = 0; k < 3; ++k) {
      Vec4 plus = (p + kFiniteDiffStep * t[k]).normalized();
      Vec4 minus = (p - kFiniteDiffStep * t[k]).normalized();
      Mat3 d = (f(plus) - f(minus)) / (2 * kFiniteDiffStep);
      // Coordinates in the orthonormal frame (L1 R, L2 R, L3 R).
      for (int i = 0; i < 3; ++i)
        M(i, k) = 0.5 * ((L[i] * R).transpose() * d).trace();
    }
    double J = M.determinant();
    if (std::abs(J) < kSingularJacobianTol) {
      ++out.singular;
      continue;
    }
    acc.add(J);
  }
  // vol(S^3)/vol(SO(3)) = (2 pi^2)/(8 pi^2)
  out.estimate = acc.mean() / 4.0;
  out.stderr_ = acc.sem() / 4.0;
  out.samples = acc.n;
  return out;
}

}  // namespace zinv
