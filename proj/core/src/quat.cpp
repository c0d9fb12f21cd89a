#include "zinv/quat.hpp"

#include <cmath>

#include "zinv/rng.hpp"

namespace zinv {

double Quat::norm() const {
  return std::sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3);
}

Quat qmul(const Quat& a, const Quat& b) {
  return Quat{
      a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
      a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
      a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
      a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0,
  };
}

Quat qconj(const Quat& a) { return Quat{a.x0, -a.x1, -a.x2, -a.x3}; }

Quat random_unit_quat(Rng& rng) {
  while (true) {
    Quat q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    double n = q.norm();
    if (n < 1e-6) continue;
    return Quat{q.x0 / n, q.x1 / n, q.x2 / n, q.x3 / n};
  }
}

void require_unit(const Quat& q) {
  require(std::abs(q.norm() - 1.0) <= kUnitTol, Err::NonUnit,
          "quaternion is not unit length");
}

Mat3 rho(const Quat& q) {
  require_unit(q);
  Quat inv = qconj(q);
  const Quat basis[3] = {Quat{0, 1, 0, 0}, Quat{0, 0, 1, 0}, Quat{0, 0, 0, 1}};
  Mat3 m;
  for (int c = 0; c < 3; ++c) {
    Quat img = qmul(qmul(q, basis[c]), inv);
    m(0, c) = img.x1;
    m(1, c) = img.x2;
    m(2, c) = img.x3;
  }
  return m;
}

Mat3 rho_closed_form(const Quat& q) {
  require_unit(q);
  auto z3 = q.z3();
  auto z4 = q.z4();
  auto sq3 = z3 * z3;
  auto sq4 = z4 * z4;
  Mat3 m;
  m(0, 0) = std::norm(z3) - std::norm(z4);
  m(0, 1) = 2 * std::imag(z3 * std::conj(z4));
  m(0, 2) = 2 * std::real(z3 * std::conj(z4));
  m(1, 0) = 2 * std::imag(z3 * z4);
  m(1, 1) = std::real(sq3 + sq4);
  m(1, 2) = std::imag(sq4 - sq3);
  m(2, 0) = -2 * std::real(z3 * z4);
  m(2, 1) = std::imag(sq3 + sq4);
  m(2, 2) = std::real(sq3 - sq4);
  return m;
}

Mat3 g3(const Quat& q) {
  require_unit(q);
  auto z3 = q.z3();
  auto z4 = q.z4();
  auto sq3 = z3 * z3;
  auto sq4 = z4 * z4;
  Mat3 m;
  m(0, 0) = std::real(sq3 - sq4);
  m(0, 1) = std::imag(sq4 - sq3);
  m(0, 2) = -2 * std::real(z3 * std::conj(z4));
  m(1, 0) = std::imag(sq3 + sq4);
  m(1, 1) = std::real(sq3 + sq4);
  m(1, 2) = -2 * std::imag(z3 * std::conj(z4));
  m(2, 0) = 2 * std::real(z3 * z4);
  m(2, 1) = -2 * std::imag(z3 * z4);
  m(2, 2) = std::norm(z3) - std::norm(z4);
  return m;
}

Mat3 p13_matrix() {
  Mat3 p;
  p << 0, 0, 1, 0, 1, 0, -1, 0, 0;
  return p;
}

double g3_residual_conj_inverse(const Quat& q) {
  Mat3 p = p13_matrix();
  Mat3 lhs = g3(q);
  Mat3 rhs = p * rho(q).inverse() * p.inverse();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double g3_residual_conj_plain(const Quat& q) {
  Mat3 p = p13_matrix();
  Mat3 lhs = g3(q);
  Mat3 rhs = p * rho(q).inverse() * p;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

void g3_stereo_action(const Quat& q, const std::complex<double>& z, double h,
                      std::complex<double>& z_out, double& h_out) {
  require_unit(q);
  auto z3 = q.z3();
  auto z4 = q.z4();
  z_out = -2.0 * h * z3 * std::conj(z4) + z3 * z3 * z -
          std::conj(z4) * std::conj(z4) * std::conj(z);
  h_out = h * (std::norm(z3) - std::norm(z4)) + 2.0 * std::real(z * z3 * z4);
}

Eigen::Vector3d stereo_point(const std::complex<double>& z, double h) {
  return Eigen::Vector3d(z.real(), z.imag(), h);
}

Mat2c m_r_complex(const Quat& q) {
  Mat2c m;
  m(0, 0) = q.z3();
  m(0, 1) = -std::conj(q.z4());
  m(1, 0) = q.z4();
  m(1, 1) = std::conj(q.z3());
  return m;
}

double cmr_block_residual(const Quat& q) {
  // Real right-multiplication matrix in basis (1, i, j, k), complexified.
  const Quat basis[4] = {Quat{1, 0, 0, 0}, Quat{0, 1, 0, 0}, Quat{0, 0, 1, 0},
                         Quat{0, 0, 0, 1}};
  Mat4c M = Mat4c::Zero();
  for (int c = 0; c < 4; ++c) {
    Quat img = qmul(basis[c], q);
    M(0, c) = img.x0;
    M(1, c) = img.x1;
    M(2, c) = img.x2;
    M(3, c) = img.x3;
  }
  const std::complex<double> I(0, 1);
  const double r = 1.0 / std::sqrt(2.0);
  Mat4c U = Mat4c::Zero();
  U(0, 0) = r;       // (1 - I i)/sqrt2
  U(1, 0) = -I * r;
  U(2, 1) = r;       // (j - I k)/sqrt2
  U(3, 1) = -I * r;
  U(0, 2) = r;       // (1 + I i)/sqrt2
  U(1, 2) = I * r;
  U(2, 3) = r;       // (j + I k)/sqrt2
  U(3, 3) = I * r;
  Mat4c B = U.adjoint() * M * U;

  Mat2c top = m_r_complex(q);
  Mat4c expect = Mat4c::Zero();
  expect.block<2, 2>(0, 0) = top;
  expect.block<2, 2>(2, 2) = top.conjugate();
  return (B - expect).cwiseAbs().maxCoeff();
}

}  // namespace zinv
