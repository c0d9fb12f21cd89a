#include "zinv/framing.hpp"

namespace zinv {

void validate_framed(const FramedSeries& fs) {
  AlgebraElement deg0 = degree_part(fs.z, 0);
  AlgebraElement unit = empty_diagram_element(fs.z.bound);
  require(deg0 == unit, Err::NonzeroConstantTerm,
          "series must start with the empty diagram, coefficient 1");
  if (fs.z_sphere)
    require(fs.p1 % 4 == 0, Err::InvariantViolation,
            "p1 of an integral homology sphere lies in 4Z");
}

void validate_xi(const AlgebraElement& xi) {
  for (int n = 0; n <= xi.bound; n += 2)
    require(degree_part(xi, n).is_zero(), Err::BadXiParity,
            "correction series has even-degree terms");
}

AlgebraElement xi_standard(int bound) {
  AlgebraElement xi = zero_element(bound);
  if (bound >= 1) {
    AlgebraElement theta = theta_element(bound);
    xi = add(xi, scale(Rat(-1) / Rat(12), theta));
  }
  return xi;
}

AlgebraElement framing_correct(const FramedSeries& fs, const AlgebraElement& xi) {
  validate_framed(fs);
  validate_xi(xi);
  AlgebraElement expo = scale(Rat(fs.p1) / Rat(4), xi);
  return product(fs.z, exp_truncated(expo));
}

nlohmann::json framed_to_json(const FramedSeries& fs) {
  nlohmann::json j;
  j["z"] = element_to_json(fs.z);
  j["p1"] = fs.p1;
  j["z_sphere"] = fs.z_sphere;
  return j;
}

FramedSeries framed_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("z") && j.contains("p1") &&
              j.contains("z_sphere"),
          Err::MalformedInput, "framed series needs z, p1, z_sphere");
  FramedSeries fs;
  fs.z = element_from_json(j.at("z"));
  fs.p1 = j.at("p1").get<long long>();
  fs.z_sphere = j.at("z_sphere").get<bool>();
  return fs;
}

}  // namespace zinv
