#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "zinv/errors.hpp"

namespace zinv {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Serialized as "p" or "p/q" with q > 0 and gcd(p,q) = 1 (cpp_rational keeps
// that normal form internally).
inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(std::string_view s) {
  require(!s.empty(), Err::MalformedInput, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rat(BigInt(std::string(s)));
    BigInt p{std::string(s.substr(0, slash))};
    BigInt q{std::string(s.substr(slash + 1))};
    require(q != 0, Err::MalformedInput, "zero denominator");
    return Rat(p, q);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Err::MalformedInput, "bad rational literal '" + std::string(s) + "'");
  }
}

}  // namespace zinv
