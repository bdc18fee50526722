#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace biforest {

using Rational = mpq_class;

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ParseError("not a rational number: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace biforest
