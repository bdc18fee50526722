#pragma once

#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace biforest {

// The rationals.
struct Q {
  Rational v;

  Q() = default;
  Q(long x) : v(x) {}
  Q(Rational x) : v(std::move(x)) {}

  static Q zero() { return Q(0L); }
  static Q one() { return Q(1L); }
  static Q parse(const std::string& s) { return Q(parse_rational(s)); }
  static const char* name() { return "Q"; }

  bool is_zero() const { return sgn(v) == 0; }
  std::string str() const { return v.get_str(); }

  friend Q operator+(const Q& a, const Q& b) { return Q(Rational(a.v + b.v)); }
  friend Q operator-(const Q& a, const Q& b) { return Q(Rational(a.v - b.v)); }
  friend Q operator*(const Q& a, const Q& b) { return Q(Rational(a.v * b.v)); }
  Q operator-() const { return Q(Rational(-v)); }
  Q& operator+=(const Q& o) { v += o.v; return *this; }
  bool operator==(const Q& o) const { return v == o.v; }
};

// The field with two elements.
struct F2 {
  bool v = false;

  F2() = default;
  F2(long x) : v((x % 2) != 0) {}

  static F2 zero() { return F2(0L); }
  static F2 one() { return F2(1L); }
  static F2 parse(const std::string& s) {
    Rational q = parse_rational(s);
    if (q.get_den() % 2 == 0) throw ParseError("'" + s + "' is not defined in F2");
    return F2(q.get_num() % 2 != 0 ? 1L : 0L);
  }
  static const char* name() { return "F2"; }

  bool is_zero() const { return !v; }
  std::string str() const { return v ? "1" : "0"; }

  friend F2 operator+(F2 a, F2 b) { return F2(static_cast<long>(a.v != b.v)); }
  friend F2 operator-(F2 a, F2 b) { return a + b; }
  friend F2 operator*(F2 a, F2 b) { return F2(static_cast<long>(a.v && b.v)); }
  F2 operator-() const { return *this; }
  F2& operator+=(F2 o) { v = v != o.v; return *this; }
  bool operator==(const F2& o) const { return v == o.v; }
};

}  // namespace biforest
