#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "fillfam/errors.hpp"

namespace fillfam {

// Exact rational on int64 with normalized sign and gcd-reduced terms.
// Norms, measures and density ratios all stay within small denominators
// (dyadic masses, lcm of coefficient denominators), so 64-bit components
// with 128-bit intermediates are plenty; overflow still raises instead of
// wrapping.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) fail(Errc::invalid_argument, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      fail(Errc::invalid_argument, "rational overflow");
    return static_cast<std::int64_t>(v);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
    __int128 d = (__int128)a.den * b.den;
    return reduced(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num * b.den - (__int128)b.num * a.den;
    __int128 d = (__int128)a.den * b.den;
    return reduced(n, d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return reduced((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) fail(Errc::invalid_argument, "rational division by zero");
    return reduced((__int128)a.num * b.den, (__int128)a.den * b.num);
  }
  Rat operator-() const {
    Rat r;
    r.num = -num;
    r.den = den;
    return r;
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  Rat abs() const { return num < 0 ? -*this : *this; }
  bool is_zero() const { return num == 0; }
  double to_double() const { return double(num) / double(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Accepts "p", "p/q", optional leading minus on p.
  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(std::stoll(s));
      std::int64_t p = std::stoll(s.substr(0, slash));
      std::int64_t q = std::stoll(s.substr(slash + 1));
      return Rat(p, q);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Errc::parse_error, "bad rational literal: " + s);
    }
  }

 private:
  static Rat reduced(__int128 n, __int128 d) {
    if (d == 0) fail(Errc::invalid_argument, "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 an = n < 0 ? -n : n;
    __int128 g = gcd128(an, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rat r;
    r.num = checked(n);
    r.den = checked(d);
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
};

}  // namespace fillfam
