#ifndef REDORB_SCALAR_HPP
#define REDORB_SCALAR_HPP

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace redorb {

/// Arbitrary-precision rational scalar. Arithmetic is exact: no rounding,
/// fully associative/commutative/distributive. Backed by GMP's mpq.
class Rational {
public:
  Rational() : m_v(0) {}
  Rational(long num) : m_v(num) {}
  Rational(long num, long den) : m_v(num, den) { canonicalize(); }
  explicit Rational(const mpq_class& v) : m_v(v) { canonicalize(); }

  /// Parses "p", "p/q" or "-p/q" (base 10).
  static Rational parse(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational::parse: bad literal '" + s + "'");
    v.canonicalize();
    return Rational(v);
  }

  std::string str() const { return m_v.get_str(); }
  double to_double() const { return m_v.get_d(); }
  bool is_zero() const { return sgn(m_v) == 0; }
  int sign() const { return sgn(m_v); }

  Rational operator-() const { return Rational(mpq_class(-m_v)); }
  Rational& operator+=(const Rational& o) { m_v += o.m_v; return *this; }
  Rational& operator-=(const Rational& o) { m_v -= o.m_v; return *this; }
  Rational& operator*=(const Rational& o) { m_v *= o.m_v; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    m_v /= o.m_v;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.m_v == b.m_v; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.m_v != b.m_v; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.m_v < b.m_v; }

  Rational abs() const { return Rational(mpq_class(::abs(m_v))); }

private:
  void canonicalize() { m_v.canonicalize(); }
  mpq_class m_v;
};

/// Uniform scalar hooks so the algebra layer can be written once for both
/// exact and floating modes.
template <typename T> struct scalar_traits;

template <> struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return x.is_zero(); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static double magnitude(const Rational& x) { return std::fabs(x.to_double()); }
  static std::string str(const Rational& x) { return x.str(); }
};

template <> struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x, double tol = 0.0) { return std::fabs(x) <= tol; }
  static double to_double(double x) { return x; }
  static double magnitude(double x) { return std::fabs(x); }
  static std::string str(double x) { return std::to_string(x); }
};

}  // namespace redorb

#endif
