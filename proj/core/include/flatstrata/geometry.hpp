#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "flatstrata/rational.hpp"

namespace flatstrata {

/// Planar vector with exact coordinates (holonomy, positions).
struct Vec2 {
  Rational x;
  Rational y;

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(const Rational& s, const Vec2& v) { return {s * v.x, s * v.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2& a, const Vec2& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
  friend std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << "(" << v.x << ", " << v.y << ")";
  }
};

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rational norm_squared(const Vec2& a) { return dot(a, a); }

/// 2x2 rational matrix acting on column vectors.
struct Matrix2 {
  Rational a{1}, b{0};
  Rational c{0}, d{1};

  static Matrix2 identity() { return {}; }
  /// u_t = [[1, t], [0, 1]].
  static Matrix2 shear(const Rational& t) { return {1, t, 0, 1}; }
  /// Rational stand-in for a_s = diag(1, e^s): diag(1, lambda).
  static Matrix2 stretch(const Rational& lambda) { return {1, 0, 0, lambda}; }
  static Matrix2 diag(const Rational& x, const Rational& y) { return {x, 0, 0, y}; }
  /// Rotation by k quarter turns counterclockwise; the rational rotations.
  static Matrix2 quarter_turns(int k);
  /// Rotation with cos = c, sin = s; requires c^2 + s^2 = 1.
  static Matrix2 rotation(const Rational& cos_t, const Rational& sin_t);

  Rational det() const { return a * d - b * c; }
  Matrix2 inverse() const;

  Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Matrix2 operator*(const Matrix2& m) const {
    return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
  }
  Matrix2 operator-() const { return {-a, -b, -c, -d}; }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Matrix2& m) {
    return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
  }
};

/// Primitive integer direction (p, q) with q > 0, or (1, 0) for horizontal.
class Direction {
 public:
  Direction() = default;
  /// Normalizes any nonzero integer vector to its primitive representative.
  Direction(std::int64_t p, std::int64_t q);

  static Direction horizontal() { return {1, 0}; }
  static Direction vertical() { return {0, 1}; }
  /// Direction of a nonzero rational vector.
  static Direction of(const Vec2& v);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  bool is_horizontal() const { return q_ == 0; }
  Vec2 vector() const { return {Rational(static_cast<long>(p_)), Rational(static_cast<long>(q_))}; }
  /// True if v is a (possibly negative) multiple of this direction.
  bool parallel(const Vec2& v) const;
  std::string str() const { return std::to_string(p_) + "," + std::to_string(q_); }

  friend bool operator==(const Direction&, const Direction&) = default;
  friend auto operator<=>(const Direction&, const Direction&) = default;

 private:
  std::int64_t p_ = 1;
  std::int64_t q_ = 0;
};

/// An SL(2,Z) matrix sending the direction to the positive horizontal axis.
Matrix2 frame_for(const Direction& dir);

}  // namespace flatstrata
