#include "flatstrata/geometry.hpp"

#include <numeric>

#include "flatstrata/error.hpp"

namespace flatstrata {

Matrix2 Matrix2::quarter_turns(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0, 0, 1};
    case 1: return {0, -1, 1, 0};
    case 2: return {-1, 0, 0, -1};
    default: return {0, 1, -1, 0};
  }
}

Matrix2 Matrix2::rotation(const Rational& cos_t, const Rational& sin_t) {
  if (cos_t * cos_t + sin_t * sin_t != Rational(1))
    throw Error(ErrorCode::BadParameters, "rotation requires cos^2 + sin^2 = 1");
  return {cos_t, -sin_t, sin_t, cos_t};
}

Matrix2 Matrix2::inverse() const {
  Rational det_v = det();
  if (det_v.is_zero()) throw Error(ErrorCode::Singular, "matrix is not invertible");
  return {d / det_v, -b / det_v, -c / det_v, a / det_v};
}

Direction::Direction(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw Error(ErrorCode::BadParameters, "direction must be nonzero");
  std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  p_ = p;
  q_ = q;
}

Direction Direction::of(const Vec2& v) {
  if (v.x.is_zero() && v.y.is_zero()) throw Error(ErrorCode::BadParameters, "zero vector has no direction");
  mpz_class den = lcm(v.x.den(), v.y.den());
  mpz_class px = (v.x * Rational(den)).num();
  mpz_class py = (v.y * Rational(den)).num();
  mpz_class g = gcd(px, py);
  px /= g;
  py /= g;
  if (!px.fits_slong_p() || !py.fits_slong_p())
    throw Error(ErrorCode::BadParameters, "direction does not fit in 64-bit integers");
  return Direction(px.get_si(), py.get_si());
}

bool Direction::parallel(const Vec2& v) const { return cross(vector(), v).is_zero(); }

Matrix2 frame_for(const Direction& dir) {
  // Rows (a, b) and (-q, p) with a p + b q = 1 send (p, q) to (1, 0).
  std::int64_t p = dir.p(), q = dir.q();
  std::int64_t old_r = p, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r; old_r = r; r = tmp;
    tmp = old_s - quot * s; old_s = s; s = tmp;
    tmp = old_t - quot * t; old_t = t; t = tmp;
  }
  if (old_r < 0) {
    old_s = -old_s;
    old_t = -old_t;
  }
  return {Rational(static_cast<long>(old_s)), Rational(static_cast<long>(old_t)),
          Rational(static_cast<long>(-q)), Rational(static_cast<long>(p))};
}

}  // namespace flatstrata
