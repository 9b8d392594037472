#include "flatstrata/rational.hpp"

#include <cctype>

#include "flatstrata/error.hpp"

namespace flatstrata {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::InconsistentWidths: return "InconsistentWidths";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::Budget: return "Budget";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotHomologous: return "NotHomologous";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::UnsupportedStratum: return "UnsupportedStratum";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::BadInput, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string strip_plus(std::string_view s) {
  return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view n = text.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(n) || !valid_integer(d) || d[0] == '-')
    throw Error(ErrorCode::BadInput, "malformed rational '" + std::string(text) + "'");
  mpz_class num(strip_plus(n), 10);
  mpz_class den(strip_plus(d), 10);
  if (den == 0) throw Error(ErrorCode::BadInput, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::floor() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return Rational(f);
}

Rational Rational::mod(const Rational& m) const {
  Rational k = (*this / m).floor();
  return *this - k * m;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::Singular, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(q_.get_num().get_str(16));
  return h ^ (std::hash<std::string>{}(q_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace flatstrata
