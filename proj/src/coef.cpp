#include "tate/coef.hpp"

#include "tate/errors.hpp"

namespace tate {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::int64_t characteristic) : p_(characteristic) {
  if (p_ < 0 || (p_ != 0 && !is_prime(p_)))
    throw ParseError("characteristic must be 0 or a prime, got " + std::to_string(p_));
  if (p_ >= (std::int64_t{1} << 31))
    throw ParseError("prime characteristic must be below 2^31");
}

Coef Field::make_rational(mpq_class q) const {
  Coef c;
  if (sgn(q) != 0) c.rational = std::make_shared<const mpq_class>(std::move(q));
  return c;
}

Coef Field::from_int(long long v) const {
  if (p_ != 0) {
    std::int64_t r = v % p_;
    if (r < 0) r += p_;
    return Coef{r, nullptr};
  }
  return make_rational(mpq_class(mpz_class(std::to_string(v))));
}

Coef Field::from_mpz(const mpz_class& v) const {
  if (p_ != 0) {
    mpz_class r = v % p_;
    if (r < 0) r += p_;
    return Coef{static_cast<std::int64_t>(r.get_si()), nullptr};
  }
  return make_rational(mpq_class(v));
}

Coef Field::from_fraction(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) throw ParseError("division by zero in coefficient");
  if (p_ != 0) {
    Coef d = from_mpz(den);
    if (is_zero(d)) throw ParseError("denominator vanishes modulo the characteristic");
    return div(from_mpz(num), d);
  }
  mpq_class q(num, den);
  q.canonicalize();
  return make_rational(std::move(q));
}

bool Field::is_one(const Coef& a) const {
  if (p_ != 0) return a.residue == 1;
  return a.rational && *a.rational == 1;
}

bool Field::equal(const Coef& a, const Coef& b) const {
  if (p_ != 0) return a.residue == b.residue;
  if (is_zero(a) || is_zero(b)) return is_zero(a) && is_zero(b);
  return *a.rational == *b.rational;
}

Coef Field::add(const Coef& a, const Coef& b) const {
  if (p_ != 0) {
    std::int64_t r = a.residue + b.residue;
    if (r >= p_) r -= p_;
    return Coef{r, nullptr};
  }
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  return make_rational(*a.rational + *b.rational);
}

Coef Field::sub(const Coef& a, const Coef& b) const {
  if (p_ != 0) {
    std::int64_t r = a.residue - b.residue;
    if (r < 0) r += p_;
    return Coef{r, nullptr};
  }
  if (is_zero(b)) return a;
  if (is_zero(a)) return neg(b);
  return make_rational(*a.rational - *b.rational);
}

Coef Field::mul(const Coef& a, const Coef& b) const {
  if (p_ != 0) return Coef{(a.residue * b.residue) % p_, nullptr};
  if (is_zero(a) || is_zero(b)) return {};
  return make_rational(*a.rational * *b.rational);
}

Coef Field::neg(const Coef& a) const {
  if (p_ != 0) return Coef{a.residue == 0 ? 0 : p_ - a.residue, nullptr};
  if (is_zero(a)) return {};
  return make_rational(-*a.rational);
}

Coef Field::inv(const Coef& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  if (p_ != 0) {
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a.residue;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return Coef{t, nullptr};
  }
  return make_rational(1 / *a.rational);
}

std::string Field::to_string(const Coef& a) const {
  if (p_ != 0) {
    std::int64_t v = a.residue;
    if (v > p_ / 2) v -= p_;
    return std::to_string(v);
  }
  if (is_zero(a)) return "0";
  return a.rational->get_str();
}

}  // namespace tate
