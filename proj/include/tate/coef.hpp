// Exact coefficient fields: prime fields F_p (p < 2^31) and the rationals.
#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace tate {

/// A field element. Prime-field values live in `residue`; rationals live in
/// `rational` (null means zero). A Coef is only meaningful together with the
/// Field that produced it.
struct Coef {
  std::int64_t residue = 0;
  std::shared_ptr<const mpq_class> rational;
};

class Field {
 public:
  /// characteristic 0 selects Q; otherwise p must be a prime below 2^31.
  explicit Field(std::int64_t characteristic = 0);

  std::int64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Coef zero() const { return {}; }
  Coef one() const { return from_int(1); }
  Coef from_int(long long v) const;
  Coef from_mpz(const mpz_class& v) const;
  /// num / den; den must be nonzero (and invertible mod p).
  Coef from_fraction(const mpz_class& num, const mpz_class& den) const;

  bool is_zero(const Coef& a) const {
    return p_ != 0 ? a.residue == 0 : (!a.rational || sgn(*a.rational) == 0);
  }
  bool is_one(const Coef& a) const;
  bool equal(const Coef& a, const Coef& b) const;

  Coef add(const Coef& a, const Coef& b) const;
  Coef sub(const Coef& a, const Coef& b) const;
  Coef mul(const Coef& a, const Coef& b) const;
  Coef neg(const Coef& a) const;
  Coef inv(const Coef& a) const;
  Coef div(const Coef& a, const Coef& b) const { return mul(a, inv(b)); }

  /// Canonical decimal form; prime-field residues print in (-p/2, p/2].
  std::string to_string(const Coef& a) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  Coef make_rational(mpq_class q) const;

  std::int64_t p_;
};

bool is_prime(std::int64_t n);

}  // namespace tate
