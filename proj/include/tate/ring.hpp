// Monomials, sparse polynomials and module vectors over a graded quotient
// ring R = k[x_1..x_m]/J.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tate/coef.hpp"

namespace tate {

inline constexpr int kMaxVars = 12;

enum class MonomialOrder { degrevlex, deglex, lex };

MonomialOrder parse_order(std::string_view name);
std::string order_name(MonomialOrder order);

struct Mono {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::int32_t deg = 0;  // weighted degree, kept in sync by Ring

  bool operator==(const Mono& o) const { return exp == o.exp; }
  bool is_one() const { return deg == 0 && exp == std::array<std::uint16_t, kMaxVars>{}; }
};

/// One term of a module vector; polynomials are vectors supported in component 0.
struct Term {
  Coef coef;
  Mono mono;
  int comp = 0;
};

/// Terms strictly decreasing in the ring's position-over-term order, with
/// nonzero coefficients. The same representation serves polynomials.
using Vec = std::vector<Term>;
using Poly = Vec;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  struct Variable {
    std::string name;
    int weight = 1;
  };

  /// Validates and builds the ring, computing the reduced Gröbner basis of J.
  static RingPtr create(Field field, std::vector<Variable> vars,
                        MonomialOrder order, const std::vector<std::string>& quotient);
  static RingPtr create(Field field, std::vector<Variable> vars,
                        MonomialOrder order = MonomialOrder::degrevlex,
                        const std::vector<Poly>& quotient = {});

  const Field& field() const { return field_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<Variable>& variables() const { return vars_; }
  MonomialOrder order() const { return order_; }
  const std::vector<Poly>& quotient_gens() const { return quotient_gens_; }
  /// Reduced Gröbner basis of J (empty for a polynomial ring).
  const std::vector<Poly>& quotient_basis() const { return quotient_gb_; }
  bool is_polynomial_ring() const { return quotient_gb_.empty(); }
  int var_index(std::string_view name) const;  // -1 if absent

  // monomials
  Mono one_mono() const { return {}; }
  Mono var_mono(int i, int power = 1) const;
  Mono mono_from(const std::vector<int>& exps) const;
  Mono mono_mul(const Mono& a, const Mono& b) const;
  bool mono_divides(const Mono& a, const Mono& b) const;  // a | b
  Mono mono_div(const Mono& b, const Mono& a) const;      // b / a, requires a | b
  Mono mono_lcm(const Mono& a, const Mono& b) const;
  bool mono_coprime(const Mono& a, const Mono& b) const;
  int cmp_mono(const Mono& a, const Mono& b) const;
  /// Position over term: lower component index is larger.
  int cmp_term(const Term& a, const Term& b) const {
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return cmp_mono(a.mono, b.mono);
  }

  // construction
  Poly zero() const { return {}; }
  Poly constant(const Coef& c) const;
  Poly constant(long long c) const { return constant(field_.from_int(c)); }
  Poly var(int i, int power = 1) const;
  Poly var(std::string_view name, int power = 1) const;
  Vec unit_vec(int comp) const;
  Vec place(const Poly& f, int comp) const;           // f e_comp

  // arithmetic (no reduction modulo J)
  Vec add(const Vec& a, const Vec& b) const;
  Vec sub(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec scale(const Vec& a, const Coef& c) const;
  Vec mul_term(const Vec& a, const Coef& c, const Mono& m) const;
  Vec mul(const Poly& f, const Vec& v) const;
  Poly pow(const Poly& f, int n) const;
  /// a += c * m * b, in place.
  void axpy(Vec& a, const Coef& c, const Mono& m, const Vec& b) const;

  // arithmetic in R (results reduced modulo J)
  Poly normal_form(const Poly& f) const;
  Vec normal_form_vec(const Vec& v) const;
  Poly r_add(const Poly& f, const Poly& g) const { return normal_form(add(f, g)); }
  Poly r_sub(const Poly& f, const Poly& g) const { return normal_form(sub(f, g)); }
  Poly r_mul(const Poly& f, const Poly& g) const { return normal_form(mul(f, g)); }
  Poly r_pow(const Poly& f, int n) const;
  bool equal_in_ring(const Poly& f, const Poly& g) const;

  // component helpers
  Poly component(const Vec& v, int comp) const;
  Vec shift_components(const Vec& v, int offset) const;
  int lead_comp(const Vec& v) const { return v.empty() ? -1 : v.front().comp; }

  // degrees
  int degree(const Poly& f) const;  // max weighted degree; 0 for zero
  int min_degree(const Poly& f) const;
  bool is_homogeneous(const Poly& f) const;
  /// True when every term of v has degree mono + shifts[comp] equal; zero vectors count.
  bool vec_homogeneous(const Vec& v, const std::vector<int>& shifts, int* deg = nullptr) const;

  // text
  Poly parse(std::string_view text) const;
  std::string to_string(const Poly& f) const;
  std::string describe() const;

  bool same_ring(const Ring& o) const { return this == &o; }

 private:
  Ring(Field field, std::vector<Variable> vars, MonomialOrder order);
  void set_degree(Mono& m) const;

  Field field_;
  std::vector<Variable> vars_;
  MonomialOrder order_;
  std::vector<Poly> quotient_gens_;
  std::vector<Poly> quotient_gb_;
};

/// Parses the ring description document (JSON object with char, vars, order, quotient).
RingPtr parse_ring(std::string_view text);

}  // namespace tate
