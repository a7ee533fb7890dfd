// Submodules of free modules over R = S/J: Gröbner bases with J adjoined,
// membership and lift witnesses, syzygies, intersections, minimal generators.
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tate/buchberger.hpp"
#include "tate/matrix.hpp"

namespace tate {

/// Gröbner basis of span(gens) + J·F inside F = R^rank.
class SubmoduleGB {
 public:
  SubmoduleGB(const Ring& R, const FreeModule& F, const Matrix& gens);

  const FreeModule& ambient() const { return F_; }
  Vec normal_form(const Vec& v) const { return bb_.reduce(v); }
  bool contains(const Vec& v) const { return bb_.contains(v); }
  bool contains_all(const Matrix& A) const;
  /// Reduced basis, J·e_a included.
  std::vector<Vec> basis() const { return bb_.reduced_basis(); }
  /// Adds one more generator and completes again.
  void extend(const Vec& v);

 private:
  const Ring& R_;
  FreeModule F_;
  Buchberger bb_;
};

/// Reduced Gröbner basis of the column span with J adjoined in each coordinate.
Matrix groebner_basis(const Ring& R, const Matrix& gens, const FreeModule& F);
Matrix groebner_basis(const Ring& R, const Matrix& gens);

/// Membership witnesses for repeated lifts through a fixed matrix A: F_src → F.
class Lifter {
 public:
  Lifter(const Ring& R, const Matrix& through, const FreeModule& target,
         const FreeModule& source);
  Lifter(const Ring& R, const Matrix& through);

  /// c with through·c ≡ v modulo J, or nullopt when v is outside the column span.
  std::optional<Vec> lift(const Vec& v) const;
  std::optional<Matrix> lift_all(const Matrix& targets) const;
  bool contains(const Vec& v) const;
  /// Generators of the kernel of `through` over R.
  Matrix syzygies() const;

 private:
  const Ring& R_;
  int rows_;
  int cols_;
  Buchberger bb_;
};

std::optional<Vec> lift(const Ring& R, const Vec& target, const Matrix& through);
Matrix syzygies(const Ring& R, const Matrix& A);
Matrix syzygies(const Ring& R, const Matrix& A, const FreeModule& target, const FreeModule& source);

/// Columns of B all lie in span(A) + J F.
bool submodule_contains(const Ring& R, const Matrix& A, const Matrix& B);
bool submodule_equal(const Ring& R, const Matrix& A, const Matrix& B);
/// span(A) ∩ span(B) inside R^rows.
Matrix intersect(const Ring& R, const Matrix& A, const Matrix& B);
Matrix intersect(const Ring& R, const Matrix& A, const Matrix& B, const FreeModule& F);
/// {c : A c ∈ span(N)}, as a submodule of the source of A.
Matrix preimage(const Ring& R, const Matrix& A, const Matrix& N);
Matrix preimage(const Ring& R, const Matrix& A, const Matrix& N, const FreeModule& target,
                const FreeModule& source);

/// Homogeneous candidates kept greedily by degree when not in span(modulo, kept).
/// Candidates that are not homogeneous are kept by the same rule using sugar degree.
Matrix min_generators(const Ring& R, const Matrix& candidates, const Matrix& modulo,
                      const FreeModule& F);

/// Number of standard monomials of each degree lo..hi of F/(span(gens) + J F).
std::vector<long> quotient_dims(const Ring& R, const Matrix& gens, const FreeModule& F, int lo, int hi);

/// Bookkeeping shifts for an augmented module F ⊕ R^k where e_{rank+j} has degree of column j.
std::vector<int> column_degrees(const Ring& R, const Matrix& A, const FreeModule& F);

}  // namespace tate
