// Finitely presented modules as subquotients (span(gens) + span(rels)) / span(rels)
// of a graded free module, plus annihilators and colon submodules.
#pragma once

#include <string>
#include <vector>

#include "tate/ideal.hpp"

namespace tate {

struct FPModule {
  FreeModule ambient;
  Matrix gens;  // columns in ambient
  Matrix rels;  // columns in ambient

  /// coker(rels): every basis vector of F is a generator.
  static FPModule cokernel(const Ring& R, const FreeModule& F, const Matrix& rels);
  static FPModule free(const Ring& R, const FreeModule& F);
  static FPModule zero();

  int ngens() const { return gens.ncols(); }
  /// gens is the identity of the ambient module.
  bool is_cokernel(const Ring& R) const;
};

/// R/I
FPModule quotient_module(const Ring& R, const Ideal& I);
/// M/IM, same ambient.
FPModule quotient_by_ideal(const Ring& R, const FPModule& M, const Ideal& I);
/// M ⊗ R^k as k stacked copies.
FPModule tensor_free(const Ring& R, const FPModule& M, const FreeModule& F);

bool is_zero_module(const Ring& R, const FPModule& M);
/// Element (vector in the ambient) is zero in M.
bool is_zero_in(const Ring& R, const FPModule& M, const Vec& v);
/// Minimal generators of M kept from its generator list; rels unchanged.
FPModule prune(const Ring& R, const FPModule& M);
/// Cokernel presentation on minimal generators with minimal relations.
FPModule min_presentation(const Ring& R, const FPModule& M);

Ideal annihilator(const Ring& R, const FPModule& M);
/// (0 :_M s^t) as a subquotient of the same ambient.
FPModule colon_power(const Ring& R, const FPModule& M, const Poly& s, int t);
/// Same submodule of the same ambient quotient.
bool same_subquotient(const Ring& R, const FPModule& A, const FPModule& B);

/// dim_k M_t for t in [lo, hi]; requires graded data.
std::vector<long> graded_dims(const Ring& R, const FPModule& M, int lo, int hi);

std::string to_string(const Ring& R, const FPModule& M);

}  // namespace tate
