// Bounded chain complexes of finitely presented modules, chain maps, homology
// as subquotients, cones, shifts, pullbacks, Hom complexes and homotopies.
#pragma once

#include <climits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tate/module.hpp"

namespace tate {

/// Term n is coker(rels[n]) on the free module terms[n]; free when rels[n] has no columns.
struct Complex {
  int lo = 0;
  std::vector<FreeModule> terms;  // degree lo + k
  std::vector<Matrix> rels;       // same indexing as terms
  std::vector<Matrix> diffs;      // diffs[k]: degree lo+k+1 -> lo+k

  int size() const { return static_cast<int>(terms.size()); }
  int hi() const { return lo + size() - 1; }
  bool has(int n) const { return n >= lo && n <= hi(); }
  FreeModule term(int n) const;
  int rank(int n) const { return term(n).rank(); }
  Matrix rel(int n) const;
  /// ∂_n : term(n) -> term(n-1); a zero matrix outside the stored range.
  Matrix d(int n) const;
  bool is_free() const;
  FPModule module(const Ring& R, int n) const;
};

/// Free complex from terms lo..lo+k and differentials diffs[i]: terms[i+1] -> terms[i].
Complex make_complex(int lo, std::vector<FreeModule> terms, std::vector<Matrix> diffs);
Complex make_complex(int lo, std::vector<FreeModule> terms, std::vector<Matrix> diffs,
                     std::vector<Matrix> rels);
/// Single module placed in degree n.
Complex concentrated(const Ring& R, const FPModule& M, int n);

/// ∂∘∂ lands in the relations, ∂ preserves relations, shapes agree.
bool is_complex(const Ring& R, const Complex& C, std::string* why = nullptr);
/// Throws VerificationError when is_complex fails.
void check_complex(const Ring& R, const Complex& C);
bool same_complex(const Ring& R, const Complex& A, const Complex& B);

struct ChainMap {
  Complex src;
  Complex tgt;
  int lo = 0;
  std::vector<Matrix> comps;  // degree lo + k

  /// f_n : src(n) -> tgt(n); zero outside the stored range.
  Matrix at(int n) const;
};

ChainMap make_map(const Complex& src, const Complex& tgt, int lo, std::vector<Matrix> comps);
bool is_chain_map(const Ring& R, const ChainMap& f, std::string* why = nullptr);
void check_chain_map(const Ring& R, const ChainMap& f);
ChainMap identity_map(const Ring& R, const Complex& C);
ChainMap zero_map(const Complex& src, const Complex& tgt);
/// g ∘ f
ChainMap compose(const Ring& R, const ChainMap& g, const ChainMap& f);
ChainMap scale_map(const Ring& R, const ChainMap& f, const Poly& c);
ChainMap sub_maps(const Ring& R, const ChainMap& f, const ChainMap& g);
/// Componentwise equality modulo target relations.
bool maps_equal(const Ring& R, const ChainMap& f, const ChainMap& g);

// homology -------------------------------------------------------------------

/// Subquotient of term n: gens are minimal cycles modulo boundaries, rels are boundaries.
struct Homology {
  int n = 0;
  FPModule module;
  Matrix cycles;
  bool zero = true;
};

Matrix cycles(const Ring& R, const Complex& C, int n);
Matrix boundaries(const Ring& R, const Complex& C, int n);
Homology homology(const Ring& R, const Complex& C, int n);
bool homology_is_zero(const Ring& R, const Complex& C, int n);

struct InducedMap {
  int n = 0;
  Matrix source_gens;  // homology generators of the source
  Matrix images;       // their images in the target term
  bool is_zero = true;
  bool is_surjective = true;
};

InducedMap induced_map(const Ring& R, const ChainMap& f, int n);

struct WidthStats {
  bool acyclic = true;
  int min_c = INT_MAX;  // lowest nonzero term
  int min = INT_MAX;    // lowest nonzero homology
  int max = INT_MIN;
  std::vector<int> supph;
  int wid = INT_MIN;  // INT_MIN stands for -∞
  int width = 0;
};

WidthStats width_stats(const Ring& R, const Complex& C);
std::string to_string(const WidthStats& w);

// constructions --------------------------------------------------------------

/// (Σ^k C)_n = C_{n+k}, differential multiplied by (-1)^k.
Complex shift(const Ring& R, const Complex& C, int k);
ChainMap shift_map(const Ring& R, const ChainMap& f, int k);
Complex direct_sum(const Ring& R, const Complex& A, const Complex& B);
ChainMap direct_sum_map(const Ring& R, const ChainMap& f, const ChainMap& g);
/// cone_n = src_{n-1} ⊕ tgt_n with ∂(t, x) = (-∂t, f(t) + ∂x).
Complex cone(const Ring& R, const ChainMap& f);
/// Inclusion tgt -> cone(f).
ChainMap cone_inclusion(const Ring& R, const ChainMap& f);
/// Drops zero terms at both ends.
Complex trim(const Complex& C);
/// Extends the stored range to [lo, hi] with zero terms.
Complex pad(const Complex& C, int lo, int hi);
ChainMap pad_map(const ChainMap& f, int lo, int hi);
/// C ⊗ F for a free module F: basis index a * |F| + b.
Complex tensor_free(const Ring& R, const Complex& C, const FreeModule& F);
ChainMap tensor_free_map(const Ring& R, const ChainMap& f, const FreeModule& F);
/// C ⊗ M for a free complex C and M in cokernel form.
Complex tensor_module(const Ring& R, const Complex& C, const FPModule& M);
ChainMap tensor_module_map(const Ring& R, const ChainMap& f, const FPModule& M);
/// Same terms and differentials, lowest degree moved to lo (no sign change).
Complex relabel(const Complex& C, int lo);
/// Keeps degrees [lo, hi].
Complex truncate(const Complex& C, int lo, int hi);
/// Hom(C, R) for free C: term -n is C_n^* with negated shifts, ∂_{-n+1}^* = transpose(∂_n).
Complex dual(const Ring& R, const Complex& C);
/// f^* : dual(tgt) -> dual(src).
ChainMap dual_map(const Ring& R, const ChainMap& f);

struct Pullback {
  Complex P;
  ChainMap nu;  // P -> source of g
  ChainMap mu;  // P -> source of b
};

/// Degreewise kernel of (q, m) ↦ g(q) - b(m); free source complexes only.
Pullback pullback_complex(const Ring& R, const ChainMap& g, const ChainMap& b);

/// Chain map lifting: keeps comps given for degrees lo.. and extends to `top`
/// by lifting f_{n-1}∂ through ∂ of the target. nullopt when a lift fails.
std::optional<ChainMap> extend_chain_map(const Ring& R, const Complex& src, const Complex& tgt,
                                         int lo, std::vector<Matrix> known, int top);

/// Cone of f is acyclic on its stored range.
bool is_quasi_isomorphism(const Ring& R, const ChainMap& f);

// Hom complexes and homotopies ----------------------------------------------

/// Hom(F, G) with (Df)_n = ∂f_n - (-1)^k f_{n-1}∂ on degree-k maps.
struct HomComplex {
  Complex F;
  Complex G;
  Complex C;
  /// element of Hom_k as per-degree matrices f_n : F_n -> G_{n+k}, n = F.lo..F.hi
  std::vector<Matrix> unpack(const Ring& R, int k, const Vec& v) const;
  Vec pack(const Ring& R, int k, const std::vector<Matrix>& f) const;
};

HomComplex hom_complex(const Ring& R, const Complex& F, const Complex& G);

/// Repeated null-homotopy solves for maps F -> G sharing one Hom complex.
class HomotopySolver {
 public:
  HomotopySolver(const Ring& R, const Complex& F, const Complex& G);
  /// f[k] : F_{F.lo+k} -> G_{F.lo+k}; result h[k] : F_{F.lo+k} -> G_{F.lo+k+1}.
  std::optional<std::vector<Matrix>> solve(const std::vector<Matrix>& f) const;

 private:
  const Ring& R_;
  HomComplex H_;
  std::unique_ptr<Lifter> L_;
};

/// Annihilator of H_0(Hom(F, F)).
Ideal end_annihilator(const Ring& R, const Complex& F);

/// h with f_n = ∂h_n + h_{n-1}∂ for f: F -> G of degree 0; h[k] : F_{F.lo+k} -> G_{F.lo+k+1}.
std::optional<std::vector<Matrix>> null_homotopy(const Ring& R, const ChainMap& f);
bool is_homotopy(const Ring& R, const ChainMap& f, const std::vector<Matrix>& h);

/// Homotopy-equivalent free complex without unit entries in its differentials.
struct Minimized {
  Complex C;
  ChainMap incl;  // C -> original
  ChainMap proj;  // original -> C
};

Minimized minimize(const Ring& R, const Complex& X);

std::string to_string(const Ring& R, const Complex& C);

}  // namespace tate
