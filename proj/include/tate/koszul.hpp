// Koszul complexes K(s^n; M) on the lexicographic subset basis, the maps
// κ^{n,k}, duals, grade, annihilator stabilization and Foxby–Halvorsen maps.
#pragma once

#include <vector>

#include "tate/complex.hpp"

namespace tate {

/// Ordered m-subsets of {0..d-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int d, int m);
/// Position of a sorted subset in subsets(d, |sub|).
int subset_index(int d, const std::vector<int>& sub);

/// K(s^n; R): term m has basis e_ĩ for ĩ in subsets(d, m), degree n·Σ deg s_i;
/// ∂ e_ĩ = Σ_j (-1)^j s_{i_j}^n e_{ĩ \ i_j} (j counted from 0).
Complex koszul(const Ring& R, const std::vector<Poly>& s, int n);
/// K(s^n; M) = K(s^n; R) ⊗ M, basis index subset * rank(M) + b.
Complex koszul(const Ring& R, const std::vector<Poly>& s, int n, const FPModule& M);

/// κ^{n,k}: e_ĩ ↦ (∏_{i∈ĩ} s_i)^{n-k} e_ĩ.
ChainMap kappa(const Ring& R, const std::vector<Poly>& s, int n, int k, const FPModule& M);
ChainMap kappa(const Ring& R, const std::vector<Poly>& s, int n, int k);
/// Component of κ^{n,k} in homological degree m, on K(s^n; R^a) for a free M of the given rank.
Matrix kappa_component(const Ring& R, const std::vector<Poly>& s, int n, int k, int m, int rank);

/// Hom(K(s^n), N) as a chain complex: cohomological degree i sits in degree -i.
Complex koszul_dual(const Ring& R, const std::vector<Poly>& s, int n, const FPModule& N);
ChainMap kappa_dual(const Ring& R, const std::vector<Poly>& s, int n, int k, const FPModule& N);

/// d - max{i : H_i(K(s; R)) ≠ 0}; throws on the unit ideal.
int grade(const Ring& R, const std::vector<Poly>& s);

struct Stabilization {
  std::vector<int> per_element;
  int l = 0;
};

/// Least t with (0 :_M s_i^t) = (0 :_M s_i^{t+1}) for each i.
Stabilization stabilization_l(const Ring& R, const std::vector<Poly>& s, const FPModule& M,
                              int budget = 64);

struct FoxbyHalvorsen {
  int r = 0;
  int m = 0;                                // lowest nonzero term of P
  std::vector<std::vector<Matrix>> sigma;   // sigma[i][k] : P_{P.lo+k} -> P_{P.lo+k+1}
  ChainMap psi;                             // K(s^r; P_m), relabelled to start at m, -> P
};

/// Searches r ≤ budget with every s_i^r·id null-homotopic on P and builds
/// Ψ(e_{i1}∧…∧e_{ik} ⊗ p) = σ_{i1}(…σ_{ik}(p)). Throws BudgetError on exhaustion.
FoxbyHalvorsen foxby_halvorsen(const Ring& R, const Complex& P, const std::vector<Poly>& s,
                               int budget = 8);

}  // namespace tate
