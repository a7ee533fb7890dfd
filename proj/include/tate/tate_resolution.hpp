// T'(s; M): the Koszul complex K(s; M) with free summands R^{t_i} adjoined in
// degrees ≥ 2 until homology vanishes in positive degrees below the bound.
#pragma once

#include <string>
#include <vector>

#include "tate/complex.hpp"

namespace tate {

struct TateData {
  std::vector<Poly> s;
  FPModule M;                     // cokernel form
  Complex complex;                // degrees 0..bound
  std::vector<int> koszul_rank;   // per degree; the Koszul block comes first
  std::vector<int> t;             // adjoined free rank per degree (t[0] = t[1] = 0)
  std::vector<Matrix> S;          // S[j]: cycles hit by the generators adjoined in degree j+1
  int bound = 0;
};

/// Adjoins, in each degree j+1 ≤ bound, one generator per minimal cycle of degree j
/// modulo boundaries.
TateData tate_resolution(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int bound);
TateData tate_resolution(const Ring& R, const std::vector<Poly>& s, int bound);

/// Differential restricts to the Koszul one, H_i = 0 for 1 ≤ i < bound,
/// H_0 = M/(s)M and t_{j+1} = |S_j|.
bool verify_tate(const Ring& R, const TateData& T, std::string* why = nullptr);

/// K(s; M) -> T'(s; M) onto the Koszul summand.
ChainMap koszul_inclusion(const Ring& R, const TateData& T);

}  // namespace tate
