// Minimal graded free resolutions, computed to a fixed length.
#pragma once

#include <string>
#include <vector>

#include "tate/module.hpp"

namespace tate {

struct Resolution {
  std::vector<FreeModule> F;  // F[0], F[1], ...
  std::vector<Matrix> d;      // d[i]: F[i+1] -> F[i]
  int bound = 0;
  bool terminated = false;
  int pd = -1;  // valid when terminated; -1 for the zero module

  int length() const { return static_cast<int>(F.size()); }
  std::vector<int> ranks() const;
  /// "pd = j" or "pd ≥ bound-1".
  std::string pd_report() const;
};

/// Terms F_0..F_{bound-1}, then the kernel of the last differential decides
/// termination. Exactness at every computed spot holds by construction.
Resolution min_free_resolution(const Ring& R, const FPModule& M, int bound);
Resolution resolve_quotient(const Ring& R, const Ideal& I, int bound);
/// Resolution of coker(rels) keeping F_0 as given; later steps use minimal generators
/// of the syzygies, so it is minimal when rels has no unit entries.
Resolution resolve_presented(const Ring& R, const FreeModule& F0, const Matrix& rels, int bound);

/// Checks d∘d = 0, positive-degree entries, and exactness at 1..length-2 by syzygies.
bool verify_resolution(const Ring& R, const Resolution& res, std::string* why = nullptr);

}  // namespace tate
