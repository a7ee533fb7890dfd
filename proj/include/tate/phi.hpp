// Exponents l, h, q, u, w and the chain map φ: T'(s^u; M) -> K(s^r; M)
// restricting to κ^{u,r}, plus ξ and the induced Tor/Ext comparison maps.
#pragma once

#include <string>
#include <vector>

#include "tate/koszul.hpp"
#include "tate/resolution.hpp"
#include "tate/tate_resolution.hpp"

namespace tate {

struct Exponents {
  int d = 0;
  int l = 0;
  int h = 0;
  /// where h came from, e.g. "windowed r=1..3 i≤2" or "escalated during φ"
  std::string h_provenance;

  long long q(long long n, long long r) const { return h + (n + r) * d; }
  /// q^{(0)} = q(0,r) - r, q^{(i)} = q(q^{(i-1)} + l, r) - r.
  long long q_step(int i, long long r) const;
  /// h Σ_{j≤i} d^j + r d^{i+1} + l d Σ_{j≤i-1} d^j - r.
  long long q_closed(int i, long long r) const;
  /// (h + l) Σ_{j<d} d^j + r d^d
  long long u(long long r) const;
  long long w(long long r) const { return u(h + r * d); }
};

/// Least h ≤ budget with H_i(κ^{h+rd,r}) = 0 for every r in r_window and 1 ≤ i ≤ min(d, i_max).
int compute_h(const Ring& R, const std::vector<Poly>& s, const FPModule& M, const std::vector<int>& r_window,
              int i_max, int budget = 16);

/// l from the annihilator chains, h from compute_h on r_window (default 1..3).
Exponents find_exponents(const Ring& R, const std::vector<Poly>& s, const FPModule& M,
                         std::vector<int> r_window = {}, int budget = 16);

enum class PhiMode { paper_bound, search };
std::string to_string(PhiMode m);

struct Check {
  std::string name;
  bool pass = false;
};

struct PhiWitness {
  int r = 0;
  int u = 0;
  PhiMode mode = PhiMode::paper_bound;
  bool fell_back = false;  // search found nothing below u(r)
  Exponents ex;
  TateData tate;  // T'(s^u; M) up to degree d+1
  Complex target; // K(s^r; M)
  ChainMap phi;
  std::vector<Check> checks;

  bool verified() const;
};

struct PhiOptions {
  std::vector<int> r_window;  // for h; default 1..3
  int h_budget = 16;
};

/// paper_bound follows the divisibility induction with u = u(r), raising h when a
/// required Koszul boundary is missing; search tries u = r, r+1, ... with plain lifts and
/// falls back to paper_bound. Throws VerificationError if a produced map fails its checks.
PhiWitness phi_construct(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int r, PhiMode mode,
                         const PhiOptions& opt = {});

struct XiWitness {
  PhiWitness phi;
  Complex F;      // resolution of M/(s^u)M on the generators of M
  ChainMap psi;   // F -> T'(s^u; M)
  ChainMap xi;    // F -> K(s^r; M)
  std::vector<Check> checks;
};

XiWitness xi_construct(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int r, PhiMode mode,
                       const PhiOptions& opt = {});

struct ComparisonMaps {
  int u = 0;
  ChainMap tor_map;  // T'(s^u) ⊗ N -> K(s^r) ⊗ N
  ChainMap ext_map;  // Hom(K(s^r), N) -> Hom(T'(s^u), N), cohomological degree i at -i
  std::vector<InducedMap> tor;  // Tor_i(R/(s^u), N) -> H_i(K(s^r; N)) for i in range
  std::vector<InducedMap> ext;  // H^i(K(s^r; N)^∨) -> Ext^i(R/(s^u), N)
};

/// Maps induced by φ ⊗ N and Hom(φ, N) for i_lo ≤ i ≤ i_hi ≤ d.
ComparisonMaps comparison_maps(const Ring& R, const std::vector<Poly>& s, int r, const FPModule& N, int i_lo,
                               int i_hi, PhiMode mode = PhiMode::search);

}  // namespace tate
