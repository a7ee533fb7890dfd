// Tor by resolutions and by the syzygy subquotient (J P ∩ B) / J B, vanishing of
// Tor_i(R/J', M) -> Tor_i(R/J, M), uniform exponents w(r), syzygetic Artin–Rees
// window checks and the Koszul/Tor vanishing round trip.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tate/phi.hpp"
#include "tate/resolution.hpp"

namespace tate {

enum class TorMethod { resolution, syzygy_formula };
std::string to_string(TorMethod m);

/// Tor_i(M, N). bound ≤ 0 means i+2. syzygy_formula needs N = R/I and i ≥ 1.
/// Throws BudgetError("insufficient bound") when the resolution stops short of i.
FPModule tor(const Ring& R, const FPModule& M, const FPModule& N, int i, TorMethod method, int bound = 0);

/// (I P_{i-1} ∩ B_{i-1}) / I B_{i-1} inside P_{i-1}, B_{i-1} = image of ∂_i.
FPModule tor_syzygy(const Ring& R, const Resolution& P, const Ideal& I, int i);

struct TorMapReport {
  int i = 0;
  Ideal source;                  // J'
  Ideal target;                  // J
  std::vector<Vec> containment;  // each J' generator over the J generators
  FPModule source_tor;           // (J'P ∩ B) / J'B
  FPModule target_tor;           // (JP ∩ B) / JB
  bool is_zero = false;
  std::vector<Vec> witnesses;    // each source generator over the generators of J·B
  int obstruction = -1;          // first source generator outside J·B
};

/// The natural map is the inclusion of syzygy subquotients; zero iff J'P ∩ B ⊆ J B.
TorMapReport tor_map(const Ring& R, const Resolution& P, const Ideal& Jp, const Ideal& J, int i);
TorMapReport tor_map(const Ring& R, const FPModule& M, const Ideal& Jp, const Ideal& J, int i);
/// Tor_i(R/I^{r+h}, M) -> Tor_i(R/I^r, M)
TorMapReport tor_map_vanishing(const Ring& R, const Ideal& I, const FPModule& M, int i, int r, int h);
/// Least h ≤ budget with tor_map_vanishing zero.
std::optional<int> degreewise_h(const Ring& R, const Ideal& I, const FPModule& M, int i, int r, int budget);

struct UniformWReport {
  Exponents ex;
  int r = 0;
  long long w = 0;
  int i_lo = 1;
  int i_hi = 0;
  std::vector<TorMapReport> checks;  // one per i in i_lo..i_hi
  bool verified_on_window = false;
  std::string guarantee;
};

/// w(r) = u(h + rd) from the exponents of (s, M), then Tor_i(R/I^w, M) -> Tor_i(R/I^r, M)
/// zero-tested for i_lo ≤ i ≤ i_hi (i_hi ≤ 0 means d+2). A failing check throws VerificationError.
UniformWReport uniform_w(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int r, int i_lo = 1,
                         int i_hi = 0, const PhiOptions& opt = {});

struct SarCell {
  int i = 0;
  int r = 0;
  bool holds = false;
};

struct SarReport {
  std::optional<int> h;  // least uniform h on the window
  int h_budget = 0;
  std::vector<SarCell> cells;  // at h, or at the budget when nothing worked
  std::string status() const;
};

/// Least h with I^{r+h} P_i ∩ B_i ⊆ I^r B_i for 0 ≤ i < depth and r in r_window.
SarReport syzygetic_ar_check(const Ring& R, const Ideal& I, const Resolution& P, int depth,
                             const std::vector<int>& r_window, int h_budget = 8);
SarReport syzygetic_ar_check(const Ring& R, const Ideal& I, const FPModule& M, int depth,
                             const std::vector<int>& r_window, int h_budget = 8);

struct RoundtripReport {
  int i = 0;
  int r = 0;
  int d = 0;

  // Tor vanishing => Koszul vanishing
  int u_r = 0;             // φ: T'(s^{u_r}) -> K(s^r), M = R
  int v = 0;               // Tor_i(R/I^v, M) -> Tor_i(R/I^{u_r d}, M) is zero
  bool tor_given = false;
  ChainMap forward;        // K(s^v) -> P(R/I^v) -> P(R/I^{u_r d}) -> T'(s^{u_r}) -> K(s^r), tensored with M
  bool forward_zero = false;
  bool forward_is_kappa = false;  // same H_i as κ^{v,r}
  bool kappa_zero = false;

  // Koszul vanishing => Tor vanishing
  int w = 0;               // H_i(κ^{w,r}) = 0 on M
  int u_w = 0;
  int v_back = 0;          // u_w d
  ChainMap backward;       // P(R/I^{v_back}) -> T'(s^{u_w}) -> K(s^w) -> K(s^r) -> P(R/I^r), tensored with M
  bool backward_zero = false;
  bool tor_direct_zero = false;

  bool ok() const;
};

/// Both directions with every factorization built as a chain map; exponents found by sweeps
/// of length ≤ budget.
RoundtripReport koszul_tor_roundtrip(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int i, int r,
                                     int budget = 8);

/// Columns i, r, exponent, is_zero, witness.
std::string to_csv(const UniformWReport& rep, const std::string& witness_ref = "");

}  // namespace tate
