// Filtrations and their equivalence with I-adic powers, windowed efpd certificates,
// Frobenius-power pd checks, strong reducers, cone-width reduction and char-p reducers.
#pragma once

#include <string>
#include <vector>

#include "tate/phi.hpp"
#include "tate/resolution.hpp"

namespace tate {

enum class FiltrationKind { adic, bracket, frobenius, explicit_steps };
std::string to_string(FiltrationKind k);

/// J_n for n ≥ 1. adic: base^n; bracket: generators of base to the n; frobenius:
/// generators to the p^{n-1}, so J_1 = base; explicit: steps[n-1], constant past the end.
struct FiltrationSpec {
  FiltrationKind kind = FiltrationKind::adic;
  Ideal base;
  int p = 0;
  std::vector<Ideal> steps;

  static FiltrationSpec adic(const Ideal& I);
  static FiltrationSpec bracket(const Ideal& s);
  static FiltrationSpec frobenius(const Ring& R, const Ideal& s);
  static FiltrationSpec explicit_steps(const Ideal& base, std::vector<Ideal> steps);

  Ideal at(const Ring& R, int n) const;
  /// J_{n+1} ⊆ J_n
  bool descending_at(const Ring& R, int n) const;
  std::string describe(const Ring& R) const;
};

/// smaller ⊆ larger, every generator of the smaller ideal lifted over the larger one's generators.
struct InclusionWitness {
  int n = 0;  // filtration index
  int k = 0;  // adic exponent
  std::vector<Vec> lifts;
};

struct EquivalenceWindow {
  int K = 0;
  std::vector<InclusionWitness> n_of_k;  // entry k-1: least n with J_n ⊆ I^k
  std::vector<InclusionWitness> k_of_n;  // entry n-1: least k with I^k ⊆ J_n, n ≤ n_max
  bool ok = false;
  std::string failure;  // empty when ok
  int n_max() const;
};

/// Budget exhaustion is reported in failure, never thrown.
EquivalenceWindow filtration_equiv_window(const Ring& R, const FiltrationSpec& F, const Ideal& I, int K,
                                          int budget = 16);

struct PdRecord {
  int n = 0;
  Ideal J;
  Resolution res;
  std::string report;  // "pd = j" or "pd ≥ b"
};

/// Certificate, or refusal naming the first n whose resolution did not terminate.
/// A refusal never claims that efpd fails.
struct EfpdResult {
  bool certified = false;
  Ideal I;
  FiltrationSpec F;
  int K = 0;
  EquivalenceWindow equiv;
  std::vector<PdRecord> pds;  // n = 1..n_max, all probed
  int refused_at = -1;
  std::string refusal;
};

EfpdResult efpd_certificate(const Ring& R, const Ideal& I, const FiltrationSpec& F, int K, int bound = 8,
                            int budget = 16);

struct FrobeniusPdReport {
  int p = 0;
  int pd = -1;                 // pd(R/I)
  std::vector<int> pd_powers;  // pd(R/I^{[p^n]}), n = 1..n_max
};

/// Throws PreconditionError unless ch R = p > 0 and pd(R/I) terminates within bound;
/// VerificationError on any disagreement.
FrobeniusPdReport frobenius_pd_invariance(const Ring& R, const Ideal& I, int n_max, int bound = 8);

struct PerfectReport {
  int grade = 0;
  int pd = -1;
  bool perfect = false;
};

/// Throws BudgetError when pd(R/I) is not certified within bound.
PerfectReport is_perfect(const Ring& R, const Ideal& I, int bound = 8);

struct SupportWitness {
  int n = 0;
  FPModule M;  // R/J_n
  Ideal J;
  int pd = -1;
  std::vector<int> I_in_J;  // power of each generator of I lying in J_n
  std::vector<int> J_in_I;  // power of each generator of J_n lying in I
};

/// R/J_n at the first n with J_n ⊆ I. PreconditionError on a refusal.
SupportWitness finite_pd_support_witness(const Ring& R, const EfpdResult& cert, int power_budget = 32);

// strong reducers -------------------------------------------------------------

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReducerOptions {
  int fh_budget = 8;
  int filtration_budget = 32;
  int resolution_bound = 8;
  int power_budget = 32;
};

struct SRCertificate {
  Complex T;
  ChainMap alpha;  // T -> X
  Ideal I;         // J_s
  int m = 0;       // min(X)
  Ideal J;
  Ideal support;   // the provider's base ideal
  int fh_r = 0;
  int u = 0;
  int s = 0;
  bool fell_back = false;
  std::vector<Verdict> verdicts;  // the six conditions in order
  bool valid() const;
};

/// (1) free terms with homology on V(support) (2) min_c(T) = min(X) (3) α a chain map
/// (4) supph(T) = {m}, H_m(T) = T_m/I T_m (5) H_m(α) onto (6) I ⊆ J.
std::vector<Verdict> sr_verdicts(const Ring& R, const Complex& X, const Ideal& J, const Ideal& support,
                                 const Complex& T, const ChainMap& alpha, const Ideal& I, int m,
                                 int power_budget = 32);

/// X free and not exact, R/J supported on V(provider.base). Ψ from Foxby–Halvorsen on the
/// minimized X, φ from search mode, s least with J_s ⊆ (f^u) ∩ J, T = P(R/J_s) ⊗ X_m.
SRCertificate strong_reducer(const Ring& R, const Complex& X, const Ideal& J, const FiltrationSpec& provider,
                             const ReducerOptions& opt = {});

struct WidthStep {
  SRCertificate cert;
  Complex cone;
  int width_before = 0;
  int width_after = 0;  // INT_MIN when the cone is exact
};

/// Repeats strong_reducer with J = R and replaces X by the cone of α until width 0.
/// Throws VerificationError if a width fails to drop or a certificate is invalid.
std::vector<WidthStep> width_reduce(const Ring& R, const Complex& X, const FiltrationSpec& provider,
                                    const ReducerOptions& opt = {});

struct CharpReducer {
  Complex T;       // padded to [lo(P), k-1]
  ChainMap alpha;  // T -> P
  int k = 0;
  int pd = -1;     // pd(R/I) = pd(R/I^{[q]})
  int fh_r = 0;
  int u = 0;       // search-mode u
  int u_bound = 0; // u(r)
  int q = 0;       // p^n ≥ max(u, u(r))
  bool in_range = false;
  bool alpha0_surjective = false;
  bool chain_map = false;
};

/// P free in [0, k] with homology on V(I), k > pd(R/I), ch R = p.
CharpReducer charp_reducer(const Ring& R, const Complex& P, const Ideal& I, const ReducerOptions& opt = {});

}  // namespace tate
