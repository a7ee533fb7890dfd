#include "tate/efpd.hpp"

#include <climits>

#include "tate/errors.hpp"
#include "tate/koszul.hpp"
#include "tate/tate_resolution.hpp"

namespace tate {

std::string to_string(FiltrationKind k) {
  switch (k) {
    case FiltrationKind::adic: return "adic";
    case FiltrationKind::bracket: return "bracket";
    case FiltrationKind::frobenius: return "frobenius";
    case FiltrationKind::explicit_steps: return "explicit";
  }
  return "?";
}

FiltrationSpec FiltrationSpec::adic(const Ideal& I) {
  FiltrationSpec F;
  F.kind = FiltrationKind::adic;
  F.base = I;
  return F;
}

FiltrationSpec FiltrationSpec::bracket(const Ideal& s) {
  FiltrationSpec F;
  F.kind = FiltrationKind::bracket;
  F.base = s;
  return F;
}

FiltrationSpec FiltrationSpec::frobenius(const Ring& R, const Ideal& s) {
  const auto p = R.field().characteristic();
  if (p == 0) throw PreconditionError("Frobenius filtration needs positive characteristic");
  FiltrationSpec F;
  F.kind = FiltrationKind::frobenius;
  F.base = s;
  F.p = static_cast<int>(p);
  return F;
}

FiltrationSpec FiltrationSpec::explicit_steps(const Ideal& base, std::vector<Ideal> steps) {
  if (steps.empty()) throw PreconditionError("explicit filtration needs at least one step");
  FiltrationSpec F;
  F.kind = FiltrationKind::explicit_steps;
  F.base = base;
  F.steps = std::move(steps);
  return F;
}

Ideal FiltrationSpec::at(const Ring& R, int n) const {
  if (n < 1) throw PreconditionError("filtration index starts at 1");
  switch (kind) {
    case FiltrationKind::adic: return ideal_power(R, base, n);
    case FiltrationKind::bracket: return bracket_power(R, base.gens, n);
    case FiltrationKind::frobenius: {
      long long q = 1;
      for (int i = 1; i < n; ++i) {
        q *= p;
        if (q > INT_MAX) throw BudgetError("Frobenius exponent overflow");
      }
      return bracket_power(R, base.gens, static_cast<int>(q));
    }
    case FiltrationKind::explicit_steps:
      return steps[std::min<std::size_t>(n, steps.size()) - 1];
  }
  return {};
}

bool FiltrationSpec::descending_at(const Ring& R, int n) const { return ideal_subset(R, at(R, n + 1), at(R, n)); }

std::string FiltrationSpec::describe(const Ring& R) const {
  std::string out = to_string(kind) + " " + to_string(R, base);
  if (kind == FiltrationKind::frobenius) out += " p=" + std::to_string(p);
  if (kind == FiltrationKind::explicit_steps) out += " steps=" + std::to_string(steps.size());
  return out;
}

namespace {

std::optional<std::vector<Vec>> inclusion_lifts(const Ring& R, const Ideal& A, const Ideal& B) {
  std::vector<Vec> out;
  if (A.is_zero()) return out;
  if (B.is_zero()) return std::nullopt;
  Lifter L(R, ideal_row(B));
  for (const auto& g : A.gens) {
    auto c = L.lift(R.place(g, 0));
    if (!c) return std::nullopt;
    out.push_back(*c);
  }
  return out;
}

FPModule free_one(const Ring& R) { return FPModule::free(R, FreeModule::of_rank(1)); }

ChainMap relabel_map(const ChainMap& f, int lo) {
  return make_map(relabel(f.src, lo), relabel(f.tgt, lo + (f.tgt.lo - f.src.lo)), lo, f.comps);
}

int width_of(const WidthStats& w) { return w.acyclic ? INT_MIN : w.wid; }

}  // namespace

int EquivalenceWindow::n_max() const {
  int out = 0;
  for (const auto& w : n_of_k) out = std::max(out, w.n);
  return out;
}

EquivalenceWindow filtration_equiv_window(const Ring& R, const FiltrationSpec& F, const Ideal& I, int K,
                                          int budget) {
  if (K < 1) throw PreconditionError("window K must be ≥ 1");
  EquivalenceWindow out;
  out.K = K;
  std::vector<Ideal> Jn{Ideal{}}, Ik{Ideal{}};
  auto J = [&](int n) -> const Ideal& {
    while (static_cast<int>(Jn.size()) <= n) Jn.push_back(F.at(R, static_cast<int>(Jn.size())));
    return Jn[n];
  };
  auto Ipow = [&](int k) -> const Ideal& {
    while (static_cast<int>(Ik.size()) <= k) Ik.push_back(ideal_power(R, I, static_cast<int>(Ik.size())));
    return Ik[k];
  };
  for (int k = 1; k <= K; ++k) {
    bool found = false;
    for (int n = 1; n <= budget && !found; ++n)
      if (auto w = inclusion_lifts(R, J(n), Ipow(k))) {
        out.n_of_k.push_back({n, k, std::move(*w)});
        found = true;
      }
    if (!found) {
      out.failure = "no n ≤ " + std::to_string(budget) + " with J_n ⊆ I^" + std::to_string(k);
      return out;
    }
  }
  for (int n = 1; n <= out.n_max(); ++n) {
    bool found = false;
    for (int k = 1; k <= budget && !found; ++k)
      if (auto w = inclusion_lifts(R, Ipow(k), J(n))) {
        out.k_of_n.push_back({n, k, std::move(*w)});
        found = true;
      }
    if (!found) {
      out.failure = "no k ≤ " + std::to_string(budget) + " with I^k ⊆ J_" + std::to_string(n);
      return out;
    }
  }
  out.ok = true;
  return out;
}

EfpdResult efpd_certificate(const Ring& R, const Ideal& I, const FiltrationSpec& F, int K, int bound, int budget) {
  EfpdResult out;
  out.I = I;
  out.F = F;
  out.K = K;
  out.equiv = filtration_equiv_window(R, F, I, K, budget);
  if (!out.equiv.ok) {
    out.refusal = "equivalence window failed: " + out.equiv.failure;
    return out;
  }
  for (int n = 1; n <= out.equiv.n_max(); ++n) {
    PdRecord rec;
    rec.n = n;
    rec.J = F.at(R, n);
    rec.res = resolve_quotient(R, rec.J, bound);
    rec.report = rec.res.pd_report();
    if (!rec.res.terminated && out.refused_at < 0) {
      out.refused_at = n;
      out.refusal = "R/J_" + std::to_string(n) + ": " + rec.report;
    }
    out.pds.push_back(std::move(rec));
  }
  out.certified = out.refused_at < 0;
  return out;
}

FrobeniusPdReport frobenius_pd_invariance(const Ring& R, const Ideal& I, int n_max, int bound) {
  FrobeniusPdReport rep;
  const auto p = R.field().characteristic();
  if (p == 0) throw PreconditionError("Frobenius powers need positive characteristic");
  rep.p = static_cast<int>(p);
  Resolution base = resolve_quotient(R, I, bound);
  if (!base.terminated) throw PreconditionError("pd(R/I) not certified: " + base.pd_report());
  rep.pd = base.pd;
  long long q = 1;
  for (int n = 1; n <= n_max; ++n) {
    q *= p;
    if (q > INT_MAX) throw BudgetError("Frobenius exponent overflow");
    Resolution res = resolve_quotient(R, bracket_power(R, I.gens, static_cast<int>(q)), bound);
    if (!res.terminated || res.pd != rep.pd)
      throw VerificationError("pd(R/I^[" + std::to_string(q) + "]) " + res.pd_report() + " differs from pd(R/I) = " +
                              std::to_string(rep.pd));
    rep.pd_powers.push_back(res.pd);
  }
  return rep;
}

PerfectReport is_perfect(const Ring& R, const Ideal& I, int bound) {
  Resolution res = resolve_quotient(R, I, bound);
  if (!res.terminated) throw BudgetError("pd(R/I) not certified: " + res.pd_report());
  PerfectReport rep;
  rep.pd = res.pd;
  rep.grade = grade(R, I.gens);
  rep.perfect = rep.grade == rep.pd;
  return rep;
}

SupportWitness finite_pd_support_witness(const Ring& R, const EfpdResult& cert, int power_budget) {
  if (!cert.certified) throw PreconditionError("support witness needs a certified window");
  SupportWitness w;
  w.n = cert.equiv.n_of_k.front().n;
  const PdRecord& rec = cert.pds[w.n - 1];
  w.J = rec.J;
  w.pd = rec.res.pd;
  w.M = quotient_module(R, w.J);
  for (const auto& g : cert.I.gens) {
    auto k = power_in(R, g, w.J, power_budget);
    if (!k) throw BudgetError("no power of a generator of I lies in J_n");
    w.I_in_J.push_back(*k);
  }
  for (const auto& g : w.J.gens) {
    auto k = power_in(R, g, cert.I, power_budget);
    if (!k) throw VerificationError("J_n is not inside I");
    w.J_in_I.push_back(*k);
  }
  return w;
}

// -----------------------------------------------------------------------------

bool SRCertificate::valid() const {
  if (verdicts.size() != 6) return false;
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

std::vector<Verdict> sr_verdicts(const Ring& R, const Complex& X, const Ideal& J, const Ideal& support,
                                 const Complex& T, const ChainMap& alpha, const Ideal& I, int m, int power_budget) {
  std::vector<Verdict> out;
  WidthStats wt = width_stats(R, T);
  WidthStats wx = width_stats(R, X);

  {
    Verdict v{"terms free, homology on V(support)", T.is_free(), ""};
    for (int n : wt.supph) {
      Ideal ann = annihilator(R, homology(R, T, n).module);
      for (const auto& g : support.gens)
        if (!power_in(R, g, ann, power_budget)) {
          v.pass = false;
          v.detail = "H_" + std::to_string(n) + " not killed by a power of " + R.to_string(g);
        }
    }
    out.push_back(v);
  }
  out.push_back({"min_c(T) = min(X)", !wx.acyclic && wt.min_c == wx.min && wx.min == m,
                 "min_c(T)=" + std::to_string(wt.min_c) + " min(X)=" + std::to_string(wx.min)});
  {
    std::string why;
    bool ok = is_chain_map(R, alpha, &why);
    out.push_back({"alpha is a chain map", ok, why});
  }
  {
    bool single = !wt.acyclic && wt.supph == std::vector<int>{m};
    bool quotient = false;
    if (single) {
      Homology h = homology(R, T, m);
      FPModule got{T.term(m), Matrix::identity(R, T.rank(m)), h.module.rels};
      FPModule want = quotient_by_ideal(R, FPModule::free(R, T.term(m)), I);
      quotient = same_subquotient(R, got, want);
    }
    out.push_back({"supph(T) = {m}, H_m(T) = T_m/I T_m", single && quotient, to_string(wt)});
  }
  out.push_back({"H_m(alpha) surjective", induced_map(R, alpha, m).is_surjective, ""});
  out.push_back({"I ⊆ J", ideal_subset(R, I, J), ""});
  return out;
}

SRCertificate strong_reducer(const Ring& R, const Complex& X, const Ideal& J, const FiltrationSpec& provider,
                             const ReducerOptions& opt) {
  if (!X.is_free()) throw PreconditionError("strong reducer needs free terms");
  WidthStats wx = width_stats(R, X);
  if (wx.acyclic) throw PreconditionError("X is exact");
  const Ideal& f = provider.base;
  if (f.is_zero()) throw PreconditionError("provider ideal is zero");
  for (const auto& g : f.gens)
    if (!power_in(R, g, J, opt.power_budget)) throw PreconditionError("R/J is not supported on V(provider)");

  SRCertificate cert;
  cert.J = J;
  cert.support = f;
  Minimized mz = minimize(R, X);
  Complex Xm = trim(mz.C);
  cert.m = Xm.lo;
  FoxbyHalvorsen fh = foxby_halvorsen(R, Xm, f.gens, opt.fh_budget);
  cert.fh_r = fh.r;
  const int d = f.size();
  PhiWitness W = phi_construct(R, f.gens, free_one(R), fh.r, PhiMode::search);
  cert.u = W.u;
  cert.fell_back = W.fell_back;

  Ideal fu = bracket_power(R, f.gens, W.u);
  for (int n = 1; n <= opt.filtration_budget && cert.s == 0; ++n) {
    Ideal Jn = provider.at(R, n);
    if (ideal_subset(R, Jn, fu) && ideal_subset(R, Jn, J)) {
      cert.s = n;
      cert.I = Jn;
    }
  }
  if (cert.s == 0) throw BudgetError("no filtration step inside (f^u) ∩ J");
  Resolution Q = resolve_quotient(R, cert.I, opt.resolution_bound);
  if (!Q.terminated) throw BudgetError("provider refusal: R/J_s " + Q.pd_report());
  Complex Qc = make_complex(0, Q.F, Q.d);

  auto psi = extend_chain_map(R, Qc, W.tate.complex, 0, {Matrix::identity(R, 1)}, std::min(Qc.hi(), d + 1));
  if (!psi) throw VerificationError("comparison lift P(R/J_s) -> T'(f^u) failed");
  ChainMap phipsi = compose(R, W.phi, *psi);
  ChainMap onX = relabel_map(tensor_free_map(R, phipsi, Xm.term(cert.m)), cert.m);
  cert.alpha = compose(R, mz.incl, compose(R, fh.psi, onX));
  cert.T = cert.alpha.src;
  cert.verdicts = sr_verdicts(R, X, J, f, cert.T, cert.alpha, cert.I, cert.m, opt.power_budget);
  return cert;
}

std::vector<WidthStep> width_reduce(const Ring& R, const Complex& X, const FiltrationSpec& provider,
                                    const ReducerOptions& opt) {
  std::vector<WidthStep> out;
  Complex cur = X;
  int w = width_of(width_stats(R, cur));
  const Ideal unit = unit_ideal(R);
  while (w > 0) {
    WidthStep step;
    step.width_before = w;
    step.cert = strong_reducer(R, cur, unit, provider, opt);
    if (!step.cert.valid()) throw VerificationError("strong reducer failed one of its verdicts");
    step.cone = cone(R, step.cert.alpha);
    step.width_after = width_of(width_stats(R, step.cone));
    if (step.width_after >= w) throw VerificationError("cone width did not drop");
    w = step.width_after;
    cur = trim(minimize(R, step.cone).C);
    out.push_back(std::move(step));
  }
  return out;
}

CharpReducer charp_reducer(const Ring& R, const Complex& P0, const Ideal& I, const ReducerOptions& opt) {
  const auto p = R.field().characteristic();
  if (p == 0) throw PreconditionError("char-p reducer needs positive characteristic");
  if (!P0.is_free()) throw PreconditionError("char-p reducer needs free terms");
  if (P0.lo < 0) throw PreconditionError("complex must live in degrees ≥ 0");
  CharpReducer out;
  out.k = P0.hi();
  Resolution base = resolve_quotient(R, I, opt.resolution_bound);
  if (!base.terminated) throw PreconditionError("pd(R/I) not certified: " + base.pd_report());
  out.pd = base.pd;
  if (out.k <= out.pd)
    throw PreconditionError("hypothesis k > pd(R/I) fails: k=" + std::to_string(out.k) + " pd=" + std::to_string(out.pd));

  Complex P = trim(P0);
  FoxbyHalvorsen fh = foxby_halvorsen(R, P, I.gens, opt.fh_budget);
  out.fh_r = fh.r;
  const int d = I.size();
  PhiWitness W = phi_construct(R, I.gens, free_one(R), fh.r, PhiMode::search);
  out.u = W.u;
  out.u_bound = static_cast<int>(W.ex.u(fh.r));
  long long q = 1;
  while (q < std::max(out.u, out.u_bound)) q *= p;
  if (q > INT_MAX) throw BudgetError("Frobenius exponent overflow");
  out.q = static_cast<int>(q);

  std::vector<Poly> sq;
  for (const auto& g : I.gens) sq.push_back(R.r_pow(g, out.q));
  TateData Tq = tate_resolution(R, sq, d + 1);
  auto chi = extend_chain_map(R, Tq.complex, W.tate.complex, 0, {Matrix::identity(R, 1)}, d + 1);
  if (!chi) throw VerificationError("comparison lift T'(s^q) -> T'(s^u) failed");
  Resolution Q = resolve_quotient(R, make_ideal(R, sq), opt.resolution_bound);
  if (!Q.terminated || Q.pd != out.pd) throw VerificationError("pd(R/I^[q]) differs from pd(R/I)");
  Complex Qc = make_complex(0, Q.F, Q.d);
  auto psi = extend_chain_map(R, Qc, Tq.complex, 0, {Matrix::identity(R, 1)}, std::min(Qc.hi(), d + 1));
  if (!psi) throw VerificationError("comparison lift P(R/I^[q]) -> T'(s^q) failed");

  ChainMap toK = compose(R, W.phi, compose(R, *chi, *psi));
  ChainMap onP = relabel_map(tensor_free_map(R, toK, P.term(P.lo)), P.lo);
  ChainMap a = compose(R, fh.psi, onP);
  out.T = pad(a.src, P0.lo, out.k - 1);
  std::vector<Matrix> comps;
  for (int n = out.T.lo; n <= out.T.hi(); ++n) comps.push_back(a.at(n));
  out.alpha = make_map(out.T, P0, out.T.lo, std::move(comps));
  out.in_range = out.T.lo >= 0 && out.T.hi() == out.k - 1;
  out.chain_map = is_chain_map(R, out.alpha);
  Matrix a0 = out.alpha.at(P0.lo);
  out.alpha0_surjective = submodule_contains(R, a0, Matrix::identity(R, P0.rank(P0.lo)));
  return out;
}

}  // namespace tate
