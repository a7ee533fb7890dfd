#include "tate/phi.hpp"

#include <map>
#include <optional>

#include "tate/errors.hpp"

namespace tate {

namespace {

long long geometric(long long d, int upto) {  // Σ_{j=0}^{upto} d^j
  long long sum = 0, p = 1;
  for (int j = 0; j <= upto; ++j) {
    sum += p;
    p *= d;
  }
  return sum;
}

long long ipow(long long b, int e) {
  long long p = 1;
  for (int i = 0; i < e; ++i) p *= b;
  return p;
}

std::vector<Poly> powers(const Ring& R, const std::vector<Poly>& s, int e) {
  std::vector<Poly> out;
  for (const auto& f : s) out.push_back(R.r_pow(R.normal_form(f), e));
  return out;
}

Poly subset_power(const Ring& R, const std::vector<Poly>& s, const std::vector<int>& sub, int e) {
  Poly g = R.constant(1);
  for (int i : sub) g = R.r_mul(g, R.r_pow(R.normal_form(s[i]), e));
  return g;
}

Vec block(const Vec& v, int from, int a) {
  Vec out;
  for (const auto& t : v)
    if (t.comp >= from && t.comp < from + a) out.push_back(Term{t.coef, t.mono, t.comp - from});
  return out;
}

Vec keep_below(const Vec& v, int n) {
  Vec out;
  for (const auto& t : v)
    if (t.comp < n) out.push_back(t);
  return out;
}

// x_ĩ = ∏ s^{e} x'_ĩ blockwise in M, returns Σ ∏ s^{l} x'_ĩ e_ĩ.
std::optional<Vec> divide(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int m, const Vec& c,
                          int e, int l) {
  const int d = static_cast<int>(s.size());
  const int a = M.ambient.rank();
  auto subs = subsets(d, m);
  Vec out;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    Vec x = block(c, static_cast<int>(k) * a, a);
    if (x.empty()) continue;
    Poly g = subset_power(R, s, subs[k], e);
    Matrix through = hcat(scale(R, Matrix::identity(R, a), g), M.rels);
    auto w = lift(R, x, through);
    if (!w) return std::nullopt;
    Vec xp = keep_below(*w, a);
    Vec y = R.mul(subset_power(R, s, subs[k], l), xp);
    out = R.add(out, R.shift_components(y, static_cast<int>(k) * a));
  }
  return R.normal_form_vec(out);
}

bool in_relations(const Ring& R, const Complex& C, int n, const Vec& v) {
  Vec w = R.normal_form_vec(v);
  if (w.empty()) return true;
  Matrix rel = C.rel(n);
  if (rel.ncols() == 0) return false;
  return SubmoduleGB(R, C.term(n), rel).contains(w);
}

std::optional<Vec> lift_through(const Ring& R, const Complex& K, int m, const Vec& v) {
  Matrix through = hcat(K.d(m), K.rel(m - 1));
  auto w = lift(R, v, through);
  if (!w) return std::nullopt;
  return R.normal_form_vec(keep_below(*w, K.rank(m)));
}


std::optional<ChainMap> build_paper(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int r, const Exponents& ex,
                    const TateData& T, const Complex& Kr) {
  const int d = static_cast<int>(s.size());
  const int a = M.ambient.rank();
  const int u = static_cast<int>(ex.u(r));
  const Complex& C = T.complex;
  std::map<int, Complex> kcache;
  auto K = [&](int n) -> const Complex& {
    auto it = kcache.find(n);
    if (it == kcache.end()) it = kcache.emplace(n, koszul(R, s, n, M)).first;
    return it->second;
  };
  std::vector<Matrix> comps{Matrix::identity(R, a)};
  for (int m = 1; m <= d; ++m) {
    Matrix phi_m = Matrix::zero(Kr.rank(m), C.rank(m));
    Matrix km = kappa_component(R, s, u, r, m, a);
    for (int j = 0; j < T.koszul_rank[m]; ++j) phi_m.cols[j] = km.cols[j];
    const int n = static_cast<int>(ex.q_step(d - m + 1, r));
    const int n2 = static_cast<int>(ex.q_step(d - m, r)) + ex.l;
    const int v = n + r;
    if (v != ex.q(n2, r)) throw VerificationError("exponent recursion mismatch");
    for (int j = T.koszul_rank[m]; j < C.rank(m); ++j) {
      Vec c = apply(R, comps[m - 1], C.d(m).cols[j]);
      // divisible by ∏ s^{n+l}: pull back to a cycle of K(s^{n+r})
      auto z = divide(R, s, M, m - 1, c, n + ex.l, ex.l);
      if (!z) throw VerificationError("divisibility failed in degree " + std::to_string(m - 1));
      Vec dz = apply(R, K(v).d(m - 1), *z);
      if (!in_relations(R, K(v), m - 2, dz))
        throw VerificationError("divided element is not a cycle");
      Vec target = apply(R, kappa_component(R, s, v, n2 + r, m - 1, a), *z);
      auto w = lift_through(R, K(n2 + r), m, target);
      if (!w) return std::nullopt;
      phi_m.cols[j] = apply(R, kappa_component(R, s, n2 + r, r, m, a), *w);
    }
    comps.push_back(phi_m);
  }
  comps.push_back(Matrix::zero(0, C.rank(d + 1)));
  ChainMap phi = make_map(C, Kr, 0, std::move(comps));
  if (!is_chain_map(R, phi)) return std::nullopt;
  return phi;
}

std::optional<ChainMap> build_search(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int r, int u,
                                     const TateData& T, const Complex& Kr) {
  const int d = static_cast<int>(s.size());
  const int a = M.ambient.rank();
  const Complex& C = T.complex;
  std::vector<Matrix> comps{Matrix::identity(R, a)};
  for (int m = 1; m <= d; ++m) {
    Matrix phi_m = Matrix::zero(Kr.rank(m), C.rank(m));
    Matrix km = kappa_component(R, s, u, r, m, a);
    for (int j = 0; j < T.koszul_rank[m]; ++j) phi_m.cols[j] = km.cols[j];
    for (int j = T.koszul_rank[m]; j < C.rank(m); ++j) {
      Vec c = apply(R, comps[m - 1], C.d(m).cols[j]);
      auto w = lift_through(R, Kr, m, c);
      if (!w) return std::nullopt;
      phi_m.cols[j] = *w;
    }
    comps.push_back(phi_m);
  }
  comps.push_back(Matrix::zero(0, C.rank(d + 1)));
  ChainMap phi = make_map(C, Kr, 0, std::move(comps));
  if (!is_chain_map(R, phi)) return std::nullopt;
  return phi;
}

void record_checks(const Ring& R, PhiWitness& W) {
  const int d = static_cast<int>(W.tate.s.size());
  std::string why;
  W.checks.push_back({"T' acyclic in positive degrees below d+1", verify_tate(R, W.tate, &why)});
  W.checks.push_back({"commuting squares", is_chain_map(R, W.phi, &why)});
  Matrix top = multiply(R, W.phi.at(d), W.tate.complex.d(d + 1));
  top.rows = W.target.rank(d);
  bool top_zero = true;
  for (const auto& col : top.cols) top_zero = top_zero && in_relations(R, W.target, d, col);
  W.checks.push_back({"top degree: phi_d * d_{d+1} = 0", top_zero});
  W.checks.push_back({"phi_0 is the identity", equal(R, W.phi.at(0), Matrix::identity(R, W.tate.M.ambient.rank()))});
}

}  // namespace

long long Exponents::q_step(int i, long long r) const {
  long long v = q(0, r) - r;
  for (int k = 1; k <= i; ++k) v = q(v + l, r) - r;
  return v;
}

long long Exponents::q_closed(int i, long long r) const {
  long long lpart = i >= 1 ? l * geometric(d, i - 1) * d : 0;
  return h * geometric(d, i) + r * ipow(d, i + 1) + lpart - r;
}

long long Exponents::u(long long r) const { return (h + l) * geometric(d, d - 1) + r * ipow(d, d); }

int compute_h(const Ring& R, const std::vector<Poly>& s, const FPModule& M, const std::vector<int>& r_window,
              int i_max, int budget) {
  if (r_window.empty()) throw PreconditionError("empty r window");
  const int d = static_cast<int>(s.size());
  const int top = std::min(d, i_max);
  for (int h = 0; h <= budget; ++h) {
    bool ok = true;
    for (int r : r_window) {
      ChainMap k = kappa(R, s, h + r * d, r, M);
      for (int i = 1; i <= top && ok; ++i) ok = induced_map(R, k, i).is_zero;
      if (!ok) break;
    }
    if (ok) return h;
  }
  throw BudgetError("no h within the budget makes the Koszul homology maps vanish");
}

Exponents find_exponents(const Ring& R, const std::vector<Poly>& s, const FPModule& M, std::vector<int> r_window,
                         int budget) {
  if (r_window.empty()) r_window = {1, 2, 3};
  Exponents ex;
  ex.d = static_cast<int>(s.size());
  ex.l = stabilization_l(R, s, M).l;
  ex.h = compute_h(R, s, M, r_window, ex.d, budget);
  ex.h_provenance = "windowed r=" + std::to_string(r_window.front()) + ".." + std::to_string(r_window.back()) +
                    " i<=" + std::to_string(ex.d);
  return ex;
}

std::string to_string(PhiMode m) { return m == PhiMode::paper_bound ? "paper_bound" : "search"; }

bool PhiWitness::verified() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

PhiWitness phi_construct(const Ring& R, const std::vector<Poly>& s0, const FPModule& M0, int r, PhiMode mode,
                         const PhiOptions& opt) {
  if (r < 1) throw PreconditionError("phi needs r ≥ 1");
  if (s0.empty()) throw PreconditionError("phi needs a nonempty sequence");
  std::vector<Poly> s;
  for (const auto& f : s0) s.push_back(R.normal_form(f));
  FPModule M = M0.is_cokernel(R) ? M0 : min_presentation(R, M0);
  const int d = static_cast<int>(s.size());
  Exponents ex = find_exponents(R, s, M, opt.r_window, opt.h_budget);
  Complex Kr = koszul(R, s, r, M);

  PhiWitness W;
  W.r = r;
  W.mode = mode;
  W.target = Kr;

  bool done = false;
  if (mode == PhiMode::search) {
    const long long cap = ex.u(r);
    for (long long u = r; u < cap && !done; ++u) {
      TateData T = tate_resolution(R, powers(R, s, static_cast<int>(u)), M, d + 1);
      if (auto phi = build_search(R, s, M, r, static_cast<int>(u), T, Kr)) {
        W.u = static_cast<int>(u);
        W.tate = std::move(T);
        W.phi = std::move(*phi);
        W.ex = ex;
        done = true;
      }
    }
    W.fell_back = !done;
  }
  while (!done) {
    if (ex.h > opt.h_budget) throw BudgetError("h escalation exceeded the budget while building phi");
    const int u = static_cast<int>(ex.u(r));
    TateData T = tate_resolution(R, powers(R, s, u), M, d + 1);
    auto phi = build_paper(R, s, M, r, ex, T, Kr);
    if (phi) {
      W.u = u;
      W.tate = std::move(T);
      W.phi = std::move(*phi);
      W.ex = ex;
      done = true;
    } else {
      ++ex.h;
      ex.h_provenance = "escalated during phi construction";
    }
  }
  record_checks(R, W);
  ChainMap restricted = compose(R, W.phi, koszul_inclusion(R, W.tate));
  W.checks.push_back({"restriction to K(s^u) equals kappa^{u,r}", maps_equal(R, restricted, kappa(R, s, W.u, r, M))});
  bool vanish = true;
  ChainMap k = kappa(R, s, W.u, r, M);
  for (int i = 1; i <= d; ++i) vanish = vanish && induced_map(R, k, i).is_zero;
  W.checks.push_back({"H_i(kappa^{u,r}) = 0 for 1 <= i <= d", vanish});
  if (!W.verified()) {
    for (const auto& c : W.checks)
      if (!c.pass) throw VerificationError("phi witness failed: " + c.name);
  }
  return W;
}

XiWitness xi_construct(const Ring& R, const std::vector<Poly>& s, const FPModule& M0, int r, PhiMode mode,
                       const PhiOptions& opt) {
  XiWitness X;
  X.phi = phi_construct(R, s, M0, r, mode, opt);
  const FPModule& M = X.phi.tate.M;
  const int d = static_cast<int>(s.size());
  const int a = M.ambient.rank();
  Matrix rels = M.rels;
  rels.rows = a;
  for (const auto& f : X.phi.tate.s) rels = hcat(rels, scale(R, Matrix::identity(R, a), f));
  Resolution res = resolve_presented(R, M.ambient, rels, d + 2);
  X.F = make_complex(0, res.F, res.d);
  auto psi = extend_chain_map(R, X.F, X.phi.tate.complex, 0, {Matrix::identity(R, a)}, d + 1);
  if (!psi) throw VerificationError("comparison lift into T' failed");
  X.psi = *psi;
  X.xi = compose(R, X.phi.phi, X.psi);
  std::string why;
  X.checks.push_back({"psi is a chain map", is_chain_map(R, X.psi, &why)});
  X.checks.push_back({"xi is a chain map", is_chain_map(R, X.xi, &why)});
  X.checks.push_back({"xi_0 is the identity on generators", equal(R, X.xi.at(0), Matrix::identity(R, a))});
  X.checks.push_back({"H_0(xi) surjective", induced_map(R, X.xi, 0).is_surjective});
  for (const auto& c : X.checks)
    if (!c.pass) throw VerificationError("xi witness failed: " + c.name);
  return X;
}

ComparisonMaps comparison_maps(const Ring& R, const std::vector<Poly>& s, int r, const FPModule& N, int i_lo,
                               int i_hi, PhiMode mode) {
  const int d = static_cast<int>(s.size());
  if (i_lo < 0 || i_hi > d || i_lo > i_hi) throw PreconditionError("comparison range must lie in 0..d");
  PhiWitness W = phi_construct(R, s, FPModule::free(R, FreeModule::of_rank(1)), r, mode);
  ComparisonMaps out;
  out.u = W.u;
  out.tor_map = tensor_module_map(R, W.phi, N);
  out.ext_map = tensor_module_map(R, dual_map(R, W.phi), N);
  for (int i = i_lo; i <= i_hi; ++i) {
    out.tor.push_back(induced_map(R, out.tor_map, i));
    out.ext.push_back(induced_map(R, out.ext_map, -i));
  }
  return out;
}

}  // namespace tate
