#include "tate/artin_rees.hpp"

#include <sstream>

#include "tate/errors.hpp"
#include "tate/koszul.hpp"

namespace tate {

std::string to_string(TorMethod m) { return m == TorMethod::resolution ? "resolution" : "syzygy_formula"; }

namespace {

Complex as_complex(const Resolution& P) { return make_complex(0, P.F, P.d); }

// N = R/I when N is cyclic on the identity generator
std::optional<Ideal> cyclic_ideal(const Ring& R, const FPModule& N) {
  if (N.ambient.rank() != 1 || !N.is_cokernel(R) || N.ambient.shifts[0] != 0) return std::nullopt;
  std::vector<Poly> g;
  for (const auto& c : N.rels.cols) g.push_back(c);
  return make_ideal(R, g);
}

Matrix ideal_times(const Ring& R, const Ideal& I, const Matrix& A) {
  Matrix out = Matrix::zero(A.rows, 0);
  for (const auto& g : I.gens) out = hcat(out, scale(R, A, g));
  out.rows = A.rows;
  return out;
}

// B_{i-1} = image of ∂_i inside P_{i-1}
Matrix image_in(const Resolution& P, int k, int* rank) {
  if (k >= static_cast<int>(P.F.size())) {
    if (!P.terminated) throw BudgetError("insufficient bound");
    *rank = 0;
    return Matrix::zero(0, 0);
  }
  *rank = P.F[k].rank();
  if (k < static_cast<int>(P.d.size())) return P.d[k];
  if (!P.terminated) throw BudgetError("insufficient bound");
  return Matrix::zero(*rank, 0);
}

std::optional<Vec> lift_or_zero(const Ring& R, const Vec& v, const Matrix& through) {
  if (v.empty()) return Vec{};
  if (through.ncols() == 0) return std::nullopt;
  return lift(R, v, through);
}

Resolution resolve_ideal(const Ring& R, const Ideal& I, int bound) { return resolve_quotient(R, I, bound); }

std::vector<Poly> powers_of(const Ring& R, const std::vector<Poly>& s, int n) {
  std::vector<Poly> out;
  for (const auto& f : s) out.push_back(R.r_pow(f, n));
  return out;
}

bool induced_zero(const Ring& R, const ChainMap& f, int n) { return induced_map(R, f, n).is_zero; }

// f - g at degree n only, on the homology of f.src
bool same_on_homology(const Ring& R, const ChainMap& f, const ChainMap& g, int n) {
  Matrix diff = sub(R, f.at(n), g.at(n));
  Homology hs = homology(R, f.src, n);
  Matrix img = multiply(R, diff, hs.module.gens);
  img.rows = f.tgt.rank(n);
  Matrix B = hcat(boundaries(R, f.tgt, n), f.tgt.rel(n));
  B.rows = f.tgt.rank(n);
  return submodule_contains(R, B, img);
}

ChainMap lift_from_unit(const Ring& R, const Complex& src, const Complex& tgt, int top, const char* what) {
  auto m = extend_chain_map(R, src, tgt, 0, {Matrix::identity(R, 1)}, top);
  if (!m) throw VerificationError(std::string("comparison lift failed: ") + what);
  return *m;
}

}  // namespace

FPModule tor_syzygy(const Ring& R, const Resolution& P, const Ideal& I, int i) {
  if (i < 1) throw PreconditionError("syzygy formula needs i ≥ 1");
  int rank = 0;
  Matrix B = image_in(P, i - 1, &rank);
  if (rank == 0) return FPModule::zero();
  FreeModule F = P.F[i - 1];
  B.rows = rank;
  Matrix IP = ideal_times(R, I, Matrix::identity(R, rank));
  Matrix gens = B.ncols() == 0 ? Matrix::zero(rank, 0) : intersect(R, IP, B, F);
  gens.rows = rank;
  Matrix rels = ideal_times(R, I, B);
  return FPModule{F, gens, rels};
}

FPModule tor(const Ring& R, const FPModule& M, const FPModule& N, int i, TorMethod method, int bound) {
  if (i < 0) throw PreconditionError("Tor needs i ≥ 0");
  if (bound <= 0) bound = i + 2;
  Resolution P = min_free_resolution(R, M, bound);
  if (method == TorMethod::syzygy_formula) {
    auto I = cyclic_ideal(R, N);
    if (!I) throw PreconditionError("syzygy formula needs N = R/I");
    return tor_syzygy(R, P, *I, i);
  }
  if (!P.terminated && static_cast<int>(P.F.size()) < i + 2) throw BudgetError("insufficient bound");
  if (i >= static_cast<int>(P.F.size())) return FPModule::zero();
  Complex C = tensor_module(R, as_complex(P), N);
  return homology(R, C, i).module;
}

TorMapReport tor_map(const Ring& R, const Resolution& P, const Ideal& Jp, const Ideal& J, int i) {
  if (i < 1) throw PreconditionError("Tor map needs i ≥ 1");
  TorMapReport rep;
  rep.i = i;
  rep.source = Jp;
  rep.target = J;
  Matrix Jrow = ideal_row(J);
  for (const auto& g : Jp.gens) {
    auto c = lift_or_zero(R, R.place(g, 0), Jrow);
    if (!c) throw PreconditionError("source ideal is not inside the target ideal");
    rep.containment.push_back(*c);
  }
  rep.source_tor = tor_syzygy(R, P, Jp, i);
  rep.target_tor = tor_syzygy(R, P, J, i);
  const Matrix& gens = rep.source_tor.gens;
  const Matrix& JB = rep.target_tor.rels;
  rep.is_zero = true;
  for (int j = 0; j < gens.ncols(); ++j) {
    auto c = lift_or_zero(R, gens.cols[j], JB);
    if (!c) {
      rep.is_zero = false;
      rep.obstruction = j;
      rep.witnesses.clear();
      break;
    }
    rep.witnesses.push_back(*c);
  }
  return rep;
}

TorMapReport tor_map(const Ring& R, const FPModule& M, const Ideal& Jp, const Ideal& J, int i) {
  return tor_map(R, min_free_resolution(R, M, i + 1), Jp, J, i);
}

TorMapReport tor_map_vanishing(const Ring& R, const Ideal& I, const FPModule& M, int i, int r, int h) {
  if (r < 1 || i < 1 || h < 0) throw PreconditionError("tor_map_vanishing needs r ≥ 1, i ≥ 1, h ≥ 0");
  return tor_map(R, M, ideal_power(R, I, r + h), ideal_power(R, I, r), i);
}

std::optional<int> degreewise_h(const Ring& R, const Ideal& I, const FPModule& M, int i, int r, int budget) {
  Resolution P = min_free_resolution(R, M, i + 1);
  Ideal Ir = ideal_power(R, I, r);
  for (int h = 0; h <= budget; ++h)
    if (tor_map(R, P, ideal_power(R, I, r + h), Ir, i).is_zero) return h;
  return std::nullopt;
}

UniformWReport uniform_w(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int r, int i_lo, int i_hi,
                         const PhiOptions& opt) {
  if (r < 1) throw PreconditionError("uniform_w needs r ≥ 1");
  const int d = static_cast<int>(s.size());
  UniformWReport rep;
  rep.r = r;
  rep.i_lo = std::max(1, i_lo);
  rep.i_hi = i_hi > 0 ? i_hi : d + 2;
  rep.ex = find_exponents(R, s, M, opt.r_window, opt.h_budget);
  rep.w = rep.ex.w(r);
  rep.guarantee = "guaranteed by theorem for all i ≥ 1; verified on window i=" + std::to_string(rep.i_lo) + ".." +
                  std::to_string(rep.i_hi);
  Ideal I = make_ideal(R, s);
  Ideal Iw = ideal_power(R, I, static_cast<int>(rep.w));
  Ideal Ir = ideal_power(R, I, r);
  Resolution P = min_free_resolution(R, M, rep.i_hi + 1);
  rep.verified_on_window = true;
  for (int i = rep.i_lo; i <= rep.i_hi; ++i) {
    rep.checks.push_back(tor_map(R, P, Iw, Ir, i));
    if (!rep.checks.back().is_zero) {
      rep.verified_on_window = false;
      throw VerificationError("Tor map at w(" + std::to_string(r) + ") = " + std::to_string(rep.w) +
                              " is nonzero in degree " + std::to_string(i));
    }
  }
  return rep;
}

std::string SarReport::status() const {
  if (h) return "h = " + std::to_string(*h);
  return "exceeds budget " + std::to_string(h_budget);
}

SarReport syzygetic_ar_check(const Ring& R, const Ideal& I, const Resolution& P, int depth,
                             const std::vector<int>& r_window, int h_budget) {
  if (depth < 1 || r_window.empty()) throw PreconditionError("empty window");
  SarReport rep;
  rep.h_budget = h_budget;
  for (int h = 0; h <= h_budget; ++h) {
    rep.cells.clear();
    bool all = true;
    for (int i = 0; i < depth; ++i)
      for (int r : r_window) {
        bool holds = tor_map(R, P, ideal_power(R, I, r + h), ideal_power(R, I, r), i + 1).is_zero;
        rep.cells.push_back({i, r, holds});
        all = all && holds;
      }
    if (all) {
      rep.h = h;
      break;
    }
  }
  return rep;
}

SarReport syzygetic_ar_check(const Ring& R, const Ideal& I, const FPModule& M, int depth,
                             const std::vector<int>& r_window, int h_budget) {
  return syzygetic_ar_check(R, I, min_free_resolution(R, M, depth + 1), depth, r_window, h_budget);
}

bool RoundtripReport::ok() const {
  return tor_given && forward_zero && forward_is_kappa && kappa_zero && backward_zero && tor_direct_zero;
}

RoundtripReport koszul_tor_roundtrip(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int i, int r,
                                     int budget) {
  if (i < 1 || r < 1) throw PreconditionError("roundtrip needs i, r ≥ 1");
  RoundtripReport rep;
  rep.i = i;
  rep.r = r;
  const int d = rep.d = static_cast<int>(s.size());
  const FPModule Rmod = FPModule::free(R, FreeModule::of_rank(1));
  const Ideal I = make_ideal(R, s);
  const int top = i + 1;
  const int tate_top = std::min(top, d + 1);

  // Tor vanishing at u(r)d gives Koszul vanishing at v
  {
    PhiWitness W = phi_construct(R, s, Rmod, r, PhiMode::search);
    rep.u_r = W.u;
    const int n = W.u * d;
    auto h = degreewise_h(R, I, M, i, n, budget);
    if (!h) throw BudgetError("no Tor-vanishing exponent within budget");
    rep.tor_given = true;
    rep.v = n + *h;
    Complex Kv = koszul(R, powers_of(R, s, rep.v), 1);
    Complex Pv = as_complex(resolve_ideal(R, ideal_power(R, I, rep.v), top + 1));
    Complex Pn = as_complex(resolve_ideal(R, ideal_power(R, I, n), top + 1));
    ChainMap a = lift_from_unit(R, Kv, Pv, top, "K(s^v) -> P(R/I^v)");
    ChainMap b = lift_from_unit(R, Pv, Pn, top, "P(R/I^v) -> P(R/I^{ud})");
    ChainMap c = lift_from_unit(R, Pn, W.tate.complex, tate_top, "P(R/I^{ud}) -> T'(s^u)");
    ChainMap total = compose(R, W.phi, compose(R, c, compose(R, b, a)));
    rep.forward = tensor_module_map(R, total, M);
    ChainMap kap = kappa(R, s, rep.v, r, M);
    rep.forward_zero = induced_zero(R, rep.forward, i);
    rep.kappa_zero = induced_zero(R, kap, i);
    rep.forward_is_kappa = same_on_homology(R, rep.forward, kap, i);
  }

  // Koszul vanishing at w gives Tor vanishing at u(w)d
  {
    rep.w = 0;
    for (int w = r; w <= r + budget; ++w)
      if (induced_zero(R, kappa(R, s, w, r, M), i)) {
        rep.w = w;
        break;
      }
    if (rep.w == 0) throw BudgetError("no Koszul-vanishing exponent within budget");
    PhiWitness W = phi_construct(R, s, Rmod, rep.w, PhiMode::search);
    rep.u_w = W.u;
    rep.v_back = W.u * d;
    Complex Pv = as_complex(resolve_ideal(R, ideal_power(R, I, rep.v_back), top + 1));
    Complex Pr = as_complex(resolve_ideal(R, ideal_power(R, I, r), top + 1));
    ChainMap a = lift_from_unit(R, Pv, W.tate.complex, tate_top, "P(R/I^{ud}) -> T'(s^u)");
    ChainMap kap = kappa(R, s, rep.w, r);
    ChainMap e = lift_from_unit(R, kap.tgt, Pr, top, "K(s^r) -> P(R/I^r)");
    ChainMap total = compose(R, e, compose(R, kap, compose(R, W.phi, a)));
    rep.backward = tensor_module_map(R, total, M);
    rep.backward_zero = induced_zero(R, rep.backward, i);
    rep.tor_direct_zero = tor_map(R, M, ideal_power(R, I, rep.v_back), ideal_power(R, I, r), i).is_zero;
  }
  return rep;
}

std::string to_csv(const UniformWReport& rep, const std::string& witness_ref) {
  std::ostringstream os;
  os << "i,r,exponent,is_zero,witness\n";
  for (const auto& c : rep.checks)
    os << c.i << ',' << rep.r << ',' << rep.w << ',' << (c.is_zero ? "true" : "false") << ',' << witness_ref
       << '\n';
  return os.str();
}

}  // namespace tate
