#include "tate/koszul.hpp"

#include <functional>

#include "tate/errors.hpp"

namespace tate {

std::vector<std::vector<int>> subsets(int d, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i < d; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  if (m >= 0 && m <= d) rec(0);
  return out;
}

int subset_index(int d, const std::vector<int>& sub) {
  auto all = subsets(d, static_cast<int>(sub.size()));
  for (std::size_t k = 0; k < all.size(); ++k)
    if (all[k] == sub) return static_cast<int>(k);
  return -1;
}

namespace {

int elem_degree(const Ring& R, const Poly& f) {
  if (f.empty()) return 0;
  if (!R.is_homogeneous(f)) throw PreconditionError("Koszul element is not homogeneous");
  return R.degree(f);
}

std::vector<Poly> reduce_all(const Ring& R, const std::vector<Poly>& s) {
  std::vector<Poly> out;
  for (const auto& f : s) out.push_back(R.normal_form(f));
  return out;
}

}  // namespace

Complex koszul(const Ring& R, const std::vector<Poly>& s0, int n) {
  if (n < 0) throw PreconditionError("negative Koszul exponent");
  std::vector<Poly> s = reduce_all(R, s0);
  const int d = static_cast<int>(s.size());
  std::vector<int> deg;
  std::vector<Poly> pw;
  for (const auto& f : s) {
    deg.push_back(elem_degree(R, f) * n);
    pw.push_back(R.r_pow(f, n));
  }
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs;
  for (int m = 0; m <= d; ++m) {
    FreeModule F;
    for (const auto& sub : subsets(d, m)) {
      int sh = 0;
      for (int i : sub) sh += deg[i];
      F.shifts.push_back(sh);
    }
    terms.push_back(F);
    if (m == 0) continue;
    auto subs = subsets(d, m);
    Matrix D = Matrix::zero(terms[m - 1].rank(), static_cast<int>(subs.size()));
    for (std::size_t c = 0; c < subs.size(); ++c) {
      Vec col;
      for (int j = 0; j < m; ++j) {
        std::vector<int> rest = subs[c];
        rest.erase(rest.begin() + j);
        int row = subset_index(d, rest);
        Poly coef = j % 2 == 0 ? pw[subs[c][j]] : R.neg(pw[subs[c][j]]);
        col = R.add(col, R.place(coef, row));
      }
      D.cols[c] = R.normal_form_vec(col);
    }
    diffs.push_back(D);
  }
  return make_complex(0, std::move(terms), std::move(diffs));
}

Complex koszul(const Ring& R, const std::vector<Poly>& s, int n, const FPModule& M) {
  return tensor_module(R, koszul(R, s, n), M);
}

Matrix kappa_component(const Ring& R, const std::vector<Poly>& s0, int n, int k, int m, int rank) {
  if (n < k) throw PreconditionError("kappa needs n ≥ k");
  std::vector<Poly> s = reduce_all(R, s0);
  const int d = static_cast<int>(s.size());
  auto subs = subsets(d, m);
  Matrix out = Matrix::zero(static_cast<int>(subs.size()) * rank, static_cast<int>(subs.size()) * rank);
  for (std::size_t c = 0; c < subs.size(); ++c) {
    Poly prod = R.constant(1);
    for (int i : subs[c]) prod = R.r_mul(prod, s[i]);
    Poly f = R.r_pow(prod, n - k);
    for (int b = 0; b < rank; ++b) {
      int idx = static_cast<int>(c) * rank + b;
      out.cols[idx] = R.place(f, idx);
    }
  }
  return out;
}

ChainMap kappa(const Ring& R, const std::vector<Poly>& s, int n, int k, const FPModule& M0) {
  FPModule M = M0.is_cokernel(R) ? M0 : min_presentation(R, M0);
  Complex src = koszul(R, s, n, M), tgt = koszul(R, s, k, M);
  std::vector<Matrix> comps;
  for (int m = 0; m <= static_cast<int>(s.size()); ++m)
    comps.push_back(kappa_component(R, s, n, k, m, M.ambient.rank()));
  return make_map(src, tgt, 0, std::move(comps));
}

ChainMap kappa(const Ring& R, const std::vector<Poly>& s, int n, int k) {
  return kappa(R, s, n, k, FPModule::free(R, FreeModule::of_rank(1)));
}

Complex koszul_dual(const Ring& R, const std::vector<Poly>& s, int n, const FPModule& N) {
  return tensor_module(R, dual(R, koszul(R, s, n)), N);
}

ChainMap kappa_dual(const Ring& R, const std::vector<Poly>& s, int n, int k, const FPModule& N0) {
  FPModule N = N0.is_cokernel(R) ? N0 : min_presentation(R, N0);
  const int d = static_cast<int>(s.size());
  Complex src = koszul_dual(R, s, k, N), tgt = koszul_dual(R, s, n, N);
  std::vector<Matrix> comps;
  for (int i = d; i >= 0; --i) comps.push_back(kappa_component(R, s, n, k, i, N.ambient.rank()));
  return make_map(src, tgt, -d, std::move(comps));
}

int grade(const Ring& R, const std::vector<Poly>& s) {
  Ideal I = make_ideal(R, s);
  if (is_unit_ideal(R, I)) throw PreconditionError("grade of the unit ideal");
  const int d = static_cast<int>(s.size());
  Complex K = koszul(R, s, 1);
  for (int i = d; i >= 1; --i)
    if (!homology_is_zero(R, K, i)) return d - i;
  return d;
}

Stabilization stabilization_l(const Ring& R, const std::vector<Poly>& s, const FPModule& M, int budget) {
  Stabilization out;
  for (const auto& f : s) {
    int found = -1;
    FPModule prev = colon_power(R, M, f, 0);
    for (int t = 0; t <= budget; ++t) {
      FPModule next = colon_power(R, M, f, t + 1);
      if (same_subquotient(R, prev, next)) {
        found = t;
        break;
      }
      prev = std::move(next);
    }
    if (found < 0) throw BudgetError("annihilator chain did not stabilize within the power budget");
    out.per_element.push_back(found);
    out.l = std::max(out.l, found);
  }
  return out;
}

FoxbyHalvorsen foxby_halvorsen(const Ring& R, const Complex& P0, const std::vector<Poly>& s0, int budget) {
  if (!P0.is_free()) throw PreconditionError("Foxby–Halvorsen needs free terms");
  Complex P = trim(P0);
  if (P.size() == 0) throw PreconditionError("Foxby–Halvorsen needs a nonzero complex");
  std::vector<Poly> s = reduce_all(R, s0);
  const int d = static_cast<int>(s.size());
  HomotopySolver solver(R, P, P);
  FoxbyHalvorsen out;
  out.m = P.lo;
  std::vector<int> ri(d, 0);
  std::vector<std::vector<Matrix>> base(d);
  for (int i = 0; i < d; ++i) {
    for (int r = 1; r <= budget && ri[i] == 0; ++r) {
      Poly f = R.r_pow(s[i], r);
      std::vector<Matrix> comps;
      for (int n = P.lo; n <= P.hi(); ++n) comps.push_back(scale(R, Matrix::identity(R, P.rank(n)), f));
      if (auto h = solver.solve(comps)) {
        ri[i] = r;
        base[i] = *h;
      }
    }
    if (ri[i] == 0) throw BudgetError("no power of a sequence element acts null-homotopically within the budget");
    out.r = std::max(out.r, ri[i]);
  }
  for (int i = 0; i < d; ++i) {
    Poly extra = R.r_pow(s[i], out.r - ri[i]);
    std::vector<Matrix> sig;
    for (auto& h : base[i]) sig.push_back(scale(R, h, extra));
    out.sigma.push_back(sig);
  }
  const FreeModule P0m = P.term(P.lo);
  const int a = P0m.rank();
  std::vector<Poly> sr;
  for (const auto& f : s) sr.push_back(f);
  Complex K = relabel(tensor_free(R, koszul(R, sr, out.r), P0m), P.lo);
  std::vector<Matrix> comps;
  for (int k = 0; k <= d; ++k) {
    auto subs = subsets(d, k);
    Matrix M = Matrix::zero(P.rank(P.lo + k), static_cast<int>(subs.size()) * a);
    for (std::size_t c = 0; c < subs.size(); ++c)
      for (int b = 0; b < a; ++b) {
        Vec v = R.unit_vec(b);
        int deg = P.lo;
        for (int t = k - 1; t >= 0; --t) {
          const auto& sig = out.sigma[subs[c][t]];
          int idx = deg - P.lo;
          v = idx < static_cast<int>(sig.size()) ? apply(R, sig[idx], v) : Vec{};
          ++deg;
        }
        M.cols[static_cast<int>(c) * a + b] = v;
      }
    comps.push_back(M);
  }
  out.psi = make_map(K, P, P.lo, std::move(comps));
  check_chain_map(R, out.psi);
  return out;
}

}  // namespace tate
