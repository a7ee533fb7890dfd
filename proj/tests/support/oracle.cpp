#include "oracle.hpp"

#include <climits>
#include <functional>
#include <map>

namespace oracle {

using namespace tate;

std::vector<Mono> standard_monomials(const Ring& R, int t) {
  std::vector<Mono> out;
  if (t < 0) return out;
  const int n = R.nvars();
  std::vector<int> e(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      if (left) return;
      Mono m = R.mono_from(e);
      for (const auto& g : R.quotient_basis())
        if (R.mono_divides(g.front().mono, m)) return;
      out.push_back(m);
      return;
    }
    int w = R.variables()[i].weight;
    for (int k = 0; k * w <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k * w);
    }
    e[i] = 0;
  };
  rec(0, t);
  return out;
}

int rank(const Field& K, std::vector<std::vector<Coef>> rows) {
  int r = 0;
  if (rows.empty()) return 0;
  const int cols = static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (!K.is_zero(rows[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[r]);
    Coef inv = K.inv(rows[r][c]);
    for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
      if (K.is_zero(rows[i][c])) continue;
      Coef f = K.mul(rows[i][c], inv);
      for (int k = c; k < cols; ++k) rows[i][k] = K.sub(rows[i][k], K.mul(f, rows[r][k]));
    }
    ++r;
  }
  return r;
}

namespace {

struct Piece {
  std::map<std::pair<int, std::array<std::uint16_t, kMaxVars>>, int> index;
  std::vector<std::pair<int, Mono>> basis;
};

Piece piece(const Ring& R, const FreeModule& F, int t) {
  Piece p;
  for (int a = 0; a < F.rank(); ++a)
    for (const auto& m : standard_monomials(R, t - F.shifts[a])) {
      p.index[{a, m.exp}] = static_cast<int>(p.basis.size());
      p.basis.push_back({a, m});
    }
  return p;
}

std::vector<Coef> coords(const Ring& R, const Piece& p, const Vec& v) {
  std::vector<Coef> out(p.basis.size(), R.field().zero());
  for (const auto& t : R.normal_form_vec(v)) {
    auto it = p.index.find({t.comp, t.mono.exp});
    if (it == p.index.end()) continue;  // other degrees do not occur for homogeneous input
    out[it->second] = t.coef;
  }
  return out;
}

// images of a monomial multiple of every column of A landing in degree t of the target
std::vector<std::vector<Coef>> span_rows(const Ring& R, const Matrix& A, const FreeModule& tgt,
                                         const Piece& p, int t) {
  std::vector<std::vector<Coef>> rows;
  for (const auto& c : A.cols) {
    Vec v = R.normal_form_vec(c);
    if (v.empty()) continue;
    int e = vec_degree(R, v, tgt.shifts);
    if (e == INT_MIN) continue;
    for (const auto& m : standard_monomials(R, t - e))
      rows.push_back(coords(R, p, R.mul_term(v, R.field().one(), m)));
  }
  return rows;
}

std::vector<std::vector<Coef>> differential_rows(const Ring& R, const Complex& C, int n,
                                                 const Piece& src, const Piece& tgt) {
  std::vector<std::vector<Coef>> rows;
  Matrix d = C.d(n);
  for (const auto& [a, m] : src.basis) rows.push_back(coords(R, tgt, R.mul_term(d.cols[a], R.field().one(), m)));
  return rows;
}

}  // namespace

long module_dim(const Ring& R, const FreeModule& F, const Matrix& rels, int t) {
  Piece p = piece(R, F, t);
  return static_cast<long>(p.basis.size()) - rank(R.field(), span_rows(R, rels, F, p, t));
}

long homology_dim(const Ring& R, const Complex& C, int n, int t) {
  const Field& K = R.field();
  Piece Vn = piece(R, C.term(n), t);
  Piece Vm = piece(R, C.term(n - 1), t);
  Piece Vp = piece(R, C.term(n + 1), t);
  auto Wm = span_rows(R, C.rel(n - 1), C.term(n - 1), Vm, t);
  auto Wn = span_rows(R, C.rel(n), C.term(n), Vn, t);
  auto dn = differential_rows(R, C, n, Vn, Vm);
  auto dp = differential_rows(R, C, n + 1, Vp, Vn);
  auto join = [](std::vector<std::vector<Coef>> a, const std::vector<std::vector<Coef>>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  long dimV = static_cast<long>(Vn.basis.size());
  if (dimV == 0) return 0;
  long r1 = Vm.basis.empty() ? 0 : rank(K, join(dn, Wm));
  long w1 = Vm.basis.empty() ? 0 : rank(K, Wm);
  long r2 = rank(K, join(dp, Wn));
  return dimV - r1 + w1 - r2;
}

std::vector<long> homology_dims(const Ring& R, const Complex& C, int n, int lo, int hi) {
  std::vector<long> out;
  for (int t = lo; t <= hi; ++t) out.push_back(homology_dim(R, C, n, t));
  return out;
}

int min_shift(const Complex& C) {
  int m = INT_MAX;
  for (const auto& F : C.terms)
    for (int s : F.shifts) m = std::min(m, s);
  return m == INT_MAX ? 0 : m;
}

}  // namespace oracle
