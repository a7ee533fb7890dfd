#include "tate/complex.hpp"

#include <algorithm>
#include <sstream>

#include "tate/errors.hpp"

namespace tate {

namespace {

bool in_span(const Ring& R, const FreeModule& F, const Matrix& gens, const Matrix& vs) {
  bool all_zero = true;
  for (const auto& v : vs.cols)
    if (!R.normal_form_vec(v).empty()) all_zero = false;
  if (all_zero) return true;
  if (gens.ncols() == 0) return false;
  SubmoduleGB gb(R, F, gens);
  return gb.contains_all(vs);
}

Matrix sized(Matrix m, int rows) {
  m.rows = rows;
  return m;
}

Vec drop_comp(const Vec& v, int i) {
  Vec out;
  out.reserve(v.size());
  for (const auto& t : v) {
    if (t.comp == i) continue;
    out.push_back(Term{t.coef, t.mono, t.comp > i ? t.comp - 1 : t.comp});
  }
  return out;
}

FreeModule drop_basis(const FreeModule& F, int i) {
  FreeModule out = F;
  out.shifts.erase(out.shifts.begin() + i);
  return out;
}

int sign_pow(int k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace

// ---------------------------------------------------------------------------

FreeModule Complex::term(int n) const { return has(n) ? terms[n - lo] : FreeModule{}; }

Matrix Complex::rel(int n) const {
  if (has(n) && n - lo < static_cast<int>(rels.size())) return sized(rels[n - lo], rank(n));
  return Matrix::zero(rank(n), 0);
}

Matrix Complex::d(int n) const {
  if (has(n) && has(n - 1)) return sized(diffs[n - lo - 1], rank(n - 1));
  return Matrix::zero(rank(n - 1), rank(n));
}

bool Complex::is_free() const {
  for (const auto& r : rels)
    if (r.ncols() > 0) return false;
  return true;
}

FPModule Complex::module(const Ring& R, int n) const {
  return FPModule::cokernel(R, term(n), rel(n));
}

Complex make_complex(int lo, std::vector<FreeModule> terms, std::vector<Matrix> diffs) {
  std::vector<Matrix> rels;
  for (const auto& t : terms) rels.push_back(Matrix::zero(t.rank(), 0));
  return make_complex(lo, std::move(terms), std::move(diffs), std::move(rels));
}

Complex make_complex(int lo, std::vector<FreeModule> terms, std::vector<Matrix> diffs,
                     std::vector<Matrix> rels) {
  std::size_t want = terms.empty() ? 0 : terms.size() - 1;
  if (diffs.size() != want) throw PreconditionError("complex: differential count does not match terms");
  if (rels.size() != terms.size()) throw PreconditionError("complex: relation count does not match terms");
  Complex C;
  C.lo = lo;
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    if (diffs[k].ncols() != terms[k + 1].rank())
      throw PreconditionError("complex: differential shape does not match terms");
    diffs[k].rows = terms[k].rank();
  }
  for (std::size_t k = 0; k < rels.size(); ++k) rels[k].rows = terms[k].rank();
  C.terms = std::move(terms);
  C.diffs = std::move(diffs);
  C.rels = std::move(rels);
  return C;
}

Complex concentrated(const Ring& R, const FPModule& M, int n) {
  FPModule P = M.is_cokernel(R) ? M : min_presentation(R, M);
  return make_complex(n, {P.ambient}, {}, {P.rels});
}

bool is_complex(const Ring& R, const Complex& C, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  for (int n = C.lo + 1; n <= C.hi(); ++n) {
    Matrix dn = C.d(n);
    if (dn.ncols() != C.rank(n)) return fail("shape mismatch at degree " + std::to_string(n));
    for (const auto& c : dn.cols)
      for (const auto& t : c)
        if (t.comp >= C.rank(n - 1)) return fail("entry out of range at degree " + std::to_string(n));
    if (!in_span(R, C.term(n - 2), C.rel(n - 2), multiply(R, C.d(n - 1), dn)))
      return fail("d∘d nonzero at degree " + std::to_string(n));
    if (!in_span(R, C.term(n - 1), C.rel(n - 1), multiply(R, dn, C.rel(n))))
      return fail("differential does not preserve relations at degree " + std::to_string(n));
  }
  return true;
}

void check_complex(const Ring& R, const Complex& C) {
  std::string why;
  if (!is_complex(R, C, &why)) throw VerificationError("not a complex: " + why);
}

bool same_complex(const Ring& R, const Complex& A, const Complex& B) {
  Complex a = trim(A), b = trim(B);
  if (a.size() != b.size()) return false;
  if (a.size() == 0) return true;
  if (a.lo != b.lo) return false;
  for (int n = a.lo; n <= a.hi(); ++n) {
    if (!(a.term(n) == b.term(n))) return false;
    if (!equal(R, a.d(n), b.d(n))) return false;
    if ((a.rel(n).ncols() || b.rel(n).ncols()) && !submodule_equal(R, a.rel(n), b.rel(n))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Matrix ChainMap::at(int n) const {
  int k = n - lo;
  if (k >= 0 && k < static_cast<int>(comps.size())) return sized(comps[k], tgt.rank(n));
  return Matrix::zero(tgt.rank(n), src.rank(n));
}

ChainMap make_map(const Complex& src, const Complex& tgt, int lo, std::vector<Matrix> comps) {
  ChainMap f{src, tgt, lo, std::move(comps)};
  for (std::size_t k = 0; k < f.comps.size(); ++k) {
    int n = lo + static_cast<int>(k);
    if (f.comps[k].ncols() != src.rank(n)) throw PreconditionError("chain map: component shape mismatch");
    f.comps[k].rows = tgt.rank(n);
  }
  return f;
}

bool is_chain_map(const Ring& R, const ChainMap& f, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  int lo = std::min(f.src.lo, f.tgt.lo);
  int hi = std::max(f.src.hi(), f.tgt.hi()) + 1;
  for (int n = lo; n <= hi; ++n) {
    Matrix fn = f.at(n);
    if (fn.ncols() != f.src.rank(n)) return fail("component shape mismatch at degree " + std::to_string(n));
    Matrix lhs = multiply(R, f.tgt.d(n), fn);
    Matrix rhs = multiply(R, f.at(n - 1), f.src.d(n));
    if (!in_span(R, f.tgt.term(n - 1), f.tgt.rel(n - 1), sub(R, lhs, rhs)))
      return fail("square does not commute at degree " + std::to_string(n));
    if (!in_span(R, f.tgt.term(n), f.tgt.rel(n), multiply(R, fn, f.src.rel(n))))
      return fail("relations not preserved at degree " + std::to_string(n));
  }
  return true;
}

void check_chain_map(const Ring& R, const ChainMap& f) {
  std::string why;
  if (!is_chain_map(R, f, &why)) throw VerificationError("not a chain map: " + why);
}

ChainMap identity_map(const Ring& R, const Complex& C) {
  std::vector<Matrix> comps;
  for (int n = C.lo; n <= C.hi(); ++n) comps.push_back(Matrix::identity(R, C.rank(n)));
  return make_map(C, C, C.lo, std::move(comps));
}

ChainMap zero_map(const Complex& src, const Complex& tgt) {
  std::vector<Matrix> comps;
  for (int n = src.lo; n <= src.hi(); ++n) comps.push_back(Matrix::zero(tgt.rank(n), src.rank(n)));
  return make_map(src, tgt, src.lo, std::move(comps));
}

ChainMap compose(const Ring& R, const ChainMap& g, const ChainMap& f) {
  std::vector<Matrix> comps;
  for (int n = f.src.lo; n <= f.src.hi(); ++n) comps.push_back(multiply(R, g.at(n), f.at(n)));
  return make_map(f.src, g.tgt, f.src.lo, std::move(comps));
}

ChainMap scale_map(const Ring& R, const ChainMap& f, const Poly& c) {
  ChainMap out = f;
  for (auto& m : out.comps) m = scale(R, m, c);
  return out;
}

ChainMap sub_maps(const Ring& R, const ChainMap& f, const ChainMap& g) {
  std::vector<Matrix> comps;
  for (int n = f.src.lo; n <= f.src.hi(); ++n) comps.push_back(sub(R, f.at(n), g.at(n)));
  return make_map(f.src, f.tgt, f.src.lo, std::move(comps));
}

bool maps_equal(const Ring& R, const ChainMap& f, const ChainMap& g) {
  int lo = std::min(f.src.lo, g.src.lo), hi = std::max(f.src.hi(), g.src.hi());
  for (int n = lo; n <= hi; ++n)
    if (!in_span(R, f.tgt.term(n), f.tgt.rel(n), sub(R, f.at(n), g.at(n)))) return false;
  return true;
}

// ---------------------------------------------------------------------------

Matrix cycles(const Ring& R, const Complex& C, int n) {
  int r = C.rank(n);
  if (r == 0) return Matrix::zero(0, 0);
  if (C.rank(n - 1) == 0) return Matrix::identity(R, r);
  Matrix rel = C.rel(n - 1);
  Matrix z = rel.ncols() == 0 ? syzygies(R, C.d(n), C.term(n - 1), C.term(n))
                              : preimage(R, C.d(n), rel, C.term(n - 1), C.term(n));
  return sized(z, r);
}

Matrix boundaries(const Ring& R, const Complex& C, int n) {
  (void)R;
  return sized(hcat(C.d(n + 1), C.rel(n)), C.rank(n));
}

Homology homology(const Ring& R, const Complex& C, int n) {
  Homology h;
  h.n = n;
  h.cycles = cycles(R, C, n);
  Matrix B = boundaries(R, C, n);
  Matrix gens = sized(min_generators(R, h.cycles, B, C.term(n)), C.rank(n));
  h.module = FPModule{C.term(n), gens, B};
  h.zero = gens.ncols() == 0;
  return h;
}

bool homology_is_zero(const Ring& R, const Complex& C, int n) {
  if (C.rank(n) == 0) return true;
  return in_span(R, C.term(n), boundaries(R, C, n), cycles(R, C, n));
}

InducedMap induced_map(const Ring& R, const ChainMap& f, int n) {
  InducedMap out;
  out.n = n;
  Homology hs = homology(R, f.src, n);
  out.source_gens = hs.module.gens;
  out.images = multiply(R, f.at(n), hs.module.gens);
  out.images.rows = f.tgt.rank(n);
  Matrix B = boundaries(R, f.tgt, n);
  out.is_zero = in_span(R, f.tgt.term(n), B, out.images);
  Matrix Zt = cycles(R, f.tgt, n);
  out.is_surjective = in_span(R, f.tgt.term(n), hcat(out.images, B), Zt);
  return out;
}

WidthStats width_stats(const Ring& R, const Complex& C) {
  WidthStats w;
  for (int n = C.lo; n <= C.hi(); ++n) {
    if (w.min_c == INT_MAX && !is_zero_module(R, C.module(R, n))) w.min_c = n;
    if (!homology_is_zero(R, C, n)) {
      w.supph.push_back(n);
      w.acyclic = false;
    }
  }
  if (!w.acyclic) {
    w.min = w.supph.front();
    w.max = w.supph.back();
    w.wid = w.max - w.min;
    w.width = w.wid;
  }
  return w;
}

std::string to_string(const WidthStats& w) {
  std::ostringstream os;
  os << "min_c=";
  if (w.min_c == INT_MAX) os << "inf"; else os << w.min_c;
  os << " min=";
  if (w.acyclic) os << "inf"; else os << w.min;
  os << " supph={";
  for (std::size_t i = 0; i < w.supph.size(); ++i) os << (i ? "," : "") << w.supph[i];
  os << "} wid=";
  if (w.acyclic) os << "-inf"; else os << w.wid;
  os << " width=" << w.width;
  return os.str();
}

// ---------------------------------------------------------------------------

Complex shift(const Ring& R, const Complex& C, int k) {
  Complex out = C;
  out.lo = C.lo - k;
  if (k % 2 != 0)
    for (auto& m : out.diffs) m = neg(R, m);
  return out;
}

ChainMap shift_map(const Ring& R, const ChainMap& f, int k) {
  return make_map(shift(R, f.src, k), shift(R, f.tgt, k), f.lo - k, f.comps);
}

Complex pad(const Complex& C, int lo, int hi) {
  lo = std::min(lo, C.size() ? C.lo : lo);
  hi = std::max(hi, C.size() ? C.hi() : hi);
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs, rels;
  for (int n = lo; n <= hi; ++n) {
    terms.push_back(C.term(n));
    rels.push_back(C.rel(n));
    if (n > lo) diffs.push_back(C.d(n));
  }
  return make_complex(lo, std::move(terms), std::move(diffs), std::move(rels));
}

ChainMap pad_map(const ChainMap& f, int lo, int hi) {
  Complex s = pad(f.src, lo, hi), t = pad(f.tgt, lo, hi);
  std::vector<Matrix> comps;
  for (int n = s.lo; n <= s.hi(); ++n) comps.push_back(f.at(n));
  return make_map(s, t, s.lo, std::move(comps));
}

Complex trim(const Complex& C) {
  int lo = C.lo, hi = C.hi();
  while (lo <= hi && C.rank(lo) == 0) ++lo;
  while (hi >= lo && C.rank(hi) == 0) --hi;
  if (lo > hi) {
    Complex e;
    e.lo = 0;
    return e;
  }
  return truncate(C, lo, hi);
}

Complex relabel(const Complex& C, int lo) {
  Complex out = C;
  out.lo = lo;
  return out;
}

Complex truncate(const Complex& C, int lo, int hi) {
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs, rels;
  for (int n = lo; n <= hi; ++n) {
    terms.push_back(C.term(n));
    rels.push_back(C.rel(n));
    if (n > lo) diffs.push_back(C.d(n));
  }
  return make_complex(lo, std::move(terms), std::move(diffs), std::move(rels));
}

Complex dual(const Ring& R, const Complex& C) {
  if (!C.is_free()) throw PreconditionError("dual of a complex with relations");
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs;
  for (int n = C.hi(); n >= C.lo; --n) {
    FreeModule F = C.term(n);
    for (auto& x : F.shifts) x = -x;
    terms.push_back(F);
    if (n < C.hi()) diffs.push_back(transpose(R, C.d(n + 1)));
  }
  return make_complex(-C.hi(), std::move(terms), std::move(diffs));
}

ChainMap dual_map(const Ring& R, const ChainMap& f) {
  Complex S = dual(R, f.tgt), T = dual(R, f.src);
  int lo = std::min(S.lo, T.lo), hi = std::max(S.hi(), T.hi());
  std::vector<Matrix> comps;
  for (int n = lo; n <= hi; ++n) {
    Matrix m = transpose(R, f.at(-n));
    m.rows = T.rank(n);
    m.cols.resize(S.rank(n));
    comps.push_back(m);
  }
  return make_map(S, T, lo, std::move(comps));
}

Complex direct_sum(const Ring& R, const Complex& A0, const Complex& B0) {
  (void)R;
  if (A0.size() == 0) return B0;
  if (B0.size() == 0) return A0;
  int lo = std::min(A0.lo, B0.lo), hi = std::max(A0.hi(), B0.hi());
  Complex A = pad(A0, lo, hi), B = pad(B0, lo, hi);
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs, rels;
  for (int n = lo; n <= hi; ++n) {
    terms.push_back(direct_sum(A.term(n), B.term(n)));
    rels.push_back(block_diag(A.rel(n), B.rel(n)));
    if (n > lo) diffs.push_back(block_diag(A.d(n), B.d(n)));
  }
  return make_complex(lo, std::move(terms), std::move(diffs), std::move(rels));
}

ChainMap direct_sum_map(const Ring& R, const ChainMap& f, const ChainMap& g) {
  Complex s = direct_sum(R, f.src, g.src), t = direct_sum(R, f.tgt, g.tgt);
  std::vector<Matrix> comps;
  for (int n = s.lo; n <= s.hi(); ++n) comps.push_back(block_diag(f.at(n), g.at(n)));
  return make_map(s, t, s.lo, std::move(comps));
}

Complex cone(const Ring& R, const ChainMap& f) {
  const Complex& T = f.src;
  const Complex& X = f.tgt;
  int lo = std::min(T.size() ? T.lo + 1 : X.lo, X.size() ? X.lo : T.lo + 1);
  int hi = std::max(T.size() ? T.hi() + 1 : X.hi(), X.size() ? X.hi() : T.hi() + 1);
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs, rels;
  for (int n = lo; n <= hi; ++n) {
    terms.push_back(direct_sum(T.term(n - 1), X.term(n)));
    rels.push_back(block_diag(T.rel(n - 1), X.rel(n)));
    if (n > lo) {
      Matrix left = vcat(neg(R, T.d(n - 1)), f.at(n - 1));
      Matrix right = vcat(Matrix::zero(T.rank(n - 2), X.rank(n)), X.d(n));
      diffs.push_back(hcat(left, right));
    }
  }
  return make_complex(lo, std::move(terms), std::move(diffs), std::move(rels));
}

ChainMap cone_inclusion(const Ring& R, const ChainMap& f) {
  Complex C = cone(R, f);
  std::vector<Matrix> comps;
  for (int n = f.tgt.lo; n <= f.tgt.hi(); ++n)
    comps.push_back(vcat(Matrix::zero(f.src.rank(n - 1), f.tgt.rank(n)), Matrix::identity(R, f.tgt.rank(n))));
  return make_map(f.tgt, C, f.tgt.lo, std::move(comps));
}

Complex tensor_free(const Ring& R, const Complex& C, const FreeModule& F) {
  Matrix id = Matrix::identity(R, F.rank());
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs, rels;
  for (int n = C.lo; n <= C.hi(); ++n) {
    terms.push_back(tensor(C.term(n), F));
    rels.push_back(kron(R, C.rel(n), id));
    if (n > C.lo) diffs.push_back(kron(R, C.d(n), id));
  }
  return make_complex(C.lo, std::move(terms), std::move(diffs), std::move(rels));
}

ChainMap tensor_free_map(const Ring& R, const ChainMap& f, const FreeModule& F) {
  Matrix id = Matrix::identity(R, F.rank());
  std::vector<Matrix> comps;
  for (const auto& m : f.comps) comps.push_back(kron(R, m, id));
  return make_map(tensor_free(R, f.src, F), tensor_free(R, f.tgt, F), f.lo, std::move(comps));
}

Complex tensor_module(const Ring& R, const Complex& C, const FPModule& M0) {
  FPModule M = M0.is_cokernel(R) ? M0 : min_presentation(R, M0);
  Matrix id = Matrix::identity(R, M.ambient.rank());
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs, rels;
  for (int n = C.lo; n <= C.hi(); ++n) {
    terms.push_back(tensor(C.term(n), M.ambient));
    Matrix r = kron(R, C.rel(n), id);
    r = hcat(r, kron(R, Matrix::identity(R, C.rank(n)), M.rels));
    rels.push_back(r);
    if (n > C.lo) diffs.push_back(kron(R, C.d(n), id));
  }
  return make_complex(C.lo, std::move(terms), std::move(diffs), std::move(rels));
}

ChainMap tensor_module_map(const Ring& R, const ChainMap& f, const FPModule& M0) {
  FPModule M = M0.is_cokernel(R) ? M0 : min_presentation(R, M0);
  Matrix id = Matrix::identity(R, M.ambient.rank());
  std::vector<Matrix> comps;
  for (const auto& m : f.comps) comps.push_back(kron(R, m, id));
  return make_map(tensor_module(R, f.src, M), tensor_module(R, f.tgt, M), f.lo, std::move(comps));
}

// ---------------------------------------------------------------------------

Pullback pullback_complex(const Ring& R, const ChainMap& g, const ChainMap& b) {
  if (g.tgt.lo != b.tgt.lo || g.tgt.size() != b.tgt.size())
    throw PreconditionError("pullback: maps have different targets");
  if (!g.src.is_free() || !b.src.is_free()) throw PreconditionError("pullback: free sources required");
  const Complex& Q = g.src;
  const Complex& M = b.src;
  const Complex& Y = g.tgt;
  int lo = std::min(Q.size() ? Q.lo : M.lo, M.size() ? M.lo : Q.lo);
  int hi = std::max(Q.size() ? Q.hi() : M.hi(), M.size() ? M.hi() : Q.hi());
  std::vector<Matrix> K(hi - lo + 1);
  std::vector<FreeModule> QM(hi - lo + 1), terms(hi - lo + 1);
  for (int n = lo; n <= hi; ++n) {
    QM[n - lo] = direct_sum(Q.term(n), M.term(n));
    Matrix A = hcat(g.at(n), neg(R, b.at(n)));
    A.rows = Y.rank(n);
    Matrix k = Y.rank(n) == 0 ? Matrix::identity(R, QM[n - lo].rank())
                              : preimage(R, A, Y.rel(n), Y.term(n), QM[n - lo]);
    k = min_generators(R, k, Matrix::zero(QM[n - lo].rank(), 0), QM[n - lo]);
    k.rows = QM[n - lo].rank();
    K[n - lo] = k;
    terms[n - lo] = FreeModule{column_degrees(R, k, QM[n - lo])};
  }
  std::vector<Matrix> diffs, rels;
  for (int n = lo; n <= hi; ++n) {
    rels.push_back(syzygies(R, K[n - lo], QM[n - lo], terms[n - lo]));
    if (n == lo) continue;
    Matrix dqm = block_diag(Q.d(n), M.d(n));
    Matrix images = multiply(R, dqm, K[n - lo]);
    images.rows = QM[n - 1 - lo].rank();
    Lifter L(R, K[n - 1 - lo], QM[n - 1 - lo], terms[n - 1 - lo]);
    auto c = L.lift_all(images);
    if (!c) throw VerificationError("pullback: differential does not preserve the kernel");
    c->rows = terms[n - 1 - lo].rank();
    diffs.push_back(*c);
  }
  Complex P = make_complex(lo, terms, diffs, rels);
  std::vector<Matrix> nu, mu;
  for (int n = lo; n <= hi; ++n) {
    nu.push_back(row_block(R, K[n - lo], 0, Q.rank(n)));
    mu.push_back(row_block(R, K[n - lo], Q.rank(n), M.rank(n)));
  }
  Complex Qp = pad(Q, lo, hi), Mp = pad(M, lo, hi);
  return Pullback{P, make_map(P, Qp, lo, nu), make_map(P, Mp, lo, mu)};
}

std::optional<ChainMap> extend_chain_map(const Ring& R, const Complex& src, const Complex& tgt,
                                         int lo, std::vector<Matrix> known, int top) {
  auto comp = [&](int n) -> Matrix {
    int k = n - lo;
    if (k >= 0 && k < static_cast<int>(known.size())) return sized(known[k], tgt.rank(n));
    return Matrix::zero(tgt.rank(n), src.rank(n));
  };
  for (int n = lo + static_cast<int>(known.size()); n <= top; ++n) {
    Matrix want = multiply(R, comp(n - 1), src.d(n));
    want.rows = tgt.rank(n - 1);
    Matrix fn = Matrix::zero(tgt.rank(n), src.rank(n));
    if (src.rank(n) > 0 && tgt.rank(n - 1) > 0) {
      Matrix through = hcat(tgt.d(n), tgt.rel(n - 1));
      FreeModule srcmod = tgt.term(n);
      auto rd = column_degrees(R, tgt.rel(n - 1), tgt.term(n - 1));
      srcmod.shifts.insert(srcmod.shifts.end(), rd.begin(), rd.end());
      Lifter L(R, through, tgt.term(n - 1), srcmod);
      for (int j = 0; j < src.rank(n); ++j) {
        auto c = L.lift(want.cols[j]);
        if (!c) return std::nullopt;
        Vec v;
        for (const auto& t : *c)
          if (t.comp < tgt.rank(n)) v.push_back(t);
        fn.cols[j] = R.normal_form_vec(v);
      }
    }
    known.push_back(fn);
  }
  return make_map(src, tgt, lo, std::move(known));
}

bool is_quasi_isomorphism(const Ring& R, const ChainMap& f) {
  Complex C = cone(R, f);
  for (int n = C.lo; n <= C.hi(); ++n)
    if (!homology_is_zero(R, C, n)) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

struct HomLayout {
  std::vector<int> offset;  // per F degree
  FreeModule module;
};

HomLayout hom_layout(const Complex& F, const Complex& G, int k) {
  HomLayout L;
  int off = 0;
  for (int n = F.lo; n <= F.hi(); ++n) {
    L.offset.push_back(off);
    FreeModule s = F.term(n), t = G.term(n + k);
    for (int j = 0; j < s.rank(); ++j)
      for (int i = 0; i < t.rank(); ++i) L.module.shifts.push_back(t.shifts[i] - s.shifts[j]);
    off += s.rank() * t.rank();
  }
  return L;
}

}  // namespace

std::vector<Matrix> HomComplex::unpack(const Ring& R, int k, const Vec& v) const {
  HomLayout L = hom_layout(F, G, k);
  std::vector<Matrix> out;
  for (int n = F.lo; n <= F.hi(); ++n) out.push_back(Matrix::zero(G.rank(n + k), F.rank(n)));
  for (const auto& t : v) {
    int b = static_cast<int>(std::upper_bound(L.offset.begin(), L.offset.end(), t.comp) - L.offset.begin()) - 1;
    int n = F.lo + b;
    int rows = G.rank(n + k);
    int local = t.comp - L.offset[b];
    int j = local / rows, i = local % rows;
    out[b].cols[j] = R.add(out[b].cols[j], Vec{Term{t.coef, t.mono, i}});
  }
  return out;
}

Vec HomComplex::pack(const Ring& R, int k, const std::vector<Matrix>& f) const {
  HomLayout L = hom_layout(F, G, k);
  Vec out;
  for (int n = F.lo; n <= F.hi(); ++n) {
    const Matrix& m = f[n - F.lo];
    int rows = G.rank(n + k);
    for (int j = 0; j < m.ncols(); ++j)
      for (const auto& t : m.cols[j]) out.push_back(Term{t.coef, t.mono, L.offset[n - F.lo] + j * rows + t.comp});
  }
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return R.cmp_term(a, b) > 0; });
  return R.normal_form_vec(out);
}

HomComplex hom_complex(const Ring& R, const Complex& F, const Complex& G) {
  if (!F.is_free() || !G.is_free()) throw PreconditionError("Hom complex needs free terms");
  HomComplex H{F, G, {}};
  if (F.size() == 0 || G.size() == 0) {
    H.C = make_complex(0, {FreeModule{}}, {});
    return H;
  }
  int klo = G.lo - F.hi(), khi = G.hi() - F.lo;
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs;
  for (int k = klo; k <= khi; ++k) terms.push_back(hom_layout(F, G, k).module);
  for (int k = klo + 1; k <= khi; ++k) {
    HomLayout L = hom_layout(F, G, k);
    Matrix D = Matrix::zero(terms[k - 1 - klo].rank(), L.module.rank());
    int sgn = sign_pow(k);
    for (int n = F.lo; n <= F.hi(); ++n) {
      int rows = G.rank(n + k), cols = F.rank(n);
      for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
          std::vector<Matrix> df;
          for (int m = F.lo; m <= F.hi(); ++m) df.push_back(Matrix::zero(G.rank(m + k - 1), F.rank(m)));
          // ∂^G E_ij at degree n
          Matrix E = Matrix::zero(rows, cols);
          E.cols[j] = R.unit_vec(i);
          df[n - F.lo] = multiply(R, G.d(n + k), E);
          // -(-1)^k E_ij ∂^F at degree n+1
          if (n + 1 <= F.hi()) {
            Matrix t = multiply(R, E, F.d(n + 1));
            t = sgn > 0 ? neg(R, t) : t;
            t.rows = G.rank(n + k);
            df[n + 1 - F.lo] = t;
          }
          for (int m = F.lo; m <= F.hi(); ++m) df[m - F.lo].rows = G.rank(m + k - 1);
          D.cols[L.offset[n - F.lo] + j * rows + i] = H.pack(R, k - 1, df);
        }
    }
    diffs.push_back(D);
  }
  H.C = make_complex(klo, std::move(terms), std::move(diffs));
  return H;
}

Ideal end_annihilator(const Ring& R, const Complex& F) {
  HomComplex H = hom_complex(R, F, F);
  Homology h = homology(R, H.C, 0);
  if (h.zero) return unit_ideal(R);
  return annihilator(R, h.module);
}

HomotopySolver::HomotopySolver(const Ring& R, const Complex& F, const Complex& G)
    : R_(R), H_(hom_complex(R, F, G)) {
  if (H_.C.has(1) && H_.C.has(0) && H_.C.rank(0) > 0)
    L_ = std::make_unique<Lifter>(R, H_.C.d(1), H_.C.term(0), H_.C.term(1));
}

std::optional<std::vector<Matrix>> HomotopySolver::solve(const std::vector<Matrix>& f) const {
  const Complex& F = H_.F;
  const Complex& G = H_.G;
  Vec target = H_.pack(R_, 0, f);
  std::vector<Matrix> h;
  if (target.empty()) {
    for (int n = F.lo; n <= F.hi(); ++n) h.push_back(Matrix::zero(G.rank(n + 1), F.rank(n)));
    return h;
  }
  if (!L_) return std::nullopt;
  auto c = L_->lift(target);
  if (!c) return std::nullopt;
  return H_.unpack(R_, 1, *c);
}

std::optional<std::vector<Matrix>> null_homotopy(const Ring& R, const ChainMap& f) {
  std::vector<Matrix> comps;
  for (int n = f.src.lo; n <= f.src.hi(); ++n) comps.push_back(f.at(n));
  auto h = HomotopySolver(R, f.src, f.tgt).solve(comps);
  if (h && !is_homotopy(R, f, *h)) throw VerificationError("null homotopy failed to verify");
  return h;
}

bool is_homotopy(const Ring& R, const ChainMap& f, const std::vector<Matrix>& h) {
  const Complex& F = f.src;
  const Complex& G = f.tgt;
  auto hn = [&](int n) {
    int k = n - F.lo;
    if (k >= 0 && k < static_cast<int>(h.size())) return sized(h[k], G.rank(n + 1));
    return Matrix::zero(G.rank(n + 1), F.rank(n));
  };
  for (int n = std::min(F.lo, G.lo); n <= std::max(F.hi(), G.hi()); ++n) {
    Matrix s = add(R, multiply(R, G.d(n + 1), hn(n)), multiply(R, hn(n - 1), F.d(n)));
    s.rows = G.rank(n);
    if (!equal(R, s, f.at(n))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Minimized minimize(const Ring& R, const Complex& X) {
  if (!X.is_free()) throw PreconditionError("minimize needs free terms");
  const Field& K = R.field();
  int lo = X.lo, hi = X.hi();
  std::vector<FreeModule> terms;
  std::vector<Matrix> d(std::max(0, hi - lo + 2));  // d[n - lo] = ∂_n
  std::vector<Matrix> G, P;                          // orig <- cur, cur <- orig
  for (int n = lo; n <= hi; ++n) {
    terms.push_back(X.term(n));
    d[n - lo] = X.d(n);
    G.push_back(Matrix::identity(R, X.rank(n)));
    P.push_back(Matrix::identity(R, X.rank(n)));
  }
  auto rank = [&](int n) { return (n >= lo && n <= hi) ? terms[n - lo].rank() : 0; };
  for (;;) {
    int fn = 0, fi = -1, fj = -1;
    Coef u;
    for (int n = lo + 1; n <= hi && fi < 0; ++n)
      for (int j = 0; j < d[n - lo].ncols() && fi < 0; ++j)
        for (const auto& t : d[n - lo].cols[j])
          if (t.mono.is_one()) {
            fn = n, fi = t.comp, fj = j, u = t.coef;
            break;
          }
    if (fi < 0) break;
    const int n = fn;
    Matrix& dn = d[n - lo];
    Coef uinv = K.inv(u);
    Vec colj = dn.cols[fj];
    // ∂_n' and G_n step
    Matrix newd = Matrix::zero(rank(n - 1) - 1, 0);
    Matrix gstep = Matrix::zero(rank(n), 0);
    for (int c = 0; c < dn.ncols(); ++c) {
      if (c == fj) continue;
      Poly beta = R.component(dn.cols[c], fi);
      Poly coef = R.scale(beta, K.neg(uinv));
      Vec col = R.normal_form_vec(R.add(dn.cols[c], R.mul(coef, colj)));
      newd.cols.push_back(drop_comp(col, fi));
      gstep.cols.push_back(R.normal_form_vec(R.add(R.unit_vec(c), R.place(coef, fj))));
    }
    // Π_{n-1} step: e_i ↦ -u⁻¹ γ, others keep their index
    Matrix pstep = Matrix::zero(rank(n - 1) - 1, rank(n - 1));
    for (int r = 0; r < rank(n - 1); ++r)
      pstep.cols[r] = r == fi ? drop_comp(R.scale(colj, K.neg(uinv)), fi) : drop_comp(R.unit_vec(r), fi);
    // Π_n step drops e_j; G_{n-1} step inserts a zero row at i
    Matrix pdrop = Matrix::zero(rank(n) - 1, rank(n));
    for (int c = 0; c < rank(n); ++c) pdrop.cols[c] = c == fj ? Vec{} : drop_comp(R.unit_vec(c), fj);
    Matrix ginsert = Matrix::zero(rank(n - 1), rank(n - 1) - 1);
    for (int r = 0, k = 0; r < rank(n - 1); ++r)
      if (r != fi) ginsert.cols[k++] = R.unit_vec(r);

    G[n - lo] = multiply(R, G[n - lo], gstep);
    G[n - 1 - lo] = multiply(R, G[n - 1 - lo], ginsert);
    P[n - lo] = multiply(R, pdrop, P[n - lo]);
    P[n - 1 - lo] = multiply(R, pstep, P[n - 1 - lo]);

    if (n + 1 <= hi) {
      Matrix& up = d[n + 1 - lo];
      for (auto& c : up.cols) c = drop_comp(c, fj);
      up.rows = rank(n) - 1;
    }
    if (n - 1 > lo) {
      Matrix& down = d[n - 1 - lo];
      down.cols.erase(down.cols.begin() + fi);
    }
    newd.rows = rank(n - 1) - 1;
    dn = newd;
    terms[n - lo] = drop_basis(terms[n - lo], fj);
    terms[n - 1 - lo] = drop_basis(terms[n - 1 - lo], fi);
  }
  std::vector<Matrix> diffs;
  for (int n = lo + 1; n <= hi; ++n) diffs.push_back(sized(d[n - lo], rank(n - 1)));
  Complex C = X.size() ? make_complex(lo, terms, diffs) : X;
  for (int n = lo; n <= hi; ++n) {
    G[n - lo].rows = X.rank(n);
    P[n - lo].rows = rank(n);
  }
  Minimized out{C, make_map(C, X, lo, G), make_map(X, C, lo, P)};
  return out;
}

std::string to_string(const Ring& R, const Complex& C) {
  std::ostringstream os;
  for (int n = C.hi(); n >= C.lo; --n) {
    os << "[" << n << "] rank " << C.rank(n) << " shifts (";
    for (int i = 0; i < C.rank(n); ++i) os << (i ? "," : "") << C.term(n).shifts[i];
    os << ")";
    if (n > C.lo) {
      Matrix m = C.d(n);
      os << " d = [";
      for (int i = 0; i < m.rows; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < m.ncols(); ++j) os << (j ? ", " : "") << R.to_string(m.entry(R, i, j));
      }
      os << "]";
    }
    if (C.rel(n).ncols()) os << " rels " << C.rel(n).ncols();
    os << "\n";
  }
  return os.str();
}

}  // namespace tate
