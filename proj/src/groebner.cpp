#include "tate/groebner.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>

#include "tate/errors.hpp"

namespace tate {

namespace {

void adjoin_quotient(const Ring& R, Buchberger& bb, int ncomps) {
  for (int a = 0; a < ncomps; ++a)
    for (const auto& g : R.quotient_basis()) bb.add(R.place(g, a));
}

int sugar_degree(const Ring&, const Vec& v, const std::vector<int>& shifts) {
  int d = INT_MIN;
  for (const auto& t : v) d = std::max(d, t.mono.deg + (t.comp < (int)shifts.size() ? shifts[t.comp] : 0));
  return d == INT_MIN ? 0 : d;
}

}  // namespace

std::vector<int> column_degrees(const Ring& R, const Matrix& A, const FreeModule& F) {
  std::vector<int> out;
  out.reserve(A.cols.size());
  for (const auto& c : A.cols) {
    int d = vec_degree(R, c, F.shifts);
    out.push_back(d == INT_MIN ? sugar_degree(R, c, F.shifts) : d);
  }
  return out;
}

// ---------------------------------------------------------------------------

SubmoduleGB::SubmoduleGB(const Ring& R, const FreeModule& F, const Matrix& gens)
    : R_(R), F_(F), bb_(R, F.shifts) {
  if (gens.rows != F.rank() && gens.ncols() > 0)
    throw PreconditionError("generators do not live in the ambient free module");
  adjoin_quotient(R, bb_, F.rank());
  for (const auto& c : gens.cols) bb_.add(R.normal_form_vec(c));
  bb_.run();
}

void SubmoduleGB::extend(const Vec& v) {
  bb_.add(R_.normal_form_vec(v));
  bb_.run();
}

bool SubmoduleGB::contains_all(const Matrix& A) const {
  for (const auto& c : A.cols)
    if (!contains(c)) return false;
  return true;
}

Matrix groebner_basis(const Ring& R, const Matrix& gens, const FreeModule& F) {
  SubmoduleGB gb(R, F, gens);
  return Matrix::from_cols(F.rank(), gb.basis());
}

Matrix groebner_basis(const Ring& R, const Matrix& gens) {
  return groebner_basis(R, gens, FreeModule::of_rank(gens.rows));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> augmented_shifts(const Ring& R, const Matrix& A, const FreeModule& target,
                                  const FreeModule* source) {
  std::vector<int> sh = target.shifts;
  if (source && source->rank() == A.ncols()) {
    sh.insert(sh.end(), source->shifts.begin(), source->shifts.end());
  } else {
    auto cd = column_degrees(R, A, target);
    sh.insert(sh.end(), cd.begin(), cd.end());
  }
  return sh;
}

}  // namespace

Lifter::Lifter(const Ring& R, const Matrix& through, const FreeModule& target,
               const FreeModule& source)
    : R_(R), rows_(through.rows), cols_(through.ncols()),
      bb_(R, augmented_shifts(R, through, target, &source)) {
  if (target.rank() != rows_) throw PreconditionError("lift: target rank mismatch");
  adjoin_quotient(R, bb_, rows_ + cols_);
  for (int j = 0; j < cols_; ++j) {
    Vec v = R.normal_form_vec(through.cols[j]);
    v.push_back(Term{R.field().one(), R.one_mono(), rows_ + j});
    bb_.add(v);
  }
  bb_.run();
}

Lifter::Lifter(const Ring& R, const Matrix& through)
    : Lifter(R, through, FreeModule::of_rank(through.rows),
             FreeModule{column_degrees(R, through, FreeModule::of_rank(through.rows))}) {}

bool Lifter::contains(const Vec& v) const {
  Vec r = bb_.reduce(R_.normal_form_vec(v));
  return r.empty() || r.front().comp >= rows_;
}

std::optional<Vec> Lifter::lift(const Vec& v) const {
  Vec r = bb_.reduce(R_.normal_form_vec(v));
  if (!r.empty() && r.front().comp < rows_) return std::nullopt;
  Vec c = R_.neg(R_.shift_components(r, -rows_));
  return c;
}

std::optional<Matrix> Lifter::lift_all(const Matrix& targets) const {
  Matrix out = Matrix::zero(cols_, 0);
  for (const auto& t : targets.cols) {
    auto c = lift(t);
    if (!c) return std::nullopt;
    out.cols.push_back(std::move(*c));
  }
  return out;
}

Matrix Lifter::syzygies() const {
  Matrix out = Matrix::zero(cols_, 0);
  for (auto& g : bb_.reduced_basis()) {
    if (g.front().comp < rows_) continue;
    Vec s = R_.normal_form_vec(R_.shift_components(g, -rows_));
    if (!s.empty()) out.cols.push_back(std::move(s));
  }
  return out;
}

std::optional<Vec> lift(const Ring& R, const Vec& target, const Matrix& through) {
  return Lifter(R, through).lift(target);
}

Matrix syzygies(const Ring& R, const Matrix& A) { return Lifter(R, A).syzygies(); }

Matrix syzygies(const Ring& R, const Matrix& A, const FreeModule& target, const FreeModule& source) {
  return Lifter(R, A, target, source).syzygies();
}

// ---------------------------------------------------------------------------

bool submodule_contains(const Ring& R, const Matrix& A, const Matrix& B) {
  if (B.ncols() == 0) return true;
  SubmoduleGB gb(R, FreeModule::of_rank(std::max(A.rows, B.rows)), A);
  return gb.contains_all(B);
}

bool submodule_equal(const Ring& R, const Matrix& A, const Matrix& B) {
  return submodule_contains(R, A, B) && submodule_contains(R, B, A);
}

Matrix preimage(const Ring& R, const Matrix& A, const Matrix& N, const FreeModule& target,
                const FreeModule& source) {
  Matrix both = hcat(A, N);
  FreeModule src = source;
  auto nd = column_degrees(R, N, target);
  src.shifts.insert(src.shifts.end(), nd.begin(), nd.end());
  Matrix syz = syzygies(R, both, target, src);
  Matrix out = row_block(R, syz, 0, A.ncols());
  Matrix cleaned = Matrix::zero(A.ncols(), 0);
  for (auto& c : out.cols) {
    Vec v = R.normal_form_vec(c);
    if (!v.empty()) cleaned.cols.push_back(std::move(v));
  }
  return cleaned;
}

Matrix preimage(const Ring& R, const Matrix& A, const Matrix& N) {
  FreeModule target = FreeModule::of_rank(A.rows);
  return preimage(R, A, N, target, FreeModule{column_degrees(R, A, target)});
}

Matrix intersect(const Ring& R, const Matrix& A, const Matrix& B, const FreeModule& F) {
  Matrix c = preimage(R, A, B, F, FreeModule{column_degrees(R, A, F)});
  Matrix out = multiply(R, A, c);
  Matrix cleaned = Matrix::zero(F.rank(), 0);
  for (auto& v : out.cols)
    if (!v.empty()) cleaned.cols.push_back(std::move(v));
  return cleaned;
}

Matrix intersect(const Ring& R, const Matrix& A, const Matrix& B) {
  return intersect(R, A, B, FreeModule::of_rank(A.rows));
}

Matrix min_generators(const Ring& R, const Matrix& candidates, const Matrix& modulo,
                      const FreeModule& F) {
  std::vector<Vec> cols;
  for (const auto& c : candidates.cols) cols.push_back(R.normal_form_vec(c));
  std::vector<int> deg = column_degrees(R, Matrix::from_cols(F.rank(), cols), F);
  std::vector<int> order(cols.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] < deg[b]; });
  SubmoduleGB gb(R, F, modulo);
  Matrix out = Matrix::zero(F.rank(), 0);
  for (int k : order) {
    if (cols[k].empty() || gb.contains(cols[k])) continue;
    out.cols.push_back(cols[k]);
    gb.extend(cols[k]);
  }
  return out;
}

std::vector<long> quotient_dims(const Ring& R, const Matrix& gens, const FreeModule& F, int lo, int hi) {
  SubmoduleGB gb(R, F, gens);
  auto basis = gb.basis();
  std::vector<long> out(std::max(0, hi - lo + 1), 0);
  const int n = R.nvars();
  std::vector<int> exps(n, 0);
  for (int a = 0; a < F.rank(); ++a) {
    std::vector<Mono> leads;
    for (const auto& g : basis)
      if (g.front().comp == a) leads.push_back(g.front().mono);
    for (int t = lo; t <= hi; ++t) {
      int target = t - F.shifts[a];
      if (target < 0) continue;
      long count = 0;
      std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
          if (left != 0) return;
          Mono m = R.mono_from(exps);
          for (const auto& l : leads)
            if (R.mono_divides(l, m)) return;
          ++count;
          return;
        }
        int w = R.variables()[i].weight;
        for (int e = 0; e * w <= left; ++e) {
          exps[i] = e;
          rec(i + 1, left - e * w);
        }
        exps[i] = 0;
      };
      rec(0, target);
      out[t - lo] += count;
    }
  }
  return out;
}

}  // namespace tate
