#include "tate/matrix.hpp"

#include <algorithm>
#include <climits>

#include "tate/errors.hpp"

namespace tate {

FreeModule direct_sum(const FreeModule& a, const FreeModule& b) {
  FreeModule out = a;
  out.shifts.insert(out.shifts.end(), b.shifts.begin(), b.shifts.end());
  return out;
}

FreeModule tensor(const FreeModule& a, const FreeModule& b) {
  FreeModule out;
  out.shifts.reserve(a.shifts.size() * b.shifts.size());
  for (int x : a.shifts)
    for (int y : b.shifts) out.shifts.push_back(x + y);
  return out;
}

FreeModule shifted(const FreeModule& a, int by) {
  FreeModule out = a;
  for (auto& s : out.shifts) s += by;
  return out;
}

Matrix Matrix::zero(int rows, int cols) {
  Matrix m;
  m.rows = rows;
  m.cols.assign(cols, Vec{});
  return m;
}

Matrix Matrix::identity(const Ring& R, int n) {
  Matrix m = zero(n, n);
  for (int i = 0; i < n; ++i) m.cols[i] = R.unit_vec(i);
  return m;
}

Matrix Matrix::from_rows(const Ring& R, int rows, int cols, const std::vector<Poly>& row_major) {
  if (static_cast<int>(row_major.size()) != rows * cols)
    throw ParseError("matrix entry count does not match its shape");
  Matrix m = zero(rows, cols);
  for (int j = 0; j < cols; ++j) {
    Vec col;
    for (int i = 0; i < rows; ++i) col = R.add(col, R.place(row_major[i * cols + j], i));
    m.cols[j] = R.normal_form_vec(col);
  }
  return m;
}

Matrix Matrix::from_cols(int rows, std::vector<Vec> cols) {
  Matrix m;
  m.rows = rows;
  m.cols = std::move(cols);
  return m;
}

Poly Matrix::entry(const Ring& R, int i, int j) const { return R.component(cols.at(j), i); }

Matrix normal_form(const Ring& R, const Matrix& A) {
  Matrix out = A;
  for (auto& c : out.cols) c = R.normal_form_vec(c);
  return out;
}

Vec apply(const Ring& R, const Matrix& A, const Vec& v) {
  Vec acc;
  // group terms of v by component
  std::size_t k = 0;
  while (k < v.size()) {
    int comp = v[k].comp;
    Poly f;
    while (k < v.size() && v[k].comp == comp) {
      f.push_back(Term{v[k].coef, v[k].mono, 0});
      ++k;
    }
    if (comp >= A.ncols()) throw PreconditionError("vector does not fit matrix source");
    acc = R.add(acc, R.mul(f, A.cols[comp]));
  }
  return R.normal_form_vec(acc);
}

Matrix multiply(const Ring& R, const Matrix& A, const Matrix& B) {
  if (A.ncols() != B.rows) throw PreconditionError("matrix shapes do not compose");
  Matrix out = Matrix::zero(A.rows, B.ncols());
  for (int j = 0; j < B.ncols(); ++j) out.cols[j] = apply(R, A, B.cols[j]);
  return out;
}

Matrix add(const Ring& R, const Matrix& A, const Matrix& B) {
  if (A.rows != B.rows || A.ncols() != B.ncols()) throw PreconditionError("matrix shapes differ");
  Matrix out = A;
  for (int j = 0; j < A.ncols(); ++j) out.cols[j] = R.normal_form_vec(R.add(A.cols[j], B.cols[j]));
  return out;
}

Matrix sub(const Ring& R, const Matrix& A, const Matrix& B) {
  if (A.rows != B.rows || A.ncols() != B.ncols()) throw PreconditionError("matrix shapes differ");
  Matrix out = A;
  for (int j = 0; j < A.ncols(); ++j) out.cols[j] = R.normal_form_vec(R.sub(A.cols[j], B.cols[j]));
  return out;
}

Matrix neg(const Ring& R, const Matrix& A) {
  Matrix out = A;
  for (auto& c : out.cols) c = R.neg(c);
  return out;
}

Matrix scale(const Ring& R, const Matrix& A, const Poly& f) {
  Matrix out = A;
  for (auto& c : out.cols) c = R.normal_form_vec(R.mul(f, c));
  return out;
}

Matrix transpose(const Ring& R, const Matrix& A) {
  Matrix out = Matrix::zero(A.ncols(), A.rows);
  std::vector<Vec> acc(A.rows);
  for (int j = 0; j < A.ncols(); ++j)
    for (const auto& t : A.cols[j]) acc[t.comp].push_back(Term{t.coef, t.mono, j});
  for (int i = 0; i < A.rows; ++i) {
    Vec& v = acc[i];
    std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return R.cmp_term(a, b) > 0; });
    out.cols[i] = std::move(v);
  }
  return out;
}

Matrix hcat(const Matrix& A, const Matrix& B) {
  if (A.rows != B.rows) throw PreconditionError("hcat: row counts differ");
  Matrix out = A;
  out.cols.insert(out.cols.end(), B.cols.begin(), B.cols.end());
  return out;
}

namespace {
Vec offset(const Vec& v, int by) {
  Vec out = v;
  for (auto& t : out) t.comp += by;
  return out;
}
}  // namespace

Matrix vcat(const Matrix& A, const Matrix& B) {
  if (A.ncols() != B.ncols()) throw PreconditionError("vcat: column counts differ");
  Matrix out = Matrix::zero(A.rows + B.rows, A.ncols());
  for (int j = 0; j < A.ncols(); ++j) {
    out.cols[j] = A.cols[j];
    Vec b = offset(B.cols[j], A.rows);
    out.cols[j].insert(out.cols[j].end(), b.begin(), b.end());
  }
  return out;
}

Matrix block_diag(const Matrix& A, const Matrix& B) {
  Matrix out = Matrix::zero(A.rows + B.rows, A.ncols() + B.ncols());
  for (int j = 0; j < A.ncols(); ++j) out.cols[j] = A.cols[j];
  for (int j = 0; j < B.ncols(); ++j) out.cols[A.ncols() + j] = offset(B.cols[j], A.rows);
  return out;
}

Matrix kron(const Ring& R, const Matrix& A, const Matrix& B) {
  Matrix out = Matrix::zero(A.rows * B.rows, A.ncols() * B.ncols());
  for (int ja = 0; ja < A.ncols(); ++ja) {
    for (int jb = 0; jb < B.ncols(); ++jb) {
      Vec acc;
      std::size_t k = 0;
      const Vec& a = A.cols[ja];
      while (k < a.size()) {
        int ia = a[k].comp;
        Poly f;
        while (k < a.size() && a[k].comp == ia) {
          f.push_back(Term{a[k].coef, a[k].mono, 0});
          ++k;
        }
        Vec part = R.mul(f, B.cols[jb]);
        acc = R.add(acc, offset(part, ia * B.rows));
      }
      out.cols[ja * B.ncols() + jb] = R.normal_form_vec(acc);
    }
  }
  return out;
}

Matrix select_cols(const Matrix& A, const std::vector<int>& idx) {
  Matrix out = Matrix::zero(A.rows, 0);
  for (int j : idx) out.cols.push_back(A.cols.at(j));
  return out;
}

Matrix select_rows(const Ring& R, const Matrix& A, const std::vector<int>& idx) {
  std::vector<int> where(A.rows, -1);
  for (std::size_t k = 0; k < idx.size(); ++k) where.at(idx[k]) = static_cast<int>(k);
  Matrix out = Matrix::zero(static_cast<int>(idx.size()), A.ncols());
  for (int j = 0; j < A.ncols(); ++j) {
    Vec v;
    for (const auto& t : A.cols[j])
      if (where[t.comp] >= 0) v.push_back(Term{t.coef, t.mono, where[t.comp]});
    std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return R.cmp_term(a, b) > 0; });
    out.cols[j] = std::move(v);
  }
  return out;
}

Matrix row_block(const Ring& R, const Matrix& A, int from, int count) {
  (void)R;
  Matrix out = Matrix::zero(count, A.ncols());
  for (int j = 0; j < A.ncols(); ++j)
    for (const auto& t : A.cols[j])
      if (t.comp >= from && t.comp < from + count) out.cols[j].push_back(Term{t.coef, t.mono, t.comp - from});
  return out;
}

bool is_zero(const Ring& R, const Matrix& A) {
  for (const auto& c : A.cols)
    if (!R.normal_form_vec(c).empty()) return false;
  return true;
}

bool equal(const Ring& R, const Matrix& A, const Matrix& B) {
  if (A.rows != B.rows || A.ncols() != B.ncols()) return false;
  for (int j = 0; j < A.ncols(); ++j)
    if (!R.normal_form_vec(R.sub(A.cols[j], B.cols[j])).empty()) return false;
  return true;
}

int vec_degree(const Ring& R, const Vec& v, const std::vector<int>& shifts) {
  int d = 0;
  if (v.empty() || !R.vec_homogeneous(v, shifts, &d)) return INT_MIN;
  return d;
}

bool is_graded(const Ring& R, const Matrix& A, const FreeModule& src, const FreeModule& tgt) {
  if (A.rows != tgt.rank() || A.ncols() != src.rank()) return false;
  for (int j = 0; j < A.ncols(); ++j) {
    Vec c = R.normal_form_vec(A.cols[j]);
    if (c.empty()) continue;
    int d = 0;
    if (!R.vec_homogeneous(c, tgt.shifts, &d) || d != src.shifts[j]) return false;
  }
  return true;
}

}  // namespace tate
