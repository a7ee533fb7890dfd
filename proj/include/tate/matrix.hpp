// Free modules with degree shifts and matrices between them. A matrix is
// stored by columns: column j is the image of the j-th source basis vector.
#pragma once

#include <vector>

#include "tate/ring.hpp"

namespace tate {

/// R(-shifts[0]) ⊕ ... : basis vector e_i sits in degree shifts[i].
struct FreeModule {
  std::vector<int> shifts;

  int rank() const { return static_cast<int>(shifts.size()); }
  static FreeModule of_rank(int n) { return FreeModule{std::vector<int>(n, 0)}; }
  bool operator==(const FreeModule& o) const { return shifts == o.shifts; }
};

FreeModule direct_sum(const FreeModule& a, const FreeModule& b);
/// Basis (a, b) ↦ index a * |B| + b, shift shiftA + shiftB.
FreeModule tensor(const FreeModule& a, const FreeModule& b);
FreeModule shifted(const FreeModule& a, int by);

struct Matrix {
  int rows = 0;
  std::vector<Vec> cols;

  int ncols() const { return static_cast<int>(cols.size()); }
  bool empty() const { return cols.empty() || rows == 0; }

  static Matrix zero(int rows, int cols);
  static Matrix identity(const Ring& R, int n);
  static Matrix from_rows(const Ring& R, int rows, int cols, const std::vector<Poly>& row_major);
  static Matrix from_cols(int rows, std::vector<Vec> cols);
  Poly entry(const Ring& R, int i, int j) const;
};

Matrix normal_form(const Ring& R, const Matrix& A);
Vec apply(const Ring& R, const Matrix& A, const Vec& v);  // A v, reduced modulo J
Matrix multiply(const Ring& R, const Matrix& A, const Matrix& B);
Matrix add(const Ring& R, const Matrix& A, const Matrix& B);
Matrix sub(const Ring& R, const Matrix& A, const Matrix& B);
Matrix neg(const Ring& R, const Matrix& A);
Matrix scale(const Ring& R, const Matrix& A, const Poly& f);
Matrix transpose(const Ring& R, const Matrix& A);
Matrix hcat(const Matrix& A, const Matrix& B);
Matrix vcat(const Matrix& A, const Matrix& B);
Matrix block_diag(const Matrix& A, const Matrix& B);
Matrix kron(const Ring& R, const Matrix& A, const Matrix& B);
Matrix select_cols(const Matrix& A, const std::vector<int>& idx);
Matrix select_rows(const Ring& R, const Matrix& A, const std::vector<int>& idx);
/// Rows [from, from + count).
Matrix row_block(const Ring& R, const Matrix& A, int from, int count);
bool is_zero(const Ring& R, const Matrix& A);
bool equal(const Ring& R, const Matrix& A, const Matrix& B);

/// Degree-0 test: column j has degree src.shifts[j] measured with target shifts.
bool is_graded(const Ring& R, const Matrix& A, const FreeModule& src, const FreeModule& tgt);
/// Degree of a homogeneous vector with the given shifts; INT_MIN for zero or inhomogeneous.
int vec_degree(const Ring& R, const Vec& v, const std::vector<int>& shifts);

}  // namespace tate
