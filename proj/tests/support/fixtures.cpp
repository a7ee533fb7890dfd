#include "fixtures.hpp"

#include "tate/koszul.hpp"

namespace fx {

tate::RingPtr ring(long long ch, const std::vector<std::string>& vars,
                   const std::vector<std::string>& quotient) {
  std::vector<tate::Ring::Variable> vs;
  for (const auto& v : vars) vs.push_back({v, 1});
  return tate::Ring::create(tate::Field(ch), vs, tate::MonomialOrder::degrevlex, quotient);
}

tate::Poly P(const tate::RingPtr& R, const std::string& text) { return R->normal_form(R->parse(text)); }

tate::Matrix row(const tate::RingPtr& R, const std::vector<std::string>& entries) {
  return mat(R, 1, static_cast<int>(entries.size()), entries);
}

tate::Matrix mat(const tate::RingPtr& R, int rows, int cols, const std::vector<std::string>& entries) {
  std::vector<tate::Poly> ps;
  for (const auto& e : entries) ps.push_back(R->parse(e));
  return tate::Matrix::from_rows(*R, rows, cols, ps);
}

std::string str(const tate::RingPtr& R, const tate::Vec& v) {
  std::string out = "(";
  int maxc = -1;
  for (const auto& t : v) maxc = std::max(maxc, t.comp);
  for (int c = 0; c <= maxc; ++c) {
    if (c) out += ", ";
    out += R->to_string(R->component(v, c));
  }
  return out + ")";
}

std::string str(const tate::RingPtr& R, const tate::Matrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows; ++i) {
    if (i) out += "; ";
    for (int j = 0; j < m.ncols(); ++j) {
      if (j) out += ", ";
      out += R->to_string(m.entry(*R, i, j));
    }
  }
  return out + "]";
}

tate::Complex random_torsion_complex(const tate::RingPtr& R, std::mt19937& rng, const RandomComplexShape& shape) {
  using namespace tate;
  std::uniform_int_distribution<int> e(1, shape.max_exp), sh(shape.shift_lo, shape.shift_hi), coin(0, 1),
      count(1, shape.max_pieces);
  Complex X;
  for (;;) {
    X = Complex{};
    int pieces = count(rng);
    for (int k = 0; k < pieces; ++k) {
      Complex K = koszul(*R, {R->var(0, e(rng)), R->var(1, e(rng))}, 1);
      X = X.size() ? direct_sum(*R, X, shift(*R, K, sh(rng))) : shift(*R, K, sh(rng));
    }
    if (coin(rng)) {
      Complex C = make_complex(0, {FreeModule{{1}}, FreeModule{{1}}}, {Matrix::identity(*R, 1)});
      X = direct_sum(*R, X, C);
    }
    bool fits = true;
    for (int n = X.lo; n <= X.hi(); ++n) fits = fits && (shape.max_rank == 0 || X.rank(n) <= shape.max_rank);
    if (fits) break;
  }
  // base change: e_i ↦ e_i + c·x^k e_j for j < i of compatible degree
  std::vector<Matrix> U;
  for (int n = X.lo; n <= X.hi(); ++n) {
    Matrix u = Matrix::identity(*R, X.rank(n));
    const auto& s = X.term(n).shifts;
    for (int i = 0; i < X.rank(n); ++i)
      for (int j = 0; j < i; ++j)
        if (s[i] - s[j] >= 0 && s[i] - s[j] <= 1 && coin(rng))
          u.cols[i] = R->add(u.cols[i], R->place(R->var(coin(rng), s[i] - s[j]), j));
    U.push_back(u);
  }
  // U unitriangular, so U^{-1} = Σ (I-U)^k
  auto inverse = [&](const Matrix& u) {
    Matrix I = Matrix::identity(*R, u.rows);
    Matrix N = sub(*R, I, u), acc = I, p = I;
    for (int k = 1; k < u.rows; ++k) {
      p = multiply(*R, p, N);
      acc = add(*R, acc, p);
    }
    return acc;
  };
  std::vector<Matrix> diffs;
  for (int n = X.lo + 1; n <= X.hi(); ++n)
    diffs.push_back(multiply(*R, U[n - 1 - X.lo], multiply(*R, X.d(n), inverse(U[n - X.lo]))));
  return make_complex(X.lo, X.terms, diffs);
}

}  // namespace fx
