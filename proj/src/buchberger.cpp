#include "tate/buchberger.hpp"

#include <algorithm>

namespace tate {

bool Buchberger::PairLess::operator()(const Pair& a, const Pair& b) const {
  if (a.sugar != b.sugar) return a.sugar < b.sugar;
  if (a.comp != b.comp) return a.comp < b.comp;
  int c = ring->cmp_mono(a.lcm, b.lcm);
  if (c != 0) return c < 0;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

Buchberger::Buchberger(const Ring& ring, std::vector<int> shifts)
    : R_(ring), shifts_(std::move(shifts)), pairs_(PairLess{&ring}) {}

int Buchberger::sugar_of(const Vec& v) const {
  int s = 0;
  bool first = true;
  for (const auto& t : v) {
    int sh = t.comp < static_cast<int>(shifts_.size()) ? shifts_[t.comp] : 0;
    int d = t.mono.deg + sh;
    if (first || d > s) s = d;
    first = false;
  }
  return s;
}

std::uint32_t Buchberger::mask_of(const Mono& m) const {
  std::uint32_t mask = 0;
  for (int i = 0; i < kMaxVars; ++i)
    if (m.exp[i]) mask |= 1u << i;
  return mask;
}

int Buchberger::find_divisor(const Term& t) const {
  if (t.comp >= static_cast<int>(by_comp_.size())) return -1;
  std::uint32_t tm = mask_of(t.mono);
  for (int k : by_comp_[t.comp]) {
    const Elem& e = elems_[k];
    if (e.mask & ~tm) continue;
    if (R_.mono_divides(e.v.front().mono, t.mono)) return k;
  }
  return -1;
}

namespace {

// a[pos+1..] + c * m * b[1..]; the leading terms are assumed to cancel.
Vec cancel_merge(const Ring& R, const Vec& a, std::size_t pos, const Coef& c, const Mono& m,
                 const Vec& b) {
  const Field& F = R.field();
  Vec out;
  out.reserve(a.size() - pos + b.size());
  std::size_t i = pos + 1, j = 1;
  auto scaled = [&](std::size_t k) {
    return Term{F.mul(b[k].coef, c), R.mono_mul(b[k].mono, m), b[k].comp};
  };
  while (i < a.size() && j < b.size()) {
    Term bt = scaled(j);
    int cmp = R.cmp_term(a[i], bt);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(std::move(bt));
      ++j;
    } else {
      Coef s = F.add(a[i].coef, bt.coef);
      if (!F.is_zero(s)) out.push_back(Term{std::move(s), a[i].mono, a[i].comp});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(scaled(j));
  return out;
}

}  // namespace

Vec Buchberger::reduce(const Vec& v) const {
  const Field& F = R_.field();
  Vec rem;
  Vec cur = v;
  std::size_t pos = 0;
  while (pos < cur.size()) {
    int k = find_divisor(cur[pos]);
    if (k < 0) {
      rem.push_back(cur[pos++]);
      continue;
    }
    const Vec& g = elems_[k].v;
    Coef c = F.neg(cur[pos].coef);
    Mono m = R_.mono_div(cur[pos].mono, g.front().mono);
    cur = cancel_merge(R_, cur, pos, c, m, g);
    pos = 0;
  }
  return rem;
}

Vec Buchberger::spoly(const Pair& p) const {
  const Vec& a = elems_[p.i].v;
  const Vec& b = elems_[p.j].v;
  Mono ma = R_.mono_div(p.lcm, a.front().mono);
  Mono mb = R_.mono_div(p.lcm, b.front().mono);
  Vec sa = R_.mul_term(a, R_.field().one(), ma);
  return cancel_merge(R_, sa, 0, R_.field().neg(R_.field().one()), mb, b);
}

void Buchberger::add(const Vec& v) {
  Vec r = reduce(v);
  if (r.empty()) return;
  insert(std::move(r), sugar_of(v));
}

void Buchberger::insert(Vec v, int sugar) {
  const Field& F = R_.field();
  Coef inv = F.inv(v.front().coef);
  if (!F.is_one(inv))
    for (auto& t : v) t.coef = F.mul(t.coef, inv);

  const int t = static_cast<int>(elems_.size());
  const int comp = v.front().comp;
  const Mono lm = v.front().mono;
  bool single = std::all_of(v.begin(), v.end(), [&](const Term& x) { return x.comp == comp; });

  // drop queued pairs whose lcm the new leading term makes redundant
  for (auto it = pairs_.begin(); it != pairs_.end();) {
    const Pair& p = *it;
    if (p.comp == comp && R_.mono_divides(lm, p.lcm) &&
        !(R_.mono_lcm(elems_[p.i].v.front().mono, lm) == p.lcm) &&
        !(R_.mono_lcm(elems_[p.j].v.front().mono, lm) == p.lcm)) {
      it = pairs_.erase(it);
    } else {
      ++it;
    }
  }

  if (comp >= static_cast<int>(by_comp_.size())) by_comp_.resize(comp + 1);
  std::vector<Pair> cand;
  std::vector<bool> coprime;
  for (int i : by_comp_[comp]) {
    if (elems_[i].redundant) continue;
    const Mono& li = elems_[i].v.front().mono;
    Mono l = R_.mono_lcm(li, lm);
    int s = std::max(elems_[i].sugar + l.deg - li.deg, sugar + l.deg - lm.deg);
    cand.push_back(Pair{i, t, l, comp, s});
    coprime.push_back(single && elems_[i].single_comp && R_.mono_coprime(li, lm));
  }
  std::vector<bool> keep(cand.size(), true);
  for (std::size_t a = 0; a < cand.size(); ++a)
    for (std::size_t b = 0; b < cand.size(); ++b)
      if (a != b && R_.mono_divides(cand[b].lcm, cand[a].lcm) && !(cand[b].lcm == cand[a].lcm)) {
        keep[a] = false;
        break;
      }
  for (std::size_t a = 0; a < cand.size(); ++a) {
    if (!keep[a]) continue;
    bool any_coprime = coprime[a];
    for (std::size_t b = a + 1; b < cand.size(); ++b)
      if (keep[b] && cand[b].lcm == cand[a].lcm) {
        any_coprime = any_coprime || coprime[b];
        keep[b] = false;
      }
    if (!any_coprime) pairs_.insert(cand[a]);
  }

  for (int i : by_comp_[comp])
    if (R_.mono_divides(lm, elems_[i].v.front().mono)) elems_[i].redundant = true;

  elems_.push_back(Elem{std::move(v), comp, sugar, mask_of(lm), false, single});
  by_comp_[comp].push_back(t);
}

void Buchberger::run() {
  while (!pairs_.empty()) {
    Pair p = *pairs_.begin();
    pairs_.erase(pairs_.begin());
    Vec s = reduce(spoly(p));
    if (!s.empty()) insert(std::move(s), p.sugar);
  }
}

std::vector<Vec> Buchberger::reduced_basis() const {
  std::vector<int> order(elems_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int c = R_.cmp_term(elems_[a].v.front(), elems_[b].v.front());
    if (c != 0) return c < 0;
    return a < b;
  });
  Buchberger kept(R_, shifts_);
  std::vector<int> chosen;
  for (int k : order) {
    const Term& lt = elems_[k].v.front();
    bool divisible = false;
    for (int c : chosen) {
      const Term& ct = elems_[c].v.front();
      if (ct.comp == lt.comp && R_.mono_divides(ct.mono, lt.mono)) {
        divisible = true;
        break;
      }
    }
    if (!divisible) chosen.push_back(k);
  }
  for (int c : chosen) {
    Elem e = elems_[c];
    e.redundant = false;
    if (e.comp >= static_cast<int>(kept.by_comp_.size())) kept.by_comp_.resize(e.comp + 1);
    kept.by_comp_[e.comp].push_back(static_cast<int>(kept.elems_.size()));
    kept.elems_.push_back(std::move(e));
  }
  std::vector<Vec> out;
  out.reserve(kept.elems_.size());
  for (const auto& e : kept.elems_) {
    Vec tail(e.v.begin() + 1, e.v.end());
    Vec r = kept.reduce(tail);
    Vec g;
    g.reserve(r.size() + 1);
    g.push_back(e.v.front());
    for (auto& x : r) g.push_back(std::move(x));
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(),
            [&](const Vec& a, const Vec& b) { return R_.cmp_term(a.front(), b.front()) > 0; });
  return out;
}

}  // namespace tate
