#include "tate/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tate/buchberger.hpp"
#include "tate/errors.hpp"

namespace tate {

MonomialOrder parse_order(std::string_view name) {
  if (name == "degrevlex" || name == "grevlex") return MonomialOrder::degrevlex;
  if (name == "deglex" || name == "glex") return MonomialOrder::deglex;
  if (name == "lex") return MonomialOrder::lex;
  throw ParseError("unknown monomial order '" + std::string(name) + "'");
}

std::string order_name(MonomialOrder order) {
  switch (order) {
    case MonomialOrder::degrevlex: return "degrevlex";
    case MonomialOrder::deglex: return "deglex";
    case MonomialOrder::lex: return "lex";
  }
  return "degrevlex";
}

Ring::Ring(Field field, std::vector<Variable> vars, MonomialOrder order)
    : field_(std::move(field)), vars_(std::move(vars)), order_(order) {}

RingPtr Ring::create(Field field, std::vector<Variable> vars, MonomialOrder order,
                     const std::vector<std::string>& quotient) {
  auto probe = create(field, vars, order, std::vector<Poly>{});
  std::vector<Poly> gens;
  for (const auto& text : quotient) gens.push_back(probe->parse(text));
  return create(std::move(field), std::move(vars), order, gens);
}

RingPtr Ring::create(Field field, std::vector<Variable> vars, MonomialOrder order,
                     const std::vector<Poly>& quotient) {
  if (vars.empty()) throw ParseError("a ring needs at least one variable");
  if (static_cast<int>(vars.size()) > kMaxVars)
    throw ParseError("at most " + std::to_string(kMaxVars) + " variables are supported");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.name.empty() || !(std::isalpha(static_cast<unsigned char>(v.name[0])) || v.name[0] == '_'))
      throw ParseError("invalid variable name '" + v.name + "'");
    for (char c : v.name)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw ParseError("invalid variable name '" + v.name + "'");
    if (!seen.insert(v.name).second) throw ParseError("duplicate variable '" + v.name + "'");
    if (v.weight <= 0) throw ParseError("variable weights must be positive");
  }
  std::shared_ptr<Ring> ring(new Ring(std::move(field), std::move(vars), order));
  for (const auto& g : quotient) {
    if (g.empty()) continue;
    for (const auto& t : g)
      if (t.comp != 0) throw ParseError("quotient generators must be polynomials");
    if (!ring->is_homogeneous(g))
      throw PreconditionError("quotient generator " + ring->to_string(g) + " is not homogeneous");
    ring->quotient_gens_.push_back(g);
  }
  if (!ring->quotient_gens_.empty()) {
    Buchberger bb(*ring, {0});
    for (const auto& g : ring->quotient_gens_) bb.add(g);
    bb.run();
    ring->quotient_gb_ = bb.reduced_basis();
    if (ring->quotient_gb_.size() == 1 && ring->quotient_gb_[0].front().mono.is_one())
      throw PreconditionError("quotient ideal is the unit ideal");
  }
  return ring;
}

int Ring::var_index(std::string_view name) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars_[i].name == name) return i;
  return -1;
}

void Ring::set_degree(Mono& m) const {
  std::int32_t d = 0;
  for (int i = 0; i < nvars(); ++i) d += static_cast<std::int32_t>(m.exp[i]) * vars_[i].weight;
  m.deg = d;
}

Mono Ring::var_mono(int i, int power) const {
  Mono m;
  m.exp[i] = static_cast<std::uint16_t>(power);
  m.deg = power * vars_[i].weight;
  return m;
}

Mono Ring::mono_from(const std::vector<int>& exps) const {
  Mono m;
  for (int i = 0; i < nvars() && i < static_cast<int>(exps.size()); ++i)
    m.exp[i] = static_cast<std::uint16_t>(exps[i]);
  set_degree(m);
  return m;
}

Mono Ring::mono_mul(const Mono& a, const Mono& b) const {
  Mono m;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.exp[i]) + b.exp[i];
    if (s > 0xFFFFu) throw BudgetError("exponent overflow");
    m.exp[i] = static_cast<std::uint16_t>(s);
  }
  m.deg = a.deg + b.deg;
  return m;
}

bool Ring::mono_divides(const Mono& a, const Mono& b) const {
  if (a.deg > b.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

Mono Ring::mono_div(const Mono& b, const Mono& a) const {
  Mono m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(b.exp[i] - a.exp[i]);
  m.deg = b.deg - a.deg;
  return m;
}

Mono Ring::mono_lcm(const Mono& a, const Mono& b) const {
  Mono m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = std::max(a.exp[i], b.exp[i]);
  set_degree(m);
  return m;
}

bool Ring::mono_coprime(const Mono& a, const Mono& b) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] && b.exp[i]) return false;
  return true;
}

int Ring::cmp_mono(const Mono& a, const Mono& b) const {
  const int n = nvars();
  switch (order_) {
    case MonomialOrder::degrevlex:
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      for (int i = n - 1; i >= 0; --i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
      return 0;
    case MonomialOrder::deglex:
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      [[fallthrough]];
    case MonomialOrder::lex:
      for (int i = 0; i < n; ++i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
      return 0;
  }
  return 0;
}

Poly Ring::constant(const Coef& c) const {
  if (field_.is_zero(c)) return {};
  return {Term{c, one_mono(), 0}};
}

Poly Ring::var(int i, int power) const {
  if (i < 0 || i >= nvars()) throw PreconditionError("variable index out of range");
  return {Term{field_.one(), var_mono(i, power), 0}};
}

Poly Ring::var(std::string_view name, int power) const {
  int i = var_index(name);
  if (i < 0) throw ParseError("unknown variable '" + std::string(name) + "'");
  return var(i, power);
}

Vec Ring::unit_vec(int comp) const { return {Term{field_.one(), one_mono(), comp}}; }

Vec Ring::place(const Poly& f, int comp) const {
  Vec v = f;
  for (auto& t : v) t.comp = comp;
  return v;
}

namespace {

template <class Combine>
Vec merge(const Ring& R, const Vec& a, const Vec& b, Combine combine_b) {
  const Field& F = R.field();
  Vec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = R.cmp_term(a[i], b[j]);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      Term t = b[j++];
      t.coef = combine_b(t.coef);
      out.push_back(std::move(t));
    } else {
      Coef s = F.add(a[i].coef, combine_b(b[j].coef));
      if (!F.is_zero(s)) out.push_back(Term{std::move(s), a[i].mono, a[i].comp});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    Term t = b[j];
    t.coef = combine_b(t.coef);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Vec Ring::add(const Vec& a, const Vec& b) const {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return merge(*this, a, b, [](const Coef& c) { return c; });
}

Vec Ring::sub(const Vec& a, const Vec& b) const {
  if (b.empty()) return a;
  return merge(*this, a, b, [this](const Coef& c) { return field_.neg(c); });
}

Vec Ring::neg(const Vec& a) const {
  Vec out = a;
  for (auto& t : out) t.coef = field_.neg(t.coef);
  return out;
}

Vec Ring::scale(const Vec& a, const Coef& c) const {
  if (field_.is_zero(c)) return {};
  if (field_.is_one(c)) return a;
  Vec out = a;
  for (auto& t : out) t.coef = field_.mul(t.coef, c);
  return out;
}

Vec Ring::mul_term(const Vec& a, const Coef& c, const Mono& m) const {
  if (field_.is_zero(c)) return {};
  Vec out;
  out.reserve(a.size());
  for (const auto& t : a) out.push_back(Term{field_.mul(t.coef, c), mono_mul(t.mono, m), t.comp});
  return out;
}

void Ring::axpy(Vec& a, const Coef& c, const Mono& m, const Vec& b) const {
  if (b.empty() || field_.is_zero(c)) return;
  Vec prod = mul_term(b, c, m);
  a = add(a, prod);
}

Vec Ring::mul(const Poly& f, const Vec& v) const {
  if (f.empty() || v.empty()) return {};
  if (f.size() == 1) return mul_term(v, f[0].coef, f[0].mono);
  // divide and conquer keeps merges balanced
  if (f.size() <= 4) {
    Vec acc;
    for (const auto& t : f) acc = add(acc, mul_term(v, t.coef, t.mono));
    return acc;
  }
  std::size_t mid = f.size() / 2;
  Poly lo(f.begin(), f.begin() + static_cast<long>(mid));
  Poly hi(f.begin() + static_cast<long>(mid), f.end());
  return add(mul(lo, v), mul(hi, v));
}

Poly Ring::pow(const Poly& f, int n) const {
  if (n < 0) throw PreconditionError("negative power");
  Poly result = constant(1);
  Poly base = f;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return result;
}

Vec Ring::normal_form_vec(const Vec& v) const {
  if (quotient_gb_.empty() || v.empty()) return v;
  const Field& F = field_;
  Vec rem;
  Vec cur = v;
  while (!cur.empty()) {
    const Term lead = cur.front();
    const Poly* div = nullptr;
    for (const auto& g : quotient_gb_)
      if (mono_divides(g.front().mono, lead.mono)) {
        div = &g;
        break;
      }
    if (!div) {
      rem.push_back(lead);
      cur.erase(cur.begin());
      continue;
    }
    Coef c = F.neg(F.div(lead.coef, div->front().coef));
    Mono m = mono_div(lead.mono, div->front().mono);
    Vec prod = mul_term(*div, c, m);
    for (auto& t : prod) t.comp = lead.comp;
    cur = add(cur, prod);
  }
  return rem;
}

Poly Ring::normal_form(const Poly& f) const { return normal_form_vec(f); }

Poly Ring::r_pow(const Poly& f, int n) const {
  if (n < 0) throw PreconditionError("negative power");
  Poly result = normal_form(constant(1));
  Poly base = normal_form(f);
  while (n > 0) {
    if (n & 1) result = r_mul(result, base);
    n >>= 1;
    if (n) base = r_mul(base, base);
  }
  return result;
}

bool Ring::equal_in_ring(const Poly& f, const Poly& g) const {
  return normal_form_vec(sub(f, g)).empty();
}

Poly Ring::component(const Vec& v, int comp) const {
  Poly out;
  for (const auto& t : v)
    if (t.comp == comp) out.push_back(Term{t.coef, t.mono, 0});
  return out;
}

Vec Ring::shift_components(const Vec& v, int offset) const {
  Vec out = v;
  for (auto& t : out) t.comp += offset;
  return out;
}

int Ring::degree(const Poly& f) const {
  int d = 0;
  for (const auto& t : f) d = std::max(d, static_cast<int>(t.mono.deg));
  return d;
}

int Ring::min_degree(const Poly& f) const {
  if (f.empty()) return 0;
  int d = f.front().mono.deg;
  for (const auto& t : f) d = std::min(d, static_cast<int>(t.mono.deg));
  return d;
}

bool Ring::is_homogeneous(const Poly& f) const {
  for (const auto& t : f)
    if (t.mono.deg != f.front().mono.deg) return false;
  return true;
}

bool Ring::vec_homogeneous(const Vec& v, const std::vector<int>& shifts, int* deg) const {
  if (v.empty()) return true;
  auto tdeg = [&](const Term& t) {
    int s = t.comp < static_cast<int>(shifts.size()) ? shifts[t.comp] : 0;
    return t.mono.deg + s;
  };
  int d0 = tdeg(v.front());
  for (const auto& t : v)
    if (tdeg(t) != d0) return false;
  if (deg) *deg = d0;
  return true;
}

// ---------------------------------------------------------------------------
// polynomial text

namespace {

class PolyParser {
 public:
  PolyParser(const Ring& R, std::string_view s) : R_(R), s_(s) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Poly expr() {
    Poly acc;
    bool first = true;
    for (;;) {
      bool negate = false;
      if (peek('+') || peek('-')) {
        negate = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = negate ? R_.sub(acc, t) : R_.add(acc, t);
      first = false;
      if (!(peek('+') || peek('-'))) break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = R_.mul(acc, power());
      } else if (peek('/')) {
        ++pos_;
        skip();
        mpz_class d = integer();
        acc = R_.scale(acc, R_.field().from_fraction(1, d));
      } else if (starts_factor()) {
        acc = R_.mul(acc, power());
      } else {
        break;
      }
    }
    return acc;
  }

  Poly power() {
    Poly base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      mpz_class e = integer();
      if (e > 65535) fail("exponent too large");
      base = R_.pow(base, static_cast<int>(e.get_si()));
    }
    return base;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == '-') {
      ++pos_;
      return R_.neg(power());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return R_.constant(R_.field().from_mpz(integer()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      int idx = R_.var_index(name);
      if (idx < 0) fail("unknown variable '" + std::string(name) + "'");
      return R_.var(idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Ring& R_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Ring::parse(std::string_view text) const { return PolyParser(*this, text).parse(); }

std::string Ring::to_string(const Poly& f) const {
  if (f.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : f) {
    std::string c = field_.to_string(t.coef);
    bool negative = c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (int i = 0; i < nvars(); ++i) {
      if (!t.mono.exp[i]) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i].name;
      if (t.mono.exp[i] > 1) mono += '^' + std::to_string(t.mono.exp[i]);
    }
    if (mono.empty()) {
      out << c;
    } else if (c == "1") {
      out << mono;
    } else {
      out << c << '*' << mono;
    }
  }
  return out.str();
}

std::string Ring::describe() const {
  std::ostringstream out;
  out << (field_.is_rational() ? std::string("QQ") : "GF(" + std::to_string(field_.characteristic()) + ")");
  out << '[';
  for (int i = 0; i < nvars(); ++i) {
    if (i) out << ',';
    out << vars_[i].name;
    if (vars_[i].weight != 1) out << ':' << vars_[i].weight;
  }
  out << ']';
  if (!quotient_gens_.empty()) {
    out << "/(";
    for (std::size_t i = 0; i < quotient_gens_.size(); ++i) {
      if (i) out << ", ";
      out << to_string(quotient_gens_[i]);
    }
    out << ')';
  }
  return out.str();
}

RingPtr parse_ring(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ring description: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("ring description must be an object");
  try {
    long long ch = j.value("char", 0LL);
    std::vector<Ring::Variable> vars;
    if (!j.contains("vars") || !j["vars"].is_array()) throw ParseError("ring description needs a 'vars' list");
    for (const auto& v : j["vars"]) {
      if (v.is_string()) {
        vars.push_back({v.get<std::string>(), 1});
      } else if (v.is_object()) {
        vars.push_back({v.at("name").get<std::string>(), v.value("weight", 1)});
      } else {
        throw ParseError("variables are names or {name, weight} objects");
      }
    }
    MonomialOrder order = parse_order(j.value("order", std::string("degrevlex")));
    std::vector<std::string> quotient;
    if (j.contains("quotient"))
      for (const auto& q : j["quotient"]) quotient.push_back(q.get<std::string>());
    return Ring::create(Field(ch), std::move(vars), order, quotient);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ring description: ") + e.what());
  }
}

}  // namespace tate
