#include "tate/session.hpp"

#include <algorithm>
#include <climits>
#include <filesystem>
#include <functional>

#include "tate/artin_rees.hpp"
#include "tate/errors.hpp"
#include "tate/groebner.hpp"
#include "tate/koszul.hpp"
#include "tate/tate_resolution.hpp"

namespace tate::cli {

namespace fs = std::filesystem;

namespace {

int get_int(const json& a, const char* key, int def) {
  if (!a.contains(key) || a[key].is_null()) return def;
  const json& v = a[key];
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      int x = std::stoi(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw ParseError(std::string("argument '") + key + "' must be an integer");
}

std::vector<int> get_ints(const json& a, const char* key, std::vector<int> def) {
  if (!a.contains(key) || a[key].is_null()) return def;
  if (a[key].is_array()) return a[key].get<std::vector<int>>();
  return {get_int(a, key, 0)};
}

std::string get_str(const json& a, const char* key, const std::string& def) {
  if (!a.contains(key) || a[key].is_null()) return def;
  if (!a[key].is_string()) throw ParseError(std::string("argument '") + key + "' must be a string");
  return a[key].get<std::string>();
}

const json& lookup(const json& table, const std::string& name, const char* what) {
  if (!table.contains(name)) throw ParseError(std::string("unknown ") + what + " '" + name + "'");
  return table[name];
}

json null_or(const json& a, const char* key) { return a.contains(key) ? a[key] : json(); }

// witness under construction: named objects plus claims that reference them
struct Witness {
  explicit Witness(const Ring& ring) : R(ring) {}
  const Ring& R;
  json objects = json::object();
  json report = json::object();
  json claims = json::array();
  std::string summary;
  std::map<std::string, std::string> side_files;  // suffix -> contents

  std::string put(const std::string& name, const Complex& C) {
    objects[name] = {{"type", "complex"}, {"value", io::complex_to_json(R, C)}};
    return name;
  }
  std::string put(const std::string& name, const ChainMap& f) {
    objects[name] = {{"type", "chain_map"}, {"value", io::map_to_json(R, f)}};
    return name;
  }
  std::string put(const std::string& name, const Ideal& I) {
    objects[name] = {{"type", "ideal"}, {"value", io::ideal_to_json(R, I)}};
    return name;
  }
  std::string put(const std::string& name, const FPModule& M) {
    objects[name] = {{"type", "module"}, {"value", io::module_to_json(R, M)}};
    return name;
  }
  std::string put(const std::string& name, const Resolution& P) {
    objects[name] = {{"type", "resolution"}, {"value", io::resolution_to_json(R, P)}};
    return name;
  }
  void claim(json c) { claims.push_back(std::move(c)); }
};

std::vector<Poly> elements(const Session& s, const json& args, RingPtr& R) {
  json ref = null_or(args, "elements");
  if (ref.is_null()) ref = null_or(args, "ideal");
  auto [ring, I] = s.ideal(ref, args);
  R = ring;
  if (I.is_zero()) throw PreconditionError("empty element sequence");
  return I.gens;
}

PhiMode parse_mode(const std::string& m) {
  if (m == "paper" || m == "paper_bound") return PhiMode::paper_bound;
  if (m == "search") return PhiMode::search;
  throw ParseError("mode must be paper or search, not '" + m + "'");
}

json exponents_json(const Exponents& ex) {
  return {{"d", ex.d}, {"l", ex.l}, {"h", ex.h}, {"h_provenance", ex.h_provenance}};
}

json checks_json(const std::vector<Check>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back({{"name", c.name}, {"pass", c.pass}});
  return out;
}

std::string width_str(int w) { return w == INT_MIN ? "-inf" : std::to_string(w); }

void claim_tor(Witness& w, const std::string& tag, const std::string& module, const TorMapReport& rep) {
  w.put(tag + ".source", rep.source);
  w.put(tag + ".target", rep.target);
  w.claim({{"kind", "tor_map"}, {"module", module}, {"source", tag + ".source"}, {"target", tag + ".target"},
           {"degree", rep.i}, {"zero", rep.is_zero}});
}

// -- commands -----------------------------------------------------------------

using Command = std::function<int(const Session&, const json&, RingPtr&, std::unique_ptr<Witness>&)>;

Witness& start(std::unique_ptr<Witness>& w, const RingPtr& R) {
  w = std::make_unique<Witness>(*R);
  return *w;
}

int cmd_ring_check(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  R = s.default_ring(args);
  Witness& w = start(wp, R);
  w.report = {{"description", R->describe()},
              {"char", R->field().characteristic()},
              {"nvars", R->nvars()},
              {"order", order_name(R->order())},
              {"polynomial_ring", R->is_polynomial_ring()},
              {"quotient_basis", io::poly_list(*R, R->quotient_basis())}};
  w.summary = R->describe();
  return ok;
}

int cmd_koszul_homology(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  Complex C;
  if (args.contains("complex")) {
    std::tie(R, C) = s.complex(args["complex"], args);
  } else {
    auto e = elements(s, args, R);
    C = koszul(*R, e, get_int(args, "exponent", 1), s.module(null_or(args, "module"), R));
  }
  Witness& w = start(wp, R);
  w.put("X", C);
  w.claim({{"kind", "complex"}, {"complex", "X"}});
  int D = get_int(args, "degree_window", s.budgets.degree_window);
  json degrees = json::array();
  std::string zeros;
  for (int n = C.lo; n <= C.hi(); ++n) {
    Homology h = homology(*R, C, n);
    json entry = {{"degree", n}, {"zero", h.zero}, {"presentation", io::module_to_json(*R, h.module)}};
    if (!h.zero) {
      FPModule pm = min_presentation(*R, h.module);
      entry["minimal"] = to_string(*R, pm);
      int lo = 0;
      for (int sh : h.module.ambient.shifts) lo = std::min(lo, sh);
      try {
        entry["graded_dims"] = {{"from", lo}, {"dims", graded_dims(*R, h.module, lo, D)}};
      } catch (const std::exception&) {
        entry["graded_dims"] = nullptr;
      }
    }
    degrees.push_back(entry);
    w.claim({{"kind", "homology"}, {"complex", "X"}, {"degree", n}, {"zero", h.zero}});
    zeros += h.zero ? '0' : 'H';
  }
  WidthStats ws = width_stats(*R, C);
  w.report = {{"degrees", degrees}, {"width", width_str(ws.wid)}, {"acyclic", ws.acyclic}};
  w.summary = "H[" + std::to_string(C.lo) + ".." + std::to_string(C.hi()) + "] = " + zeros;
  return ok;
}

int cmd_kappa_induced(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  auto e = elements(s, args, R);
  FPModule M = s.module(null_or(args, "module"), R);
  int n = get_int(args, "n", 2), k = get_int(args, "k", 1);
  if (n < k || k < 0) throw PreconditionError("kappa needs n ≥ k ≥ 0");
  ChainMap f = kappa(*R, e, n, k, M);
  Witness& w = start(wp, R);
  w.put("kappa", f);
  w.claim({{"kind", "chain_map"}, {"map", "kappa"}});
  json rows = json::array();
  std::string zs;
  for (int i = 0; i <= static_cast<int>(e.size()); ++i) {
    InducedMap im = induced_map(*R, f, i);
    rows.push_back({{"degree", i}, {"zero", im.is_zero}, {"surjective", im.is_surjective}});
    w.claim({{"kind", "induced"}, {"map", "kappa"}, {"degree", i}, {"zero", im.is_zero},
             {"surjective", im.is_surjective}});
    zs += im.is_zero ? '0' : '*';
  }
  w.report = {{"n", n}, {"k", k}, {"induced", rows}};
  w.summary = "H_i(kappa^{" + std::to_string(n) + "," + std::to_string(k) + "}) zero pattern " + zs;
  return ok;
}

int cmd_tate_build(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  auto e = elements(s, args, R);
  FPModule M = s.module(null_or(args, "module"), R);
  int bound = get_int(args, "bound", static_cast<int>(e.size()) + 1);
  TateData T = tate_resolution(*R, e, M, bound);
  Witness& w = start(wp, R);
  w.put("tate", T.complex);
  w.put("inclusion", koszul_inclusion(*R, T));
  w.claim({{"kind", "complex"}, {"complex", "tate"}});
  w.claim({{"kind", "exact"}, {"complex", "tate"}, {"from", 1}, {"to", bound - 1}});
  w.claim({{"kind", "chain_map"}, {"map", "inclusion"}});
  std::vector<int> ranks;
  for (int n = 0; n <= bound; ++n) ranks.push_back(T.complex.rank(n));
  w.report = {{"bound", bound}, {"t", T.t}, {"koszul_rank", T.koszul_rank}, {"ranks", ranks}};
  std::string ts;
  for (int t : T.t) ts += (ts.empty() ? "" : " ") + std::to_string(t);
  w.summary = "t = " + ts;
  return ok;
}

int cmd_phi_construct(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  auto e = elements(s, args, R);
  FPModule M = s.module(null_or(args, "module"), R);
  int r = get_int(args, "r", 1);
  std::string mode = get_str(args, "mode", "both");
  std::vector<PhiMode> modes;
  if (mode == "both")
    modes = {PhiMode::paper_bound, PhiMode::search};
  else
    modes = {parse_mode(mode)};
  Witness& w = start(wp, R);
  json rows = json::array();
  for (PhiMode m : modes) {
    PhiWitness pw = phi_construct(*R, e, M, r, m);
    std::string tag = to_string(m);
    w.put("phi." + tag, pw.phi);
    w.put("inclusion." + tag, koszul_inclusion(*R, pw.tate));
    w.put("kappa." + tag, kappa(*R, e, pw.u, r, M));
    w.claim({{"kind", "chain_map"}, {"map", "phi." + tag}});
    w.claim({{"kind", "exact"}, {"map_source", "phi." + tag}, {"from", 1}, {"to", pw.tate.bound - 1}});
    w.claim({{"kind", "restricts"}, {"inclusion", "inclusion." + tag}, {"map", "phi." + tag},
             {"expected", "kappa." + tag}});
    rows.push_back({{"mode", tag},
                    {"u", pw.u},
                    {"u_bound", pw.ex.u(r)},
                    {"fell_back", pw.fell_back},
                    {"exponents", exponents_json(pw.ex)},
                    {"checks", checks_json(pw.checks)},
                    {"verified", pw.verified()}});
    if (!w.summary.empty()) w.summary += ", ";
    w.summary += "u(" + tag + ") = " + std::to_string(pw.u);
  }
  w.report = {{"r", r}, {"modes", rows}};
  return ok;
}

int cmd_exponents(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  auto e = elements(s, args, R);
  FPModule M = s.module(null_or(args, "module"), R);
  int r = get_int(args, "r", 1);
  std::vector<int> window = get_ints(args, "r_window", {1, 2, 3});
  Exponents ex = find_exponents(*R, e, M, window);
  Witness& w = start(wp, R);
  json q = json::array();
  for (int i = 0; i < ex.d; ++i) q.push_back({{"i", i}, {"q", ex.q_step(i, r)}, {"closed", ex.q_closed(i, r)}});
  w.report = exponents_json(ex);
  w.report["r"] = r;
  w.report["r_window"] = window;
  w.report["u"] = ex.u(r);
  w.report["w"] = ex.w(r);
  w.report["q"] = q;
  for (int rr : window) {
    std::string name = "kappa.r" + std::to_string(rr);
    w.put(name, kappa(*R, e, ex.h + rr * ex.d, rr, M));
    for (int i = 1; i <= ex.d; ++i) w.claim({{"kind", "induced"}, {"map", name}, {"degree", i}, {"zero", true}});
  }
  w.summary = "l = " + std::to_string(ex.l) + ", h = " + std::to_string(ex.h) + ", u(" + std::to_string(r) +
              ") = " + std::to_string(ex.u(r)) + ", w(" + std::to_string(r) + ") = " + std::to_string(ex.w(r));
  return ok;
}

int cmd_tor_vanish(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  Ideal I;
  std::tie(R, I) = s.ideal(null_or(args, "ideal"), args);
  FPModule M = s.module(null_or(args, "module"), R);
  int i = get_int(args, "i", 1), r = get_int(args, "r", 1);
  int h;
  if (args.contains("h")) {
    h = get_int(args, "h", 0);
  } else {
    auto found = degreewise_h(*R, I, M, i, r, s.budgets.power);
    if (!found) throw BudgetError("no h ≤ " + std::to_string(s.budgets.power) + " kills the Tor map");
    h = *found;
  }
  TorMapReport rep = tor_map_vanishing(*R, I, M, i, r, h);
  Witness& w = start(wp, R);
  w.put("M", M);
  claim_tor(w, "tor", "M", rep);
  w.report = {{"i", i},
              {"r", r},
              {"h", h},
              {"is_zero", rep.is_zero},
              {"obstruction", rep.obstruction},
              {"source_tor", to_string(*R, rep.source_tor)},
              {"target_tor", to_string(*R, rep.target_tor)}};
  w.summary = "Tor_" + std::to_string(i) + "(R/I^" + std::to_string(r + h) + ", M) -> Tor_" + std::to_string(i) +
              "(R/I^" + std::to_string(r) + ", M) " + (rep.is_zero ? "is zero" : "is nonzero");
  return ok;
}

int cmd_w_uniform(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  auto e = elements(s, args, R);
  FPModule M = s.module(null_or(args, "module"), R);
  int r = get_int(args, "r", 1);
  UniformWReport rep = uniform_w(*R, e, M, r, get_int(args, "i_lo", 1), get_int(args, "i_hi", 0));
  Witness& w = start(wp, R);
  w.put("M", M);
  json rows = json::array();
  for (const auto& c : rep.checks) {
    claim_tor(w, "tor.i" + std::to_string(c.i), "M", c);
    rows.push_back({{"i", c.i}, {"is_zero", c.is_zero}});
  }
  w.report = {{"exponents", exponents_json(rep.ex)}, {"r", r}, {"w", rep.w}, {"i_lo", rep.i_lo}, {"i_hi", rep.i_hi},
              {"checks", rows}, {"verified_on_window", rep.verified_on_window}, {"guarantee", rep.guarantee}};
  w.side_files[".csv"] = to_csv(rep);
  w.summary = "w(" + std::to_string(r) + ") = " + std::to_string(rep.w) + ", Tor maps zero for i = " +
              std::to_string(rep.i_lo) + ".." + std::to_string(rep.i_hi);
  return ok;
}

int cmd_sar_check(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  Ideal I;
  std::tie(R, I) = s.ideal(null_or(args, "ideal"), args);
  FPModule M = s.module(null_or(args, "module"), R);
  int depth = get_int(args, "depth", 2);
  std::vector<int> window = get_ints(args, "r_window", {1, 2, 3});
  int h_budget = get_int(args, "h_budget", 8);
  SarReport rep = syzygetic_ar_check(*R, I, M, depth, window, h_budget);
  Witness& w = start(wp, R);
  w.put("M", M);
  int h = rep.h ? *rep.h : h_budget;
  json cells = json::array();
  for (const auto& c : rep.cells) {
    cells.push_back({{"i", c.i}, {"r", c.r}, {"holds", c.holds}});
    std::string tag = "cell.i" + std::to_string(c.i) + ".r" + std::to_string(c.r);
    w.put(tag + ".source", ideal_power(*R, I, c.r + h));
    w.put(tag + ".target", ideal_power(*R, I, c.r));
    w.claim({{"kind", "tor_map"}, {"module", "M"}, {"source", tag + ".source"}, {"target", tag + ".target"},
             {"degree", c.i + 1}, {"zero", c.holds}});
  }
  w.report = {{"status", rep.status()}, {"h", rep.h ? json(*rep.h) : json()}, {"h_budget", h_budget},
              {"depth", depth}, {"r_window", window}, {"cells", cells}};
  w.summary = rep.status();
  return rep.h ? ok : budget;
}

int cmd_roundtrip(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  auto e = elements(s, args, R);
  FPModule M = s.module(null_or(args, "module"), R);
  int i = get_int(args, "i", 1), r = get_int(args, "r", 1);
  RoundtripReport rep = koszul_tor_roundtrip(*R, e, M, i, r, get_int(args, "budget", 8));
  Witness& w = start(wp, R);
  w.put("forward", rep.forward);
  w.put("backward", rep.backward);
  w.claim({{"kind", "chain_map"}, {"map", "forward"}});
  w.claim({{"kind", "induced"}, {"map", "forward"}, {"degree", i}, {"zero", rep.forward_zero}});
  w.claim({{"kind", "chain_map"}, {"map", "backward"}});
  w.claim({{"kind", "induced"}, {"map", "backward"}, {"degree", i}, {"zero", rep.backward_zero}});
  w.report = {{"i", rep.i},
              {"r", rep.r},
              {"d", rep.d},
              {"u_r", rep.u_r},
              {"v", rep.v},
              {"tor_given", rep.tor_given},
              {"forward_zero", rep.forward_zero},
              {"forward_is_kappa", rep.forward_is_kappa},
              {"kappa_zero", rep.kappa_zero},
              {"w", rep.w},
              {"u_w", rep.u_w},
              {"v_back", rep.v_back},
              {"backward_zero", rep.backward_zero},
              {"tor_direct_zero", rep.tor_direct_zero},
              {"ok", rep.ok()}};
  w.summary = std::string("round trip ") + (rep.ok() ? "closes" : "fails") + ": v = " + std::to_string(rep.v) +
              ", w = " + std::to_string(rep.w) + ", v_back = " + std::to_string(rep.v_back);
  if (!rep.ok()) throw VerificationError("round trip did not close: " + w.summary);
  return ok;
}

int cmd_efpd_certify(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  Ideal I;
  std::tie(R, I) = s.ideal(null_or(args, "ideal"), args);
  FiltrationSpec F = FiltrationSpec::adic(I);
  if (args.contains("filtration")) {
    RingPtr RF;
    std::tie(RF, F) = s.filtration(args["filtration"], args);
    if (RF != R) throw PreconditionError("filtration and ideal live in different rings");
  }
  int K = get_int(args, "K", 3);
  EfpdResult c = efpd_certificate(*R, I, F, K, get_int(args, "bound", s.budgets.resolution), s.budgets.power);
  Witness& w = start(wp, R);
  json nk = json::array(), kn = json::array(), pds = json::array();
  for (int k = 1; k <= K; ++k) w.put("I^" + std::to_string(k), ideal_power(*R, I, k));
  auto J_name = [&](int n) {
    std::string name = "J" + std::to_string(n);
    if (!w.objects.contains(name)) w.put(name, F.at(*R, n));
    return name;
  };
  for (const auto& iw : c.equiv.n_of_k) {
    nk.push_back({{"k", iw.k}, {"n", iw.n}});
    w.claim({{"kind", "subset"}, {"small", J_name(iw.n)}, {"big", "I^" + std::to_string(iw.k)}});
  }
  for (const auto& iw : c.equiv.k_of_n) {
    kn.push_back({{"n", iw.n}, {"k", iw.k}});
    std::string ik = "I^" + std::to_string(iw.k);
    if (!w.objects.contains(ik)) w.put(ik, ideal_power(*R, I, iw.k));
    w.claim({{"kind", "subset"}, {"small", ik}, {"big", J_name(iw.n)}});
  }
  for (const auto& p : c.pds) {
    std::string name = "P" + std::to_string(p.n);
    w.put(name, p.res);
    w.claim({{"kind", "resolution"}, {"resolution", name}, {"ideal", J_name(p.n)}});
    pds.push_back({{"n", p.n}, {"J", io::ideal_to_json(*R, p.J)}, {"report", p.report}, {"ranks", p.res.ranks()}});
  }
  w.report = {{"certified", c.certified},
              {"filtration", F.describe(*R)},
              {"K", K},
              {"window_ok", c.equiv.ok},
              {"window_failure", c.equiv.failure},
              {"n_of_k", nk},
              {"k_of_n", kn},
              {"pds", pds},
              {"refused_at", c.refused_at},
              {"refusal", c.refusal}};
  if (c.certified) {
    w.summary = "certified on n = 1.." + std::to_string(c.equiv.n_max());
    return ok;
  }
  w.summary = "refused";
  if (c.refused_at > 0) w.summary += " at n = " + std::to_string(c.refused_at);
  w.summary += ": " + c.refusal;
  return budget;
}

ReducerOptions reducer_options(const Session& s) {
  ReducerOptions opt;
  opt.resolution_bound = s.budgets.resolution;
  opt.power_budget = s.budgets.power;
  return opt;
}

int cmd_reducer_build(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  Complex X;
  std::tie(R, X) = s.complex(null_or(args, "complex"), args);
  RingPtr RF;
  FiltrationSpec provider;
  std::tie(RF, provider) = s.filtration(null_or(args, "filtration"), args);
  if (RF != R) throw PreconditionError("provider and complex live in different rings");
  Ideal J = unit_ideal(*R);
  if (args.contains("J")) {
    RingPtr RJ;
    std::tie(RJ, J) = s.ideal(args["J"], args);
    if (RJ != R) throw PreconditionError("J and complex live in different rings");
  }
  SRCertificate c = strong_reducer(*R, X, J, provider, reducer_options(s));
  Witness& w = start(wp, R);
  w.put("X", X);
  w.put("T", c.T);
  w.put("alpha", c.alpha);
  w.put("I", c.I);
  w.put("J", c.J);
  w.claim({{"kind", "complex"}, {"complex", "T"}});
  w.claim({{"kind", "chain_map"}, {"map", "alpha"}});
  for (int n = c.T.lo; n <= c.T.hi(); ++n)
    if (n != c.m) w.claim({{"kind", "homology"}, {"complex", "T"}, {"degree", n}, {"zero", true}});
  w.claim({{"kind", "induced"}, {"map", "alpha"}, {"degree", c.m}, {"surjective", true}});
  w.claim({{"kind", "subset"}, {"small", "I"}, {"big", "J"}});
  json verdicts = json::array();
  for (const auto& v : c.verdicts) verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  w.report = {{"m", c.m}, {"s", c.s}, {"u", c.u}, {"fh_r", c.fh_r}, {"fell_back", c.fell_back},
              {"I", io::ideal_to_json(*R, c.I)}, {"verdicts", verdicts}, {"valid", c.valid()},
              {"width_cone", width_str(width_stats(*R, cone(*R, c.alpha)).wid)},
              {"width_X", width_str(width_stats(*R, X).wid)}};
  w.summary = std::string(c.valid() ? "valid" : "invalid") + " strong reducer at m = " + std::to_string(c.m) +
              " with I = " + to_string(*R, c.I);
  if (!c.valid()) throw VerificationError("strong reducer failed its verdicts");
  return ok;
}

int cmd_width_reduce(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  Complex X;
  std::tie(R, X) = s.complex(null_or(args, "complex"), args);
  RingPtr RF;
  FiltrationSpec provider;
  std::tie(RF, provider) = s.filtration(null_or(args, "filtration"), args);
  if (RF != R) throw PreconditionError("provider and complex live in different rings");
  auto steps = width_reduce(*R, X, provider, reducer_options(s));
  Witness& w = start(wp, R);
  w.put("X", X);
  json rows = json::array();
  std::string seq = width_str(width_stats(*R, X).wid);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& st = steps[k];
    std::string name = "alpha" + std::to_string(k + 1);
    w.put(name, st.cert.alpha);
    w.claim({{"kind", "chain_map"}, {"map", name}});
    w.claim({{"kind", "induced"}, {"map", name}, {"degree", st.cert.m}, {"surjective", true}});
    rows.push_back({{"step", k + 1}, {"m", st.cert.m}, {"I", io::ideal_to_json(*R, st.cert.I)},
                    {"width_before", width_str(st.width_before)}, {"width_after", width_str(st.width_after)}});
    seq += " -> " + width_str(st.width_after);
  }
  w.report = {{"steps", rows}, {"widths", seq}};
  w.summary = std::to_string(steps.size()) + " step(s), width " + seq;
  return ok;
}

int cmd_charp_reduce(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  Complex P;
  std::tie(R, P) = s.complex(null_or(args, "complex"), args);
  RingPtr RI;
  Ideal I;
  std::tie(RI, I) = s.ideal(null_or(args, "ideal"), args);
  if (RI != R) throw PreconditionError("ideal and complex live in different rings");
  CharpReducer red = charp_reducer(*R, P, I, reducer_options(s));
  Witness& w = start(wp, R);
  w.put("P", P);
  w.put("T", red.T);
  w.put("alpha", red.alpha);
  w.claim({{"kind", "complex"}, {"complex", "T"}});
  w.claim({{"kind", "chain_map"}, {"map", "alpha"}});
  w.report = {{"k", red.k}, {"pd", red.pd}, {"fh_r", red.fh_r}, {"u", red.u}, {"u_bound", red.u_bound},
              {"q", red.q}, {"T_range", {red.T.lo, red.T.hi()}}, {"in_range", red.in_range},
              {"alpha0_surjective", red.alpha0_surjective}, {"chain_map", red.chain_map}};
  w.summary = "reducer on [" + std::to_string(red.T.lo) + "," + std::to_string(red.T.hi()) +
              "] with q = " + std::to_string(red.q);
  if (!red.chain_map || !red.in_range) throw VerificationError("char p reducer failed its checks");
  return ok;
}

int cmd_pd_resolve(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  int bound = get_int(args, "bound", s.budgets.resolution);
  Resolution P;
  if (args.contains("module")) {
    R = s.default_ring(args);
    FPModule M = s.module(args["module"], R);
    P = min_free_resolution(*R, M, bound);
    Witness& w = start(wp, R);
    w.put("P", P);
    w.claim({{"kind", "resolution"}, {"resolution", "P"}});
  } else {
    Ideal I;
    std::tie(R, I) = s.ideal(null_or(args, "ideal"), args);
    P = resolve_quotient(*R, I, bound);
    Witness& w = start(wp, R);
    w.put("I", I);
    w.put("P", P);
    w.claim({{"kind", "resolution"}, {"resolution", "P"}, {"ideal", "I"}});
  }
  wp->report = {{"bound", bound}, {"report", P.pd_report()}, {"ranks", P.ranks()}, {"terminated", P.terminated}};
  wp->summary = P.pd_report();
  return ok;
}

int cmd_demo_brodmann(const Session& s, const json& args, RingPtr& R, std::unique_ptr<Witness>& wp) {
  Ideal I;
  std::tie(R, I) = s.ideal(null_or(args, "ideal"), args);
  int nmax = get_int(args, "nmax", 5), bound = get_int(args, "bound", s.budgets.resolution);
  if (nmax < 1) throw PreconditionError("nmax must be positive");
  Witness& w = start(wp, R);
  json rows = json::array();
  std::string column;
  std::string first;
  bool constant = true;
  for (int n = 1; n <= nmax; ++n) {
    Ideal In = ideal_power(*R, I, n);
    Resolution P = resolve_quotient(*R, In, bound);
    std::string pn = "P" + std::to_string(n), in = "I^" + std::to_string(n);
    w.put(in, In);
    w.put(pn, P);
    w.claim({{"kind", "resolution"}, {"resolution", pn}, {"ideal", in}});
    rows.push_back({{"n", n}, {"report", P.pd_report()}, {"ranks", P.ranks()}});
    if (n == 1) first = P.pd_report();
    constant = constant && P.pd_report() == first;
    column += (column.empty() ? "" : " | ") + P.pd_report();
  }
  w.report = {{"bound", bound}, {"table", rows}, {"constant_on_window", constant}};
  w.summary = "pd(R/I^n), n = 1.." + std::to_string(nmax) + ": " + column;
  return ok;
}

const std::vector<std::pair<std::string, Command>>& table() {
  static const std::vector<std::pair<std::string, Command>> t = {
      {"ring check", cmd_ring_check},         {"koszul homology", cmd_koszul_homology},
      {"kappa induced", cmd_kappa_induced},   {"tate build", cmd_tate_build},
      {"phi construct", cmd_phi_construct},   {"exponents", cmd_exponents},
      {"tor vanish", cmd_tor_vanish},         {"w-uniform", cmd_w_uniform},
      {"sar-check", cmd_sar_check},           {"roundtrip", cmd_roundtrip},
      {"efpd certify", cmd_efpd_certify},     {"reducer build", cmd_reducer_build},
      {"width reduce", cmd_width_reduce},     {"charp reduce", cmd_charp_reduce},
      {"pd resolve", cmd_pd_resolve},         {"demo brodmann", cmd_demo_brodmann},
  };
  return t;
}

// -- verification -------------------------------------------------------------

struct ObjectStore {
  const Ring& R;
  const json& objects;

  const json& raw(const json& name, const char* type) const {
    const json& o = lookup(objects, name.get<std::string>(), "object");
    if (o.at("type") != type) throw ParseError("object " + name.get<std::string>() + " is not a " + type);
    return o.at("value");
  }
  Complex complex(const json& n) const { return io::complex_from_json(R, raw(n, "complex")); }
  ChainMap map(const json& n) const { return io::map_from_json(R, raw(n, "chain_map")); }
  Ideal ideal(const json& n) const { return io::ideal_from_json(R, raw(n, "ideal")); }
  FPModule module(const json& n) const { return io::module_from_json(R, raw(n, "module")); }
  Resolution resolution(const json& n) const { return io::resolution_from_json(R, raw(n, "resolution")); }
};

ClaimResult check_claim(const Ring& R, const ObjectStore& st, const json& c) {
  ClaimResult out;
  out.kind = c.at("kind").get<std::string>();
  std::string why;
  auto fail = [&](const std::string& m) {
    out.pass = false;
    out.detail = m;
    return out;
  };
  if (out.kind == "complex") {
    out.pass = is_complex(R, st.complex(c.at("complex")), &why);
    out.detail = why;
  } else if (out.kind == "chain_map") {
    ChainMap f = st.map(c.at("map"));
    out.pass = is_complex(R, f.src, &why) && is_complex(R, f.tgt, &why) && is_chain_map(R, f, &why);
    out.detail = why;
  } else if (out.kind == "homology") {
    Complex C = st.complex(c.at("complex"));
    int n = c.at("degree").get<int>();
    bool zero = homology_is_zero(R, C, n);
    out.pass = zero == c.at("zero").get<bool>();
    if (!out.pass) out.detail = "H_" + std::to_string(n) + (zero ? " is zero" : " is nonzero");
  } else if (out.kind == "exact") {
    Complex C = c.contains("complex") ? st.complex(c["complex"]) : st.map(c.at("map_source")).src;
    out.pass = true;
    for (int n = c.at("from").get<int>(); n <= c.at("to").get<int>(); ++n)
      if (!homology_is_zero(R, C, n)) return fail("H_" + std::to_string(n) + " is nonzero");
  } else if (out.kind == "induced") {
    ChainMap f = st.map(c.at("map"));
    InducedMap im = induced_map(R, f, c.at("degree").get<int>());
    out.pass = true;
    if (c.contains("zero") && im.is_zero != c["zero"].get<bool>())
      return fail(std::string("induced map is ") + (im.is_zero ? "zero" : "nonzero"));
    if (c.contains("surjective") && im.is_surjective != c["surjective"].get<bool>())
      return fail(std::string("induced map is ") + (im.is_surjective ? "onto" : "not onto"));
  } else if (out.kind == "restricts") {
    ChainMap inc = st.map(c.at("inclusion")), f = st.map(c.at("map")), k = st.map(c.at("expected"));
    out.pass = maps_equal(R, compose(R, f, inc), k);
    if (!out.pass) out.detail = "composite differs from the expected map";
  } else if (out.kind == "subset") {
    out.pass = ideal_subset(R, st.ideal(c.at("small")), st.ideal(c.at("big")));
    if (!out.pass) out.detail = "not contained";
  } else if (out.kind == "resolution") {
    Resolution P = st.resolution(c.at("resolution"));
    if (!verify_resolution(R, P, &why)) return fail(why);
    if (P.terminated && !P.d.empty()) {
      const Matrix& top = P.d.back();
      if (!tate::is_zero(R, syzygies(R, top, P.F[P.F.size() - 2], P.F.back())))
        return fail("top differential is not injective");
    }
    if (P.terminated && P.pd != static_cast<int>(P.F.size()) - 1) return fail("pd disagrees with the length");
    if (c.contains("ideal")) {
      Ideal I = st.ideal(c["ideal"]);
      if (P.F.empty()) {
        if (!is_unit_ideal(R, I)) return fail("empty resolution of a nonzero quotient");
      } else {
        if (P.F[0].rank() != 1) return fail("F_0 is not cyclic");
        std::vector<Poly> gens;
        if (!P.d.empty())
          for (const auto& col : P.d[0].cols) gens.push_back(R.component(col, 0));
        if (!ideal_equal(R, make_ideal(R, gens), I)) return fail("image of d_1 is not the ideal");
      }
    }
    out.pass = true;
  } else if (out.kind == "tor_map") {
    TorMapReport rep = tor_map(R, st.module(c.at("module")), st.ideal(c.at("source")), st.ideal(c.at("target")),
                               c.at("degree").get<int>());
    out.pass = rep.is_zero == c.at("zero").get<bool>();
    if (!out.pass) out.detail = std::string("Tor map is ") + (rep.is_zero ? "zero" : "nonzero");
  } else {
    return fail("unknown claim kind");
  }
  return out;
}

std::string join_path(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

}  // namespace

// -- session ------------------------------------------------------------------

Session Session::from_json(const json& j) {
  if (!j.is_object()) throw ParseError("session must be an object");
  Session s;
  auto table_of = [&](const char* key) {
    json t = j.value(key, json::object());
    if (!t.is_object()) throw ParseError(std::string("'") + key + "' must be an object of named entries");
    return t;
  };
  s.rings_ = table_of("rings");
  if (j.contains("ring")) s.rings_["R"] = j["ring"];
  s.ideals_ = table_of("ideals");
  s.modules_ = table_of("modules");
  s.complexes_ = table_of("complexes");
  s.filtrations_ = table_of("filtrations");
  if (j.contains("budgets")) {
    const json& b = j["budgets"];
    s.budgets.resolution = get_int(b, "resolution", s.budgets.resolution);
    s.budgets.power = get_int(b, "power", s.budgets.power);
    s.budgets.degree_window = get_int(b, "degree_window", s.budgets.degree_window);
    s.budgets.threads = get_int(b, "threads", s.budgets.threads);
  }
  if (s.budgets.resolution <= 0 || s.budgets.power <= 0 || s.budgets.degree_window < 0 || s.budgets.threads <= 0)
    throw ParseError("budgets must be positive");
  s.out_dir = j.value("out", std::string("."));
  s.commands = j.value("commands", json::array());
  for (const auto& c : s.commands)
    if (!c.is_object() || !c.contains("command")) throw ParseError("each command needs a 'command' field");
  return s;
}

Session Session::from_file(const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return from_json(j);
}

RingPtr Session::ring(const std::string& name) const {
  auto it = ring_cache_.find(name);
  if (it != ring_cache_.end()) return it->second;
  RingPtr R = io::ring_from_json(lookup(rings_, name, "ring"));
  ring_cache_[name] = R;
  return R;
}

RingPtr Session::default_ring(const json& args) const {
  if (args.contains("ring")) return ring(args["ring"].get<std::string>());
  if (rings_.size() == 1) return ring(rings_.begin().key());
  if (rings_.contains("R")) return ring("R");
  throw ParseError("no ring given and no default ring");
}

RingPtr Session::ring_of(const json& spec, const json& args) const {
  if (spec.is_object() && spec.contains("ring")) return ring(spec["ring"].get<std::string>());
  return default_ring(args);
}

std::pair<RingPtr, Ideal> Session::ideal(const json& ref, const json& args) const {
  json r = ref;
  if (r.is_null()) {
    if (ideals_.contains("s"))
      r = "s";
    else if (ideals_.contains("I"))
      r = "I";
    else if (ideals_.size() == 1)
      r = ideals_.begin().key();
    else
      throw ParseError("no ideal given");
  }
  if (r.is_string()) {
    const json& spec = lookup(ideals_, r.get<std::string>(), "ideal");
    RingPtr R = ring_of(spec, args);
    return {R, io::ideal_from_json(*R, spec)};
  }
  RingPtr R = default_ring(args);
  return {R, io::ideal_from_json(*R, r)};
}

FPModule Session::module(const json& ref, const RingPtr& fallback) const {
  if (ref.is_null()) return FPModule::free(*fallback, FreeModule::of_rank(1));
  json spec = ref.is_string() ? lookup(modules_, ref.get<std::string>(), "module") : ref;
  if (spec.is_object() && spec.contains("ring") && ring(spec["ring"].get<std::string>()) != fallback)
    throw PreconditionError("module lives in a different ring");
  const Ring& R = *fallback;
  if (spec.contains("free")) return FPModule::free(R, io::free_from_json(spec["free"]));
  if (spec.contains("quotient")) {
    const json& q = spec["quotient"];
    if (q.is_string()) {
      auto [RI, I] = ideal(q, json::object());
      if (RI != fallback) throw PreconditionError("module lives in a different ring");
      return quotient_module(R, I);
    }
    return quotient_module(R, io::ideal_from_json(R, q));
  }
  if (spec.contains("ambient") && spec.contains("rels")) {
    FreeModule F = io::free_from_json(spec["ambient"]);
    Matrix rels = io::matrix_from_json(R, spec["rels"]);
    if (rels.rows != F.rank()) throw ParseError("relations do not live in the ambient module");
    FPModule M = FPModule::cokernel(R, F, rels);
    if (spec.contains("gens")) M.gens = io::matrix_from_json(R, spec["gens"]);
    return M;
  }
  throw ParseError("module needs 'free', 'quotient' or 'ambient' and 'rels'");
}

std::pair<RingPtr, Complex> Session::complex(const json& ref, const json& args) const {
  json r = ref;
  if (r.is_null()) {
    if (complexes_.contains("X"))
      r = "X";
    else if (complexes_.size() == 1)
      r = complexes_.begin().key();
    else
      throw ParseError("no complex given");
  }
  json spec = r.is_string() ? lookup(complexes_, r.get<std::string>(), "complex") : r;
  RingPtr R = ring_of(spec, args);
  Complex C;
  if (spec.contains("koszul")) {
    const json& k = spec["koszul"];
    auto [RI, I] = ideal(k.at("elements"), args);
    if (RI != R) throw PreconditionError("Koszul elements live in a different ring");
    C = koszul(*R, I.gens, get_int(k, "exponent", 1), module(null_or(k, "module"), R));
  } else if (spec.contains("sum")) {
    bool first = true;
    for (const auto& part : spec["sum"]) {
      auto [RP, P] = complex(part, args);
      if (RP != R) throw PreconditionError("summands live in different rings");
      C = first ? P : direct_sum(*R, C, P);
      first = false;
    }
    if (first) throw ParseError("empty sum");
  } else if (spec.contains("of")) {
    auto [RP, P] = complex(spec["of"], args);
    if (RP != R) throw PreconditionError("complex lives in a different ring");
    C = P;
  } else if (spec.contains("terms")) {
    C = io::complex_from_json(*R, spec);
    std::string why;
    if (!is_complex(*R, C, &why)) throw PreconditionError("not a complex: " + why);
  } else {
    throw ParseError("complex needs 'koszul', 'sum', 'of' or explicit 'terms'");
  }
  if (spec.contains("shift")) C = shift(*R, C, spec["shift"].get<int>());
  if (spec.contains("pad")) C = pad(C, spec["pad"].at(0).get<int>(), spec["pad"].at(1).get<int>());
  return {R, C};
}

std::pair<RingPtr, FiltrationSpec> Session::filtration(const json& ref, const json& args) const {
  json r = ref;
  if (r.is_null()) {
    if (filtrations_.contains("F"))
      r = "F";
    else if (filtrations_.size() == 1)
      r = filtrations_.begin().key();
    else
      throw ParseError("no filtration given");
  }
  json spec = r.is_string() ? lookup(filtrations_, r.get<std::string>(), "filtration") : r;
  auto [R, base] = ideal(null_or(spec, "ideal"), args);
  std::string kind = spec.value("kind", std::string("adic"));
  if (kind == "adic") return {R, FiltrationSpec::adic(base)};
  if (kind == "bracket") return {R, FiltrationSpec::bracket(base)};
  if (kind == "frobenius") return {R, FiltrationSpec::frobenius(*R, base)};
  if (kind == "explicit") {
    std::vector<Ideal> steps;
    for (const auto& st : spec.at("steps")) {
      auto [RS, J] = ideal(st, args);
      if (RS != R) throw PreconditionError("filtration steps live in different rings");
      steps.push_back(J);
    }
    return {R, FiltrationSpec::explicit_steps(base, steps)};
  }
  throw ParseError("unknown filtration kind '" + kind + "'");
}

// -- running ------------------------------------------------------------------

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : table()) out.push_back(name);
  out.push_back("verify");
  return out;
}

std::string slug(const std::string& command) {
  std::string out = command;
  std::replace(out.begin(), out.end(), ' ', '-');
  return out;
}

int exit_code_of(const std::exception& e) {
  if (dynamic_cast<const BudgetError*>(&e)) return budget;
  if (dynamic_cast<const VerificationError*>(&e)) return verification;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const PreconditionError*>(&e) ||
      dynamic_cast<const json::exception*>(&e))
    return precondition;
  return verification;
}

std::string error_kind(int code) {
  switch (code) {
    case ok: return "ok";
    case precondition: return "precondition";
    case budget: return "budget";
    default: return "verification";
  }
}

Outcome run(const Session& s, const std::string& command, const json& args, const RunOptions& opt) {
  Outcome out;
  auto it = std::find_if(table().begin(), table().end(), [&](const auto& p) { return p.first == command; });
  auto record = [&](int code, const std::string& message) {
    out.exit_code = code;
    std::string kind = error_kind(code);
    out.error = {{"error", kind}, {"command", command}, {"message", message}, {"exit_code", code}};
    out.summary = kind + " error: " + message;
  };
  if (it == table().end()) {
    record(precondition, "unknown command '" + command + "'");
    return out;
  }
  RingPtr R;
  std::unique_ptr<Witness> w;
  int code = ok;
  try {
    code = it->second(s, args, R, w);
  } catch (const ParseError& e) {
    record(precondition, e.what());
    out.error["error"] = "parse";
    out.summary = std::string("parse error: ") + e.what();
    return out;
  } catch (const json::exception& e) {
    record(precondition, e.what());
    out.error["error"] = "parse";
    out.summary = std::string("parse error: ") + e.what();
    return out;
  } catch (const std::exception& e) {
    record(exit_code_of(e), e.what());
    return out;
  }
  json file = {{"command", command}, {"args", args}, {"ring", io::ring_to_json(*R)}, {"objects", w->objects},
               {"claims", w->claims}, {"report", w->report}, {"summary", w->summary},
               {"exit_code", code}};
  std::string name = opt.file_name.empty() ? slug(command) : opt.file_name;
  try {
    fs::create_directories(s.out_dir);
    out.file = join_path(s.out_dir, name + ".json");
    io::write_atomic(out.file, io::dump(file));
    for (const auto& [suffix, text] : w->side_files) io::write_atomic(join_path(s.out_dir, name + suffix), text);
  } catch (const std::exception& e) {
    record(precondition, e.what());
    return out;
  }
  out.exit_code = code;
  out.summary = w->summary;
  if (opt.verify) {
    for (const auto& c : verify_witness(file)) {
      if (c.pass) continue;
      out.exit_code = verification;
      out.summary += " [verify failed: " + c.kind + " " + c.detail + "]";
      break;
    }
  }
  return out;
}

std::vector<Outcome> run_all(const Session& s, bool verify) {
  std::vector<Outcome> outs;
  json manifest = json::array();
  int index = 0;
  for (const auto& c : s.commands) {
    ++index;
    json args = c;
    std::string command = args["command"].get<std::string>();
    args.erase("command");
    RunOptions opt;
    opt.verify = verify;
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%02d-", index);
    opt.file_name = args.contains("name") ? args["name"].get<std::string>() : prefix + slug(command);
    args.erase("name");
    Outcome o = run(s, command, args, opt);
    json entry = {{"command", command}, {"exit_code", o.exit_code}, {"summary", o.summary}};
    if (!o.file.empty()) entry["file"] = fs::path(o.file).filename().string();
    if (!o.error.is_null()) entry["error"] = o.error;
    manifest.push_back(entry);
    outs.push_back(std::move(o));
  }
  fs::create_directories(s.out_dir);
  io::write_atomic(join_path(s.out_dir, "manifest.json"), io::dump(manifest));
  return outs;
}

std::vector<ClaimResult> verify_witness(const json& witness) {
  if (!witness.is_object() || !witness.contains("claims") || !witness.contains("ring"))
    throw ParseError("not a witness file");
  RingPtr R = io::ring_from_json(witness.at("ring"));
  const json& objects = witness.at("objects");
  ObjectStore st{*R, objects};
  std::vector<ClaimResult> out;
  for (const auto& c : witness.at("claims")) {
    try {
      out.push_back(check_claim(*R, st, c));
    } catch (const std::exception& e) {
      out.push_back({c.value("kind", std::string("?")), false, e.what()});
    }
  }
  return out;
}

Outcome verify_file(const std::string& path) {
  Outcome o;
  try {
    json w;
    try {
      w = json::parse(io::read_file(path));
    } catch (const json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
    auto results = verify_witness(w);
    int passed = 0;
    std::string first_failure;
    for (const auto& c : results) {
      if (c.pass)
        ++passed;
      else if (first_failure.empty())
        first_failure = c.kind + ": " + c.detail;
    }
    o.file = path;
    o.summary = std::to_string(passed) + "/" + std::to_string(results.size()) + " claims hold";
    if (!first_failure.empty()) {
      o.exit_code = verification;
      o.summary += "; first failure " + first_failure;
    }
  } catch (const std::exception& e) {
    o.exit_code = exit_code_of(e);
    o.error = {{"error", error_kind(o.exit_code)}, {"command", "verify"}, {"message", e.what()},
               {"exit_code", o.exit_code}};
    o.summary = error_kind(o.exit_code) + " error: " + e.what();
  }
  return o;
}

}  // namespace tate::cli
