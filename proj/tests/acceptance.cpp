// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <climits>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tate/artin_rees.hpp"
#include "tate/efpd.hpp"
#include "tate/errors.hpp"
#include "tate/groebner.hpp"
#include "tate/io.hpp"
#include "tate/koszul.hpp"
#include "tate/tate_resolution.hpp"

using namespace tate;
using fx::P;
namespace fs = std::filesystem;

namespace {

struct Tally {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << what;
    pass = false;
  }
};

FPModule ring_module(const RingPtr& R) { return FPModule::free(*R, FreeModule::of_rank(1)); }

RingPtr node_ring() { return fx::ring(2, {"x", "y"}, {"x*y"}); }

struct PhiFixture {
  std::string name;
  RingPtr R;
  std::vector<Poly> s;
  FPModule M;
  std::vector<int> rs;
};

std::vector<PhiFixture> phi_fixtures() {
  std::vector<PhiFixture> out;
  auto node = node_ring();
  out.push_back({"node s=x", node, {P(node, "x")}, ring_module(node), {1, 2}});
  auto Qx = fx::ring(0, {"x"});
  out.push_back({"Q[x] on R/(x^3)", Qx, {P(Qx, "x")}, quotient_module(*Qx, parse_ideal(*Qx, {"x^3"})), {1}});
  auto Q2 = fx::ring(0, {"x", "y"});
  out.push_back({"Q[x,y] s=(x,y)", Q2, {P(Q2, "x"), P(Q2, "y")}, ring_module(Q2), {1, 2}});
  out.push_back({"Q[x,y] s=(x,y) on R/(x^2,xy)", Q2, {P(Q2, "x"), P(Q2, "y")},
                 quotient_module(*Q2, parse_ideal(*Q2, {"x^2", "x*y"})), {1}});
  out.push_back({"node s=(x,y)", node, {P(node, "x"), P(node, "y")}, ring_module(node), {1}});
  auto Q3 = fx::ring(0, {"x", "y", "z"});
  out.push_back({"Q[x,y,z] s=(x,y,z)", Q3, {P(Q3, "x"), P(Q3, "y"), P(Q3, "z")}, ring_module(Q3), {1}});
  auto L = fx::ring(3, {"x", "y", "z"}, {"x*z", "y*z"});
  out.push_back({"F3[x,y,z]/(xz,yz) s=(x,y,z)", L, {P(L, "x"), P(L, "y"), P(L, "z")}, ring_module(L), {1}});
  return out;
}

long long paper_u(long long d, long long h, long long l, long long r) {
  long long geo = 0, pw = 1;
  for (long long j = 0; j < d; ++j) {
    geo += pw;
    pw *= d;
  }
  return (h + l) * geo + r * pw;  // pw = d^d
}

// -- criteria -----------------------------------------------------------------

void intro_diagram(Tally& v) {
  auto R = node_ring();
  std::vector<Poly> s{P(R, "x")};
  Stabilization st = stabilization_l(*R, s, ring_module(R));
  v.require(st.l == 1, "l = " + std::to_string(st.l));
  PhiWitness W = phi_construct(*R, s, ring_module(R), 1, PhiMode::search);
  v.require(W.u == st.l + 1, "u = " + std::to_string(W.u));
  v.require(W.verified() && is_chain_map(*R, W.phi), "phi not verified");
  v.require(equal(*R, W.phi.at(0), Matrix::identity(*R, 1)), "phi_0 = " + fx::str(R, W.phi.at(0)));
  v.require(equal(*R, W.phi.at(1), fx::row(R, {"x"})), "phi_1 = " + fx::str(R, W.phi.at(1)));
  v.detail << "l = " << st.l << ", T'(x^" << W.u << ") -> K(x): phi_0 = " << fx::str(R, W.phi.at(0))
           << ", phi_1 = " << fx::str(R, W.phi.at(1));
}

void formula_conformance(Tally& v, double& worst) {
  int count = 0, escalated = 0;
  for (const auto& f : phi_fixtures()) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r : f.rs) {
      PhiWitness W = phi_construct(*f.R, f.s, f.M, r, PhiMode::paper_bound);
      long long want = paper_u(W.ex.d, W.ex.h, W.ex.l, r);
      v.require(W.u == want, f.name + ": u = " + std::to_string(W.u) + " vs " + std::to_string(want));
      v.require(W.verified(), f.name + ": a check failed");
      for (const auto& c : W.checks) v.require(c.pass, f.name + ": " + c.name);
      v.require(is_chain_map(*f.R, W.phi), f.name + ": phi is not a chain map");
      if (W.ex.h_provenance.find("escalated") != std::string::npos) ++escalated;
      ++count;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, secs);
    v.require(secs < 60.0, f.name + " took " + std::to_string(secs) + " s");
  }
  v.detail << count << " witnesses on " << phi_fixtures().size() << " fixtures (d <= 3), slowest fixture "
           << worst << " s, h escalated " << escalated << " time(s)";
}

void principal_ideal_w(Tally& v) {
  auto R = node_ring();
  std::vector<Poly> s{P(R, "x")};
  std::string ws;
  for (int r = 1; r <= 5; ++r) {
    UniformWReport rep = uniform_w(*R, s, ring_module(R), r, 1, 6);
    v.require(rep.ex.h == 1 && rep.ex.l == 1, "h, l differ from 1, 1");
    v.require(rep.w == rep.ex.u(rep.ex.h + r), "w is not u(h+r)");
    v.require(rep.w == 2 * rep.ex.h + rep.ex.l + r && rep.w == r + 3, "w(" + std::to_string(r) + ") = " +
                                                                           std::to_string(rep.w));
    v.require(static_cast<int>(rep.checks.size()) == 6, "window is not i = 1..6");
    for (const auto& c : rep.checks) v.require(c.is_zero, "Tor map nonzero at i = " + std::to_string(c.i));
    ws += (ws.empty() ? "" : ",") + std::to_string(rep.w);
  }
  v.detail << "w(1..5) = " << ws << ", Tor_1..6 maps zero";
}

void regular_degeneration(Tally& v) {
  auto Q2 = fx::ring(0, {"x", "y"});
  auto Q3 = fx::ring(101, {"x", "y", "z"});
  std::vector<std::pair<RingPtr, std::vector<Poly>>> cases{
      {Q2, {P(Q2, "x"), P(Q2, "y")}}, {Q3, {P(Q3, "x"), P(Q3, "y^2"), P(Q3, "z")}}};
  int n = 0;
  for (const auto& [R, s] : cases) {
    int d = static_cast<int>(s.size());
    TateData T = tate_resolution(*R, s, d + 1);
    for (int t : T.t) v.require(t == 0, "adjoined generators on a regular sequence");
    v.require(same_complex(*R, truncate(T.complex, 0, d), koszul(*R, s, 1)), "T' differs from K");
    Exponents ex = find_exponents(*R, s, ring_module(R));
    v.require(ex.h == 0 && ex.l == 0, "h, l = " + std::to_string(ex.h) + ", " + std::to_string(ex.l));
    for (int r = 1; r <= 3; ++r) {
      PhiWitness W = phi_construct(*R, s, ring_module(R), r, PhiMode::search);
      v.require(W.u == r, "search u = " + std::to_string(W.u) + " for r = " + std::to_string(r));
      v.require(maps_equal(*R, compose(*R, W.phi, koszul_inclusion(*R, W.tate)), kappa(*R, s, r, r)),
                "phi does not extend kappa^{r,r}");
      ++n;
    }
  }
  v.detail << "t_i = 0, h = l = 0, u = r on " << n << " cases";
}

void koszul_phi_equivalence(Tally& v) {
  int witnesses = 0;
  for (const auto& f : phi_fixtures()) {
    int d = static_cast<int>(f.s.size());
    for (int r : f.rs)
      for (PhiMode mode : {PhiMode::search, PhiMode::paper_bound}) {
        PhiWitness W = phi_construct(*f.R, f.s, f.M, r, mode);
        ChainMap k = kappa(*f.R, f.s, W.u, r, f.M);
        for (int i = 1; i <= d; ++i)
          v.require(induced_map(*f.R, k, i).is_zero,
                    f.name + ": H_" + std::to_string(i) + "(kappa^{u,r}) nonzero");
        ++witnesses;
      }
  }
  auto R = node_ring();
  RoundtripReport e2 = koszul_tor_roundtrip(*R, {P(R, "x")}, ring_module(R), 1, 1);
  v.require(e2.ok(), "round trip fails on the node");
  auto Q = fx::ring(0, {"x", "y"});
  FPModule M = quotient_module(*Q, parse_ideal(*Q, {"x^2", "x*y"}));
  for (int i = 1; i <= 2; ++i) {
    RoundtripReport rt = koszul_tor_roundtrip(*Q, {P(Q, "x"), P(Q, "y")}, M, i, 1);
    v.require(rt.ok(), "round trip fails for d = 2 at i = " + std::to_string(i));
  }
  RoundtripReport reg = koszul_tor_roundtrip(*Q, {P(Q, "x"), P(Q, "y")}, ring_module(Q), 1, 1);
  v.require(reg.ok(), "round trip fails on the regular d = 2 fixture");
  v.detail << witnesses << " witnesses with H_i(kappa^{u,r}) = 0; round trips closed on node and d = 2";
}

void frobenius_invariance(Tally& v) {
  auto S = fx::ring(2, {"a", "b", "c", "d"});
  Ideal I = parse_ideal(*S, {"a*c-b^2", "a*d-b*c", "b*d-c^2"});
  std::string pds;
  for (int q : {1, 2, 4}) {
    Ideal J = q == 1 ? I : bracket_power(*S, I.gens, q);
    Resolution res = resolve_quotient(*S, J, 8);
    std::string why;
    v.require(res.terminated, "no termination at [" + std::to_string(q) + "]");
    v.require(verify_resolution(*S, res, &why), why);
    v.require(res.pd == 2, "pd = " + std::to_string(res.pd) + " at [" + std::to_string(q) + "]");
    pds += (pds.empty() ? "" : ", ") + std::to_string(res.pd);
  }
  FrobeniusPdReport rep = frobenius_pd_invariance(*S, I, 2);
  v.require(rep.pd == 2 && rep.pd_powers == std::vector<int>({2, 2}), "invariance report disagrees");
  v.detail << "pd(R/I), pd(R/I^[2]), pd(R/I^[4]) = " << pds;
}

int wid(const Ring& R, const Complex& C) {
  WidthStats w = width_stats(R, C);
  return w.acyclic ? INT_MIN : w.wid;
}

void strong_reducers(Tally& v) {
  auto R = fx::ring(101, {"x", "y"});
  FiltrationSpec provider = FiltrationSpec::adic(parse_ideal(*R, {"x", "y"}));
  std::mt19937 rng(20240701);
  fx::RandomComplexShape shape{3, 3, 0, 3, 4};
  int nonzero = 0, max_w = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Complex X = fx::random_torsion_complex(R, rng, shape);
    int w = wid(*R, X);
    v.require(w <= 3, "width above 3");
    max_w = std::max(max_w, w);
    SRCertificate c = strong_reducer(*R, X, unit_ideal(*R), provider);
    auto again = sr_verdicts(*R, X, c.J, c.support, c.T, c.alpha, c.I, c.m);
    v.require(again.size() == 6, "six verdicts expected");
    for (const auto& x : again) v.require(x.pass, "trial " + std::to_string(trial) + ": " + x.name + " " + x.detail);
    if (w > 0) {
      ++nonzero;
      int after = wid(*R, cone(*R, c.alpha));
      v.require(after < w, "trial " + std::to_string(trial) + ": width " + std::to_string(w) + " -> " +
                               std::to_string(after));
    }
  }
  v.detail << "100 complexes, " << nonzero << " of positive width (max " << max_w
           << "), all verdicts true, cone width dropped";
}

void efpd_triptych(Tally& v) {
  auto Q = fx::ring(0, {"x", "y"});
  Ideal m = parse_ideal(*Q, {"x", "y"});
  EfpdResult a = efpd_certificate(*Q, m, FiltrationSpec::adic(m), 4);
  v.require(a.certified, "regular ring refused: " + a.refusal);
  for (const auto& p : a.pds) v.require(p.report == "pd = 2", "regular: " + p.report);
  auto C = fx::ring(101, {"x", "y"}, {"x*y"});
  EfpdResult b = efpd_certificate(*C, parse_ideal(*C, {"x", "y"}), FiltrationSpec::adic(parse_ideal(*C, {"x+y"})), 3);
  v.require(b.certified, "Cohen-Macaulay fixture refused: " + b.refusal);
  for (const auto& p : b.pds) v.require(p.report == "pd = 1", "CM: " + p.report);
  auto N = node_ring();
  Ideal x = parse_ideal(*N, {"x"});
  const int bound = 6;
  EfpdResult c = efpd_certificate(*N, x, FiltrationSpec::adic(x), 3, bound);
  v.require(!c.certified && c.refused_at == 1, "node ideal (x) not refused at n = 1");
  v.require(!c.pds.empty(), "no probes recorded");
  for (const auto& p : c.pds) {
    v.require(p.report == "pd ≥ " + std::to_string(bound - 1), "node: " + p.report);
    std::vector<int> ranks = p.res.ranks();
    for (std::size_t k = 1; k < ranks.size(); ++k) v.require(ranks[k] == 1, "node resolution is not periodic");
  }
  v.detail << "certified (pd 2), certified (pd 1), refused at n = 1 with '" << c.pds.front().report
           << "' at n = 1.." << c.pds.size();
}

void oracle_agreement(Tally& v) {
  std::vector<std::pair<RingPtr, Complex>> cs;
  auto node = node_ring();
  cs.push_back({node, koszul(*node, {P(node, "x")}, 1)});
  cs.push_back({node, koszul(*node, {P(node, "x")}, 2)});
  cs.push_back({node, koszul(*node, {P(node, "x"), P(node, "y")}, 1)});
  cs.push_back({node, tate_resolution(*node, {P(node, "x^2")}, 4).complex});
  auto Q = fx::ring(0, {"x", "y"});
  cs.push_back({Q, koszul(*Q, {P(Q, "x"), P(Q, "y")}, 2)});
  cs.push_back({Q, koszul(*Q, {P(Q, "x"), P(Q, "y")}, 1, quotient_module(*Q, parse_ideal(*Q, {"x^2", "x*y"})))});
  cs.push_back({Q, cone(*Q, kappa(*Q, {P(Q, "x"), P(Q, "y")}, 2, 1))});
  auto Qx = fx::ring(0, {"x"});
  cs.push_back({Qx, tate_resolution(*Qx, {P(Qx, "x^5")}, quotient_module(*Qx, parse_ideal(*Qx, {"x^3"})), 3).complex});
  auto L = fx::ring(3, {"x", "y", "z"}, {"x*z", "y*z"});
  cs.push_back({L, tate_resolution(*L, {P(L, "x"), P(L, "y"), P(L, "z")}, 4).complex});
  auto S = fx::ring(2, {"a", "b", "c", "d"});
  cs.push_back({S, koszul(*S, parse_ideal(*S, {"a*c-b^2", "a*d-b*c", "b*d-c^2"}).gens, 1)});
  auto F = fx::ring(101, {"x", "y"});
  std::mt19937 rng(9);
  for (int k = 0; k < 10; ++k) cs.push_back({F, fx::random_torsion_complex(F, rng, {2, 2, 0, 2, 4})});
  int modules = 0;
  for (std::size_t idx = 0; idx < cs.size(); ++idx) {
    const auto& [R, C] = cs[idx];
    int lo = std::min(0, oracle::min_shift(C));
    for (int n = C.lo; n <= C.hi(); ++n) {
      Homology h = homology(*R, C, n);
      auto mine = graded_dims(*R, h.module, lo, 6);
      auto theirs = oracle::homology_dims(*R, C, n, lo, 6);
      v.require(mine == theirs, "complex " + std::to_string(idx) + " degree " + std::to_string(n));
      ++modules;
    }
  }
  v.detail << modules << " homology modules on " << cs.size() << " complexes agree in degrees <= 6";
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(TATECLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void determinism(Tally& v) {
  fs::path scratch = fs::temp_directory_path() / "tate-acceptance-determinism";
  fs::remove_all(scratch);
  int files = 0, sessions = 0;
  for (const auto& e : fs::directory_iterator(TATE_SESSIONS_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++sessions;
    std::string stem = e.path().stem().string();
    fs::path a = scratch / (stem + "-a"), b = scratch / (stem + "-b");
    int ca = run_cli("--session " + e.path().string() + " --out " + a.string());
    int cb = run_cli("--session " + e.path().string() + " --out " + b.string());
    v.require(ca == cb && ca >= 0 && ca != 4 && ca != 2, stem + ": exit codes " + std::to_string(ca) + ", " +
                                                             std::to_string(cb));
    for (const auto& f : fs::directory_iterator(a)) {
      fs::path other = b / f.path().filename();
      v.require(fs::exists(other) && io::read_file(f.path().string()) == io::read_file(other.string()),
                stem + ": " + f.path().filename().string() + " differs");
      ++files;
    }
  }
  fs::remove_all(scratch);
  v.require(sessions > 0, "no sessions found");
  // generator order
  auto R = fx::ring(101, {"x", "y", "z"}, {"x*z", "y*z"});
  std::vector<std::string> gens{"x^2 + y*z", "x*y", "y^3 - x*z", "z^2"};
  std::vector<std::string> perm = gens;
  std::string base_gb, base_t;
  int perms = 0;
  std::sort(perm.begin(), perm.end());
  do {
    Ideal I = parse_ideal(*R, perm);
    std::string gb = to_string(*R, ideal_basis(*R, I));
    TateData T = tate_resolution(*R, I.gens, 3);
    std::string t;
    for (int x : T.t) t += std::to_string(x) + ",";
    if (perms == 0) {
      base_gb = gb;
      base_t = t;
    }
    v.require(gb == base_gb, "reduced basis depends on generator order");
    v.require(t == base_t, "t_i depend on generator order");
    ++perms;
  } while (std::next_permutation(perm.begin(), perm.end()));
  v.detail << files << " witness files byte-identical across reruns of " << sessions << " sessions; " << perms
           << " generator orders give one basis and t = " << base_t;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<void(Tally&)> run;
  };
  double worst_fixture = 0;
  std::vector<Criterion> all{
      {1, "intro diagram", 1.0, intro_diagram},
      {2, "u(r) formula conformance", 0, [&](Tally& v) { formula_conformance(v, worst_fixture); }},
      {3, "principal-ideal w(r)", 30.0, principal_ideal_w},
      {4, "regular-sequence degeneration", 10.0, regular_degeneration},
      {5, "Koszul/phi equivalence", 0, koszul_phi_equivalence},
      {6, "Frobenius pd invariance", 120.0, frobenius_invariance},
      {7, "strong reducers and width", 600.0, strong_reducers},
      {8, "efpd triptych", 60.0, efpd_triptych},
      {9, "homology oracle agreement", 0, oracle_agreement},
      {10, "determinism", 0, determinism},
  };
  int failed = 0;
  for (auto& c : all) {
    Tally v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0) v.require(secs < c.limit, "over the time limit");
    if (!v.pass) ++failed;
    std::printf("criterion %2d %-32s %s  %.3fs  %s\n", c.id, c.name.c_str(), v.pass ? "PASS" : "FAIL", secs,
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
