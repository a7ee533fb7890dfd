#include "tate/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tate/errors.hpp"

namespace tate::io {

json ring_to_json(const Ring& R) {
  json vars = json::array();
  for (const auto& v : R.variables()) {
    if (v.weight == 1)
      vars.push_back(v.name);
    else
      vars.push_back({{"name", v.name}, {"weight", v.weight}});
  }
  json j = {{"char", R.field().characteristic()}, {"vars", vars}, {"order", order_name(R.order())}};
  if (!R.quotient_gens().empty()) j["quotient"] = poly_list(R, R.quotient_gens());
  return j;
}

RingPtr ring_from_json(const json& j) { return parse_ring(j.dump()); }

json poly_list(const Ring& R, const std::vector<Poly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(R.to_string(p));
  return out;
}

std::vector<Poly> polys_from(const Ring& R, const json& j) {
  if (!j.is_array()) throw ParseError("expected a list of polynomials");
  std::vector<Poly> out;
  for (const auto& e : j) {
    if (e.is_number_integer())
      out.push_back(R.normal_form(R.constant(e.get<long long>())));
    else
      out.push_back(R.normal_form(R.parse(e.get<std::string>())));
  }
  return out;
}

json ideal_to_json(const Ring& R, const Ideal& I) { return poly_list(R, I.gens); }

Ideal ideal_from_json(const Ring& R, const json& j) {
  if (j.is_object()) return make_ideal(R, polys_from(R, j.at("gens")));
  return make_ideal(R, polys_from(R, j));
}

json matrix_to_json(const Ring& R, const Matrix& A) {
  json rows = json::array();
  for (int i = 0; i < A.rows; ++i) {
    json row = json::array();
    for (int c = 0; c < A.ncols(); ++c) row.push_back(R.to_string(A.entry(R, i, c)));
    rows.push_back(row);
  }
  return {{"shape", {A.rows, A.ncols()}}, {"rows", rows}};
}

Matrix matrix_from_json(const Ring& R, const json& j) {
  int rows = j.at("shape").at(0).get<int>(), cols = j.at("shape").at(1).get<int>();
  if (rows < 0 || cols < 0) throw ParseError("negative matrix shape");
  const json& body = j.at("rows");
  if (static_cast<int>(body.size()) != rows) throw ParseError("matrix row count does not match its shape");
  std::vector<Poly> entries;
  for (const auto& row : body) {
    auto ps = polys_from(R, row);
    if (static_cast<int>(ps.size()) != cols) throw ParseError("matrix row length does not match its shape");
    entries.insert(entries.end(), ps.begin(), ps.end());
  }
  return Matrix::from_rows(R, rows, cols, entries);
}

json vec_to_json(const Ring& R, const Vec& v) {
  json out = json::array();
  int comp = -1;
  for (const auto& t : v) {
    if (t.comp == comp) continue;
    comp = t.comp;
    out.push_back({comp, R.to_string(R.component(v, comp))});
  }
  return out;
}

Vec vec_from_json(const Ring& R, const json& j) {
  Vec v;
  for (const auto& e : j) v = R.add(v, R.place(R.parse(e.at(1).get<std::string>()), e.at(0).get<int>()));
  return R.normal_form_vec(v);
}

json free_to_json(const FreeModule& F) { return F.shifts; }

FreeModule free_from_json(const json& j) {
  if (j.is_number_integer()) return FreeModule::of_rank(j.get<int>());
  return FreeModule{j.get<std::vector<int>>()};
}

json module_to_json(const Ring& R, const FPModule& M) {
  return {{"ambient", free_to_json(M.ambient)}, {"gens", matrix_to_json(R, M.gens)},
          {"rels", matrix_to_json(R, M.rels)}};
}

FPModule module_from_json(const Ring& R, const json& j) {
  FPModule M;
  M.ambient = free_from_json(j.at("ambient"));
  M.gens = matrix_from_json(R, j.at("gens"));
  M.rels = matrix_from_json(R, j.at("rels"));
  if (M.gens.rows != M.ambient.rank() || M.rels.rows != M.ambient.rank())
    throw ParseError("module matrices do not live in the ambient free module");
  return M;
}

json complex_to_json(const Ring& R, const Complex& C) {
  json terms = json::array(), diffs = json::array(), rels = json::array();
  for (const auto& t : C.terms) terms.push_back(free_to_json(t));
  for (const auto& d : C.diffs) diffs.push_back(matrix_to_json(R, d));
  bool any_rel = false;
  for (const auto& r : C.rels) any_rel = any_rel || r.ncols() > 0;
  json j = {{"lo", C.lo}, {"terms", terms}, {"diffs", diffs}};
  if (any_rel) {
    for (const auto& r : C.rels) rels.push_back(matrix_to_json(R, r));
    j["rels"] = rels;
  }
  return j;
}

Complex complex_from_json(const Ring& R, const json& j) {
  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs, rels;
  for (const auto& t : j.at("terms")) terms.push_back(free_from_json(t));
  for (const auto& d : j.at("diffs")) diffs.push_back(matrix_from_json(R, d));
  if (terms.empty()) throw ParseError("complex without terms");
  if (diffs.size() + 1 != terms.size()) throw ParseError("complex needs one differential between consecutive terms");
  for (std::size_t k = 0; k < diffs.size(); ++k)
    if (diffs[k].rows != terms[k].rank() || diffs[k].ncols() != terms[k + 1].rank())
      throw ParseError("differential shape does not match the terms");
  int lo = j.value("lo", 0);
  if (!j.contains("rels")) return make_complex(lo, std::move(terms), std::move(diffs));
  for (const auto& r : j.at("rels")) rels.push_back(matrix_from_json(R, r));
  if (rels.size() != terms.size()) throw ParseError("one relation matrix per term");
  return make_complex(lo, std::move(terms), std::move(diffs), std::move(rels));
}

json map_to_json(const Ring& R, const ChainMap& f) {
  json comps = json::array();
  for (const auto& c : f.comps) comps.push_back(matrix_to_json(R, c));
  return {{"source", complex_to_json(R, f.src)}, {"target", complex_to_json(R, f.tgt)}, {"lo", f.lo},
          {"comps", comps}};
}

ChainMap map_from_json(const Ring& R, const json& j) {
  Complex src = complex_from_json(R, j.at("source")), tgt = complex_from_json(R, j.at("target"));
  std::vector<Matrix> comps;
  for (const auto& c : j.at("comps")) comps.push_back(matrix_from_json(R, c));
  int lo = j.value("lo", src.lo);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    int n = lo + static_cast<int>(k);
    if (comps[k].rows != tgt.rank(n) || comps[k].ncols() != src.rank(n))
      throw ParseError("chain map component " + std::to_string(n) + " has the wrong shape");
  }
  return make_map(src, tgt, lo, std::move(comps));
}

json resolution_to_json(const Ring& R, const Resolution& P) {
  json F = json::array(), d = json::array();
  for (const auto& f : P.F) F.push_back(free_to_json(f));
  for (const auto& m : P.d) d.push_back(matrix_to_json(R, m));
  return {{"F", F}, {"d", d}, {"bound", P.bound}, {"terminated", P.terminated}, {"pd", P.pd},
          {"report", P.pd_report()}};
}

Resolution resolution_from_json(const Ring& R, const json& j) {
  Resolution P;
  for (const auto& f : j.at("F")) P.F.push_back(free_from_json(f));
  for (const auto& m : j.at("d")) P.d.push_back(matrix_from_json(R, m));
  if (!P.F.empty() && P.d.size() + 1 != P.F.size()) throw ParseError("resolution needs one map per step");
  P.bound = j.at("bound").get<int>();
  P.terminated = j.at("terminated").get<bool>();
  P.pd = j.at("pd").get<int>();
  return P;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PreconditionError("cannot write " + tmp);
    out << text;
    if (!out) throw PreconditionError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw PreconditionError("cannot move " + tmp + " to " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace tate::io
