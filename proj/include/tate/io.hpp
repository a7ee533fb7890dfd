// JSON forms of rings, ideals, matrices, modules, complexes, chain maps and
// resolutions. Entries are polynomial strings in the ring's canonical order.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tate/complex.hpp"
#include "tate/resolution.hpp"

namespace tate::io {

using json = nlohmann::json;

json ring_to_json(const Ring& R);
RingPtr ring_from_json(const json& j);

json poly_list(const Ring& R, const std::vector<Poly>& ps);
std::vector<Poly> polys_from(const Ring& R, const json& j);

json ideal_to_json(const Ring& R, const Ideal& I);
Ideal ideal_from_json(const Ring& R, const json& j);

/// {"shape": [rows, cols], "rows": [[entry, ...], ...]}
json matrix_to_json(const Ring& R, const Matrix& A);
Matrix matrix_from_json(const Ring& R, const json& j);

/// sparse [[component, entry], ...]
json vec_to_json(const Ring& R, const Vec& v);
Vec vec_from_json(const Ring& R, const json& j);

json free_to_json(const FreeModule& F);
FreeModule free_from_json(const json& j);

json module_to_json(const Ring& R, const FPModule& M);
FPModule module_from_json(const Ring& R, const json& j);

json complex_to_json(const Ring& R, const Complex& C);
Complex complex_from_json(const Ring& R, const json& j);

json map_to_json(const Ring& R, const ChainMap& f);
ChainMap map_from_json(const Ring& R, const json& j);

json resolution_to_json(const Ring& R, const Resolution& P);
Resolution resolution_from_json(const Ring& R, const json& j);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);
/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace tate::io
