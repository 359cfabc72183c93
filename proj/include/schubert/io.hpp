#pragma once

// JSON encodings.
//
//   field      {"p": 2, "e": 2, "modulus": [1, 1, 1]}
//   subspace   [[1, 0, 3], [0, 1, 2]]          canonical RREF rows
//   flag       {"q": 4, "m": 3, "alpha": [1, 2], "subspaces": [subspace, ...]}
//              optional "zero_member": true for duals of flags ending in F_q^m
//   variety    {"q": 4, "m": 3, "alpha": [1, 2], "flag": flag}
//   map        {"q": 4, "m": 3, "matrix": [[...]], "frobenius_power": 0, "dual": false}
//
// Field elements are their integer encodings. Readers accept any generating
// rows for a subspace and canonicalise them; writers always emit RREF.

#include <string>

#include "json.hpp"
#include "schubert/error.hpp"
#include "schubert/field.hpp"
#include "schubert/grassmann.hpp"
#include "schubert/group.hpp"
#include "schubert/linalg.hpp"
#include "schubert/variety.hpp"

namespace schubert::io {

using json = nlohmann::json;

inline json field_to_json(const Field& f) {
  return {{"p", f.p()}, {"e", f.e()}, {"modulus", f.modulus()}};
}

inline Field field_from_json(const json& j) {
  if (j.contains("q")) {
    Field f = Field::of_order(j.at("q").get<std::uint64_t>());
    if (j.contains("p") && j.at("p").get<std::uint32_t>() != f.p()) throw InvalidInput("inconsistent q and p");
    if (j.contains("e") && j.at("e").get<std::uint32_t>() != f.e()) throw InvalidInput("inconsistent q and e");
    return f;
  }
  if (j.contains("p")) return Field::make(j.at("p").get<std::uint32_t>(), j.value("e", 1u));
  throw InvalidInput("field is missing: give \"q\" or \"p\"/\"e\"");
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<Elem>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

inline Matrix matrix_from_json(const json& j, std::size_t cols, const Field& f) {
  if (!j.is_array()) throw InvalidInput("matrix must be an array of rows");
  Matrix m(0, cols);
  for (const auto& row : j) {
    auto r = row.get<std::vector<std::int64_t>>();
    if (r.size() != cols) throw InvalidInput("matrix row has " + std::to_string(r.size()) + " entries, expected " +
                                            std::to_string(cols));
    std::vector<Elem> v;
    for (auto x : r) {
      if (x < 0 || !f.contains(static_cast<Elem>(x)))
        throw InvalidInput("entry " + std::to_string(x) + " is not an element of F_" + std::to_string(f.q()));
      v.push_back(static_cast<Elem>(x));
    }
    m.append_row(v);
  }
  return m;
}

inline json subspace_to_json(const Subspace& s) { return matrix_to_json(s.basis()); }

inline Subspace subspace_from_json(const json& j, std::size_t m, const Field& f) {
  return row_space(matrix_from_json(j, m, f), f);
}

inline json flag_to_json(const Flag& flag, const Field& f) {
  json subs = json::array();
  for (const auto& s : flag.subspaces()) subs.push_back(subspace_to_json(s));
  json j = {{"q", f.q()}, {"m", flag.ambient_dim()}, {"alpha", flag.alpha().elements()}, {"subspaces", subs}};
  if (flag.has_zero_member()) j["zero_member"] = true;
  return j;
}

inline Flag flag_from_json(const json& j, const Field& f) {
  const auto m = j.at("m").get<std::size_t>();
  IndexSet alpha(m, j.at("alpha").get<std::vector<std::size_t>>());
  std::vector<Subspace> subs;
  for (const auto& s : j.at("subspaces")) subs.push_back(subspace_from_json(s, m, f));
  return Flag(std::move(alpha), std::move(subs), f, j.value("zero_member", false));
}

inline json variety_to_json(const SchubertVariety& omega) {
  return {{"q", omega.field().q()},
          {"m", omega.m()},
          {"alpha", omega.alpha().elements()},
          {"flag", flag_to_json(omega.flag(), omega.field())}};
}

/// Accepts a variety descriptor or a bare flag.
inline SchubertVariety variety_from_json(const json& j) {
  const Field f = field_from_json(j);
  const json& fj = j.contains("flag") ? j.at("flag") : j;
  json flag_json = fj;
  if (!flag_json.contains("m")) flag_json["m"] = j.at("m");
  Flag flag = flag_from_json(flag_json, f);
  if (j.contains("m") && j.at("m").get<std::size_t>() != flag.ambient_dim())
    throw InvalidInput("variety and flag disagree on m");
  if (j.contains("alpha") && IndexSet(flag.ambient_dim(), j.at("alpha").get<std::vector<std::size_t>>()) != flag.alpha())
    throw InvalidInput("variety alpha does not match its flag");
  return SchubertVariety(f, std::move(flag));
}

inline json map_to_json(const SemilinearMap& tau, const Field& f) {
  return {{"q", f.q()},
          {"m", tau.m()},
          {"matrix", matrix_to_json(tau.matrix())},
          {"frobenius_power", tau.frobenius_power()},
          {"dual", tau.dual()}};
}

inline SemilinearMap map_from_json(const json& j, const Field& f) {
  const auto m = j.at("m").get<std::size_t>();
  Matrix mat = matrix_from_json(j.at("matrix"), m, f);
  if (mat.rows() != m) throw InvalidInput("map matrix must be m x m");
  return SemilinearMap(std::move(mat), j.value("frobenius_power", 0u), j.value("dual", false), f);
}

}  // namespace schubert::io
