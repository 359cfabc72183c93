#pragma once

// Conversions from library objects to oracle spaces. Only reads basis rows.

#include <vector>

#include "oracles.hpp"
#include "schubert/grassmann.hpp"
#include "schubert/group.hpp"
#include "schubert/linalg.hpp"

namespace support {

inline std::vector<oracle::Row> rows_of(const schubert::Matrix& m) {
  std::vector<oracle::Row> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
  return out;
}

inline oracle::Space space_of(const schubert::Subspace& s, const oracle::Gf& f) {
  return oracle::span(rows_of(s.basis()), s.ambient_dim(), f);
}

inline std::vector<oracle::Space> members_of(const schubert::Flag& flag, const oracle::Gf& f) {
  std::vector<oracle::Space> out;
  for (const auto& s : flag.subspaces()) out.push_back(space_of(s, f));
  return out;
}

// Oracle image of a space under a semilinear map.
inline oracle::Space image_of(const schubert::SemilinearMap& tau, const oracle::Space& s, const oracle::Gf& f) {
  oracle::Space img = oracle::image(s, rows_of(tau.matrix()), tau.frobenius_power(), tau.m(), f);
  return tau.dual() ? oracle::orthogonal(img, tau.m(), f) : img;
}

}  // namespace support
