#pragma once

// Semilinear maps with optional duality acting on subspaces, flags and
// Schubert varieties, and the criteria deciding when such a map is an
// automorphism of a Schubert variety.
//
// Every element is held in the normal form (M, k, dual) acting as
//     W  ->  perp^dual( W^{theta_k} . M )
// i.e. Frobenius first, then the matrix on row vectors, then the optional
// orthogonal complement.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/field.hpp"
#include "schubert/grassmann.hpp"
#include "schubert/linalg.hpp"
#include "schubert/random.hpp"
#include "schubert/variety.hpp"

namespace schubert {

class SemilinearMap {
 public:
  SemilinearMap(Matrix matrix, std::uint32_t frobenius_power, bool dual, const Field& f)
      : matrix_(std::move(matrix)), k_(frobenius_power), dual_(dual) {
    if (matrix_.rows() != matrix_.cols()) throw InvalidInput("semilinear map needs a square matrix");
    if (k_ >= f.e()) throw InvalidInput("Frobenius power " + std::to_string(k_) + " out of range");
    if (rank(matrix_, f) != matrix_.rows()) throw InvalidInput("semilinear map matrix is singular");
  }

  static SemilinearMap identity(std::size_t m, const Field& f) { return {Matrix::identity(m), 0, false, f}; }
  static SemilinearMap perp_map(std::size_t m, const Field& f) { return {Matrix::identity(m), 0, true, f}; }
  static SemilinearMap frobenius_map(std::size_t m, std::uint32_t k, const Field& f) {
    return {Matrix::identity(m), k, false, f};
  }
  static SemilinearMap matrix_map(Matrix m, const Field& f) { return {std::move(m), 0, false, f}; }

  const Matrix& matrix() const { return matrix_; }
  std::uint32_t frobenius_power() const { return k_; }
  bool dual() const { return dual_; }
  std::size_t m() const { return matrix_.rows(); }

  friend bool operator==(const SemilinearMap&, const SemilinearMap&) = default;

 private:
  Matrix matrix_;
  std::uint32_t k_ = 0;
  bool dual_ = false;
};

inline Subspace apply_subspace(const SemilinearMap& tau, const Subspace& w, const Field& f) {
  if (w.ambient_dim() != tau.m()) throw InvalidInput("map and subspace have different ambient dimensions");
  Subspace image = row_space(multiply(frobenius(w.basis(), tau.frobenius_power(), f), tau.matrix(), f), f);
  return tau.dual() ? perp(image, f) : image;
}

/// Covariant maps give an alpha-flag; contravariant ones the reversed
/// (m - alpha)-flag.
inline Flag apply_flag(const SemilinearMap& tau, const Flag& flag, const Field& f) {
  const SemilinearMap cov(tau.matrix(), tau.frobenius_power(), false, f);
  std::vector<Subspace> subs;
  for (const auto& a : flag.subspaces()) subs.push_back(apply_subspace(cov, a, f));
  Flag image(flag.alpha(), std::move(subs), f, flag.has_zero_member());
  return tau.dual() ? dual_flag(image, f) : image;
}

/// first applies `second`, then `first`.
///
/// With P = perp, F = Frobenius: M o P = P o M^{-T} and F^k o M = theta^k(M) o F^k,
/// so  P^d1 M1 F^k1 P^d2 M2 F^k2 = P^{d1+d2} (theta^k1(M2) . M1') F^{k1+k2}
/// where M1' = M1^{-T} if d2 else M1.
inline SemilinearMap compose(const SemilinearMap& first, const SemilinearMap& second, const Field& f) {
  if (first.m() != second.m()) throw InvalidInput("cannot compose maps on different ambient spaces");
  const Matrix m1 = second.dual() ? inverse(first.matrix(), f).transpose() : first.matrix();
  const Matrix m2 = frobenius(second.matrix(), first.frobenius_power(), f);
  return {multiply(m2, m1, f), (first.frobenius_power() + second.frobenius_power()) % f.e(),
          first.dual() != second.dual(), f};
}

inline SemilinearMap inverse(const SemilinearMap& tau, const Field& f) {
  const std::uint32_t k = (f.e() - tau.frobenius_power()) % f.e();
  const Matrix n = tau.dual() ? tau.matrix().transpose() : inverse(tau.matrix(), f);
  return {frobenius(n, k, f), k, tau.dual(), f};
}

inline SemilinearMap random_semilinear(std::size_t m, const Field& f, std::uint64_t seed, bool allow_dual) {
  Rng rng(seed);
  Matrix mat = rng.invertible(m, f);
  const auto k = static_cast<std::uint32_t>(rng.below(f.e()));
  const bool dual = allow_dual && rng.coin();
  return {std::move(mat), k, dual, f};
}

/// The characterisation of Grassmannian automorphisms by these generators
/// needs 1 < l < m - 1.
inline std::optional<std::string> chow_warning(std::size_t l, std::size_t m) {
  if (l > 1 && l + 1 < m) return std::nullopt;
  return "l = " + std::to_string(l) + ", m = " + std::to_string(m) +
         ": outside 1 < l < m-1 the maps checked here need not be all automorphisms of the Grassmannian";
}

inline void require_acts_on(const SemilinearMap& tau, const SchubertVariety& omega) {
  if (tau.m() != omega.m()) throw InvalidInput("map and variety have different ambient dimensions");
  if (tau.dual() && omega.m() != 2 * omega.l())
    throw InvalidInput("a contravariant map only acts on G_{l,m} when m = 2l");
}

/// Descriptor of tau(Omega_alpha^A), computed without enumerating points.
///
/// Covariant: Omega_alpha^{tau(A)}. Contravariant: Omega_beta^D with
/// beta = { m+1-j : j not in alpha } and D_r = tau(C_{m-r}) for a complete
/// flag C through A. The members of D that matter (beta_nc) are exactly
/// tau(A_i) for a_i in alpha_nc, so the choice of C does not change the
/// variety.
inline SchubertVariety image_of_schubert(const SemilinearMap& tau, const SchubertVariety& omega,
                                         const CriterionOptions& opts = {}) {
  require_acts_on(tau, omega);
  const Field& f = omega.field();
  if (!tau.dual()) return SchubertVariety(f, apply_flag(tau, omega.flag(), f));

  const std::size_t m = omega.m();
  const IndexSet beta = dual_index_set(omega.alpha(), opts.mutation);
  const CompleteFlag c = complete_flag_containing(omega.flag(), f, 0);
  std::vector<Subspace> members;
  for (auto r : beta.elements()) members.push_back(apply_subspace(tau, c[m - r], f));
  return SchubertVariety(f, Flag(beta, std::move(members), f));
}

/// Sorted images of every point of the variety.
inline PointSet image_points(const SemilinearMap& tau, const SchubertVariety& omega,
                             std::uint64_t budget = kDefaultEnumerationBudget) {
  require_acts_on(tau, omega);
  PointSet out;
  for (const auto& w : enumerate_points(omega, budget)) out.push_back(apply_subspace(tau, w, omega.field()));
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_automorphism_oracle(const SemilinearMap& tau, const SchubertVariety& omega,
                                   std::uint64_t budget = kDefaultEnumerationBudget) {
  return image_points(tau, omega, budget) == point_set(omega, budget);
}

/// Same test against a precomputed sorted point set of `omega`.
inline bool is_automorphism_oracle(const SemilinearMap& tau, const SchubertVariety& omega, const PointSet& points) {
  require_acts_on(tau, omega);
  PointSet image;
  image.reserve(points.size());
  for (const auto& w : points) image.push_back(apply_subspace(tau, w, omega.field()));
  std::sort(image.begin(), image.end());
  return image == points;
}

/// |GL_m(F_q)|, or nullopt when it does not fit in 64 bits.
inline std::optional<std::uint64_t> general_linear_order(std::size_t m, std::uint64_t q) {
  unsigned __int128 qm = 1;
  for (std::size_t i = 0; i < m; ++i) {
    qm *= q;
    if (qm > ~std::uint64_t{0}) return std::nullopt;
  }
  unsigned __int128 order = 1;
  unsigned __int128 qi = 1;
  for (std::size_t i = 0; i < m; ++i) {
    order *= qm - qi;
    qi *= q;
    if (order > ~std::uint64_t{0}) return std::nullopt;
  }
  return static_cast<std::uint64_t>(order);
}

/// Visit GL_m(F_q), rows chosen in lexicographic order of their integer
/// encodings (first entry most significant). fn returns false to stop.
template <class Fn>
void for_each_invertible(std::size_t m, const Field& f, Fn&& fn) {
  const std::uint64_t count = detail::checked_pow(f.q(), m);
  Matrix current(0, m);
  std::vector<Elem> v(m);
  auto decode = [&](std::uint64_t code) {
    for (std::size_t j = m; j > 0; --j) {
      v[j - 1] = static_cast<Elem>(code % f.q());
      code /= f.q();
    }
  };
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t row) -> void {
    if (row == m) {
      if (!fn(static_cast<const Matrix&>(current))) stop = true;
      return;
    }
    for (std::uint64_t code = 1; code < count && !stop; ++code) {
      decode(code);
      Matrix next = current;
      next.append_row(v);
      if (rank(next, f) != row + 1) continue;
      Matrix saved = std::move(current);
      current = std::move(next);
      self(self, row + 1);
      current = std::move(saved);
    }
  };
  rec(rec, 0);
}

/// tau maps Omega_alpha^A onto itself iff it permutes { A_i : a_i in alpha_nc }.
///
/// Covariant maps must fix each such A_i. Contravariant maps need a self-dual
/// alpha and must carry the set onto itself; the member A_l = F_q^m (when
/// a_l = m) imposes no condition and is left out of the comparison, since
/// its image is the zero space.
inline bool is_automorphism_fast(const SemilinearMap& tau, const SchubertVariety& omega,
                                 const CriterionOptions& opts = {}) {
  require_acts_on(tau, omega);
  const Field& f = omega.field();
  const IndexSet& checked = opts.mutation == Mutation::alpha_for_nc ? omega.alpha() : omega.nc();

  if (!tau.dual()) {
    for (auto d : checked.elements())
      if (apply_subspace(tau, omega.member(d), f) != omega.member(d)) return false;
    return true;
  }

  if (opts.paranoid) return is_automorphism_oracle(tau, omega, opts.budget);
  if (dual_index_set(omega.alpha(), opts.mutation) != omega.alpha()) return false;
  if (opts.mutation == Mutation::skip_contravariant_set) return true;

  std::vector<Subspace> before, after;
  for (auto d : checked.elements()) {
    if (d == omega.m()) continue;
    before.push_back(omega.member(d));
    after.push_back(apply_subspace(tau, omega.member(d), f));
  }
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  return before == after;
}

/// Random invertible matrix g with A g = A for each member A of the nested
/// chain: conjugate of a block lower-triangular matrix by an adapted basis.
inline Matrix random_stabilizing_matrix(const std::vector<Subspace>& chain, std::size_t m, const Field& f, Rng& rng) {
  const Matrix basis = adapted_basis(chain, m, f);
  const Matrix basis_inv = inverse(basis, f);
  std::vector<std::size_t> cuts;
  for (const auto& s : chain) cuts.push_back(s.dim());
  while (true) {
    Matrix t = rng.matrix(m, m, f);
    // row r may not reach past the first cut above it
    for (std::size_t r = 0; r < m; ++r)
      for (auto d : cuts)
        if (r < d) {
          for (std::size_t c = d; c < m; ++c) t(r, c) = 0;
          break;
        }
    if (rank(t, f) == m) return multiply(multiply(basis_inv, t, f), basis, f);
  }
}

/// A contravariant automorphism of a variety with self-dual alpha, built so
/// that tau(A_j) = A_i whenever a_i + a_j = m (both nonconsecutive).
inline SemilinearMap random_dual_automorphism(const SchubertVariety& omega, Rng& rng) {
  const Field& f = omega.field();
  const std::size_t m = omega.m();
  if (m != 2 * omega.l() || dual_index_set(omega.alpha()) != omega.alpha())
    throw InvalidInput("no contravariant automorphism exists for this index set");
  std::vector<Subspace> chain, perps;
  for (auto d : omega.nc().elements())
    if (d < m) chain.push_back(omega.member(d));
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) perps.push_back(perp(*it, f));
  const Matrix p = adapted_basis(chain, m, f);
  const Matrix q = adapted_basis(perps, m, f);
  const Matrix n = multiply(inverse(p, f), q, f);
  const Matrix g = random_stabilizing_matrix(chain, m, f, rng);
  return {multiply(g, n, f), 0, true, f};
}

}  // namespace schubert
