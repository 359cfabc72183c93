#pragma once

// Schubert varieties Omega_alpha^A = { W in G_{l,m} : dim(W cap A_i) >= i }
// as condition systems and as explicit point sets.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/field.hpp"
#include "schubert/grassmann.hpp"
#include "schubert/linalg.hpp"
#include "schubert/random.hpp"

namespace schubert {

/// Deliberately broken criteria, used to show the verification campaigns
/// can tell a correct criterion from a wrong one.
enum class Mutation {
  none,
  alpha_for_nc,            // compare every flag member instead of the nonconsecutive ones
  skip_contravariant_set,  // contravariant automorphism test ignores the subspaces
  wrong_dual_formula,      // dual index set {m - j} instead of {m + 1 - j}
  drop_condition,          // minimal conditions lose their lowest member
};

inline std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::none: return "none";
    case Mutation::alpha_for_nc: return "alpha-for-nc";
    case Mutation::skip_contravariant_set: return "skip-contravariant-set";
    case Mutation::wrong_dual_formula: return "wrong-dual-formula";
    case Mutation::drop_condition: return "drop-condition";
  }
  return "none";
}

inline Mutation mutation_from_string(const std::string& s) {
  for (auto m : {Mutation::none, Mutation::alpha_for_nc, Mutation::skip_contravariant_set,
                 Mutation::wrong_dual_formula, Mutation::drop_condition})
    if (to_string(m) == s) return m;
  throw InvalidInput("unknown mutation '" + s + "'");
}

struct CriterionOptions {
  Mutation mutation = Mutation::none;
  // Different index sets never give the same variety; when false, equal_fast
  // falls back to point-set comparison for that case.
  bool trust_kl = true;
  // Contravariant automorphism queries are answered by the oracle.
  bool paranoid = false;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

/// { a_i : a_i + 1 not in alpha }. Always contains max(alpha).
inline IndexSet alpha_nc(const IndexSet& alpha) {
  std::vector<std::size_t> out;
  for (auto a : alpha.elements())
    if (!alpha.contains(a + 1)) out.push_back(a);
  return IndexSet(alpha.ambient(), std::move(out));
}

/// w_0..w_m with w_s = #{i : a_i <= s}.
inline std::vector<std::size_t> condition_word(const IndexSet& alpha) {
  const std::size_t m = alpha.ambient();
  std::vector<std::size_t> w(m + 1, 0);
  std::size_t i = 0;
  for (std::size_t s = 0; s <= m; ++s) {
    while (i < alpha.size() && alpha[i] <= s) ++i;
    w[s] = i;
  }
  return w;
}

/// { m + 1 - j : j in {1..m} \ alpha }, sorted.
inline IndexSet dual_index_set(const IndexSet& alpha, Mutation mutation = Mutation::none) {
  const std::size_t m = alpha.ambient();
  const std::size_t shift = mutation == Mutation::wrong_dual_formula ? m : m + 1;
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j <= m; ++j)
    if (!alpha.contains(j)) out.push_back(shift - j);
  std::sort(out.begin(), out.end());
  return IndexSet(m, std::move(out));
}

struct Condition {
  Subspace space;
  std::size_t required = 0;  // dim(W cap space) >= required
};

class SchubertVariety {
 public:
  SchubertVariety(Field field, Flag flag) : field_(std::move(field)), flag_(std::move(flag)), nc_(alpha_nc(flag_.alpha())) {
    if (flag_.has_zero_member()) throw InvalidInput("a Schubert variety needs a flag without a zero member");
  }

  const Field& field() const { return field_; }
  const Flag& flag() const { return flag_; }
  const IndexSet& alpha() const { return flag_.alpha(); }
  const IndexSet& nc() const { return nc_; }
  std::size_t m() const { return flag_.ambient_dim(); }
  std::size_t l() const { return flag_.size(); }

  /// Flag member of dimension a (a must be in alpha).
  const Subspace& member(std::size_t a) const {
    for (const auto& s : flag_.subspaces())
      if (s.dim() == a) return s;
    throw InvalidInput("no flag member of dimension " + std::to_string(a));
  }

  std::vector<std::size_t> word() const { return condition_word(alpha()); }

 private:
  Field field_;
  Flag flag_;
  IndexSet nc_;
};

inline void require_same_grassmannian(const SchubertVariety& a, const SchubertVariety& b) {
  if (a.m() != b.m() || a.l() != b.l() || !(a.field() == b.field()))
    throw InvalidInput("varieties live in different Grassmannians");
}

inline std::vector<Condition> all_conditions(const SchubertVariety& omega) {
  std::vector<Condition> out;
  for (std::size_t i = 0; i < omega.l(); ++i) out.push_back({omega.flag()[i], i + 1});
  return out;
}

/// The conditions indexed by alpha_nc; the others are implied.
inline std::vector<Condition> minimal_conditions(const SchubertVariety& omega, Mutation mutation = Mutation::none) {
  if (mutation == Mutation::alpha_for_nc) return all_conditions(omega);
  std::vector<Condition> out;
  for (std::size_t i = 0; i < omega.l(); ++i)
    if (omega.nc().contains(omega.alpha()[i])) out.push_back({omega.flag()[i], i + 1});
  if (mutation == Mutation::drop_condition && !out.empty()) out.erase(out.begin());
  return out;
}

inline bool satisfies(const Subspace& w, const std::vector<Condition>& conditions, const Field& f) {
  for (const auto& c : conditions)
    if (intersect(w, c.space, f).dim() < c.required) return false;
  return true;
}

inline void require_point_of(const Subspace& w, const SchubertVariety& omega) {
  if (w.ambient_dim() != omega.m() || w.dim() != omega.l())
    throw InvalidInput("subspace is not a point of G_{" + std::to_string(omega.l()) + "," + std::to_string(omega.m()) +
                       "}");
}

/// Every condition dim(W cap A_i) >= i checked.
inline bool membership(const Subspace& w, const SchubertVariety& omega) {
  require_point_of(w, omega);
  return satisfies(w, all_conditions(omega), omega.field());
}

inline bool membership_minimal(const Subspace& w, const SchubertVariety& omega, Mutation mutation = Mutation::none) {
  require_point_of(w, omega);
  return satisfies(w, minimal_conditions(omega, mutation), omega.field());
}

/// Points of the variety in Grassmannian enumeration order.
inline std::vector<Subspace> enumerate_points(const SchubertVariety& omega,
                                              std::uint64_t budget = kDefaultEnumerationBudget) {
  check_budget(gaussian_binomial(omega.m(), omega.l(), omega.field().q()), budget, "ambient Grassmannian");
  const auto conds = minimal_conditions(omega);
  std::vector<Subspace> out;
  for_each_subspace(omega.m(), omega.l(), omega.field(), [&](const Subspace& w) {
    if (satisfies(w, conds, omega.field())) out.push_back(w);
  });
  return out;
}

using PointSet = std::vector<Subspace>;  // sorted by operator<

inline PointSet point_set(const SchubertVariety& omega, std::uint64_t budget = kDefaultEnumerationBudget) {
  auto pts = enumerate_points(omega, budget);
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline bool equal_oracle(const SchubertVariety& a, const SchubertVariety& b,
                         std::uint64_t budget = kDefaultEnumerationBudget) {
  require_same_grassmannian(a, b);
  return point_set(a, budget) == point_set(b, budget);
}

/// Omega_alpha^A = Omega_beta^B iff alpha = beta and A_i = B_i for every
/// a_i in alpha_nc.
inline bool equal_fast(const SchubertVariety& a, const SchubertVariety& b, const CriterionOptions& opts = {}) {
  require_same_grassmannian(a, b);
  if (a.alpha() != b.alpha()) return opts.trust_kl ? false : equal_oracle(a, b, opts.budget);
  const IndexSet& checked = opts.mutation == Mutation::alpha_for_nc ? a.alpha() : a.nc();
  for (auto d : checked.elements())
    if (a.member(d) != b.member(d)) return false;
  return true;
}

struct Witness {
  Subspace point;
  bool constructed = false;  // false: found by searching the point set
};

namespace detail {

inline std::vector<Elem> random_vector_in(const Subspace& s, Rng& rng, const Field& f) {
  std::vector<Elem> v(s.ambient_dim(), 0);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Elem c = rng.element(f);
    if (c == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(c, s.basis()(i, j)));
  }
  return v;
}

}  // namespace detail

/// A point of `a` that is not a point of `b`, for two varieties with the same
/// index set whose flags differ at some nonconsecutive member.
///
/// Take the largest such index s, a basis v_1..v_m adapted to A and
/// x in A_s \ B_s. W = span({v_{a_u} : u != s} + {x}) (or, when s = l,
/// span(v_1..v_{l-1}, x)). The adapted basis and x are drawn at random and
/// the candidate checked; if no attempt succeeds the point set is searched.
inline std::optional<Witness> find_witness(const SchubertVariety& a, const SchubertVariety& b, std::uint64_t seed,
                                           int attempts = 64,
                                           std::uint64_t budget = kDefaultEnumerationBudget) {
  require_same_grassmannian(a, b);
  const Field& f = a.field();
  const std::size_t m = a.m();
  const std::size_t l = a.l();

  if (a.alpha() == b.alpha()) {
    std::optional<std::size_t> s;
    for (std::size_t i = 0; i < l; ++i)
      if (a.nc().contains(a.alpha()[i]) && a.flag()[i] != b.flag()[i]) s = i;
    if (s) {
      const Subspace& as = a.flag()[*s];
      const Subspace& bs = b.flag()[*s];
      Rng rng(seed);
      for (int attempt = 0; attempt < attempts; ++attempt) {
        const Matrix basis = random_adapted_basis(a.flag(), f, mix_seed(seed, static_cast<std::uint64_t>(attempt)));

        Matrix lower(0, m);  // v_{a_u}, u < s
        for (std::size_t u = 0; u < *s; ++u) lower.append_row(basis.row(a.alpha()[u] - 1));
        const Subspace lower_span = row_space(lower, f);

        std::vector<Elem> x;
        for (int tries = 0; tries < 64; ++tries) {
          auto v = detail::random_vector_in(as, rng, f);
          if (!contains_vector(bs, v, f) && !contains_vector(lower_span, v, f)) {
            x = std::move(v);
            break;
          }
        }
        if (x.empty()) continue;

        Matrix gens(0, m);
        if (*s == l - 1) {
          for (std::size_t j = 0; j + 1 < l; ++j) gens.append_row(basis.row(j));
        } else {
          for (std::size_t u = 0; u < l; ++u)
            if (u != *s) gens.append_row(basis.row(a.alpha()[u] - 1));
        }
        gens.append_row(x);
        const Subspace w = row_space(gens, f);
        if (w.dim() == l && membership(w, a) && !membership(w, b)) return Witness{w, true};
      }
    }
  }

  for (const auto& w : enumerate_points(a, budget))
    if (!membership(w, b)) return Witness{w, false};
  return std::nullopt;
}

/// c_d = #{ l-subsets beta of {1..m} : beta_i <= a_i, sum(beta_i - i) = d }.
/// Evaluated at q this is the number of points of any Omega_alpha over F_q.
inline std::vector<std::uint64_t> cell_count_polynomial(const IndexSet& alpha) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) top += alpha[i] - (i + 1);
  std::vector<std::uint64_t> coeffs(top + 1, 0);
  for (const auto& beta : all_index_sets(alpha.ambient(), alpha.size())) {
    bool below = true;
    std::size_t d = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      if (beta[i] > alpha[i]) below = false;
      d += beta[i] - (i + 1);
    }
    if (below) ++coeffs[d];
  }
  return coeffs;
}

inline std::uint64_t evaluate_polynomial(const std::vector<std::uint64_t>& coeffs, std::uint64_t q) {
  std::uint64_t r = 0;
  for (std::size_t i = coeffs.size(); i > 0; --i) r = r * q + coeffs[i - 1];
  return r;
}

}  // namespace schubert
