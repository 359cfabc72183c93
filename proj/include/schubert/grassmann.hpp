#pragma once

// Grassmannians G_{l,m}(F_q): counting, ordered enumeration, rank/unrank,
// and the flags that Schubert varieties are built on.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/field.hpp"
#include "schubert/linalg.hpp"
#include "schubert/random.hpp"

namespace schubert {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

/// A strictly increasing set of dimensions a_1 < ... < a_l inside {1..m}.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::size_t m, std::vector<std::size_t> elements) : m_(m), elements_(std::move(elements)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const auto a = elements_[i];
      if (a < 1 || a > m_)
        throw InvalidInput("index " + std::to_string(a) + " outside {1.." + std::to_string(m_) + "}");
      if (i > 0 && elements_[i - 1] >= a) throw InvalidInput("index set must be strictly increasing");
    }
  }

  std::size_t ambient() const { return m_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<std::size_t>& elements() const { return elements_; }
  std::size_t operator[](std::size_t i) const { return elements_[i]; }
  std::size_t back() const { return elements_.back(); }

  bool contains(std::size_t a) const {
    for (auto x : elements_)
      if (x == a) return true;
    return false;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < elements_.size(); ++i) s += (i ? "," : "") + std::to_string(elements_[i]);
    return s + ")";
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::size_t> elements_;
};

/// Every l-subset of {1..m}, lexicographically.
inline std::vector<IndexSet> all_index_sets(std::size_t m, std::size_t l) {
  std::vector<IndexSet> out;
  if (l > m) return out;
  std::vector<std::size_t> c(l);
  for (std::size_t i = 0; i < l; ++i) c[i] = i + 1;
  while (true) {
    out.emplace_back(m, c);
    std::size_t i = l;
    while (i > 0 && c[i - 1] == m - l + i) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < l; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

/// A_1 < A_2 < ... < A_l with dim A_i = a_i.
///
/// A flag obtained by dualising one whose top member is the whole space
/// would contain the zero subspace; that member is not stored, only
/// recorded by has_zero_member() so that dualising twice round-trips.
class Flag {
 public:
  Flag() = default;
  Flag(IndexSet alpha, std::vector<Subspace> subspaces, const Field& f, bool zero_member = false)
      : alpha_(std::move(alpha)), subspaces_(std::move(subspaces)), zero_member_(zero_member) {
    if (subspaces_.size() != alpha_.size()) throw InvalidInput("flag needs one subspace per index");
    for (std::size_t i = 0; i < subspaces_.size(); ++i) {
      if (subspaces_[i].ambient_dim() != alpha_.ambient())
        throw InvalidInput("flag member lives in the wrong ambient space");
      if (subspaces_[i].dim() != alpha_[i])
        throw InvalidInput("flag member " + std::to_string(i + 1) + " has dimension " +
                           std::to_string(subspaces_[i].dim()) + ", expected " + std::to_string(alpha_[i]));
      if (i > 0 && !contains(subspaces_[i], subspaces_[i - 1], f)) throw InvalidInput("flag members are not nested");
    }
  }

  const IndexSet& alpha() const { return alpha_; }
  const std::vector<Subspace>& subspaces() const { return subspaces_; }
  const Subspace& operator[](std::size_t i) const { return subspaces_[i]; }
  std::size_t size() const { return subspaces_.size(); }
  std::size_t ambient_dim() const { return alpha_.ambient(); }
  bool has_zero_member() const { return zero_member_; }

  friend bool operator==(const Flag&, const Flag&) = default;

 private:
  IndexSet alpha_;
  std::vector<Subspace> subspaces_;
  bool zero_member_ = false;
};

/// C_0 = {0} < C_1 < ... < C_m = F_q^m.
class CompleteFlag {
 public:
  CompleteFlag(std::vector<Subspace> subspaces, const Field& f) : subspaces_(std::move(subspaces)) {
    if (subspaces_.empty()) throw InvalidInput("complete flag needs C_0");
    const std::size_t m = subspaces_.size() - 1;
    for (std::size_t i = 0; i <= m; ++i) {
      if (subspaces_[i].ambient_dim() != m || subspaces_[i].dim() != i)
        throw InvalidInput("complete flag member " + std::to_string(i) + " has the wrong dimension");
      if (i > 0 && !contains(subspaces_[i], subspaces_[i - 1], f)) throw InvalidInput("complete flag is not nested");
    }
  }

  std::size_t ambient_dim() const { return subspaces_.size() - 1; }
  const Subspace& operator[](std::size_t i) const { return subspaces_[i]; }
  const std::vector<Subspace>& subspaces() const { return subspaces_; }

  bool contains_flag(const Flag& flag) const {
    for (const auto& a : flag.subspaces())
      if (subspaces_[a.dim()] != a) return false;
    return true;
  }

 private:
  std::vector<Subspace> subspaces_;
};

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > ~std::uint64_t{0}) throw BudgetExceeded("integer overflow computing q^" + std::to_string(exp));
  }
  return static_cast<std::uint64_t>(r);
}

// Iterate l-subsets of {0..m-1} lexicographically.
template <class Fn>
void for_each_pivot_set(std::size_t m, std::size_t l, Fn&& fn) {
  if (l > m) return;
  std::vector<std::size_t> c(l);
  for (std::size_t i = 0; i < l; ++i) c[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(c))) return;
    std::size_t i = l;
    while (i > 0 && c[i - 1] == m - l + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < l; ++j) c[j] = c[j - 1] + 1;
  }
}

// Free positions (row, col) of the RREF shape with the given pivots, row-major.
inline std::vector<std::pair<std::size_t, std::size_t>> free_positions(const std::vector<std::size_t>& pivots,
                                                                       std::size_t m) {
  std::vector<bool> is_pivot(m, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = pivots[r] + 1; c < m; ++c)
      if (!is_pivot[c]) out.emplace_back(r, c);
  return out;
}

inline Subspace echelon_from(const std::vector<std::size_t>& pivots,
                             const std::vector<std::pair<std::size_t, std::size_t>>& free,
                             const std::vector<Elem>& values, std::size_t m) {
  Matrix b(pivots.size(), m);
  for (std::size_t r = 0; r < pivots.size(); ++r) b(r, pivots[r]) = 1;
  for (std::size_t i = 0; i < free.size(); ++i) b(free[i].first, free[i].second) = values[i];
  return Subspace::from_echelon_unchecked(std::move(b), pivots);
}

}  // namespace detail

/// Number of l-dimensional subspaces of F_q^m. Throws BudgetExceeded on
/// 64-bit overflow.
inline std::uint64_t gaussian_binomial(std::size_t m, std::size_t l, std::uint64_t q) {
  if (l > m) throw InvalidInput("gaussian_binomial: l > m");
  unsigned __int128 r = 1;
  for (std::size_t j = 0; j < l; ++j) {
    const unsigned __int128 num = detail::checked_pow(q, m - j) - 1;
    const unsigned __int128 den = detail::checked_pow(q, j + 1) - 1;
    r *= num;
    if (r >> 127) throw BudgetExceeded("gaussian_binomial overflow");
    r /= den;
    if (r > ~std::uint64_t{0}) throw BudgetExceeded("gaussian_binomial overflow");
  }
  return static_cast<std::uint64_t>(r);
}

/// Visit every subspace of one pivot pattern, free entries in lexicographic
/// order (last free entry varies fastest). fn returns false to stop.
template <class Fn>
bool for_each_in_cell(const std::vector<std::size_t>& pivots, std::size_t m, const Field& f, Fn&& fn) {
  const auto free = detail::free_positions(pivots, m);
  std::vector<Elem> values(free.size(), 0);
  const Elem q = f.q();
  while (true) {
    if (!fn(detail::echelon_from(pivots, free, values, m))) return false;
    std::size_t i = values.size();
    bool advanced = false;
    while (i > 0 && !advanced) {
      --i;
      if (++values[i] < q) advanced = true;
      else values[i] = 0;
    }
    if (!advanced) return true;
  }
}

/// Visit G_{l,m}(F_q) in canonical order: pivot sets lexicographically, then
/// free entries lexicographically. fn receives a Subspace and returns void or
/// bool (false stops early).
template <class Fn>
void for_each_subspace(std::size_t m, std::size_t l, const Field& f, Fn&& fn) {
  if (l > m) throw InvalidInput("Grassmannian needs l <= m");
  auto visit = [&](const Subspace& w) {
    if constexpr (std::is_same_v<decltype(fn(w)), void>) {
      fn(w);
      return true;
    } else {
      return static_cast<bool>(fn(w));
    }
  };
  detail::for_each_pivot_set(m, l, [&](const std::vector<std::size_t>& piv) { return for_each_in_cell(piv, m, f, visit); });
}

inline void check_budget(std::uint64_t count, std::uint64_t budget, const std::string& what) {
  if (count > budget)
    throw BudgetExceeded(what + " has " + std::to_string(count) + " elements, budget is " + std::to_string(budget));
}

inline std::vector<Subspace> enumerate_grassmannian(std::size_t m, std::size_t l, const Field& f,
                                                    std::uint64_t budget = kDefaultEnumerationBudget) {
  check_budget(gaussian_binomial(m, l, f.q()), budget, "Grassmannian");
  std::vector<Subspace> out;
  for_each_subspace(m, l, f, [&](const Subspace& w) { out.push_back(w); });
  return out;
}

/// Position of W in the enumeration order of G_{dim W, m}.
inline std::uint64_t rank_subspace(const Subspace& w, const Field& f) {
  const std::size_t m = w.ambient_dim();
  const std::size_t l = w.dim();
  std::uint64_t offset = 0;
  detail::for_each_pivot_set(m, l, [&](const std::vector<std::size_t>& piv) {
    if (piv == w.pivots()) return false;
    offset += detail::checked_pow(f.q(), detail::free_positions(piv, m).size());
    return true;
  });
  std::uint64_t local = 0;
  for (auto [r, c] : detail::free_positions(w.pivots(), m)) local = local * f.q() + w.basis()(r, c);
  return offset + local;
}

inline Subspace unrank_subspace(std::uint64_t r, std::size_t m, std::size_t l, const Field& f) {
  if (r >= gaussian_binomial(m, l, f.q())) throw InvalidInput("subspace rank out of range");
  std::optional<Subspace> out;
  detail::for_each_pivot_set(m, l, [&](const std::vector<std::size_t>& piv) {
    const auto free = detail::free_positions(piv, m);
    const std::uint64_t size = detail::checked_pow(f.q(), free.size());
    if (r >= size) {
      r -= size;
      return true;
    }
    std::vector<Elem> values(free.size());
    for (std::size_t i = free.size(); i > 0; --i) {
      values[i - 1] = static_cast<Elem>(r % f.q());
      r /= f.q();
    }
    out = detail::echelon_from(piv, free, values, m);
    return false;
  });
  return *out;
}

/// Flag whose i-th member is spanned by the first a_i rows of `basis`
/// (an invertible m x m matrix).
inline Flag flag_from_basis(const IndexSet& alpha, const Matrix& basis, const Field& f) {
  std::vector<Subspace> subs;
  for (auto a : alpha.elements()) subs.push_back(row_space(basis.top_rows(a), f));
  return Flag(alpha, std::move(subs), f);
}

inline Flag standard_flag(const IndexSet& alpha, const Field& f) {
  return flag_from_basis(alpha, Matrix::identity(alpha.ambient()), f);
}

inline Flag random_flag(const IndexSet& alpha, const Field& f, std::uint64_t seed) {
  Rng rng(seed);
  return flag_from_basis(alpha, rng.invertible(alpha.ambient(), f), f);
}

/// Invertible m x m matrix whose first dim(S_k) rows span S_k for each
/// member of the nested chain (increasing dimensions). Completed with
/// standard basis vectors.
inline Matrix adapted_basis(const std::vector<Subspace>& chain, std::size_t m, const Field& f) {
  Matrix rows(0, m);
  std::size_t current = 0;
  auto try_add = [&](std::span<const Elem> v) {
    Matrix t = rows;
    t.append_row(v);
    if (rank(t, f) > current) {
      rows = std::move(t);
      ++current;
    }
  };
  for (const auto& s : chain) {
    for (std::size_t i = 0; i < s.dim(); ++i) try_add(s.basis().row(i));
    if (current != s.dim()) throw InvalidInput("adapted_basis: chain is not nested");
  }
  const Matrix id = Matrix::identity(m);
  for (std::size_t i = 0; i < m && current < m; ++i) try_add(id.row(i));
  return rows;
}

/// Random basis v_1..v_m with span(v_1..v_{a_i}) = A_i for every member,
/// extending one random vector at a time (deterministic in the seed).
inline Matrix random_adapted_basis(const Flag& flag, const Field& f, std::uint64_t seed) {
  const std::size_t m = flag.ambient_dim();
  Rng rng(seed);
  Matrix rows(0, m);
  std::vector<Elem> v(m);
  auto extend_within = [&](const Subspace& target) {
    while (rows.rows() < target.dim()) {
      std::fill(v.begin(), v.end(), 0);
      for (std::size_t i = 0; i < target.dim(); ++i) {
        const Elem c = rng.element(f);
        if (c == 0) continue;
        for (std::size_t j = 0; j < m; ++j) v[j] = f.add(v[j], f.mul(c, target.basis()(i, j)));
      }
      Matrix t = rows;
      t.append_row(v);
      if (rank(t, f) > rows.rows()) rows = std::move(t);
    }
  };
  for (const auto& a : flag.subspaces()) extend_within(a);
  extend_within(Subspace::full(m));
  return rows;
}

/// The complete flag spanned by the prefixes of random_adapted_basis.
inline CompleteFlag complete_flag_containing(const Flag& flag, const Field& f, std::uint64_t seed) {
  const std::size_t m = flag.ambient_dim();
  const Matrix rows = random_adapted_basis(flag, f, seed);
  std::vector<Subspace> chain;
  for (std::size_t s = 0; s <= m; ++s) chain.push_back(row_space(rows.top_rows(s), f));
  return CompleteFlag(std::move(chain), f);
}

/// A_l^perp < ... < A_1^perp, an (m - alpha)-flag. A zero-dimensional result
/// (from a_l = m) is dropped and recorded via has_zero_member().
inline Flag dual_flag(const Flag& flag, const Field& f) {
  const std::size_t m = flag.ambient_dim();
  std::vector<std::size_t> dims;
  std::vector<Subspace> subs;
  for (std::size_t i = flag.size(); i > 0; --i) {
    const auto& a = flag[i - 1];
    if (a.dim() == m) continue;
    subs.push_back(perp(a, f));
    dims.push_back(m - a.dim());
  }
  if (flag.has_zero_member()) {
    subs.push_back(Subspace::full(m));
    dims.push_back(m);
  }
  const bool zero = !flag.alpha().empty() && flag.alpha().back() == m;
  return Flag(IndexSet(m, std::move(dims)), std::move(subs), f, zero);
}

}  // namespace schubert
