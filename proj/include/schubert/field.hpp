#pragma once

// Exact arithmetic in F_{p^e}.
//
// Elements are integers in [0, q) whose base-p digits are the polynomial
// coefficients (little-endian: digit i is the coefficient of x^i). The
// modulus is the lexicographically smallest monic irreducible polynomial of
// degree e, comparing coefficient sequences from the constant term upwards.

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "schubert/error.hpp"

namespace schubert {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 20;

// Fields up to this size get full addition/multiplication tables.
inline constexpr std::uint32_t kTableBound = 256;

/// A Frobenius power x -> x^{p^k}, 0 <= k < e.
struct FieldAutomorphism {
  std::uint32_t k = 0;

  friend bool operator==(const FieldAutomorphism&, const FieldAutomorphism&) = default;
};

namespace detail {

using Poly = std::vector<std::uint32_t>;  // little-endian coefficients

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over F_p.
inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = lead * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    Poly g(d + 1, 0);
    g[d] = 1;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < d; ++i) combos *= p;
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::uint64_t v = c;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Lexicographically smallest monic irreducible of degree e, comparing
// (c_0, c_1, ..., c_{e-1}) with c_0 most significant.
inline Poly smallest_irreducible(std::uint32_t p, std::uint32_t e) {
  Poly f(e + 1, 0);
  f[e] = 1;
  while (true) {
    if (is_irreducible(f, p)) return f;
    // odometer with c_{e-1} fastest
    std::size_t i = e;
    while (i > 0) {
      --i;
      if (++f[i] < p) break;
      f[i] = 0;
      if (i == 0) throw std::logic_error("no irreducible polynomial found");
    }
  }
}

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint32_t q = 0;
  Poly modulus;
  std::vector<std::uint32_t> pow_p;  // p^i for i <= e
  std::vector<Elem> add_table;
  std::vector<Elem> mul_table;
  std::vector<Elem> neg_table;
  std::vector<Elem> inv_table;

  Elem digit(Elem a, std::uint32_t i) const { return (a / pow_p[i]) % p; }

  Elem add_slow(Elem a, Elem b) const {
    if (e == 1) return (a + b) % p;
    Elem r = 0;
    for (std::uint32_t i = 0; i < e; ++i) r += ((digit(a, i) + digit(b, i)) % p) * pow_p[i];
    return r;
  }

  Elem neg_slow(Elem a) const {
    if (e == 1) return (p - a) % p;
    Elem r = 0;
    for (std::uint32_t i = 0; i < e; ++i) r += ((p - digit(a, i)) % p) * pow_p[i];
    return r;
  }

  Elem mul_slow(Elem a, Elem b) const {
    if (e == 1) return static_cast<Elem>(std::uint64_t{a} * b % p);
    Poly prod(2 * e - 1, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      const std::uint64_t ai = digit(a, i);
      if (ai == 0) continue;
      for (std::uint32_t j = 0; j < e; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + ai * digit(b, j)) % p);
    }
    const Poly r = poly_mod(std::move(prod), modulus, p);
    Elem out = 0;
    for (std::size_t i = 0; i < r.size(); ++i) out += r[i] * pow_p[i];
    return out;
  }
};

}  // namespace detail

/// Handle to an immutable finite field F_{p^e}. Cheap to copy, safe to share
/// between threads.
class Field {
 public:
  static Field make(std::uint32_t p, std::uint32_t e, std::uint64_t bound = kDefaultFieldBound) {
    if (!detail::is_prime(p)) throw InvalidInput("field characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw InvalidInput("field degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      q *= p;
      if (q > bound) throw InvalidInput("field size p^e exceeds bound " + std::to_string(bound));
    }

    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->e = e;
    d->q = static_cast<std::uint32_t>(q);
    d->pow_p.resize(e + 1);
    d->pow_p[0] = 1;
    for (std::uint32_t i = 1; i <= e; ++i) d->pow_p[i] = d->pow_p[i - 1] * p;
    d->modulus = e == 1 ? detail::Poly{0, 1} : detail::smallest_irreducible(p, e);

    if (e > 1 && q <= kTableBound) {
      d->add_table.resize(q * q);
      d->mul_table.resize(q * q);
      for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b) {
          d->add_table[a * q + b] = d->add_slow(a, b);
          d->mul_table[a * q + b] = d->mul_slow(a, b);
        }
      d->neg_table.resize(q);
      for (Elem a = 0; a < q; ++a) d->neg_table[a] = d->neg_slow(a);
    }
    Field f(d);
    if (q <= (1u << 16)) {
      std::vector<Elem> inv(q, 0);
      for (Elem a = 1; a < q; ++a) inv[a] = f.pow(a, q - 2);
      d->inv_table = std::move(inv);
    }
    return f;
  }

  /// Field with q elements; q must be a prime power.
  static Field of_order(std::uint64_t q, std::uint64_t bound = kDefaultFieldBound) {
    if (q < 2) throw InvalidInput("field order must be a prime power >= 2");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) throw InvalidInput("field order " + std::to_string(q) + " is not a prime power");
    return make(static_cast<std::uint32_t>(p), e, bound);
  }

  std::uint32_t p() const { return data_->p; }
  std::uint32_t e() const { return data_->e; }
  std::uint32_t q() const { return data_->q; }
  /// Monic modulus, little-endian, length e + 1. Prime fields report x.
  const std::vector<std::uint32_t>& modulus() const { return data_->modulus; }

  bool contains(Elem a) const { return a < data_->q; }

  Elem add(Elem a, Elem b) const {
    const auto& d = *data_;
    if (d.e == 1) {
      const Elem s = a + b;
      return s >= d.p ? s - d.p : s;
    }
    if (!d.add_table.empty()) return d.add_table[a * d.q + b];
    return d.add_slow(a, b);
  }

  Elem neg(Elem a) const {
    const auto& d = *data_;
    if (d.e == 1) return a == 0 ? 0 : d.p - a;
    if (!d.neg_table.empty()) return d.neg_table[a];
    return d.neg_slow(a);
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    const auto& d = *data_;
    if (d.e == 1) return static_cast<Elem>(std::uint64_t{a} * b % d.p);
    if (!d.mul_table.empty()) return d.mul_table[a * d.q + b];
    return d.mul_slow(a, b);
  }

  Elem pow(Elem a, std::uint64_t n) const {
    Elem result = 1;
    while (n > 0) {
      if (n & 1) result = mul(result, a);
      a = mul(a, a);
      n >>= 1;
    }
    return result;
  }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(q()));
    if (!data_->inv_table.empty()) return data_->inv_table[a];
    return pow(a, q() - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// a^{p^k}
  Elem frobenius(Elem a, std::uint32_t k) const {
    if (k >= e()) throw InvalidInput("Frobenius power " + std::to_string(k) + " out of range");
    for (std::uint32_t i = 0; i < k; ++i) a = pow(a, p());
    return a;
  }

  /// The Galois group of F_q over F_p as powers of Frobenius, k = 0..e-1.
  std::vector<FieldAutomorphism> automorphisms() const {
    std::vector<FieldAutomorphism> out;
    for (std::uint32_t k = 0; k < e(); ++k) out.push_back({k});
    return out;
  }

  FieldAutomorphism compose(FieldAutomorphism a, FieldAutomorphism b) const { return {(a.k + b.k) % e()}; }
  FieldAutomorphism inverse(FieldAutomorphism a) const { return {(e() - a.k) % e()}; }

  friend bool operator==(const Field& a, const Field& b) {
    return a.data_ == b.data_ || (a.p() == b.p() && a.e() == b.e());
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}

  std::shared_ptr<const detail::FieldData> data_;
};

}  // namespace schubert
