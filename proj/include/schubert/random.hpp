#pragma once

#include <cstdint>
#include <random>

#include "schubert/field.hpp"
#include "schubert/linalg.hpp"

namespace schubert {

// splitmix64 finalizer; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Seeded generator with a platform-independent uniform integer draw
/// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  Elem element(const Field& f) { return static_cast<Elem>(below(f.q())); }

  Matrix matrix(std::size_t rows, std::size_t cols, const Field& f) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (auto& x : m.row(i)) x = element(f);
    return m;
  }

  /// Uniform element of GL_n(F_q) by rejection on rank.
  Matrix invertible(std::size_t n, const Field& f) {
    while (true) {
      Matrix m = matrix(n, n, f);
      if (rank(m, f) == n) return m;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace schubert
