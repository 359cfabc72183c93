#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "schubert/error.hpp"
#include "schubert/group.hpp"
#include "support.hpp"

using namespace schubert;

namespace {

std::set<oracle::Space> as_set(const std::vector<oracle::Space>& v) { return {v.begin(), v.end()}; }

std::set<oracle::Space> oracle_points(const SchubertVariety& omega, const oracle::Gf& ref) {
  return as_set(oracle::schubert_points(oracle::grassmannian(omega.m(), omega.l(), ref),
                                        support::members_of(omega.flag(), ref), ref.q));
}

std::set<oracle::Space> oracle_image(const SemilinearMap& tau, const SchubertVariety& omega, const oracle::Gf& ref) {
  std::set<oracle::Space> out;
  for (const auto& w : oracle_points(omega, ref)) out.insert(support::image_of(tau, w, ref));
  return out;
}

}  // namespace

TEST(Group, ActionMatchesOracle) {
  for (std::uint32_t q : {2u, 4u, 9u}) {
    const Field f = Field::of_order(q);
    const auto ref = oracle::make_gf(q);
    Rng rng(q);
    for (int t = 0; t < 40; ++t) {
      const SemilinearMap tau = random_semilinear(3, f, rng.below(1000), true);
      const Subspace w = row_space(rng.matrix(1 + rng.below(2), 3, f), f);
      EXPECT_EQ(support::space_of(apply_subspace(tau, w, f), ref), support::image_of(tau, support::space_of(w, ref), ref));
    }
  }
}

TEST(Group, CompositionAndInverse) {
  for (std::uint32_t q : {2u, 4u, 8u, 9u}) {
    const Field f = Field::of_order(q);
    Rng rng(q + 1);
    for (int t = 0; t < 60; ++t) {
      const SemilinearMap a = random_semilinear(4, f, rng.below(1u << 30), true);
      const SemilinearMap b = random_semilinear(4, f, rng.below(1u << 30), true);
      const Subspace w = row_space(rng.matrix(1 + rng.below(3), 4, f), f);
      EXPECT_EQ(apply_subspace(compose(a, b, f), w, f), apply_subspace(a, apply_subspace(b, w, f), f));
      EXPECT_EQ(apply_subspace(inverse(a, f), apply_subspace(a, w, f), f), w);
      EXPECT_EQ(apply_subspace(a, apply_subspace(inverse(a, f), w, f), f), w);
    }
  }
}

TEST(Group, DualMapReversesIntersectionAndSum) {
  const Field f = Field::of_order(3);
  Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    const SemilinearMap tau = random_semilinear(4, f, rng.below(1000), false);
    const SemilinearMap dual(tau.matrix(), tau.frobenius_power(), true, f);
    const Subspace u = row_space(rng.matrix(2, 4, f), f), w = row_space(rng.matrix(2, 4, f), f);
    EXPECT_EQ(apply_subspace(tau, intersect(u, w, f), f), intersect(apply_subspace(tau, u, f), apply_subspace(tau, w, f), f));
    EXPECT_EQ(apply_subspace(dual, intersect(u, w, f), f), sum(apply_subspace(dual, u, f), apply_subspace(dual, w, f), f));
  }
}

TEST(Group, ConstructorValidation) {
  const Field f = Field::of_order(4);
  Matrix singular(2, 2);
  EXPECT_THROW(SemilinearMap(singular, 0, false, f), InvalidInput);
  EXPECT_THROW(SemilinearMap(Matrix(2, 3), 0, false, f), InvalidInput);
  EXPECT_THROW(SemilinearMap(Matrix::identity(2), 2, false, f), InvalidInput);
  EXPECT_NO_THROW(SemilinearMap(Matrix::identity(2), 1, true, f));
}

TEST(Group, CovariantImageDescriptor) {
  const Field f = Field::of_order(4);
  const auto ref = oracle::make_gf(4);
  for (const auto& alpha : all_index_sets(3, 2)) {
    const SchubertVariety omega(f, random_flag(alpha, f, 3));
    const SemilinearMap tau = random_semilinear(3, f, 12, false);
    const SchubertVariety img = image_of_schubert(tau, omega);
    EXPECT_EQ(img.alpha(), alpha);
    EXPECT_EQ(image_points(tau, omega), point_set(img));
    std::set<oracle::Space> lib;
    for (const auto& w : point_set(img)) lib.insert(support::space_of(w, ref));
    EXPECT_EQ(lib, oracle_image(tau, omega, ref));
  }
}

TEST(Group, ContravariantImageDescriptor) {
  const Field f = Field::of_order(2);
  const auto ref = oracle::make_gf(2);
  const SemilinearMap perp_map = SemilinearMap::perp_map(4, f);

  const SchubertVariety a(f, standard_flag(IndexSet(4, {2, 4}), f));
  EXPECT_EQ(image_of_schubert(perp_map, a).alpha().elements(), (std::vector<std::size_t>{2, 4}));
  const SchubertVariety b(f, standard_flag(IndexSet(4, {1, 4}), f));
  EXPECT_EQ(image_of_schubert(perp_map, b).alpha().elements(), (std::vector<std::size_t>{2, 3}));

  for (const auto& alpha : all_index_sets(4, 2))
    for (std::uint64_t s = 0; s < 5; ++s) {
      const SchubertVariety omega(f, random_flag(alpha, f, s));
      const SemilinearMap tau(random_semilinear(4, f, s + 50, false).matrix(), 0, true, f);
      const SchubertVariety img = image_of_schubert(tau, omega);
      EXPECT_EQ(img.alpha(), dual_index_set(alpha));
      std::set<oracle::Space> lib;
      for (const auto& w : point_set(img)) lib.insert(support::space_of(w, ref));
      EXPECT_EQ(lib, oracle_image(tau, omega, ref)) << alpha.to_string();
    }
}

TEST(Group, ContravariantNeedsHalfDimension) {
  const Field f = Field::of_order(2);
  const SchubertVariety omega(f, standard_flag(IndexSet(5, {1, 4}), f));
  EXPECT_THROW(image_of_schubert(SemilinearMap::perp_map(5, f), omega), InvalidInput);
  EXPECT_THROW(is_automorphism_fast(SemilinearMap::perp_map(5, f), omega), InvalidInput);
  EXPECT_THROW(is_automorphism_fast(SemilinearMap::identity(4, f), omega), InvalidInput);
}

TEST(Group, FastCriterionMatchesOracle) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const Field f = Field::of_order(q);
    Rng rng(q * 7);
    for (const auto& alpha : all_index_sets(4, 2))
      for (int t = 0; t < 15; ++t) {
        const SchubertVariety omega(f, random_flag(alpha, f, rng.below(1000)));
        std::vector<Subspace> nc;
        for (auto d : omega.nc().elements()) nc.push_back(omega.member(d));
        const SemilinearMap stab = SemilinearMap::matrix_map(random_stabilizing_matrix(nc, 4, f, rng), f);
        const SemilinearMap rand = random_semilinear(4, f, rng.below(1000), true);
        for (const auto& tau : {stab, rand}) EXPECT_EQ(is_automorphism_fast(tau, omega), is_automorphism_oracle(tau, omega));
        EXPECT_TRUE(is_automorphism_fast(stab, omega));
      }
  }
}

TEST(Group, NonSelfDualIndexSetHasNoContravariantAutomorphism) {
  const Field f = Field::of_order(2);
  const SchubertVariety omega(f, standard_flag(IndexSet(4, {1, 4}), f));
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const SemilinearMap tau(rng.invertible(4, f), 0, true, f);
    EXPECT_FALSE(is_automorphism_fast(tau, omega));
    EXPECT_FALSE(is_automorphism_oracle(tau, omega));
  }
  EXPECT_THROW(random_dual_automorphism(omega, rng), InvalidInput);
}

TEST(Group, PerpFixesVarietyWithSelfPerpendicularPlane) {
  // search for A_2 with A_2 = A_2^perp; then sigma_perp preserves Omega_(2,4)
  const Field f = Field::of_order(2);
  const IndexSet alpha(4, {2, 4});
  const SemilinearMap perp_map = SemilinearMap::perp_map(4, f);
  std::size_t found = 0;
  for (const auto& a2 : enumerate_grassmannian(4, 2, f)) {
    const SchubertVariety omega(f, Flag(alpha, {a2, Subspace::full(4)}, f));
    const bool fast = is_automorphism_fast(perp_map, omega);
    EXPECT_EQ(fast, is_automorphism_oracle(perp_map, omega));
    EXPECT_EQ(fast, perp(a2, f) == a2);
    found += fast;
  }
  EXPECT_GT(found, 0u);
}

TEST(Group, RandomDualAutomorphismsAreAutomorphisms) {
  for (std::uint32_t q : {2u, 3u}) {
    const Field f = Field::of_order(q);
    Rng rng(q);
    for (const auto& alpha : all_index_sets(4, 2)) {
      if (dual_index_set(alpha) != alpha) continue;
      for (int t = 0; t < 10; ++t) {
        const SchubertVariety omega(f, random_flag(alpha, f, rng.below(1000)));
        const SemilinearMap tau = random_dual_automorphism(omega, rng);
        EXPECT_TRUE(tau.dual());
        EXPECT_TRUE(is_automorphism_oracle(tau, omega)) << alpha.to_string();
        EXPECT_TRUE(is_automorphism_fast(tau, omega));
      }
    }
  }
}

TEST(Group, GeneralLinearOrder) {
  EXPECT_EQ(general_linear_order(3, 2), 168u);
  EXPECT_EQ(general_linear_order(4, 2), 20160u);
  EXPECT_EQ(general_linear_order(2, 3), 48u);
  EXPECT_FALSE(general_linear_order(20, 256).has_value());
  const Field f = Field::of_order(2);
  std::uint64_t n = 0;
  std::set<Matrix> seen;
  for_each_invertible(3, f, [&](const Matrix& m) {
    ++n;
    seen.insert(m);
    return true;
  });
  EXPECT_EQ(n, 168u);
  EXPECT_EQ(seen.size(), 168u);
}

TEST(Group, StabilizerOfLineInGl4F2) {
  // brute force over all 2^16 matrices with the vector-set oracle
  const auto ref = oracle::make_gf(2);
  const oracle::Space line = oracle::span({{1, 0, 0, 0}}, 4, ref);
  std::uint64_t count = 0;
  for (std::uint32_t code = 0; code < (1u << 16); ++code) {
    std::vector<oracle::Row> rows(4, oracle::Row(4));
    for (std::size_t i = 0; i < 16; ++i) rows[i / 4][i % 4] = (code >> i) & 1u;
    if (oracle::span(rows, 4, ref).size() != 16) continue;
    if (oracle::image(line, rows, 0, 4, ref) == line) ++count;
  }
  EXPECT_EQ(count, 1344u);

  const Field f = Field::of_order(2);
  const SchubertVariety omega(f, standard_flag(IndexSet(4, {1, 4}), f));
  std::uint64_t fast = 0;
  for_each_invertible(4, f, [&](const Matrix& m) {
    fast += is_automorphism_fast(SemilinearMap::matrix_map(m, f), omega);
    return true;
  });
  EXPECT_EQ(fast, 1344u);
}

TEST(Group, ChowWarning) {
  EXPECT_FALSE(chow_warning(2, 4).has_value());
  EXPECT_FALSE(chow_warning(3, 6).has_value());
  EXPECT_TRUE(chow_warning(1, 4).has_value());
  EXPECT_TRUE(chow_warning(3, 4).has_value());
  EXPECT_TRUE(chow_warning(2, 3).has_value());
}

TEST(Group, MutationsChangeTheCriterion) {
  const Field f = Field::of_order(2);
  // alpha = (1,2,4): A_1 is redundant; a map moving only A_1 is still an automorphism
  const SchubertVariety omega(f, standard_flag(IndexSet(4, {1, 2, 4}), f));
  const Matrix swap = Matrix::from_rows({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 4);
  const SemilinearMap tau = SemilinearMap::matrix_map(swap, f);
  EXPECT_TRUE(is_automorphism_oracle(tau, omega));
  EXPECT_TRUE(is_automorphism_fast(tau, omega));
  CriterionOptions bad;
  bad.mutation = Mutation::alpha_for_nc;
  EXPECT_FALSE(is_automorphism_fast(tau, omega, bad));
}
