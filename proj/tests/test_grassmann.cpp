#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "schubert/error.hpp"
#include "schubert/grassmann.hpp"
#include "support.hpp"

using namespace schubert;

TEST(Grassmann, GaussianBinomialSmallValues) {
  EXPECT_EQ(gaussian_binomial(4, 2, 2), 35u);
  EXPECT_EQ(gaussian_binomial(4, 2, 3), 130u);
  EXPECT_EQ(gaussian_binomial(6, 3, 2), 1395u);
  EXPECT_EQ(gaussian_binomial(5, 2, 2), 155u);
  EXPECT_EQ(gaussian_binomial(5, 0, 7), 1u);
  EXPECT_EQ(gaussian_binomial(5, 5, 7), 1u);
  EXPECT_EQ(gaussian_binomial(3, 1, 4), 21u);
  EXPECT_THROW(gaussian_binomial(2, 3, 2), InvalidInput);
  EXPECT_THROW(gaussian_binomial(80, 40, 1024), BudgetExceeded);
}

TEST(Grassmann, EnumerationMatchesAllGeneratingMatrices) {
  struct Case {
    std::size_t m, l;
    std::uint32_t q;
  };
  for (const auto& c : {Case{4, 2, 2}, Case{4, 2, 3}, Case{6, 3, 2}, Case{5, 2, 2}, Case{3, 1, 4}, Case{3, 2, 5},
                        Case{4, 1, 2}, Case{4, 4, 2}, Case{4, 0, 3}}) {
    const Field f = Field::of_order(c.q);
    const auto ref = oracle::make_gf(c.q);
    const auto expected = oracle::grassmannian(c.m, c.l, ref);
    const auto pts = enumerate_grassmannian(c.m, c.l, f);
    ASSERT_EQ(pts.size(), expected.size()) << c.m << " " << c.l << " " << c.q;
    EXPECT_EQ(pts.size(), gaussian_binomial(c.m, c.l, c.q));
    std::set<oracle::Space> got;
    for (const auto& w : pts) got.insert(support::space_of(w, ref));
    EXPECT_EQ(got, std::set<oracle::Space>(expected.begin(), expected.end()));
  }
}

TEST(Grassmann, EnumerationOrderAndRanking) {
  for (std::uint32_t q : {2u, 3u}) {
    const Field f = Field::of_order(q);
    const auto pts = enumerate_grassmannian(5, 2, f);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EXPECT_EQ(rank_subspace(pts[i], f), i);
      EXPECT_EQ(unrank_subspace(i, 5, 2, f), pts[i]);
      if (i > 0) {
        EXPECT_LE(pts[i - 1].pivots(), pts[i].pivots());
      }
    }
    EXPECT_THROW(unrank_subspace(pts.size(), 5, 2, f), InvalidInput);
  }
  // first point is the standard coordinate plane, last is the one with the latest pivots
  const Field f = Field::of_order(2);
  const auto pts = enumerate_grassmannian(4, 2, f);
  EXPECT_EQ(pts.front().basis(), Matrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4));
  EXPECT_EQ(pts.back().basis(), Matrix::from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}}, 4));
}

TEST(Grassmann, EnumerationBudget) {
  const Field f = Field::of_order(2);
  EXPECT_THROW(enumerate_grassmannian(6, 3, f, 1000), BudgetExceeded);
  EXPECT_NO_THROW(enumerate_grassmannian(6, 3, f, 1395));
  int seen = 0;
  for_each_subspace(6, 3, f, [&](const Subspace&) { return ++seen < 10; });
  EXPECT_EQ(seen, 10);
}

TEST(Grassmann, IndexSets) {
  EXPECT_THROW(IndexSet(4, {0, 2}), InvalidInput);
  EXPECT_THROW(IndexSet(4, {2, 5}), InvalidInput);
  EXPECT_THROW(IndexSet(4, {3, 2}), InvalidInput);
  EXPECT_THROW(IndexSet(4, {2, 2}), InvalidInput);
  const auto all = all_index_sets(4, 2);
  ASSERT_EQ(all.size(), 6u);
  EXPECT_EQ(all.front().elements(), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(all.back().elements(), (std::vector<std::size_t>{3, 4}));
  EXPECT_EQ(all_index_sets(6, 3).size(), 20u);
  EXPECT_EQ(IndexSet(4, {1, 4}).to_string(), "(1,4)");
}

TEST(Grassmann, Flags) {
  const Field f = Field::of_order(3);
  const IndexSet alpha(5, {1, 3, 4});
  const Flag std_flag = standard_flag(alpha, f);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    EXPECT_EQ(std_flag[i].dim(), alpha[i]);
    EXPECT_EQ(std_flag[i].pivots().back(), alpha[i] - 1);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Flag a = random_flag(alpha, f, seed);
    EXPECT_EQ(a, random_flag(alpha, f, seed));
    for (std::size_t i = 1; i < a.size(); ++i) EXPECT_TRUE(contains(a[i], a[i - 1], f));
    const CompleteFlag c = complete_flag_containing(a, f, seed);
    EXPECT_TRUE(c.contains_flag(a));
    const Matrix basis = random_adapted_basis(a, f, seed);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(row_space(basis.top_rows(alpha[i]), f), a[i]);
  }
  EXPECT_THROW(Flag(alpha, {std_flag[0], std_flag[1]}, f), InvalidInput);
  EXPECT_THROW(Flag(alpha, {std_flag[1], std_flag[0], std_flag[2]}, f), InvalidInput);
  const Subspace other = row_space(Matrix::from_rows({{0, 0, 0, 0, 1}}, 5), f);
  EXPECT_THROW(Flag(IndexSet(5, {1, 3}), {other, std_flag[1]}, f), InvalidInput);
}

TEST(Grassmann, AdaptedBasisSpansChain) {
  const Field f = Field::of_order(2);
  const Flag a = random_flag(IndexSet(6, {2, 3, 5}), f, 4);
  const Matrix b = adapted_basis(a.subspaces(), 6, f);
  EXPECT_EQ(rank(b, f), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(row_space(b.top_rows(a[i].dim()), f), a[i]);
}

TEST(Grassmann, DualFlag) {
  const Field f = Field::of_order(2);
  const Flag a = random_flag(IndexSet(4, {1, 3}), f, 1);
  const Flag d = dual_flag(a, f);
  EXPECT_EQ(d.alpha().elements(), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(d[0], perp(a[1], f));
  EXPECT_EQ(d[1], perp(a[0], f));
  EXPECT_EQ(dual_flag(d, f), a);

  // a member equal to F^m dualises to the zero space, which is recorded, not stored
  const Flag b = random_flag(IndexSet(4, {2, 4}), f, 2);
  const Flag db = dual_flag(b, f);
  EXPECT_TRUE(db.has_zero_member());
  EXPECT_EQ(db.alpha().elements(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(dual_flag(db, f), b);
}
