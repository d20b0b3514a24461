#include <gtest/gtest.h>

#include <random>

#include "dtorus/spectrum.hpp"
#include "oracle.hpp"

using namespace dtorus;

namespace {

CycElt value_key(int n, std::int64_t c) { return constant(context(n), c); }

/// Same keys with the same counts.
void expect_same_table(const SpectrumTable& a, const SpectrumTable& b) {
  ASSERT_EQ(a.size(), b.size());
  for (const auto& [k, e] : a.entries) {
    ASSERT_EQ(b.count_of(k), e.count) << k.str();
  }
}

void check_representatives(const SpectrumTable& t) {
  const auto& ctx = context(t.modulus);
  for (const auto& [k, e] : t.entries) {
    ASSERT_EQ(static_cast<int>(e.representative.size()), t.dim);
    ASSERT_EQ(tuple_key(ctx, e.representative), k);
  }
}

}  // namespace

TEST(Spectrum, CnExamples) {
  const auto c3 = cn_spectrum(3);
  EXPECT_EQ(c3.size(), 2u);
  EXPECT_EQ(c3.count_of(value_key(3, 2)), 1);
  EXPECT_EQ(c3.count_of(value_key(3, -1)), 2);

  const auto c4 = cn_spectrum(4);
  EXPECT_EQ(c4.size(), 3u);
  EXPECT_EQ(c4.count_of(value_key(4, 2)), 1);
  EXPECT_EQ(c4.count_of(value_key(4, 0)), 2);
  EXPECT_EQ(c4.count_of(value_key(4, -2)), 1);

  const auto c5 = cn_spectrum(5);
  const auto& ctx = context(5);
  EXPECT_EQ(c5.size(), 3u);
  EXPECT_EQ(c5.count_of(value_key(5, 2)), 1);
  EXPECT_EQ(c5.count_of(cos_key(ctx, 1)), 2);
  EXPECT_EQ(c5.count_of(cos_key(ctx, 2)), 2);
  EXPECT_NEAR(c5.find(cos_key(ctx, 1))->approx, 2 * std::cos(2 * M_PI / 5), 1e-12);
}

TEST(Spectrum, ConvolveExamples) {
  const auto t4 = convolve(cn_spectrum(4), cn_spectrum(4), kDefaultBudget);
  EXPECT_EQ(t4.count_of(value_key(4, 0)), 6);

  const auto c7 = cn_spectrum(7);
  expect_same_table(convolve(c7, point_mass(7), kDefaultBudget), c7);

  const auto t3 = convolve(cn_spectrum(3), cn_spectrum(3), kDefaultBudget);
  EXPECT_EQ(t3.size(), 3u);
  EXPECT_EQ(t3.count_of(value_key(3, 4)), 1);
  EXPECT_EQ(t3.count_of(value_key(3, 1)), 4);
  EXPECT_EQ(t3.count_of(value_key(3, -2)), 4);
}

TEST(Spectrum, ConvolveBudget) {
  EXPECT_THROW(convolve(cn_spectrum(60), cn_spectrum(60), 100), BudgetExceeded);
  EXPECT_THROW(torus_spectrum(60, 3, 1000), BudgetExceeded);
}

TEST(Spectrum, TorusExamples) {
  EXPECT_EQ(torus_spectrum(12, 2).count_of(value_key(12, 1)), 12);
  EXPECT_EQ(torus_spectrum(60, 2).count_of(value_key(60, 0)), 118);
  for (int n : {3, 8, 13}) expect_same_table(torus_spectrum(n, 1), cn_spectrum(n));
}

TEST(Spectrum, T3OfThree) {
  const auto t = torus_spectrum(3, 3);
  EXPECT_EQ(t.size(), 4u);
  EXPECT_EQ(t.count_of(value_key(3, 6)), 1);
  EXPECT_EQ(t.count_of(value_key(3, 3)), 6);
  EXPECT_EQ(t.count_of(value_key(3, 0)), 12);
  EXPECT_EQ(t.count_of(value_key(3, -3)), 8);
}

TEST(Spectrum, MultiplicityExamples) {
  EXPECT_EQ(multiplicity_of_tuple(60, 2, {24, 10}), 24);
  EXPECT_EQ(multiplicity_of_tuple(12, 2, {0, 6}), 22);
  EXPECT_EQ(multiplicity_of_tuple(5, 2, {0, 0}), 1);
  EXPECT_EQ(multiplicity_of_tuple(12, 2, {1, 2}), 8);
  EXPECT_EQ(multiplicity_of_tuple(12, 3, {0, 6, 1}), 108);
  EXPECT_THROW(multiplicity_of_tuple(12, 2, {0, 12}), PreconditionViolated);
  EXPECT_THROW(multiplicity_of_tuple(12, 2, {1}), PreconditionViolated);
}

TEST(Spectrum, MembershipExamples) {
  EXPECT_FALSE(membership(10, 1, zero_elt(context(10))));
  EXPECT_TRUE(membership(12, 1, zero_elt(context(12))));
  EXPECT_TRUE(membership(6, 1, value_key(6, 1)));
  EXPECT_TRUE(membership(7, 0, zero_elt(context(7))));
  EXPECT_FALSE(membership(7, 0, value_key(7, 1)));
}

TEST(Spectrum, OracleEquivalence) {
  for (int d = 1; d <= 3; ++d) {
    const int nmax = d == 3 ? 40 : 60;
    for (int n = 3; n <= nmax; ++n) {
      const auto table = torus_spectrum(n, d);
      const auto brute = oracle::enumerate(n, d);
      ASSERT_EQ(table.size(), brute.size()) << n << " " << d;
      for (const auto& [k, c] : brute) ASSERT_EQ(table.count_of(k), c) << n << " " << d;
      ASSERT_EQ(table.total_count(), detail::ipow(n, d));
      check_representatives(table);
    }
  }
}

TEST(Spectrum, FloatOracleSpotChecks) {
  // Float enumeration shares no code with the cyclotomic keys.
  std::mt19937 rng(17);
  for (int i = 0; i < 60; ++i) {
    const int n = std::uniform_int_distribution<int>(3, 24)(rng);
    const int d = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<int> t(static_cast<std::size_t>(d));
    for (auto& k : t) k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    ASSERT_EQ(multiplicity_of_tuple(n, d, t), oracle::float_multiplicity(n, t));
  }
}

TEST(Spectrum, RepresentativesAreLexSmallest) {
  const int n = 10, d = 2;
  const auto table = torus_spectrum(n, d);
  const auto& ctx = context(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const std::vector<int> t{a, b};
      const auto& rep = table.find(tuple_key(ctx, t))->representative;
      ASSERT_LE(rep, t);
    }
  }
}

TEST(Spectrum, EvenAntisymmetry) {
  for (int n = 4; n <= 60; n += 2) {
    const auto t = torus_spectrum(n, 2);
    for (const auto& [k, e] : t.entries) ASSERT_EQ(t.count_of(-k), e.count) << n;
  }
}

TEST(Spectrum, PermutationAndReflectionInvariance) {
  std::mt19937 rng(5);
  for (int i = 0; i < 80; ++i) {
    const int n = std::uniform_int_distribution<int>(3, 30)(rng);
    std::vector<int> t(3);
    for (auto& k : t) k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    TorusTower tower(n);
    const auto& ctx = context(n);
    const auto m = tower.multiplicity(tuple_key(ctx, t), 3);
    auto p = t;
    std::shuffle(p.begin(), p.end(), rng);
    ASSERT_EQ(tower.multiplicity(tuple_key(ctx, p), 3), m);
    p[1] = (n - p[1]) % n;
    ASSERT_EQ(tower.multiplicity(tuple_key(ctx, p), 3), m);
  }
}

TEST(Spectrum, MeetInTheMiddleMatchesFullTable) {
  TorusTower tower(15);
  const auto& t4 = tower.level(4);
  for (const auto& [k, e] : t4.entries) ASSERT_EQ(tower.multiplicity(k, 4), e.count);
  EXPECT_EQ(tower.multiplicity(constant(context(15), 100), 4), 0);
}

TEST(Spectrum, CayleyExamples) {
  expect_same_table(cayley_spectrum({5, 1, {{1}, {4}}}), cn_spectrum(5));
  const auto c6 = cayley_spectrum({6, 1, {{1}, {5}, {4}, {2}}});
  EXPECT_EQ(c6.count_of(zero_elt(context(6))), 3);
  EXPECT_THROW(cayley_spectrum({6, 1, {{1}, {4}}}), AsymmetricGeneratingSet);
}

TEST(Spectrum, CayleyMatchesTorus) {
  for (int n = 3; n <= 20; ++n) {
    expect_same_table(cayley_spectrum({n, 1, {{1}, {n - 1}}}), torus_spectrum(n, 1));
    const auto c = cayley_spectrum({n, 2, {{1, 0}, {n - 1, 0}, {0, 1}, {0, n - 1}}});
    expect_same_table(c, torus_spectrum(n, 2));
    check_representatives(c);
  }
}

TEST(Spectrum, LaplacianView) {
  const auto t = torus_spectrum(4, 2);
  const auto lap = laplacian_view(t, 4);
  const auto& ctx = context(4);
  EXPECT_EQ(lap.total_count(), 16);
  const std::vector<int> t10{1, 0};
  const auto lambda = constant_minus(ctx, 4, tuple_key(ctx, t10));
  EXPECT_EQ(lambda, constant(ctx, 2));
  EXPECT_EQ(lap.count_of(zero_elt(ctx)), 1);
  for (int n : {5, 12}) {
    EXPECT_EQ(laplacian_view(torus_spectrum(n, 3), 6).count_of(zero_elt(context(n))), 1);
  }
}

TEST(Spectrum, SortedRowsDescending) {
  const auto t = torus_spectrum(60, 2);
  const auto rows = sorted_rows(t);
  ASSERT_EQ(rows.size(), t.size());
  EXPECT_EQ(*rows.front().key, constant(context(60), 4));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_GE(rows[i - 1].value.real, rows[i].value.real);
    // Distinct keys are never merged, and separated values are certified.
    ASSERT_GT(rows[i - 1].value.real - rows[i - 1].value.radius, rows[i].value.real + rows[i].value.radius);
  }
}
