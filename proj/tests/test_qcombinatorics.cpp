#include <gtest/gtest.h>

#include <map>

#include "qgrass/grassmann.hpp"
#include "qgrass/qcombinatorics.hpp"

using namespace qgrass;

namespace {

// Independent Gaussian binomial via the q-Pascal rule
// [m k] = [m-1 k-1] + q^k [m-1 k], in machine integers.
long pascal_qbinom(long m, long k, long q) {
  if (k < 0 || k > m) return 0;
  if (k == 0 || k == m) return 1;
  long qk = 1;
  for (long i = 0; i < k; ++i) qk *= q;
  return pascal_qbinom(m - 1, k - 1, q) + qk * pascal_qbinom(m - 1, k, q);
}

long count_invertible(long q, int n) {
  long cells = 1;
  for (int i = 0; i < n * n; ++i) cells *= q;
  long count = 0;
  std::vector<Entry> m(static_cast<std::size_t>(n) * n);
  for (long code = 0; code < cells; ++code) {
    long x = code;
    for (auto& e : m) {
      e = static_cast<Entry>(x % q);
      x /= q;
    }
    count += ff::rank(m, n, n, q) == static_cast<std::size_t>(n) ? 1 : 0;
  }
  return count;
}

}  // namespace

TEST(QPochhammer, Examples) {
  EXPECT_EQ(q_pochhammer(Rat(5), Rat(3), 0), Rat(1));
  const QContext c(2, 3);
  EXPECT_EQ(q_poch_down(c, 2, 2), Rat(3));         // (1-4)(1-2)
  EXPECT_EQ(q_pochhammer(Rat(2), Rat(2), 3), Rat(-21));  // (1-2)(1-4)(1-8)
}

TEST(QBinomial, Examples) {
  const QContext c(2, 4);
  EXPECT_EQ(q_binomial(7, 0, c), Rat(1));
  EXPECT_EQ(q_binomial(4, 2, c), Rat(35));
  EXPECT_EQ(q_binomial(4, -1, c), Rat(0));
  EXPECT_EQ(q_binomial(4, 5, c), Rat(0));
}

TEST(QBinomial, MatchesPascalRecursion) {
  for (long q : {2L, 3L, 4L, 5L, 7L})
    for (long m = 0; m <= 8; ++m)
      for (long k = -1; k <= m + 1; ++k)
        EXPECT_EQ(q_binomial(m, k, QContext(q, 1)), Rat(pascal_qbinom(m, k, q))) << q << " " << m << " " << k;
}

TEST(QBinomial, MatchesEnumeration) {
  for (long p : {2L, 3L})
    for (int n = 0; n <= 4; ++n)
      for (int r = 0; r <= n; ++r)
        EXPECT_EQ(Rat(static_cast<long>(GrassmannSpace(p, n, r).size())), q_binomial(n, r, QContext(p, n)));
}

TEST(QMultinomial, Examples) {
  const QContext c(2, 3);
  EXPECT_EQ(q_multinomial(3, {1, 0, 1, 1}, c), Rat(21));
  EXPECT_EQ(q_multinomial(3, {3}, c), Rat(1));
  EXPECT_EQ(q_multinomial(3, {1, -1, 2, 1}, c), Rat(0));
  EXPECT_THROW(q_multinomial(3, {1, 1}, c), std::invalid_argument);
}

TEST(QMultinomial, ProductOfBinomials) {
  const QContext c(3, 6);
  // [6; 1,2,3] = [6 1][5 2][3 3]
  EXPECT_EQ(q_multinomial(6, {1, 2, 3}, c), q_binomial(6, 1, c) * q_binomial(5, 2, c));
}

TEST(GlOrder, Examples) {
  EXPECT_EQ(gl_order(QContext(2, 1)), Rat(1));
  EXPECT_EQ(gl_order(QContext(2, 2)), Rat(6));
  EXPECT_EQ(gl_order(QContext(2, 3)), Rat(168));
}

TEST(GlOrder, MatchesEnumeration) {
  EXPECT_EQ(gl_order(QContext(3, 2)), Rat(count_invertible(3, 2)));
  EXPECT_EQ(gl_order(QContext(5, 2)), Rat(count_invertible(5, 2)));
  EXPECT_EQ(gl_order(QContext(2, 4)), Rat(count_invertible(2, 4)));
}

TEST(CountBetween, Examples) {
  const QContext c(2, 4);
  EXPECT_EQ(count_between(2, 2, 3, c), Rat(1));
  EXPECT_EQ(count_between(0, 1, 3, c), Rat(7));
  EXPECT_EQ(count_between(0, 2, 4, c), Rat(35));
}

TEST(CountComplements, Examples) {
  EXPECT_EQ(count_complements(0, QContext(2, 3)), Rat(1));
  EXPECT_EQ(count_complements(1, QContext(2, 2)), Rat(2));
  EXPECT_EQ(count_complements(2, QContext(2, 4)), Rat(16));
}

TEST(CountComplements, MatchesEnumeration) {
  for (auto [p, n] : {std::pair{2L, 4}, std::pair{3L, 3}})
    for (int r = 0; r <= n; ++r) {
      const GrassmannSpace X(p, n, r), Y(p, n, n - r);
      const Rat got = brute_count(Y, [&](const Subspace& z) { return trivially_intersecting(X[0], z); });
      EXPECT_EQ(got, count_complements(r, QContext(p, n))) << p << " " << n << " " << r;
    }
}

TEST(PairsAtDistance, Examples) {
  const QContext c(2, 3);
  EXPECT_EQ(count_pairs_at_distance(1, 1, 0, c), Rat(7));
  EXPECT_EQ(count_pairs_at_distance(1, 1, 1, c), Rat(42));
  EXPECT_EQ(count_pairs_at_distance(1, 1, 2, c), Rat(0));
  EXPECT_EQ(count_pairs_at_distance(1, 2, 0, c), Rat(0));
}

TEST(PairsAtDistance, MatchesEnumeration) {
  const long p = 3;
  const int n = 3;
  const QContext c(p, n);
  for (int r1 = 0; r1 <= n; ++r1)
    for (int r2 = 0; r2 <= n; ++r2) {
      const GrassmannSpace X1(p, n, r1), X2(p, n, r2);
      std::map<int, long> hist;
      for (const auto& x : X1.points())
        for (const auto& y : X2.points()) ++hist[distance(y, x).d_xy];
      for (long t = 0; t <= n; ++t)
        EXPECT_EQ(Rat(hist[static_cast<int>(t)]), count_pairs_at_distance(r1, r2, t, c)) << r1 << r2 << t;
    }
}

TEST(MCount, Examples) {
  const QContext c(2, 4);
  EXPECT_EQ(m_count(4, 2, 1, 0, c), Rat(7));
  EXPECT_EQ(m_count(4, 2, 1, 1, c), Rat(28));
  EXPECT_EQ(m_count(4, 2, 1, 2, c), Rat(0));
}

TEST(MCount, MatchesEnumeration) {
  const long p = 2;
  const int n = 4;
  const QContext c(p, n);
  for (int t = 0; t <= n; ++t) {
    const GrassmannSpace base(p, n, n - t);
    for (int r = 0; r <= n; ++r) {
      const GrassmannSpace X(p, n, r);
      for (int k = 0; k <= n; ++k) {
        const Rat got = brute_count(X, [&](const Subspace& x) { return distance(x, base[0]).d_xy == k; });
        EXPECT_EQ(got, m_count(n, r, t, k, c)) << r << " " << t << " " << k;
      }
    }
  }
}

TEST(IndexSet, Examples) {
  const QContext c3(2, 3), c4(2, 4);
  EXPECT_EQ(index_set(c3, 1, 1).lo, 0);
  EXPECT_EQ(index_set(c3, 1, 1).hi, 1);
  EXPECT_EQ(index_set(c3, 1, 2).lo, 1);
  EXPECT_EQ(index_set(c3, 1, 2).hi, 2);
  EXPECT_EQ(index_set(c4, 2, 2).size(), 3);
  EXPECT_EQ(n_max(c4, 2, 2), 2);
}

TEST(QContext, RejectsSmallQ) {
  EXPECT_THROW(QContext(1, 3), std::invalid_argument);
  EXPECT_NO_THROW(QContext(4, 3));
}
