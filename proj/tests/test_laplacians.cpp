#include <gtest/gtest.h>

#include "qgrass/laplacians.hpp"
#include "qgrass/qhahn.hpp"

using namespace qgrass;

namespace {

// Neighbor-sum minus valence, assembled from pairwise distances.
Mat brute_laplacian(const GrassmannSpace& X) {
  const std::size_t m = X.size();
  Mat L(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    long deg = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (distance(X[i], X[j]).d_xy == 1) {
        L(i, j) = Rat(1);
        ++deg;
      }
    L(i, i) = Rat(-deg);
  }
  return L;
}

}  // namespace

TEST(Valence, Examples) {
  EXPECT_EQ(valence(0, QContext(2, 3)), Rat(0));
  EXPECT_EQ(valence(1, QContext(2, 3)), Rat(6));
  EXPECT_EQ(valence(2, QContext(2, 4)), Rat(18));
}

TEST(Valence, MatchesNeighborCounts) {
  for (auto [p, n] : {std::pair{2L, 4}, std::pair{3L, 3}, std::pair{2L, 5}})
    for (int r = 0; r <= n; ++r) {
      const GrassmannSpace X(p, n, r);
      EXPECT_EQ(Rat(static_cast<long>(sphere_neighbors(X, 0).size())), valence(r, QContext(p, n)));
    }
}

TEST(GraphLaplacian, Examples) {
  const Mat L0 = graph_laplacian(GrassmannSpace(2, 3, 0));
  EXPECT_EQ(L0, Mat(1, 1));
  const Mat L1 = graph_laplacian(GrassmannSpace(2, 3, 1));
  EXPECT_EQ(L1, Mat::constant(7, 7, Rat(1)) - Mat::identity(7) * Rat(7));
  const Mat L2 = graph_laplacian(GrassmannSpace(3, 3, 2));
  for (std::size_t i = 0; i < L2.rows(); ++i) {
    Rat sum(0);
    for (const auto& v : L2.row(i)) sum += v;
    EXPECT_TRUE(sum.is_zero());
  }
}

TEST(GraphLaplacian, MatchesBruteForce) {
  for (auto [p, n, r] : {std::tuple{2L, 4, 2}, std::tuple{3L, 3, 1}, std::tuple{2L, 5, 2}}) {
    const GrassmannSpace X(p, n, r);
    EXPECT_EQ(graph_laplacian(X), brute_laplacian(X));
  }
}

TEST(GroupLaplacian, Examples) {
  const GrassmannSpace X1(2, 3, 1);
  EXPECT_EQ(group_laplacian(X1, transvection_set(2, 3)), graph_laplacian(X1) * Rat(2));
  const GrassmannSpace X2(2, 4, 2);
  EXPECT_EQ(group_laplacian(X2, transvection_set(2, 4)), graph_laplacian(X2) * Rat(4));
}

TEST(GroupLaplacian, RowSumsVanish) {
  const GrassmannSpace X(3, 3, 1);
  const Mat L = group_laplacian(X, transvection_set(3, 3));
  for (std::size_t i = 0; i < L.rows(); ++i) {
    Rat sum(0);
    for (const auto& v : L.row(i)) sum += v;
    EXPECT_TRUE(sum.is_zero());
  }
}

TEST(GammaFactors, Examples) {
  const auto g = gamma_factors(QContext(2, 3), 1);
  EXPECT_EQ(g.gamma0, Rat(9));
  EXPECT_EQ(g.gamma1, Rat(2));
  EXPECT_EQ(gamma_factors(QContext(2, 4), 2).gamma1, Rat(4));
}

TEST(GammaFactors, FixersMatchExhaustiveAction) {
  for (auto [p, n] : {std::pair{2L, 3}, std::pair{2L, 4}, std::pair{3L, 3}}) {
    const QContext c(p, n);
    const auto T = transvection_set(p, n);
    EXPECT_EQ(Rat(static_cast<long>(T.size())), transvection_count(c));
    for (int r = 0; r <= n; ++r) {
      const GrassmannSpace X(p, n, r);
      const auto nb = sphere_neighbors(X, 0);
      long fix = 0, onto_neighbor = 0;
      for (const auto& g : T) {
        const Subspace y = act(g, X[0]);
        fix += y == X[0] ? 1 : 0;
        onto_neighbor += !nb.empty() && y == X[nb[0]] ? 1 : 0;
      }
      const auto gf = gamma_factors(c, r);
      EXPECT_EQ(Rat(fix), gf.gamma0) << p << n << r;
      EXPECT_EQ(gf.gamma0 + valence(r, c) * gf.gamma1, transvection_count(c));
      if (!nb.empty()) EXPECT_EQ(Rat(onto_neighbor), gf.gamma1) << p << n << r;
    }
  }
}

TEST(BcCoefficients, Examples) {
  const QContext c(2, 4);
  EXPECT_EQ(bc_b(c, 2, 2, 0), Rat(18));
  EXPECT_EQ(bc_c(c, 2, 2, 0), Rat(0));
  EXPECT_EQ(bc_c(c, 2, 2, 1), Rat(1));
}

TEST(BcCoefficients, MatchNeighborCounts) {
  // x1 fixed; for each x2 at distance t, count neighbors y of x2 one step
  // farther from / closer to x1.
  for (auto [p, n] : {std::pair{2L, 4}, std::pair{3L, 3}}) {
    const QContext c(p, n);
    for (int r1 = 0; r1 <= n; ++r1)
      for (int r2 = 0; r2 <= n; ++r2) {
        const GrassmannSpace X1(p, n, r1), X2(p, n, r2);
        const Subspace& x1 = X1[0];
        const auto lc = bc_coefficients(c, r1, r2);
        for (const auto& x2 : X2.points()) {
          const long t = distance(x2, x1).d_xy;
          const Rat up = brute_count(X2, [&](const Subspace& y) {
            return distance(y, x2).d_xy == 1 && distance(y, x1).d_xy == t + 1;
          });
          const Rat down = brute_count(X2, [&](const Subspace& y) {
            return distance(y, x2).d_xy == 1 && distance(y, x1).d_xy == t - 1;
          });
          EXPECT_EQ(up, lc.b_at(t));
          EXPECT_EQ(down, lc.c_at(t));
        }
      }
  }
}

TEST(KernelDifference, Examples) {
  const QContext c(2, 3);
  const auto one = qhahn_kernel(c, 1, 2, 0);
  const auto d0 = kernel_difference_apply(bc_coefficients(c, 1, 2), one);
  for (const auto& v : d0.values) EXPECT_TRUE(v.is_zero());
  const auto lam = qhahn_kernel(c, 1, 1, 1);
  EXPECT_TRUE(kernel_difference_apply(bc_coefficients(c, 1, 1), lam).same_values(lam.scaled(Rat(-7))));
}

TEST(KernelDifference, EigenvalueForEveryKernel) {
  for (long q : {2L, 3L, 4L})
    for (int n = 1; n <= 6; ++n) {
      const QContext c(q, n);
      for (long r1 = 0; r1 <= n; ++r1)
        for (long r2 = 0; r2 <= n; ++r2)
          for (long s = 0; s <= n_max(c, r1, r2); ++s) {
            const auto k = qhahn_kernel(c, r1, r2, s);
            EXPECT_TRUE(kernel_difference_apply(bc_coefficients(c, r1, r2), k)
                            .same_values(k.scaled(-mu_eigenvalue(c, s))))
                << q << n << r1 << r2 << s;
          }
    }
}
