#include <gtest/gtest.h>

#include "qgrass/grid.hpp"
#include "qgrass/intertwiner.hpp"
#include "qgrass/laplacians.hpp"
#include "qgrass/qhahn.hpp"
#include "qgrass/rodrigues.hpp"

using namespace qgrass;

namespace {

Rat R(const char* s) { return Rat::parse(s); }

}  // namespace

TEST(IndexSet, SizeIsNmaxPlusOne) {
  for (int n = 0; n <= 7; ++n) {
    const QContext c(2, n);
    for (long r1 = 0; r1 <= n; ++r1)
      for (long r2 = 0; r2 <= n; ++r2) EXPECT_EQ(index_set(c, r1, r2).size(), n_max(c, r1, r2) + 1);
  }
}

TEST(MuEigenvalue, Examples) {
  EXPECT_EQ(mu_eigenvalue(QContext(2, 3), 0), Rat(0));
  EXPECT_EQ(mu_eigenvalue(QContext(2, 3), 1), Rat(7));
  EXPECT_EQ(mu_eigenvalue(QContext(2, 4), 2), Rat(21));
  EXPECT_THROW(mu_eigenvalue(QContext(2, 4), 3), std::invalid_argument);
}

TEST(Grid, DifferenceOperatorsOnSimpleFunctions) {
  const long q = 3;
  GridFunction constant(q, 0), identity(q, 0);
  for (long t = -3; t <= 3; ++t) {
    constant.set_t(t, QuadExt(Rat(5)));
    identity.set_t(t, GridFunction::point(q, 2 * t));
  }
  const GridFunction Dc = grid_D(constant), Du = grid_D(identity), Su = grid_S(identity);
  EXPECT_EQ(Dc.parity(), 1);
  const QuadExt half_sum = (QuadExt::sqrt_q_pow(q, 1) + QuadExt::sqrt_q_pow(q, -1)) * QuadExt(Rat(1, 2));
  // Interior half-integer keys: both neighbors lie inside the window.
  for (long m = -5; m <= 5; m += 2) {
    EXPECT_TRUE(Dc.at(m).is_zero()) << m;
    EXPECT_EQ(Du.at(m), QuadExt(Rat(1))) << m;
    EXPECT_EQ(Su.at(m), half_sum * GridFunction::point(q, m)) << m;
  }
}

TEST(Grid, DividedDifferenceOfRhoOne) {
  const QContext c(2, 3);
  const GridFunction rho1 = rho_s_grid(c, 1, 1, 1);
  EXPECT_EQ(rho1.at(1), QuadExt(Rat(0), Rat(21, 2), 2));
  EXPECT_TRUE(rho1.at(3).is_zero());
  EXPECT_EQ(grid_D(rho1).at(2), QuadExt(Rat(42)));
}

TEST(Hyperop, Examples) {
  const QContext c(2, 3);
  const ChiPair chi(c, 1, 1);
  const auto one = qhahn_kernel(c, 1, 1, 0);
  const auto h0 = grid_to_kernel(hyperop_apply(chi, GridFunction::from_kernel(one)), one);
  for (const auto& v : h0.values) EXPECT_TRUE(v.is_zero());
  const auto f = qhahn_kernel(c, 1, 1, 1);
  const auto h1 = grid_to_kernel(hyperop_apply(chi, GridFunction::from_kernel(f)), f);
  EXPECT_TRUE(h1.same_values(f.scaled(Rat(-7))));
}

TEST(Hyperop, AgreesWithDifferenceForm) {
  for (long q : {2L, 3L, 4L, 5L})
    for (int n = 1; n <= 6; ++n) {
      const QContext c(q, n);
      for (long r1 = 0; r1 <= n; ++r1)
        for (long r2 = 0; r2 <= n; ++r2) {
          const ChiPair chi(c, r1, r2);
          const auto lc = bc_coefficients(c, r1, r2);
          for (long s = 0; s <= n_max(c, r1, r2); ++s) {
            const auto k = qhahn_kernel(c, r1, r2, s);
            const auto h = grid_to_kernel(hyperop_apply(chi, GridFunction::from_kernel(k)), k);
            EXPECT_TRUE(h.same_values(kernel_difference_apply(lc, k))) << q << n << r1 << r2 << s;
          }
        }
    }
}

TEST(QHahnKernel, Examples) {
  const QContext c(2, 3);
  for (long r1 = 0; r1 <= 3; ++r1)
    for (long r2 = 0; r2 <= 3; ++r2)
      for (const auto& v : qhahn_kernel(c, r1, r2, 0).values) EXPECT_EQ(v, Rat(1));
  const auto k11 = qhahn_kernel(c, 1, 1, 1);
  EXPECT_EQ(k11.at(0), Rat(1));
  EXPECT_EQ(k11.at(1), R("-1/6"));
  const auto k12 = qhahn_kernel(c, 1, 2, 1);
  EXPECT_EQ(k12.at(1), R("2/9"));
  EXPECT_EQ(k12.at(2), R("-1/6"));
  EXPECT_THROW(qhahn_kernel(c, 1, 2, 2), std::invalid_argument);
}

TEST(QHahnKernel, FourFormsAgreeWithoutGeometry) {
  for (long q : {2L, 3L, 4L, 5L, 9L})
    for (int n = 0; n <= 6; ++n) {
      const QContext c(q, n);
      for (long r1 = 0; r1 <= n; ++r1)
        for (long r2 = 0; r2 <= n; ++r2)
          for (long s = 0; s <= n_max(c, r1, r2); ++s) {
            const auto h1 = qhahn_kernel(c, r1, r2, s, QHahnForm::H1);
            for (auto f : {QHahnForm::H2, QHahnForm::H3, QHahnForm::H4})
              EXPECT_TRUE(h1.same_values(qhahn_kernel(c, r1, r2, s, f)))
                  << q << " " << n << " " << r1 << r2 << s << " form " << static_cast<int>(f);
          }
    }
}

TEST(QHahnKernel, MatchesSpectralOracle) {
  // Projection-based kernels are computed from the geometry alone.
  for (auto [p, n] : {std::pair{2L, 3}, std::pair{2L, 4}, std::pair{3L, 3}}) {
    Geometry geo(p, n);
    for (long r1 = 0; r1 <= n; ++r1)
      for (long r2 = 0; r2 <= n; ++r2)
        for (long s = 0; s <= n_max(geo.ctx(), r1, r2); ++s)
          EXPECT_TRUE(lambda_oracle_kernel(geo, r1, r2, s).same_values(qhahn_kernel(geo.ctx(), r1, r2, s)))
              << p << n << r1 << r2 << s;
  }
}

TEST(Phi32, Examples) {
  const QContext c(2, 3);
  EXPECT_EQ(phi32_truncated({Rat(2), Rat(3), Rat(5)}, {Rat(7), Rat(11)}, Rat(1, 2), Rat(1), 0), Rat(1));
  EXPECT_EQ(qhahn_series(c, 1, 1, 1, QHahnForm::H1, Rat(1, 2)), R("-1/6"));
  EXPECT_EQ(qhahn_series(c, 1, 2, 1, QHahnForm::H1, Rat(1, 2)), R("2/9"));
}

TEST(MainCoefficient, Examples) {
  const QContext c(2, 3);
  EXPECT_EQ(main_coefficient(c, 2, 1, 0), Rat(1));
  EXPECT_EQ(main_coefficient(c, 1, 1, 1), R("7/3"));
  EXPECT_EQ(main_coefficient(c, 1, 2, 1), R("14/9"));
}

TEST(MainCoefficient, MatchesInterpolatedLeadingTerm) {
  for (long q : {2L, 3L, 4L})
    for (int n = 1; n <= 6; ++n) {
      const QContext c(q, n);
      for (long r1 = 0; r1 <= n; ++r1)
        for (long r2 = 0; r2 <= n; ++r2)
          for (long s = 0; s <= n_max(c, r1, r2); ++s) {
            const auto k = qhahn_kernel(c, r1, r2, s);
            EXPECT_EQ(kernel_poly_degree(k), s);
            EXPECT_EQ(kernel_poly_coefficients(k)[static_cast<std::size_t>(s)], main_coefficient(c, r1, r2, s));
          }
    }
}

TEST(Extremal, Examples) {
  const QContext c(2, 3);
  const auto a = extremal_closed_form(c, 1, 1, Extremal::RToS);
  EXPECT_EQ(a.at(0), Rat(1));
  EXPECT_EQ(a.at(1), R("-1/6"));
  const auto b = extremal_closed_form(c, 2, 1, Extremal::NSToR);
  EXPECT_EQ(b.at(0), Rat(1));
  EXPECT_EQ(b.at(1), R("-1/6"));
  EXPECT_THROW(extremal_closed_form(c, 3, 1, Extremal::RToS), std::invalid_argument);
}

TEST(Extremal, MatchSeriesForm) {
  for (long q : {2L, 3L, 5L})
    for (int n = 0; n <= 6; ++n) {
      const QContext c(q, n);
      for (long s = 0; 2 * s <= n; ++s)
        for (long r = s; r <= n - s; ++r) {
          EXPECT_TRUE(extremal_closed_form(c, r, s, Extremal::RToS).same_values(qhahn_kernel(c, r, s, s)));
          EXPECT_TRUE(extremal_closed_form(c, r, s, Extremal::NSToR).same_values(qhahn_kernel(c, n - s, r, s)));
        }
    }
}
