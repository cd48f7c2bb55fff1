#include <gtest/gtest.h>

#include <random>

#include "qgrass/intertwiner.hpp"
#include "qgrass/rodrigues.hpp"

using namespace qgrass;

namespace {

Rat R(const char* s) { return Rat::parse(s); }

Mat k7_projection() { return Mat::identity(7) - Mat::constant(7, 7, R("1/7")); }

}  // namespace

TEST(OperatorFromKernel, Examples) {
  Geometry geo(2, 3);
  const auto one = operator_from_kernel(qhahn_kernel(geo.ctx(), 0, 0, 0), geo);
  EXPECT_EQ(one.matrix, Mat(1, 1, {1}));
  const auto lam = operator_from_kernel(qhahn_kernel(geo.ctx(), 1, 1, 1), geo);
  EXPECT_EQ(lam.matrix, k7_projection() * R("7/6"));
}

TEST(OperatorFromKernel, CommutesWithTransvections) {
  Geometry geo(2, 4);
  const auto& T = geo.transvections();
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, T.size() - 1);
  for (long r1 = 0; r1 <= 4; ++r1)
    for (long r2 = 0; r2 <= 4; ++r2)
      for (long s = 0; s <= n_max(geo.ctx(), r1, r2); ++s) {
        const auto op = lambda_op(geo, r1, r2, s);
        for (int i = 0; i < 20; ++i) EXPECT_TRUE(commutes_with(op, geo, T[pick(rng)])) << r1 << r2 << s;
      }
}

TEST(KernelFromOperator, Examples) {
  Geometry geo(2, 3);
  const auto id = kernel_from_operator({geo.ctx(), 1, 1, Mat::identity(7)}, geo);
  EXPECT_EQ(id.at(0), Rat(1));
  EXPECT_EQ(id.at(1), Rat(0));
  const auto p = kernel_from_operator({geo.ctx(), 1, 1, k7_projection()}, geo, 1);
  EXPECT_EQ(p.at(0), Rat(1));
  EXPECT_EQ(p.at(1), R("-1/6"));
  const auto mixed = kernel_from_operator(compose(projection_P(geo, 2, 1), radon_subset(geo, 1, 2)), geo, 1);
  EXPECT_EQ(mixed.at(1), R("2/9"));
  EXPECT_EQ(mixed.at(2), R("-1/6"));
}

TEST(KernelFromOperator, RejectsNonInvariantMatrix) {
  Geometry geo(2, 3);
  Mat m = Mat::identity(7);
  m(0, 1) = Rat(5);
  EXPECT_THROW(kernel_from_operator({geo.ctx(), 1, 1, m}, geo), std::exception);
}

TEST(ProjectionP, Examples) {
  Geometry geo(2, 4);
  EXPECT_EQ(geo.projection(1, 0), Mat::constant(15, 15, R("1/15")));
  Geometry g3(2, 3);
  EXPECT_EQ(g3.projection(1, 1), k7_projection());
  EXPECT_EQ(trace(g3.projection(1, 1)), Rat(6));
  EXPECT_EQ(trace(geo.projection(2, 2)), Rat(20));
  EXPECT_EQ(static_cast<long>(nullity(geo.laplacian(2) + Mat::identity(35) * Rat(21))), 20);
}

TEST(ProjectionP, IdempotentAndOrthogonal) {
  Geometry geo(3, 3);
  for (long r = 0; r <= 3; ++r) {
    Mat sum(geo.space(r).size(), geo.space(r).size());
    for (long s = 0; s <= std::min(r, 3 - r); ++s) {
      const Mat& P = geo.projection(r, s);
      EXPECT_EQ(mat_mul(P, P), P);
      EXPECT_EQ(P.transpose(), P);
      sum += P;
      for (long s2 = s + 1; s2 <= std::min(r, 3 - r); ++s2) EXPECT_TRUE(mat_mul(P, geo.projection(r, s2)).is_zero());
    }
    EXPECT_EQ(sum, Mat::identity(sum.rows()));
  }
}

TEST(LambdaOracle, Examples) {
  Geometry geo(2, 3);
  EXPECT_EQ(lambda_oracle(geo, 1, 2, 0).matrix, Mat::constant(7, 7, Rat(1)));
  const auto k = kernel_from_operator(lambda_oracle(geo, 1, 2, 1), geo, 1);
  EXPECT_EQ(k.at(1), R("2/9"));
  EXPECT_EQ(k.at(2), R("-1/6"));
  Geometry g4(2, 4);
  EXPECT_TRUE(lambda_oracle_kernel(g4, 2, 2, 1).same_values(qhahn_kernel(g4.ctx(), 2, 2, 1)));
}

TEST(LambdaOracle, RowKernelMatchesFullOperator) {
  Geometry geo(2, 4);
  for (long r1 = 0; r1 <= 4; ++r1)
    for (long r2 = 0; r2 <= 4; ++r2)
      for (long s = 0; s <= n_max(geo.ctx(), r1, r2); ++s) {
        const auto full = lambda_oracle(geo, r1, r2, s);
        EXPECT_EQ(full.matrix, lambda_op(geo, r1, r2, s).matrix) << r1 << r2 << s;
        EXPECT_TRUE(lambda_oracle_kernel(geo, r1, r2, s).same_values(kernel_from_operator(full, geo, s)));
      }
}

TEST(RadonSubset, Examples) {
  Geometry geo(2, 3);
  EXPECT_EQ(radon_subset(geo, 1, 1).matrix, Mat::identity(7));
  const Mat R12 = radon_subset(geo, 1, 2).matrix;
  for (std::size_t i = 0; i < R12.rows(); ++i) {
    Rat sum(0);
    for (const auto& v : R12.row(i)) sum += v;
    EXPECT_EQ(sum, Rat(3));
  }
  Geometry g4(2, 4);
  const Rat k = radon_composition_constant(g4.ctx(), 1, 2, 3);
  EXPECT_EQ(k, q_binomial(3, 2, g4.ctx()) * q_binomial(2, 1, g4.ctx()) / q_binomial(3, 1, g4.ctx()));
  EXPECT_EQ(mat_mul(radon_subset(g4, 2, 3).matrix, radon_subset(g4, 1, 2).matrix), radon_subset(g4, 1, 3).matrix * k);
}

TEST(RadonComplement, Examples) {
  Geometry geo(2, 3);
  EXPECT_EQ(radon_complement(geo, 0).matrix, Mat(1, 1, {1}));
  const Mat Rc = radon_complement(geo, 1).matrix;
  ASSERT_EQ(Rc.rows(), 7u);
  for (std::size_t i = 0; i < Rc.rows(); ++i) {
    Rat sum(0);
    for (const auto& v : Rc.row(i)) sum += v;
    EXPECT_EQ(sum, Rat(4));
  }
  EXPECT_EQ(complement_constant(geo.ctx(), 1, 1), Rat(-3));
  EXPECT_EQ(mat_mul(Rc, lambda_op(geo, 1, 1, 1).matrix), lambda_op(geo, 1, 2, 1).matrix * Rat(-3));
}

TEST(ProductConstant, Examples) {
  EXPECT_EQ(product_constant(QContext(2, 3), 1, 1), R("7/6"));
  EXPECT_EQ(product_constant(QContext(2, 4), 2, 1), R("5/2"));
  for (long r = 0; r <= 4; ++r) EXPECT_EQ(product_constant(QContext(3, 4), r, 0), q_binomial(4, r, QContext(3, 4)));
  Geometry geo(2, 3);
  const Mat L = lambda_op(geo, 1, 1, 1).matrix;
  EXPECT_EQ(mat_mul(L, L), L * R("7/6"));
}

TEST(RadonDecomposition, Examples) {
  const auto w = radon_decomposition(QContext(2, 3), 1, 2);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0], R("3/7"));
  EXPECT_EQ(w[1], R("18/7"));
  EXPECT_EQ(w[0] + w[1] * R("2/9"), Rat(1));
  EXPECT_EQ(w[0] + w[1] * R("-1/6"), Rat(0));
  const auto wr = radon_decomposition(QContext(2, 4), 2, 2);
  for (std::size_t s = 0; s < wr.size(); ++s)
    EXPECT_EQ(wr[s], product_constant(QContext(2, 4), 2, static_cast<long>(s)).inverse());
  Geometry geo(2, 4);
  const auto w13 = radon_decomposition(geo.ctx(), 1, 3);
  Mat sum(geo.space(3).size(), geo.space(1).size());
  for (std::size_t s = 0; s < w13.size(); ++s) sum += lambda_op(geo, 1, 3, static_cast<long>(s)).matrix * w13[s];
  EXPECT_EQ(sum, radon_subset(geo, 1, 3).matrix);
}

TEST(HsNorm, Examples) {
  const QContext c(2, 4);
  EXPECT_EQ(hs_norm(c, 1, 3, 0), q_binomial(4, 1, c) * q_binomial(4, 3, c));
  EXPECT_EQ(hs_norm(c, 2, 2, 1), R("175/2"));
  Geometry geo(2, 4);
  EXPECT_EQ(frobenius_sq(lambda_op(geo, 2, 2, 1).matrix), R("175/2"));
  const auto k = qhahn_kernel(c, 2, 2, 1);
  EXPECT_EQ(kernel_inner_product(k, k), R("175/2"));
}

TEST(AdjointConstant, Examples) {
  Geometry geo(2, 4);
  const auto same = adjoint_constant(geo, 2, 2, 1);
  EXPECT_EQ(same.relations_value, Rat(1));
  EXPECT_EQ(same.quotient_value, Rat(1));
  EXPECT_EQ(same.oracle_value, Rat(1));
  const auto v = adjoint_constant(geo, 1, 2, 1);
  EXPECT_EQ(v.relations_value, R("2/7"));
  EXPECT_EQ(v.quotient_value, R("7/2"));
  // Independent reading of the oracle: compare one nonzero matrix entry.
  const Mat a = lambda_oracle(geo, 1, 2, 1).matrix.transpose();
  const Mat b = lambda_oracle(geo, 2, 1, 1).matrix;
  EXPECT_EQ(a(0, 0), v.oracle_value * b(0, 0));
  EXPECT_EQ(v.oracle_value, v.relations_value);
}

TEST(Spherical, Examples) {
  Geometry geo(2, 3);
  const auto trivial = spherical_check(geo, 1, 0, 0, 3, 5);
  EXPECT_EQ(trivial.lhs, Rat(1));
  EXPECT_EQ(trivial.rhs, Rat(1));
  const auto r0 = spherical_check(geo, 1, 1, 2, 2, 4);
  EXPECT_EQ(r0.lhs, r0.rhs);
  EXPECT_EQ(r0.lhs, R("-1/6"));
  const auto k7 = spherical_check(geo, 1, 1, 0, 1, 2);
  EXPECT_EQ(k7.lhs, R("1/36"));
  EXPECT_EQ(k7.rhs, R("1/36"));
}

TEST(FixedS, Examples) {
  const QContext c(2, 3);
  const auto b = fixed_s_check(c, 1, 1, 2, 1, FixedSVariant::B);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(*b.constant, Rat(3));
  const auto b0 = fixed_s_check(c, 1, 1, 2, 0, FixedSVariant::B);
  EXPECT_EQ(*b0.constant, q_binomial(2, 1, c));
  Geometry geo(2, 3);
  const auto a = fixed_s_check(c, 1, 0, 2, 1, FixedSVariant::A);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(*a.constant, adjoint_constant(geo, 2, 1, 1).oracle_value);
  EXPECT_THROW(fixed_s_check(c, 1, 2, 1, 1, FixedSVariant::B), std::invalid_argument);
}

TEST(FixedS, AllVariantsHold) {
  for (auto [q, n] : {std::pair{2L, 3}, std::pair{2L, 4}, std::pair{3L, 4}, std::pair{4L, 5}}) {
    const QContext c(q, n);
    for (long r1 = 0; r1 <= n; ++r1)
      for (long r2 = 0; r2 <= n; ++r2)
        for (long r3 = 0; r3 <= n; ++r3)
          for (long s = 0; s <= n; ++s)
            for (auto v : {FixedSVariant::A, FixedSVariant::B, FixedSVariant::C, FixedSVariant::D, FixedSVariant::E})
              if (fixed_s_applicable(c, r1, r2, r3, s, v)) {
                EXPECT_TRUE(fixed_s_check(c, r1, r2, r3, s, v).pass)
                    << q << n << " " << r1 << r2 << r3 << s << variant_letter(v);
              }
  }
}
