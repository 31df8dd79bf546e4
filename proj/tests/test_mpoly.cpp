#include "invfield/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "gtest/gtest.h"

namespace invfield {
namespace {

MPoly random_poly(std::mt19937_64& rng, const Field& f, const Vars& v, int terms, int maxexp) {
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    Term term;
    for (std::size_t i = 0; i < v->size(); ++i) term.mono.e[i] = static_cast<Exp>(rng() % (maxexp + 1));
    term.coef = static_cast<Coef>(rng() % f->q());
    ts.push_back(term);
  }
  return MPoly::from_terms(f, v, ts);
}

std::vector<Coef> random_point(std::mt19937_64& rng, const Field& f, std::size_t n) {
  std::vector<Coef> pt(n);
  for (auto& c : pt) c = static_cast<Coef>(rng() % f->q());
  return pt;
}

TEST(MPoly, TextRoundTrip) {
  auto f = FieldCtx::make(3, 1);
  Space s{2, 2, 1};
  auto v = VarSet::xy(s);
  auto p = MPoly::parse(f, v, "x[1,1]^2*y[1,2] + 2*x[2,1]");
  EXPECT_EQ(p.str(), "x[1,1]^2*y[1,2] + 2*x[2,1]");
  EXPECT_EQ(MPoly::parse(f, v, p.str()), p);
  EXPECT_EQ(MPoly::parse(f, v, "- x[1,1] + x[1,1]").str(), "0");
  EXPECT_EQ(MPoly::parse(f, v, "-x[1,2]").str(), "2*x[1,2]");
  EXPECT_THROW(MPoly::parse(f, v, "x[3,1]"), Error);
  EXPECT_THROW(MPoly::parse(f, v, "x[1,1] +"), Error);

  auto f4 = FieldCtx::make(2, 2);
  auto q = MPoly::parse(f4, v, "[0,1]*x[1,1] + [1,1]");
  EXPECT_EQ(q.str(), "[0,1]*x[1,1] + [1,1]");
}

TEST(MPoly, ExpansionExamples) {
  Space s{2, 1, 1};
  auto f2 = FieldCtx::make(2, 1);
  auto x11 = MPoly::x(f2, s, 1, 1), y11 = MPoly::y(f2, s, 1, 1);
  EXPECT_EQ((x11 + y11).pow(2), x11.pow(2) + y11.pow(2));
  EXPECT_TRUE((x11 * x11.zero()).is_zero());

  auto f3 = FieldCtx::make(3, 1);
  auto a = MPoly::x(f3, s, 1, 1), b = MPoly::x(f3, s, 1, 2);
  EXPECT_EQ(((a + b) * (a + b)).str(), "x[1,1]^2 + 2*x[1,1]*x[1,2] + x[1,2]^2");
  EXPECT_EQ((a + b).pow(5), (a + b) * (a + b) * (a + b) * (a + b) * (a + b));
}

class RingProperties : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(RingProperties, AxiomsAndEvaluation) {
  auto f = FieldCtx::make(GetParam().first, GetParam().second);
  auto v = VarSet::xy(Space{2, 1, 1});
  std::mt19937_64 rng(7);
  for (int it = 0; it < 30; ++it) {
    auto a = random_poly(rng, f, v, 5, 3), b = random_poly(rng, f, v, 4, 3), c = random_poly(rng, f, v, 3, 2);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a - a, a.zero());
    EXPECT_EQ(a.pow(4), a * a * a * a);
    auto pt = random_point(rng, f, v->size());
    EXPECT_EQ(evaluate(a * b + c, pt), f->add(f->mul(evaluate(a, pt), evaluate(b, pt)), evaluate(c, pt)));
    EXPECT_EQ(evaluate(a.pow(f->q() + 1), pt), f->pow(evaluate(a, pt), f->q() + 1));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, RingProperties,
                         ::testing::Values(std::make_pair(2, 1), std::make_pair(3, 1), std::make_pair(2, 2),
                                           std::make_pair(5, 1)));

TEST(Endo, HomomorphismAndFrobenius) {
  auto f = FieldCtx::make(3, 1);
  Space s{2, 1, 1};
  auto v = VarSet::xy(s);
  std::mt19937_64 rng(11);
  RingEndo e = RingEndo::identity(f, v);
  for (auto& img : e.images) img = random_poly(rng, f, v, 3, 1);
  for (int it = 0; it < 10; ++it) {
    auto a = random_poly(rng, f, v, 3, 2), b = random_poly(rng, f, v, 3, 2);
    EXPECT_EQ(apply_endo(e, a * b), apply_endo(e, a) * apply_endo(e, b));
    EXPECT_EQ(apply_endo(e, a + b), apply_endo(e, a) + apply_endo(e, b));
    EXPECT_EQ(apply_endo(RingEndo::identity(f, v), a), a);

    auto f1 = frobenius_endo(f, s, Frobenius::F, 1), f2 = frobenius_endo(f, s, Frobenius::F, 2);
    EXPECT_EQ(apply_endo(f1, apply_endo(f1, a)), apply_endo(f2, a));
    EXPECT_EQ(apply_endo(frobenius_endo(f, s, Frobenius::F, 0), a), a);
    EXPECT_EQ(apply_endo(compose(f1, f1), a), apply_endo(f2, a));
  }
}

TEST(Endo, FrobeniusOnPairing) {
  auto f = FieldCtx::make(2, 1);
  Space s{2, 1, 1};
  auto v = VarSet::xy(s);
  auto u0 = MPoly::parse(f, v, "x[1,1]*y[1,1] + x[1,2]*y[1,2]");
  EXPECT_EQ(apply_endo(frobenius_endo(f, s, Frobenius::F, 1), u0).str(), "x[1,1]^2*y[1,1] + x[1,2]^2*y[1,2]");
  EXPECT_EQ(apply_endo(frobenius_endo(f, s, Frobenius::Fstar, 1), u0).str(), "x[1,1]*y[1,1]^2 + x[1,2]*y[1,2]^2");
}

TEST(Endo, InvolutionIsIdempotent) {
  auto f = FieldCtx::make(3, 1);
  Space s{3, 2, 2};
  auto v = VarSet::xy(s);
  std::mt19937_64 rng(3);
  for (int j = 1; j <= 2; ++j)
    for (int k = 1; k <= 2; ++k) {
      auto inv = involution_endo(f, s, j, k);
      auto a = random_poly(rng, f, v, 6, 2);
      EXPECT_EQ(apply_endo(inv, apply_endo(inv, a)), a);
    }
  EXPECT_EQ(apply_endo(involution_endo(f, s, 1, 1), MPoly::x(f, s, 1, 1)), MPoly::y(f, s, 1, 3));
  EXPECT_THROW(involution_endo(f, s, 3, 1), Error);
}

TEST(Determinant, MatchesPermutationSum) {
  auto f = FieldCtx::make(3, 1);
  auto v = VarSet::xy(Space{2, 1, 1});
  std::mt19937_64 rng(5);
  for (int n : {2, 3}) {
    std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n, MPoly(f, v)));
    for (auto& row : m)
      for (auto& e : row) e = random_poly(rng, f, v, 3, 2);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    MPoly ref(f, v);
    do {
      int inversions = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
      MPoly t = MPoly::constant(f, v, 1);
      for (int i = 0; i < n; ++i) t *= m[i][perm[i]];
      ref = inversions % 2 ? ref - t : ref + t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(poly_det(m), ref);
    m[1] = m[0];
    EXPECT_TRUE(poly_det(m).is_zero());
  }
}

TEST(Determinant, MooreTwoByTwo) {
  auto f = FieldCtx::make(2, 1);
  Space s{2, 1, 1};
  auto a = MPoly::x(f, s, 1, 1), b = MPoly::x(f, s, 1, 2);
  std::vector<std::vector<MPoly>> m{{a, b}, {a.pow(2), b.pow(2)}};
  EXPECT_EQ(poly_det(m), a * b.pow(2) - b * a.pow(2));
  EXPECT_THROW(poly_det({{a, b}}), Error);
}

TEST(Rational, CrossMultiplication) {
  auto f = FieldCtx::make(3, 1);
  Space s{2, 1, 1};
  auto a = MPoly::x(f, s, 1, 1), g = MPoly::y(f, s, 1, 2) + a.one();
  EXPECT_TRUE(rat_eq({a, a.one()}, {a, a.one()}));
  EXPECT_TRUE(rat_eq({a * g, g}, {a, a.one()}));
  EXPECT_FALSE(rat_eq({a * g, g}, {a + a.one(), a.one()}));
  EXPECT_THROW(rat_eq({a, a.zero()}, {a, a.one()}), Error);
}

TEST(Evaluate, PointsAndJacobian) {
  auto f = FieldCtx::make(2, 1);
  Space s{2, 1, 1};
  auto v = VarSet::xy(s);
  auto u0 = MPoly::parse(f, v, "x[1,1]*y[1,1] + x[1,2]*y[1,2]");
  std::map<VarId, FieldElem> pt{{{Block::X, 1, 1}, FieldElem(f, 1)},
                                {{Block::X, 1, 2}, FieldElem(f, 0)},
                                {{Block::Y, 1, 1}, FieldElem(f, 1)},
                                {{Block::Y, 1, 2}, FieldElem(f, 1)}};
  EXPECT_EQ(evaluate(u0, pt), FieldElem::one(f));
  std::vector<Coef> zeros(v->size(), 0);
  EXPECT_EQ(evaluate(u0 + u0.one(), zeros), 1u);
  EXPECT_THROW(evaluate(u0, std::map<VarId, FieldElem>{}), Error);

  auto x11 = MPoly::x(f, s, 1, 1);
  std::vector<Coef> ones(v->size(), 1);
  EXPECT_EQ(jacobian_rank({x11}, ones), 1);
  EXPECT_EQ(jacobian_rank({x11.pow(2)}, ones), 0);

  auto f3 = FieldCtx::make(3, 1);
  Space s1{1, 1, 1};
  auto v1 = VarSet::xy(s1);
  auto x = MPoly::x(f3, s1, 1, 1), y = MPoly::y(f3, s1, 1, 1);
  std::vector<Coef> gen{1, 2};
  EXPECT_EQ(jacobian_rank({x, y, x * y}, gen), 2);
}

TEST(Linear, SolveAndRank) {
  auto f = FieldCtx::make(3, 1);
  auto sol = solve_linear(*f, {{1, 1}, {1, 2}}, {2, 0});
  ASSERT_TRUE(sol.feasible);
  EXPECT_EQ(sol.rank, 2);
  EXPECT_EQ(f->add(sol.x[0], sol.x[1]), 2u);
  EXPECT_EQ(f->add(sol.x[0], f->mul(2, sol.x[1])), 0u);
  auto bad = solve_linear(*f, {{1, 1}, {2, 2}}, {1, 1});
  EXPECT_FALSE(bad.feasible);
  EXPECT_EQ(bad.nullity, 1);
  EXPECT_EQ(matrix_rank(*f, {{1, 2, 0}, {2, 1, 0}}), 1);
}

}  // namespace
}  // namespace invfield
