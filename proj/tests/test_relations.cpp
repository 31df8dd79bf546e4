#include "invfield/relations.hpp"

#include <random>

#include "gtest/gtest.h"

namespace invfield {
namespace {

std::uint64_t qpow(int q, int i) {
  std::uint64_t r = 1;
  while (i-- > 0) r *= static_cast<std::uint64_t>(q);
  return r;
}

// Univariate polynomials over GF(q), low-to-high, used as a numeric oracle.
using UPoly = std::vector<Coef>;

UPoly umul(const FieldCtx& f, const UPoly& a, const UPoly& b) {
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  return r;
}

// prod over a in F^n of (X - sum_t a_t v_t), as coefficients of X^{q^i}.
std::vector<Coef> dickson_numeric(const FieldCtx& f, const std::vector<Coef>& v) {
  const auto& el = f.elements();
  std::vector<std::size_t> dig(v.size(), 0);
  UPoly acc{1};
  while (true) {
    Coef w = 0;
    for (std::size_t t = 0; t < v.size(); ++t) w = f.add(w, f.mul(el[dig[t]], v[t]));
    acc = umul(f, acc, UPoly{f.neg(w), 1});
    std::size_t t = 0;
    while (t < v.size() && ++dig[t] == el.size()) dig[t++] = 0;
    if (t == v.size()) break;
  }
  std::vector<Coef> out;
  for (std::size_t i = 0; i <= v.size(); ++i) out.push_back(acc[qpow(f.q(), static_cast<int>(i))]);
  return out;
}

TEST(Bootstrap, ExactlyOneConventionSurvives) {
  auto r = run_bootstrap();
  ASSERT_EQ(r.candidates.size(), 8u);
  int winners = 0;
  for (auto& c : r.candidates) {
    winners += c.pass;
    if (!c.pass) EXPECT_FALSE(c.failure.empty()) << c.conv.describe();
  }
  EXPECT_EQ(winners, 1);
  ASSERT_TRUE(r.chosen.has_value());
  EXPECT_EQ(r.chosen->sign, DicksonSign::Alternating);
  EXPECT_EQ(r.chosen->twist, Twist::Staggered);
  EXPECT_EQ(r.chosen->v, VOrientation::Reflected);
  EXPECT_EQ(resolved_conventions(), *r.chosen);
}

struct TCase {
  int n, p, e;
};

class TRelations : public ::testing::TestWithParam<TCase> {};

TEST_P(TRelations, HoldExactly) {
  auto [n, p, e] = GetParam();
  auto f = FieldCtx::make(p, e);
  InvariantBuilder b(f, Space{n, 2, 2});
  const auto& conv = resolved_conventions();
  for (int c = 1; c <= 2; ++c)
    for (int r = 1; r < n; ++r) {
      EXPECT_TRUE(t_star_residual(b, c, r, conv).is_zero()) << "T*" << r << " j=" << c;
      EXPECT_TRUE(t_residual(b, c, r, conv).is_zero()) << "T" << r << " k=" << c;
    }
}

INSTANTIATE_TEST_SUITE_P(Grid, TRelations,
                         ::testing::Values(TCase{2, 2, 1}, TCase{2, 3, 1}, TCase{2, 2, 2}, TCase{2, 5, 1},
                                           TCase{3, 2, 1}, TCase{3, 3, 1}));

TEST(TRelations, AsPrintedOrientationFails) {
  auto f = FieldCtx::make(2, 1);
  InvariantBuilder b(f, Space{2, 2, 2});
  Conventions printed{DicksonSign::Alternating, Twist::Staggered, VOrientation::AsPrinted};
  EXPECT_FALSE(check_T(b, 2, 1, printed));
  EXPECT_TRUE(check_T_star(b, 2, 1, printed));
}

TEST(TRelations, RejectsMismatchedSignAndRange) {
  auto f = FieldCtx::make(3, 1);
  InvariantBuilder b(f, Space{2, 1, 1}, DicksonSign::Plain);
  EXPECT_THROW(t_star_residual(b, 1, 1, resolved_conventions()), Error);
  InvariantBuilder a(f, Space{2, 1, 1});
  EXPECT_THROW(t_star_residual(a, 1, 2, resolved_conventions()), Error);
  InvariantBuilder one(f, Space{1, 1, 1});
  EXPECT_THROW(t_residual(one, 1, 1, resolved_conventions()), Error);
}

// Evaluates T*_1 numerically, with Dickson coefficients from a univariate
// product and pairings summed directly.
TEST(TRelations, NumericOracleAtRandomPoints) {
  for (auto [n, p] : {std::pair{2, 5}, std::pair{2, 7}, std::pair{3, 3}}) {
    auto f = FieldCtx::make(p, 1);
    Space s{n, 2, 2};
    InvariantBuilder b(f, s);
    std::mt19937_64 rng(n * 100 + p);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Coef> pt(s.nvars());
      for (auto& c : pt) c = static_cast<Coef>(rng() % f->q());
      auto at = [&](int blk, int copy, int i) { return pt[(blk ? s.m * n : 0) + (copy - 1) * n + (i - 1)]; };
      std::vector<Coef> ycov;
      for (int i = 1; i <= n; ++i) ycov.push_back(at(1, 1, i));
      auto cstar = dickson_numeric(*f, ycov);
      for (int i = 0; i < n; ++i) {
        Coef lib = evaluate(b.get(Label{"cstar", 1, i}), pt);
        Coef want = (n - i) % 2 ? f->neg(cstar[i]) : cstar[i];
        ASSERT_EQ(lib, want) << "cstar i=" << i;
      }
      auto u = [&](int j, int i) {
        Coef acc = 0;
        for (int t = 1; t <= n; ++t) {
          Coef xv = at(0, j, t), yv = at(1, 1, t);
          if (i >= 0) xv = f->pow(xv, qpow(p, i));
          else yv = f->pow(yv, qpow(p, -i));
          acc = f->add(acc, f->mul(xv, yv));
        }
        return acc;
      };
      for (int j = 1; j <= 2; ++j)
        for (int r = 1; r < n; ++r) {
          Coef acc = 0;
          for (int i = 0; i <= n; ++i) {
            Coef c = i < n ? ((n - i) % 2 ? f->neg(cstar[i]) : cstar[i]) : 1;
            Coef term = f->mul(c, f->pow(u(j, r - i), qpow(p, std::min(r, i))));
            acc = i % 2 ? f->sub(acc, term) : f->add(acc, term);
          }
          EXPECT_EQ(acc, 0u) << "n=" << n << " p=" << p << " j=" << j << " r=" << r;
        }
    }
  }
}

class DetIdentity : public ::testing::TestWithParam<TCase> {};

TEST_P(DetIdentity, BothOrientations) {
  auto [n, p, e] = GetParam();
  auto f = FieldCtx::make(p, e);
  InvariantBuilder b(f, Space{n, 2, 2});
  for (int c = 1; c <= 2; ++c) {
    EXPECT_TRUE(check_det_identity(b, c)) << "j=" << c;
    EXPECT_TRUE(check_det_identity_mirror(b, c)) << "k=" << c;
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, DetIdentity,
                         ::testing::Values(TCase{1, 2, 1}, TCase{1, 5, 1}, TCase{2, 2, 1}, TCase{2, 3, 1},
                                           TCase{2, 2, 2}, TCase{3, 2, 1}, TCase{3, 3, 1}));

TEST(DetIdentity, MatrixShape) {
  auto f = FieldCtx::make(3, 1);
  InvariantBuilder b(f, Space{2, 2, 2});
  auto m = u_matrix(b, 2);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0][1], b.get("u[2,-1]"));
  EXPECT_EQ(m[1][0], b.get("u[2,1]"));
  EXPECT_EQ(m[1][1], b.get("u[2,0]").pow(3));
  auto v = v_matrix(b, 2);
  EXPECT_EQ(v[0][1], b.get("v[2,1]"));
  EXPECT_EQ(v[1][0], b.get("v[2,-1]"));
}

class Hypersurface : public ::testing::TestWithParam<TCase> {};

TEST_P(Hypersurface, HoldsForEveryPair) {
  auto [n, p, e] = GetParam();
  auto f = FieldCtx::make(p, e);
  InvariantBuilder b(f, Space{n, 2, 2});
  for (int j = 1; j <= 2; ++j)
    for (int k = 1; k <= 2; ++k) EXPECT_TRUE(check_hypersurface_n2(b, j, k)) << j << "," << k;
}

INSTANTIATE_TEST_SUITE_P(Grid, Hypersurface,
                         ::testing::Values(TCase{2, 2, 1}, TCase{2, 3, 1}, TCase{2, 2, 2}, TCase{2, 5, 1}));

TEST(Hypersurface, SignMattersAndDomainChecked) {
  auto f = FieldCtx::make(3, 1);
  InvariantBuilder b(f, Space{2, 1, 1});
  auto r = hypersurface_residual(b);
  auto flipped = r + b.get("f[1,1]").pow(3) * b.get("fstar[1,2]").scale(2);
  EXPECT_FALSE(flipped.is_zero());
  InvariantBuilder b3(f, Space{3, 1, 1});
  EXPECT_THROW(hypersurface_residual(b3), Error);
}

TEST(RTemplates, Shapes) {
  auto t = make_template(RKind::Rplus1, 1, 3, PairView{}, 2);
  EXPECT_EQ(t.name(), "R1+(1,1)");
  ASSERT_EQ(t.terms.size(), 3u);
  EXPECT_EQ(t.terms[2].pair_index, -1);
  EXPECT_TRUE(t.terms[2].unit);
  ASSERT_EQ(t.ring.size(), 2u);
  EXPECT_EQ(t.ring[1].str(), "fstar[1,2]");

  auto r2 = make_template(RKind::R, 2, 3, PairView{false, 2}, 2);
  EXPECT_EQ(r2.name(), "R2(2,1)");
  ASSERT_EQ(r2.ring.size(), 2u);
  EXPECT_EQ(r2.ring[0].str(), "f[2,1]");
  EXPECT_EQ(r2.ring[1].str(), "fstar[1,1]");

  auto m = make_template(RKind::Rminus, 3, 3, PairView{true, 2}, 3);
  EXPECT_EQ(m.name(), "R3-*(2,1)");
  EXPECT_EQ(m.lhs[0].first.str(), "fstar[2,3]");
  EXPECT_EQ(m.lhs[1].first.str(), "f[1,1]");
  EXPECT_EQ(m.lhs[1].second, 3);
  for (auto& term : m.terms) EXPECT_LE(term.pair_index, 1);

  EXPECT_THROW(make_template(RKind::R, 1, 3, PairView{}, 2), Error);
  EXPECT_THROW(make_template(RKind::Rplus1, 1, 1, PairView{}, 2), Error);
}

struct RCase {
  int p;
  RKind kind;
  int s;
  PairView view;
  bool printed_ok;
};

class RSolver : public ::testing::TestWithParam<RCase> {};

TEST_P(RSolver, RecoversNonzeroCoefficients) {
  auto c = GetParam();
  auto f = FieldCtx::make(c.p, 1);
  InvariantBuilder b(f, Space{3, 2, 2});
  auto sol = solve_relation_coeffs(b, c.kind, c.s, c.view);
  EXPECT_TRUE(sol.feasible) << sol.relation;
  EXPECT_TRUE(sol.residual_zero) << sol.relation;
  EXPECT_TRUE(sol.all_nonzero) << sol.relation;
  EXPECT_EQ(sol.nullity, 0) << sol.relation;
  EXPECT_EQ(sol.variant == TemplateVariant::Printed, c.printed_ok) << sol.relation;
  EXPECT_EQ(sol.printed_failures.empty(), c.printed_ok);
}

INSTANTIATE_TEST_SUITE_P(
    N3, RSolver,
    ::testing::Values(RCase{2, RKind::Rplus1, 1, {false, 1}, true}, RCase{2, RKind::R, 2, {false, 1}, false},
                      RCase{2, RKind::Rminus, 3, {false, 1}, false}, RCase{2, RKind::Rplus1, 1, {false, 2}, true},
                      RCase{2, RKind::R, 2, {false, 2}, false}, RCase{2, RKind::Rminus, 3, {false, 2}, false},
                      RCase{2, RKind::Rplus1, 1, {true, 2}, true}, RCase{2, RKind::R, 2, {true, 2}, false},
                      RCase{2, RKind::Rminus, 3, {true, 2}, false}, RCase{3, RKind::Rplus1, 1, {false, 1}, true},
                      RCase{3, RKind::R, 2, {false, 1}, false}));

// f2 f2* = -f1^(q-1) u[-1] + (f1 f1*)^(q-1) u[0] + u[0]^q - f1*^(q-1) u[1], n = 3.
TEST(RSolver, R2MatchesHandDerivation) {
  auto f = FieldCtx::make(3, 1);
  InvariantBuilder b(f, Space{3, 1, 1});
  auto t = make_template(RKind::R, 2, 3, PairView{}, 3, TemplateVariant::Relaxed);
  auto sol = solve_template(b, t);
  ASSERT_TRUE(sol.feasible);
  auto coeffs = solved_term_coefficients(t, sol, f);
  std::map<std::pair<int, int>, std::string> got;
  for (std::size_t i = 0; i < t.terms.size(); ++i) got[{t.terms[i].pair_index, t.terms[i].twist}] = coeffs[i].str();
  EXPECT_EQ((got[{-1, 0}]), "2*f[1,1]^2");
  EXPECT_EQ((got[{0, 0}]), "f[1,1]^2*fstar[1,1]^2");
  EXPECT_EQ((got[{0, 1}]), "1");
  EXPECT_EQ((got[{1, 0}]), "2*fstar[1,1]^2");
}

TEST(RSolver, CorruptedCoefficientLeavesResidual) {
  auto f = FieldCtx::make(2, 1);
  InvariantBuilder b(f, Space{3, 1, 1});
  auto t = make_template(RKind::Rplus1, 1, 3, PairView{}, 2);
  auto sol = solve_template(b, t);
  ASSERT_TRUE(sol.feasible && sol.residual_zero);
  auto coeffs = solved_term_coefficients(t, sol, f);
  coeffs[0] = coeffs[0] + coeffs[0].one();
  RingEndo to_xy{coeffs[0].vars(), {}};
  for (auto& g : t.ring) to_xy.images.push_back(b.get(g));
  MPoly lhs = b.get("f[1,1]").pow(2) * b.get("fstar[1,3]");
  for (std::size_t i = 0; i < t.terms.size(); ++i)
    lhs -= apply_endo(to_xy, coeffs[i]) * b.get(Label{"u", 1, t.terms[i].pair_index}).pow(1u << t.terms[i].twist);
  EXPECT_FALSE(lhs.is_zero());
}

TEST(RSolver, PrintedR2IsInfeasible) {
  auto f = FieldCtx::make(2, 1);
  InvariantBuilder b(f, Space{3, 1, 1});
  auto sol = solve_template(b, make_template(RKind::R, 2, 3, PairView{}, 2));
  EXPECT_FALSE(sol.feasible);
}

}  // namespace
}  // namespace invfield
