#include "invfield/gf.hpp"

#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace invfield {
namespace {

// Independent schoolbook reference: multiply two coefficient vectors over
// GF(p) and reduce by a monic modulus.
std::vector<int> ref_mul(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& mod, int p) {
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  const std::size_t deg = mod.size() - 1;
  for (std::size_t top = prod.size(); top-- > deg;) {
    int c = prod[top];
    if (!c) continue;
    for (std::size_t i = 0; i <= deg; ++i) prod[top - deg + i] = ((prod[top - deg + i] - c * mod[i]) % p + p) % p;
  }
  prod.resize(deg);
  return prod;
}

struct FieldCase {
  int p;
  int e;
};

class FieldAxioms : public ::testing::TestWithParam<FieldCase> {};

TEST_P(FieldAxioms, MatchesReferenceMultiplication) {
  auto f = FieldCtx::make(GetParam().p, GetParam().e);
  for (Coef a = 0; a < static_cast<Coef>(f->q()); ++a)
    for (Coef b = 0; b < static_cast<Coef>(f->q()); ++b)
      ASSERT_EQ(f->digits(f->mul(a, b)), ref_mul(f->digits(a), f->digits(b), f->modulus(), f->p())) << a << "*" << b;
}

TEST_P(FieldAxioms, IdentitiesAndFrobenius) {
  auto f = FieldCtx::make(GetParam().p, GetParam().e);
  const int p = f->p();
  for (Coef a = 0; a < static_cast<Coef>(f->q()); ++a) {
    EXPECT_EQ(f->add(a, 0), a);
    EXPECT_EQ(f->mul(a, 1), a);
    EXPECT_EQ(f->mul(a, 0), 0u);
    EXPECT_EQ(f->add(a, f->neg(a)), 0u);
    if (a) {
      EXPECT_EQ(f->pow(a, f->q() - 1), 1u);
      EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
    }
    for (Coef b = 0; b < static_cast<Coef>(f->q()); ++b)
      EXPECT_EQ(f->pow(f->add(a, b), p), f->add(f->pow(a, p), f->pow(b, p)));
  }
}

TEST_P(FieldAxioms, EnumerationIsCanonical) {
  auto f = FieldCtx::make(GetParam().p, GetParam().e);
  auto elems = enumerate_field(f);
  ASSERT_EQ(static_cast<int>(elems.size()), f->q());
  EXPECT_TRUE(elems.front().is_zero());
  std::set<Coef> seen;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    seen.insert(elems[i].code());
    if (i) EXPECT_LT(elems[i - 1].coeffs(), elems[i].coeffs());
  }
  EXPECT_EQ(static_cast<int>(seen.size()), f->q());
}

TEST_P(FieldAxioms, PrimitiveGeneratesUnits) {
  auto f = FieldCtx::make(GetParam().p, GetParam().e);
  std::set<Coef> powers;
  Coef x = 1;
  for (int i = 0; i < f->q() - 1; ++i) {
    powers.insert(x);
    x = f->mul(x, f->primitive());
  }
  EXPECT_EQ(static_cast<int>(powers.size()), f->q() - 1);
}

INSTANTIATE_TEST_SUITE_P(DeskFields, FieldAxioms,
                         ::testing::Values(FieldCase{2, 1}, FieldCase{3, 1}, FieldCase{5, 1}, FieldCase{2, 2},
                                           FieldCase{2, 3}, FieldCase{3, 2}, FieldCase{2, 4}, FieldCase{5, 2},
                                           FieldCase{7, 2}));

TEST(Field, BuiltinModuliAreIrreducible) {
  for (int p : {2, 3, 5, 7})
    for (int e = 2; e <= 4; ++e) {
      auto f = FieldCtx::make(p, e);
      // No root in GF(p) is the cheap half of the check; the full test is in is_irreducible.
      for (int x = 0; x < p; ++x) {
        long long v = 0, pw = 1;
        for (int c : f->modulus()) {
          v += c * pw;
          pw *= x;
        }
        EXPECT_NE(v % p, 0) << p << "^" << e;
      }
    }
}

TEST(Field, SmallExamples) {
  auto f3 = FieldCtx::make(3, 1);
  EXPECT_EQ(f3->mul(2, 2), 1u);
  EXPECT_EQ(enumerate_field(f3).size(), 3u);

  auto f4 = FieldCtx::make(2, 2, std::vector<int>{1, 1, 1});
  EXPECT_EQ(f4->q(), 4);
  Coef X = f4->from_digits({0, 1});
  EXPECT_EQ(f4->digits(f4->mul(X, X)), (std::vector<int>{1, 1}));
  EXPECT_EQ(f4->format(f4->mul(X, X)), "[1,1]");
  EXPECT_EQ(f4->parse("[1,1]"), f4->mul(X, X));

  auto f2 = FieldCtx::make(2, 1);
  EXPECT_EQ(f2->q(), 2);
  EXPECT_EQ(f2->format(1), "1");
}

TEST(Field, Errors) {
  EXPECT_THROW(FieldCtx::make(4, 1), Error);
  EXPECT_THROW(FieldCtx::make(2, 2, std::vector<int>{1, 0, 1}), Error);
  EXPECT_THROW(FieldCtx::make(11, 3), Error);
  auto f = FieldCtx::make(3, 1);
  EXPECT_THROW(f->inv(0), Error);
  try {
    f->inv(0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::division_by_zero);
  }
  auto g = FieldCtx::make(5, 1);
  EXPECT_THROW(FieldElem(f, 1) + FieldElem(g, 1), Error);
}

TEST(Field, ElementWrapper) {
  auto f = FieldCtx::make(3, 2);
  for (auto a : enumerate_field(f)) {
    if (a.is_zero()) continue;
    EXPECT_EQ(a * a.inv(), FieldElem::one(f));
    EXPECT_EQ(a / a, FieldElem::one(f));
    EXPECT_EQ(a.pow(f->q()), a);
    EXPECT_EQ(a - a, FieldElem::zero(f));
  }
}

TEST(Embedding, IsARingHomomorphism) {
  for (auto [p, e, E] : {std::tuple{2, 1, 4}, std::tuple{2, 2, 4}, std::tuple{3, 2, 4}, std::tuple{5, 1, 2}}) {
    auto small = FieldCtx::make(p, e), big = FieldCtx::make(p, E);
    auto emb = embed_field(*small, *big);
    std::set<Coef> image(emb.begin(), emb.end());
    EXPECT_EQ(image.size(), static_cast<std::size_t>(small->q()));
    for (Coef a = 0; a < static_cast<Coef>(small->q()); ++a)
      for (Coef b = 0; b < static_cast<Coef>(small->q()); ++b) {
        EXPECT_EQ(emb[small->add(a, b)], big->add(emb[a], emb[b]));
        EXPECT_EQ(emb[small->mul(a, b)], big->mul(emb[a], emb[b]));
      }
  }
  EXPECT_THROW(embed_field(*FieldCtx::make(2, 3), *FieldCtx::make(2, 4)), Error);
  EXPECT_THROW(embed_field(*FieldCtx::make(3, 1), *FieldCtx::make(2, 2)), Error);
}

}  // namespace
}  // namespace invfield
