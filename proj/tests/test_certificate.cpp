#include "invfield/certificate.hpp"

#include <chrono>

#include "gtest/gtest.h"
#include "invfield/relations.hpp"

namespace invfield {
namespace {

struct CertCase {
  Theorem th;
  int n, p, m, d;
};

std::string case_name(const ::testing::TestParamInfo<CertCase>& info) {
  auto c = info.param;
  return theorem_name(c.th) + "_n" + std::to_string(c.n) + "_q" + std::to_string(c.p) + "_m" + std::to_string(c.m) +
         "_d" + std::to_string(c.d);
}

class Certificates : public ::testing::TestWithParam<CertCase> {};

TEST_P(Certificates, BuildVerifyRoundTripAndCorrupt) {
  auto c = GetParam();
  auto f = FieldCtx::make(c.p, 1);
  auto cert = build_certificate(c.th, f, Space{c.n, c.m, c.d});
  auto v = verify_certificate(cert);
  ASSERT_TRUE(v.error.empty()) << v.error;
  EXPECT_TRUE(v.generators_match);
  EXPECT_TRUE(v.closed) << (v.missing.empty() ? "" : v.missing.front());
  for (auto& s : v.steps) EXPECT_TRUE(s.pass) << s.index << " " << s.target << ": " << s.detail;
  EXPECT_TRUE(v.pass);

  auto text = certificate_to_json(cert);
  auto back = certificate_from_json(text);
  EXPECT_EQ(certificate_to_json(back), text);
  EXPECT_TRUE(verify_certificate(back).pass);

  auto idx = first_derived_step(cert);
  auto bad = verify_certificate(corrupt_step(cert, idx));
  EXPECT_FALSE(bad.pass);
  for (auto& s : bad.steps) {
    if (s.index == idx) EXPECT_FALSE(s.pass);
    else if (s.index < idx) EXPECT_TRUE(s.pass);
  }
}

INSTANTIATE_TEST_SUITE_P(Desk, Certificates,
                         ::testing::Values(CertCase{Theorem::GL, 2, 2, 2, 2}, CertCase{Theorem::GL, 2, 3, 2, 2},
                                           CertCase{Theorem::GL, 3, 2, 2, 2}, CertCase{Theorem::SL, 2, 2, 2, 2},
                                           CertCase{Theorem::SL, 2, 3, 2, 2}, CertCase{Theorem::SL, 3, 2, 2, 2},
                                           CertCase{Theorem::SL, 2, 3, 1, 1}, CertCase{Theorem::UU, 2, 2, 2, 2},
                                           CertCase{Theorem::UU, 3, 2, 2, 1}, CertCase{Theorem::UU, 3, 2, 2, 2},
                                           CertCase{Theorem::UU, 1, 3, 2, 2}, CertCase{Theorem::UU, 2, 3, 2, 2},
                                           CertCase{Theorem::pU3, 3, 2, 1, 1}, CertCase{Theorem::GL, 1, 3, 2, 2}),
                         case_name);

TEST(Certificates, GlChainOrder) {
  auto cert = build_certificate(Theorem::GL, FieldCtx::make(2, 1), Space{2, 2, 2});
  std::vector<std::string> targets;
  for (auto& s : cert.steps) targets.push_back(s.target.str() + (s.axiom ? "!" : ""));
  std::vector<std::string> want = {"c[1,1]!", "cstar[1,0]!", "cstar[1,1]!", "u[2,1]", "c[2,0]", "c[2,1]!",
                                   "v[2,1]",  "cstar[2,0]!", "cstar[2,1]!"};
  EXPECT_EQ(targets, want);
  EXPECT_EQ(cert.steps[3].den, "cstar[1,0]");
  EXPECT_EQ(cert.steps[3].justification, "T*_1(j=2)");
}

// u[2,1] = (c*_{1,1} u[2,0]^2 + u[2,-1]^2) / c*_{1,0} in characteristic 2.
TEST(Certificates, TStarStepText) {
  auto cert = build_certificate(Theorem::GL, FieldCtx::make(2, 1), Space{2, 2, 2});
  EXPECT_EQ(cert.steps[3].num, "cstar[1,1]*u[2,0]^2 + u[2,-1]^2");
}

TEST(Certificates, UuNamesRecoveredRelations) {
  auto cert = build_certificate(Theorem::UU, FieldCtx::make(2, 1), Space{3, 2, 1});
  std::vector<std::string> targets;
  for (auto& s : cert.steps) targets.push_back(s.target.str());
  std::vector<std::string> want = {"fstar[1,2]", "fstar[1,3]", "f[1,3]", "u[2,1]", "f[2,2]", "f[2,3]"};
  EXPECT_EQ(targets, want);
  EXPECT_EQ(cert.steps[3].justification.rfind("R1+(2,1)", 0), 0u);
  EXPECT_EQ(cert.steps[4].den, "fstar[1,2]");
}

// n = 1: c*_{1,0} = y^(q-1) = (x y)^(q-1) / x^(q-1).
TEST(Certificates, HandWrittenSingleStep) {
  auto f = FieldCtx::make(3, 1);
  Certificate c = build_certificate(Theorem::GL, f, Space{1, 1, 1});
  ASSERT_EQ(c.steps.size(), 1u);
  c.steps[0] = {Label{"cstar", 1, 0}, false, "u[1,0]^2", "c[1,0]", "n=1", {}};
  EXPECT_TRUE(verify_certificate(c).pass);

  c.steps[0].num = "c[1,0]";
  c.steps[0].target = Label{"c", 1, 0};
  auto v = verify_certificate(c);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.steps[0].detail, "target already known");

  c.generators.push_back({"cstar", 1, 0});
  EXPECT_FALSE(verify_certificate(c).generators_match);
}

TEST(Certificates, RejectsForwardReference) {
  auto cert = build_certificate(Theorem::GL, FieldCtx::make(2, 1), Space{2, 2, 1});
  std::swap(cert.steps[0], cert.steps[3]);
  auto v = verify_certificate(cert);
  EXPECT_FALSE(v.pass);
  EXPECT_FALSE(v.steps[0].pass);
  EXPECT_NE(v.steps[0].detail.find("before it is known"), std::string::npos);
}

TEST(Certificates, MissingStepBreaksClosure) {
  auto cert = build_certificate(Theorem::GL, FieldCtx::make(2, 1), Space{2, 2, 1});
  cert.steps.pop_back();
  auto v = verify_certificate(cert);
  EXPECT_FALSE(v.closed);
  EXPECT_EQ(v.missing, std::vector<std::string>{"c[2,1]"});
}

TEST(Certificates, AxiomNeedsInvariantTarget) {
  auto cert = build_certificate(Theorem::GL, FieldCtx::make(3, 1), Space{2, 1, 1});
  cert.steps[0].target = Label{"f", 1, 2};
  cert.steps[0].num = "f[1,2]";
  auto v = verify_certificate(cert);
  EXPECT_FALSE(v.steps[0].pass);
  EXPECT_EQ(v.steps[0].detail, "axiom target is not invariant");
}

TEST(Certificates, JsonErrors) {
  EXPECT_THROW(certificate_from_json("{"), Error);
  EXPECT_THROW(certificate_from_json(R"({"schema":"other"})"), Error);
  EXPECT_THROW(certificate_from_json(R"({"schema":"invfield-cert/1","theorem":"XX"})"), Error);
  EXPECT_THROW(parse_theorem("gl"), Error);
  EXPECT_THROW(build_certificate(Theorem::pU3, FieldCtx::make(2, 1), Space{2, 1, 1}), Error);
}

TEST(Certificates, LabelScan) {
  auto ls = labels_in("u[1,-1]^2*cstar[1,0] + 2*u[1,-1] + fstar[2, 1]");
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0].str(), "cstar[1,0]");
  EXPECT_EQ(ls[2].str(), "u[1,-1]");
}

}  // namespace
}  // namespace invfield
