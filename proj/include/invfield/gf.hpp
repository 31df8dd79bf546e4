#pragma once

// Exact arithmetic in GF(p^e) using a polynomial basis over GF(p).
//
// Elements are handled internally as integer codes: the element
// c_0 + c_1 X + ... + c_{e-1} X^{e-1} has code sum_i c_i p^i. Small fields
// (q <= 256) keep full addition/multiplication tables; larger ones reduce on
// the fly.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invfield/error.hpp"

namespace invfield {

using Coef = std::uint32_t;

class FieldCtx {
 public:
  // Builds GF(p^e). Without an explicit modulus the built-in table is used
  // (p in {2,3,5,7}, e <= 4). The modulus is given low-to-high and must be
  // monic; it is checked for irreducibility by exhaustive factor search.
  static std::shared_ptr<const FieldCtx> make(int p, int e,
                                              std::optional<std::vector<int>> modulus = {});

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }
  bool is_prime() const { return e_ == 1; }

  Coef zero() const { return 0; }
  Coef one() const { return 1; }
  Coef from_int(long long v) const;
  Coef from_digits(const std::vector<int>& coeffs) const;
  std::vector<int> digits(Coef a) const;

  Coef add(Coef a, Coef b) const;
  Coef sub(Coef a, Coef b) const { return add(a, neg(b)); }
  Coef neg(Coef a) const;
  Coef mul(Coef a, Coef b) const;
  Coef inv(Coef a) const;
  Coef div(Coef a, Coef b) const { return mul(a, inv(b)); }
  Coef pow(Coef a, std::uint64_t k) const;

  // A fixed generator of the multiplicative group (smallest code of order q-1).
  Coef primitive() const { return primitive_; }

  // All q elements, lexicographic on the coefficient vector (c_0 first).
  const std::vector<Coef>& elements() const { return elements_; }

  // Integer for prime fields, "[c0,c1,...]" otherwise.
  std::string format(Coef a) const;
  Coef parse(std::string_view text) const;

  bool same_as(const FieldCtx& o) const {
    return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
  }

 private:
  FieldCtx(int p, int e, std::vector<int> modulus);
  Coef mul_slow(Coef a, Coef b) const;
  Coef add_slow(Coef a, Coef b) const;

  int p_;
  int e_;
  int q_;
  std::vector<int> modulus_;
  bool tables_ = false;
  std::vector<std::uint16_t> add_table_;
  std::vector<std::uint16_t> mul_table_;
  std::vector<Coef> neg_;
  std::vector<Coef> inv_;
  std::vector<Coef> elements_;
  Coef primitive_ = 1;
};

using Field = std::shared_ptr<const FieldCtx>;

bool is_prime(int p);
// Exhaustive search for a monic factor of degree 1..deg/2.
bool is_irreducible(const std::vector<int>& poly, int p);

// Value type wrapper used at API boundaries.
class FieldElem {
 public:
  FieldElem(Field ctx, Coef code);
  static FieldElem zero(Field ctx) { return {std::move(ctx), 0}; }
  static FieldElem one(Field ctx) { return {std::move(ctx), 1}; }

  const Field& ctx() const { return ctx_; }
  Coef code() const { return code_; }
  std::vector<int> coeffs() const { return ctx_->digits(code_); }
  bool is_zero() const { return code_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inv() const;
  FieldElem pow(std::uint64_t k) const;

  bool operator==(const FieldElem& o) const;
  std::string str() const { return ctx_->format(code_); }

 private:
  const FieldCtx& checked(const FieldElem& o) const;
  Field ctx_;
  Coef code_;
};

std::vector<FieldElem> enumerate_field(const Field& ctx);

// Field embedding GF(p^e) -> GF(p^E) for e | E, as a code-to-code table.
// The generator of the small field is sent to the root of its modulus with
// the smallest code in the big field.
std::vector<Coef> embed_field(const FieldCtx& small, const FieldCtx& big);

}  // namespace invfield
