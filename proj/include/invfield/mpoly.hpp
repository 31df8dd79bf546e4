#pragma once

// Sparse multivariate polynomials over GF(q).
//
// A polynomial lives over an ordered variable set. The usual set is the
// ambient ring of m vectors and d covectors in dimension n, with variables
// x[j,i] and y[k,i] ordered lexicographically by (block, copy, coord). Label
// sets (named invariants such as "u[2,-1]") reuse the same machinery for
// symbolic expressions in certificates and relation templates.
//
// Terms are kept sorted in descending lexicographic order of the exponent
// vector, so equality is structural and printing is deterministic.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "invfield/gf.hpp"

namespace invfield {

inline constexpr std::size_t kMaxVars = 24;
using Exp = std::uint16_t;

struct Mono {
  std::array<Exp, kMaxVars> e{};

  auto operator<=>(const Mono&) const = default;
  std::uint64_t degree() const;
};

struct MonoHash {
  std::size_t operator()(const Mono& m) const noexcept;
};

enum class Block : std::uint8_t { X = 0, Y = 1 };

struct VarId {
  Block block = Block::X;
  int copy = 1;
  int coord = 1;
  auto operator<=>(const VarId&) const = default;
};

// Ambient ring F[mW + dW*] in dimension n.
struct Space {
  int n = 1;
  int m = 1;
  int d = 1;

  std::size_t nvars() const { return static_cast<std::size_t>((m + d) * n); }
  std::size_t index(VarId v) const;
  VarId var(std::size_t idx) const;
  bool operator==(const Space&) const = default;
};

class VarSet {
 public:
  static std::shared_ptr<const VarSet> xy(const Space& space);
  static std::shared_ptr<const VarSet> labels(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  bool is_xy() const { return xy_; }
  const Space& space() const { return space_; }
  bool operator==(const VarSet& o) const { return xy_ == o.xy_ && names_ == o.names_; }

 private:
  VarSet() = default;
  bool xy_ = false;
  Space space_{};
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using Vars = std::shared_ptr<const VarSet>;

struct Term {
  Mono mono;
  Coef coef;
};

class MPoly {
 public:
  MPoly(Field field, Vars vars);

  static MPoly constant(Field field, Vars vars, Coef c);
  static MPoly variable(Field field, Vars vars, std::size_t idx, Exp e = 1);
  static MPoly x(Field field, const Space& s, int copy, int coord);
  static MPoly y(Field field, const Space& s, int copy, int coord);
  // Builds from unsorted terms; combines duplicates and prunes zeros.
  static MPoly from_terms(Field field, Vars vars, std::vector<Term> terms);
  // Parses the canonical text format. Unknown variable names are errors.
  static MPoly parse(Field field, Vars vars, std::string_view text);

  const Field& field() const { return field_; }
  const Vars& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Coef coefficient(const Mono& m) const;
  std::uint64_t total_degree() const;
  // Degree in the variables with index in [lo, hi); max over terms.
  std::uint64_t partial_degree(std::size_t lo, std::size_t hi) const;
  bool uses_var(std::size_t idx) const;

  MPoly zero() const { return MPoly(field_, vars_); }
  MPoly one() const { return constant(field_, vars_, 1); }

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scale(Coef c) const;
  MPoly pow(std::uint64_t k) const;
  // f^p, computed coefficientwise.
  MPoly frobenius_p() const;

  bool operator==(const MPoly& o) const;

  std::string str() const;

 private:
  void check_compatible(const MPoly& o) const;

  Field field_;
  Vars vars_;
  std::vector<Term> terms_;
};

// Exponent arithmetic with overflow checks.
Exp checked_exp(std::uint64_t v);

// Algebra endomorphism given by the image of every source variable.
struct RingEndo {
  Vars source;
  std::vector<MPoly> images;

  static RingEndo identity(const Field& field, const Vars& vars);
};

// Caches image powers across repeated applications of one endomorphism.
class PowerCache {
 public:
  explicit PowerCache(const RingEndo& endo) : endo_(endo), cache_(endo.images.size()) {}
  const MPoly& power(std::size_t var, Exp e);

 private:
  const RingEndo& endo_;
  std::vector<std::map<Exp, MPoly>> cache_;
};

MPoly apply_endo(const RingEndo& endo, const MPoly& f);
MPoly apply_endo(PowerCache& cache, const RingEndo& endo, const MPoly& f);
// (a . b)(f) = a(b(f)).
RingEndo compose(const RingEndo& a, const RingEndo& b);

enum class Frobenius { F, Fstar };
// F^power raises every x-variable to the q^power-th power; F*^power does the same to y.
RingEndo frobenius_endo(const Field& field, const Space& space, Frobenius which, int power);
// x[j,i] <-> y[k,n+1-i]; all other variables fixed.
RingEndo involution_endo(const Field& field, const Space& space, int j, int k);

// Laplace expansion along the first row.
MPoly poly_det(const std::vector<std::vector<MPoly>>& m);

struct RatExpr {
  MPoly num;
  MPoly den;
};

bool rat_eq(const RatExpr& a, const RatExpr& b);

Coef evaluate(const MPoly& f, std::span<const Coef> point);
FieldElem evaluate(const MPoly& f, const std::map<VarId, FieldElem>& point);

// Rank over GF(q) of the Jacobian matrix at the point (formal derivatives).
int jacobian_rank(const std::vector<MPoly>& polys, std::span<const Coef> point);

// Rank and solution helpers over GF(q), used by relation recovery.
struct LinearSolution {
  bool feasible = false;
  int rank = 0;
  int nullity = 0;
  std::vector<Coef> x;
};
// Solves A x = b exactly; A is row-major rows x cols.
LinearSolution solve_linear(const FieldCtx& f, std::vector<std::vector<Coef>> a, std::vector<Coef> b);
int matrix_rank(const FieldCtx& f, std::vector<std::vector<Coef>> a);

}  // namespace invfield
