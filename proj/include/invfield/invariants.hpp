#pragma once

// Invariant polynomials of GL/SL/U acting on mW + dW*, addressed by label.
//
// Labels:
//   c[j,i]   Dickson invariant of vector copy j, 0 <= i < n
//   cstar[k,i]  its image in covector copy k
//   d[j,n]   Moore determinant of copy j;  dstar[k,n] the covector analogue
//   f[j,i]   Mui invariant, 1 <= i <= n;   fstar[k,i] its image
//   u[j,i]   pairing of vector copy j with covector copy 1 (any integer i)
//   v[k,i]   pairing of covector copy k with vector copy 1 (any integer i)

#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "invfield/gf.hpp"
#include "invfield/groups.hpp"
#include "invfield/mpoly.hpp"

namespace invfield {

struct Label {
  std::string kind;
  int a = 1;
  int b = 0;

  std::string str() const;
  static Label parse(std::string_view text);
  auto operator<=>(const Label&) const = default;
};

// c_i = (-1)^(n-i) kappa_i  (Alternating)  or  c_i = kappa_i  (Plain), where
// prod_{v in span}(X + v) = sum_i kappa_i X^(q^i).
enum class DicksonSign { Alternating, Plain };
std::string dickson_sign_name(DicksonSign s);

// u(j,k;i): sum_t x[j,t]^(q^i) y[k,t] for i >= 0, sum_t x[j,t] y[k,t]^(q^-i) for i < 0.
MPoly pairing(const Field& f, const Space& s, int j, int k, int i);
MPoly pairing_u(const Field& f, const Space& s, int j, int i);
MPoly pairing_v(const Field& f, const Space& s, int k, int i);

// Coefficients kappa_0..kappa_r of the subspace polynomial prod_{v in span(vars)}(X + v),
// r = vars.size(). The span is taken over the given variable indices.
std::vector<MPoly> subspace_poly(const Field& f, const Space& s, const std::vector<std::size_t>& vars);
// P(value) for P given by its q-polynomial coefficients.
MPoly eval_qpoly(const std::vector<MPoly>& coeffs, const MPoly& value);

MPoly mui(const Field& f, const Space& s, int j, int i);
MPoly mui_star(const Field& f, const Space& s, int k, int i);

struct DicksonResult {
  std::vector<MPoly> c;  // c_0 .. c_{n-1}
  MPoly d;               // Moore determinant
};
DicksonResult dickson(const Field& f, const Space& s, int j, DicksonSign sign = DicksonSign::Alternating);
// c*_{k,i} = *_{1k}(c_{1,i}); d*_{k,n} is the determinant of the Moore matrix in y[k,.].
DicksonResult dickson_star(const Field& f, const Space& s, int k, DicksonSign sign = DicksonSign::Alternating);

// Memoizing constructor of labeled invariants for one (field, space, sign).
// Safe for concurrent use.
class InvariantBuilder {
 public:
  InvariantBuilder(Field field, Space space, DicksonSign sign = DicksonSign::Alternating);

  const Field& field() const { return field_; }
  const Space& space() const { return space_; }
  DicksonSign sign() const { return sign_; }

  const MPoly& get(const Label& label) const;
  const MPoly& get(std::string_view label) const { return get(Label::parse(label)); }
  void validate(const Label& label) const;

 private:
  MPoly build(const Label& label) const;

  Field field_;
  Space space_;
  DicksonSign sign_;
  mutable std::recursive_mutex mu_;
  mutable std::map<Label, MPoly> cache_;
};

struct GeneratorSet {
  std::string name;
  std::vector<Label> labels;
  std::vector<std::string> parts;  // sub-set tag per member ("A", "B", "C", ...)
};

// Known names: pGL, pSL, pU_n1, pU_n2, pU_n3, prec_GL, prec_SL, prec_U,
// thm_GL, thm_SL, thm_UU.
GeneratorSet generating_set(std::string_view name, const Space& space);
std::vector<std::string> generating_set_names();
// The group whose invariants the named set describes.
Family generating_set_family(std::string_view name);

}  // namespace invfield
