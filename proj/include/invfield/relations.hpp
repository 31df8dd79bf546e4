#pragma once

// Polynomial identities among the invariants, recovery of the unspecified
// coefficients in the R-relations, and the sign/twist bootstrap.

#include <optional>
#include <string>
#include <vector>

#include "invfield/invariants.hpp"
#include "invfield/mpoly.hpp"

namespace invfield {

enum class Twist { Staggered, Uniform };
enum class VOrientation { AsPrinted, Reflected };

struct Conventions {
  DicksonSign sign = DicksonSign::Alternating;
  // Staggered: the i-th term of (T_r*) carries q^min(r,i); Uniform: q^r for every i >= 1.
  Twist twist = Twist::Staggered;
  // AsPrinted: (T_r) pairs c_{1,i} with v[k,i-r]; Reflected: with v[k,r-i].
  VOrientation v = VOrientation::Reflected;

  std::string describe() const;
  auto operator<=>(const Conventions&) const = default;
};

std::string twist_name(Twist t);
std::string v_orientation_name(VOrientation v);

// sum_{i=0}^{n} (-1)^i c*_{1,i} u[j,r-i]^(q^tw(r,i)), with c*_{1,n} = 1.
MPoly t_star_residual(const InvariantBuilder& b, int j, int r, const Conventions& conv);
// sum_{i=0}^{n} (-1)^i c_{1,i} v[k,idx]^(q^tw(r,i)), idx per the v orientation.
MPoly t_residual(const InvariantBuilder& b, int k, int r, const Conventions& conv);
bool check_T_star(const InvariantBuilder& b, int j, int r, const Conventions& conv);
bool check_T(const InvariantBuilder& b, int k, int r, const Conventions& conv);

// U_j(r,s) = u[j,r-s]^(q^min(r,s)), 0 <= r,s < n.
std::vector<std::vector<MPoly>> u_matrix(const InvariantBuilder& b, int j);
// V_k(r,s) = v[k,s-r]^(q^min(r,s)): the same matrix for the pair (1,k).
std::vector<std::vector<MPoly>> v_matrix(const InvariantBuilder& b, int k);
// d[j,n] * dstar[1,n] == det U_j.
bool check_det_identity(const InvariantBuilder& b, int j);
// d[1,n] * dstar[k,n] == det V_k.
bool check_det_identity_mirror(const InvariantBuilder& b, int k);

// u(j,k;0)^q - (f f*)^(q-1) u(j,k;0) - f^q f2* - f*^q f2 for the pair (j,k); n = 2.
MPoly hypersurface_residual(const InvariantBuilder& b, int j = 1, int k = 1);
bool check_hypersurface_n2(const InvariantBuilder& b, int j = 1, int k = 1);

struct BootstrapCandidate {
  Conventions conv;
  bool pass = false;
  std::string failure;  // first failing instance, empty on pass
};
struct BootstrapResult {
  std::vector<BootstrapCandidate> candidates;
  std::optional<Conventions> chosen;
};
// Tests every convention in the documented family on n in {2,3}, q in {2,3}
// (m = d = 2): c_0 = d^(q-1) and every (T_r*), (T_r). Exactly one candidate is
// expected to survive.
BootstrapResult run_bootstrap();
// The bootstrap winner; throws if the bootstrap is not conclusive.
const Conventions& resolved_conventions();

// ---------------------------------------------------------------- R-relations

enum class RKind { Rplus1, R, Rminus };

// Which pair of copies the relation lives on. For Direct, the vector side is
// f[j,.], the covector side fstar[1,.] and the pairing u[j,.]. For Mirrored,
// the image under the involution: vector side fstar[k,.], covector side
// f[1,.] and pairing v[k,.].
struct PairView {
  bool mirrored = false;
  int copy = 1;

  Label vec_mui(int s) const { return mirrored ? Label{"fstar", copy, s} : Label{"f", copy, s}; }
  Label cov_mui(int s) const { return mirrored ? Label{"f", 1, s} : Label{"fstar", 1, s}; }
  Label pair(int i) const { return mirrored ? Label{"v", copy, i} : Label{"u", copy, i}; }
  std::string suffix() const;
};

enum class TemplateVariant { Printed, Relaxed };
std::string template_variant_name(TemplateVariant v);

struct RTerm {
  int pair_index = 0;
  int twist = 0;        // pairing raised to q^twist
  bool unit = false;    // coefficient fixed to 1 in the printed variant
  std::string slot;     // coefficient name, e.g. "alpha_0"
};

struct RelationTemplate {
  RKind kind = RKind::R;
  int s = 1;
  int n = 3;
  PairView view;
  TemplateVariant variant = TemplateVariant::Printed;
  std::vector<std::pair<Label, int>> lhs;  // product of label^exponent
  std::vector<RTerm> terms;
  std::vector<Label> ring;                 // generators of the coefficient ring

  std::string name() const;
};

// R_1^+ (s = 1), R_s (s >= 2) and R_s^- (s >= 2) for dimension n >= 2.
RelationTemplate make_template(RKind kind, int s, int n, PairView view, int q,
                               TemplateVariant variant = TemplateVariant::Printed);

struct SlotValue {
  std::string slot;
  std::size_t term = 0;
  MPoly label_poly;  // in the ring generators
  bool required_nonzero = true;
};

struct CoeffSolution {
  std::string relation;
  TemplateVariant variant = TemplateVariant::Printed;
  bool feasible = false;
  int unknowns = 0;
  int equations = 0;
  int rank = 0;
  int nullity = 0;
  std::vector<SlotValue> slots;
  std::vector<Label> ring;
  bool residual_zero = false;
  bool all_nonzero = false;
  std::vector<std::string> printed_failures;  // filled when the printed template was rejected
};

// Exact solve of one template. Does not fall back to other variants.
CoeffSolution solve_template(const InvariantBuilder& b, const RelationTemplate& t);
// Tries the printed template first; if it is infeasible, the relaxed one.
CoeffSolution solve_relation_coeffs(const InvariantBuilder& b, RKind kind, int s, PairView view);

// Coefficient of every term of a solved template as a label polynomial,
// including the unit terms (as the constant 1).
std::vector<MPoly> solved_term_coefficients(const RelationTemplate& t, const CoeffSolution& sol, const Field& f);

}  // namespace invfield
