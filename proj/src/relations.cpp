#include "invfield/relations.hpp"

#include <algorithm>
#include <map>

namespace invfield {

std::string twist_name(Twist t) { return t == Twist::Staggered ? "staggered q^min(r,i)" : "uniform q^r"; }

std::string v_orientation_name(VOrientation v) {
  return v == VOrientation::Reflected ? "reflected: (T_r) uses v[k,r-i]" : "as printed: (T_r) uses v[k,i-r]";
}

std::string Conventions::describe() const {
  return "sign=" + dickson_sign_name(sign) + "; twist=" + twist_name(twist) + "; v=" + v_orientation_name(v);
}

namespace {

std::uint64_t qpow(int q, int i) {
  std::uint64_t r = 1;
  for (int t = 0; t < i; ++t) r *= static_cast<std::uint64_t>(q);
  return r;
}

int twist_of(const Conventions& conv, int r, int i) {
  if (i == 0) return 0;
  return conv.twist == Twist::Staggered ? std::min(r, i) : r;
}

void check_range(const InvariantBuilder& b, int r) {
  require(b.space().n >= 2, ErrorCode::domain, "T-relations need n >= 2");
  require(r >= 1 && r <= b.space().n - 1, ErrorCode::invalid_argument, "T-relation index out of range");
}

MPoly t_sum(const InvariantBuilder& b, const std::string& dickson_kind, int r, const Conventions& conv,
            const std::function<Label(int)>& pair_label) {
  require(b.sign() == conv.sign, ErrorCode::mismatch, "builder and conventions use different Dickson signs");
  check_range(b, r);
  const int n = b.space().n;
  const int q = b.field()->q();
  MPoly acc = b.get(pair_label(0)).zero();
  for (int i = 0; i <= n; ++i) {
    MPoly term = b.get(pair_label(i)).pow(qpow(q, twist_of(conv, r, i)));
    if (i < n) term = b.get(Label{dickson_kind, 1, i}) * term;
    acc = (i % 2) ? acc - term : acc + term;
  }
  return acc;
}

}  // namespace

MPoly t_star_residual(const InvariantBuilder& b, int j, int r, const Conventions& conv) {
  return t_sum(b, "cstar", r, conv, [&](int i) { return Label{"u", j, r - i}; });
}

MPoly t_residual(const InvariantBuilder& b, int k, int r, const Conventions& conv) {
  const bool refl = conv.v == VOrientation::Reflected;
  return t_sum(b, "c", r, conv, [&](int i) { return Label{"v", k, refl ? r - i : i - r}; });
}

bool check_T_star(const InvariantBuilder& b, int j, int r, const Conventions& conv) {
  return t_star_residual(b, j, r, conv).is_zero();
}

bool check_T(const InvariantBuilder& b, int k, int r, const Conventions& conv) {
  return t_residual(b, k, r, conv).is_zero();
}

std::vector<std::vector<MPoly>> u_matrix(const InvariantBuilder& b, int j) {
  const int n = b.space().n, q = b.field()->q();
  std::vector<std::vector<MPoly>> m(n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) m[r].push_back(b.get(Label{"u", j, r - s}).pow(qpow(q, std::min(r, s))));
  return m;
}

std::vector<std::vector<MPoly>> v_matrix(const InvariantBuilder& b, int k) {
  const int n = b.space().n, q = b.field()->q();
  std::vector<std::vector<MPoly>> m(n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) m[r].push_back(b.get(Label{"v", k, s - r}).pow(qpow(q, std::min(r, s))));
  return m;
}

bool check_det_identity(const InvariantBuilder& b, int j) {
  const int n = b.space().n;
  return b.get(Label{"d", j, n}) * b.get(Label{"dstar", 1, n}) == poly_det(u_matrix(b, j));
}

bool check_det_identity_mirror(const InvariantBuilder& b, int k) {
  const int n = b.space().n;
  return b.get(Label{"d", 1, n}) * b.get(Label{"dstar", k, n}) == poly_det(v_matrix(b, k));
}

MPoly hypersurface_residual(const InvariantBuilder& b, int j, int k) {
  require(b.space().n == 2, ErrorCode::domain, "the hypersurface relation is stated for n = 2");
  const auto q = static_cast<std::uint64_t>(b.field()->q());
  MPoly w = pairing(b.field(), b.space(), j, k, 0);
  const MPoly& f1 = b.get(Label{"f", j, 1});
  const MPoly& f2 = b.get(Label{"f", j, 2});
  const MPoly& g1 = b.get(Label{"fstar", k, 1});
  const MPoly& g2 = b.get(Label{"fstar", k, 2});
  return w.pow(q) - (f1 * g1).pow(q - 1) * w - f1.pow(q) * g2 - g1.pow(q) * f2;
}

bool check_hypersurface_n2(const InvariantBuilder& b, int j, int k) { return hypersurface_residual(b, j, k).is_zero(); }

// ---------------------------------------------------------------- bootstrap

BootstrapResult run_bootstrap() {
  BootstrapResult out;
  for (DicksonSign sign : {DicksonSign::Alternating, DicksonSign::Plain})
    for (Twist tw : {Twist::Staggered, Twist::Uniform})
      for (VOrientation vo : {VOrientation::AsPrinted, VOrientation::Reflected}) {
        BootstrapCandidate cand;
        cand.conv = {sign, tw, vo};
        for (auto [n, p] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
          if (!cand.failure.empty()) break;
          auto f = FieldCtx::make(p, 1);
          InvariantBuilder b(f, Space{n, 2, 2}, sign);
          const auto q = static_cast<std::uint64_t>(f->q());
          const std::string at = " at n=" + std::to_string(n) + ", q=" + std::to_string(p);
          for (int c = 1; c <= 2 && cand.failure.empty(); ++c) {
            if (b.get(Label{"c", c, 0}) != b.get(Label{"d", c, n}).pow(q - 1))
              cand.failure = "c[" + std::to_string(c) + ",0] != d^(q-1)" + at;
            for (int r = 1; r < n && cand.failure.empty(); ++r) {
              if (!check_T_star(b, c, r, cand.conv))
                cand.failure = "T*_" + std::to_string(r) + " fails for j=" + std::to_string(c) + at;
              else if (!check_T(b, c, r, cand.conv))
                cand.failure = "T_" + std::to_string(r) + " fails for k=" + std::to_string(c) + at;
            }
          }
        }
        cand.pass = cand.failure.empty();
        out.candidates.push_back(cand);
      }
  int winners = 0;
  for (auto& c : out.candidates)
    if (c.pass) {
      ++winners;
      out.chosen = c.conv;
    }
  if (winners != 1) out.chosen.reset();
  return out;
}

const Conventions& resolved_conventions() {
  static const Conventions conv = [] {
    auto r = run_bootstrap();
    require(r.chosen.has_value(), ErrorCode::internal, "sign/twist bootstrap is not conclusive");
    return *r.chosen;
  }();
  return conv;
}

// ---------------------------------------------------------------- R templates

std::string PairView::suffix() const {
  return mirrored ? "*(" + std::to_string(copy) + ",1)" : "(" + std::to_string(copy) + ",1)";
}

std::string template_variant_name(TemplateVariant v) { return v == TemplateVariant::Printed ? "printed" : "relaxed"; }

std::string RelationTemplate::name() const {
  std::string base;
  switch (kind) {
    case RKind::Rplus1: base = "R1+"; break;
    case RKind::R: base = "R" + std::to_string(s); break;
    case RKind::Rminus: base = "R" + std::to_string(s) + "-"; break;
  }
  return base + view.suffix();
}

namespace {

std::string greek(int i) {
  static const char* names[] = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta"};
  return i < 6 ? names[i] : "c" + std::to_string(i);
}

}  // namespace

RelationTemplate make_template(RKind kind, int s, int n, PairView view, int q, TemplateVariant variant) {
  require(n >= 2, ErrorCode::domain, "R-relations need n >= 2");
  RelationTemplate t;
  t.kind = kind;
  t.s = s;
  t.n = n;
  t.view = view;
  t.variant = variant;
  if (kind == RKind::Rplus1) {
    require(s == 1, ErrorCode::invalid_argument, "R1+ has s = 1");
    t.lhs = {{view.vec_mui(1), q}, {view.cov_mui(n), 1}};
    for (int l = 0; l <= n - 1; ++l)
      t.terms.push_back({1 - l, std::min(1, l), l == n - 1, "alpha_" + std::to_string(1 - l)});
    for (int r = 1; r <= n - 1; ++r) t.ring.push_back(view.cov_mui(r));
    return t;
  }
  require(s >= 2 && s <= n, ErrorCode::invalid_argument, "R_s needs 2 <= s <= n");
  const bool minus = kind == RKind::Rminus;
  t.lhs = {{view.vec_mui(s), 1}, {view.cov_mui(n + 1 - s), minus ? q : 1}};
  for (int i = 0; i <= s - 1; ++i)
    for (int l = 0; l <= n - s; ++l) {
      const int idx = minus ? i - l - 1 : i - l;
      const int tw = minus ? std::min(i, l + 1) : std::min(i, l);
      t.terms.push_back({idx, tw, l == n - s, greek(i) + "_" + std::to_string(idx)});
    }
  for (int r = 1; r <= s - 1; ++r) t.ring.push_back(view.vec_mui(r));
  for (int r = 1; r <= n - s; ++r) t.ring.push_back(view.cov_mui(r));
  return t;
}

namespace {

struct Bideg {
  std::int64_t x = 0, y = 0;
};

Bideg bideg(const MPoly& p) {
  const Space& s = p.vars()->space();
  const std::size_t split = static_cast<std::size_t>(s.m * s.n);
  return {static_cast<std::int64_t>(p.partial_degree(0, split)),
          static_cast<std::int64_t>(p.partial_degree(split, s.nvars()))};
}

void enumerate_monos(const std::vector<Bideg>& gens, std::size_t at, Bideg left, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (at == gens.size()) {
    if (left.x == 0 && left.y == 0) out.push_back(cur);
    return;
  }
  const Bideg g = gens[at];
  for (int e = 0;; ++e) {
    Bideg rest{left.x - e * g.x, left.y - e * g.y};
    if (rest.x < 0 || rest.y < 0) break;
    cur[at] = e;
    enumerate_monos(gens, at + 1, rest, cur, out);
    if (g.x == 0 && g.y == 0) break;
  }
  cur[at] = 0;
}

std::vector<std::string> label_names(const std::vector<Label>& labels) {
  std::vector<std::string> out;
  for (auto& l : labels) out.push_back(l.str());
  return out;
}

}  // namespace

CoeffSolution solve_template(const InvariantBuilder& b, const RelationTemplate& t) {
  const Field& f = b.field();
  const auto q = f->q();
  CoeffSolution sol;
  sol.relation = t.name();
  sol.variant = t.variant;
  sol.ring = t.ring;

  MPoly lhs = MPoly::constant(f, VarSet::xy(b.space()), 1);
  for (auto& [lab, e] : t.lhs) lhs *= b.get(lab).pow(static_cast<std::uint64_t>(e));
  const Bideg target = bideg(lhs);

  std::vector<Bideg> gdeg;
  for (auto& g : t.ring) gdeg.push_back(bideg(b.get(g)));

  struct Column {
    std::size_t term;
    std::vector<int> mono;
    MPoly poly;
  };
  std::vector<Column> cols;
  std::vector<MPoly> term_polys;
  MPoly rhs = lhs;
  for (std::size_t ti = 0; ti < t.terms.size(); ++ti) {
    const RTerm& rt = t.terms[ti];
    MPoly p = b.get(t.view.pair(rt.pair_index)).pow(qpow(q, rt.twist));
    term_polys.push_back(p);
    if (rt.unit && t.variant == TemplateVariant::Printed) {
      rhs -= p;
      continue;
    }
    Bideg pd = bideg(p);
    Bideg left{target.x - pd.x, target.y - pd.y};
    if (left.x < 0 || left.y < 0) continue;
    std::vector<std::vector<int>> monos;
    std::vector<int> cur(t.ring.size(), 0);
    enumerate_monos(gdeg, 0, left, cur, monos);
    for (auto& mo : monos) {
      MPoly c = p;
      for (std::size_t g = 0; g < mo.size(); ++g)
        if (mo[g]) c *= b.get(t.ring[g]).pow(static_cast<std::uint64_t>(mo[g]));
      cols.push_back({ti, mo, std::move(c)});
    }
  }

  std::map<Mono, std::size_t> rows;
  auto row_of = [&](const Mono& m) {
    auto [it, ins] = rows.try_emplace(m, rows.size());
    return it->second;
  };
  for (auto& c : cols)
    for (auto& term : c.poly.terms()) row_of(term.mono);
  for (auto& term : rhs.terms()) row_of(term.mono);

  std::vector<std::vector<Coef>> a(rows.size(), std::vector<Coef>(cols.size(), 0));
  std::vector<Coef> rhs_vec(rows.size(), 0);
  for (std::size_t ci = 0; ci < cols.size(); ++ci)
    for (auto& term : cols[ci].poly.terms()) a[rows[term.mono]][ci] = term.coef;
  for (auto& term : rhs.terms()) rhs_vec[rows[term.mono]] = term.coef;

  auto lin = solve_linear(*f, std::move(a), std::move(rhs_vec));
  sol.unknowns = static_cast<int>(cols.size());
  sol.equations = static_cast<int>(rows.size());
  sol.rank = lin.rank;
  sol.nullity = lin.nullity;
  sol.feasible = lin.feasible;
  if (!lin.feasible) return sol;

  auto ring_vars = VarSet::labels(label_names(t.ring));
  for (std::size_t ti = 0; ti < t.terms.size(); ++ti) {
    const RTerm& rt = t.terms[ti];
    if (rt.unit && t.variant == TemplateVariant::Printed) continue;
    std::vector<Term> terms;
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      if (cols[ci].term != ti || lin.x[ci] == 0) continue;
      Term term{Mono{}, lin.x[ci]};
      for (std::size_t g = 0; g < cols[ci].mono.size(); ++g) term.mono.e[g] = checked_exp(cols[ci].mono[g]);
      terms.push_back(term);
    }
    sol.slots.push_back({rt.slot, ti, MPoly::from_terms(f, ring_vars, std::move(terms)), true});
  }

  // Independent residual: substitute the solved coefficients back.
  auto coeffs = solved_term_coefficients(t, sol, f);
  RingEndo to_xy{ring_vars, {}};
  for (auto& g : t.ring) to_xy.images.push_back(b.get(g));
  MPoly residual = lhs;
  for (std::size_t ti = 0; ti < t.terms.size(); ++ti) {
    MPoly c = coeffs[ti].vars()->size() ? apply_endo(to_xy, coeffs[ti]) : lhs.zero();
    if (coeffs[ti].is_constant()) c = MPoly::constant(f, lhs.vars(), coeffs[ti].coefficient(Mono{}));
    residual -= c * term_polys[ti];
  }
  sol.residual_zero = residual.is_zero();
  sol.all_nonzero = std::all_of(sol.slots.begin(), sol.slots.end(),
                                [](const SlotValue& v) { return !v.required_nonzero || !v.label_poly.is_zero(); });
  return sol;
}

std::vector<MPoly> solved_term_coefficients(const RelationTemplate& t, const CoeffSolution& sol, const Field& f) {
  auto ring_vars = sol.slots.empty() ? VarSet::labels(label_names(t.ring)) : sol.slots.front().label_poly.vars();
  std::vector<MPoly> out(t.terms.size(), MPoly(f, ring_vars));
  for (std::size_t ti = 0; ti < t.terms.size(); ++ti)
    if (t.terms[ti].unit && t.variant == TemplateVariant::Printed) out[ti] = MPoly::constant(f, ring_vars, 1);
  for (auto& s : sol.slots) out[s.term] = s.label_poly;
  return out;
}

CoeffSolution solve_relation_coeffs(const InvariantBuilder& b, RKind kind, int s, PairView view) {
  const int n = b.space().n, q = b.field()->q();
  auto printed = solve_template(b, make_template(kind, s, n, view, q, TemplateVariant::Printed));
  if (printed.feasible && printed.residual_zero) return printed;
  auto relaxed = solve_template(b, make_template(kind, s, n, view, q, TemplateVariant::Relaxed));
  relaxed.printed_failures.push_back(printed.feasible ? "printed template leaves a non-zero residual"
                                                      : "printed unit coefficients make the system infeasible");
  return relaxed;
}

}  // namespace invfield
