#include "invfield/certificate.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "invfield/groups.hpp"
#include "invfield/relations.hpp"
#include "nlohmann/json.hpp"

namespace invfield {

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::GL: return "GL";
    case Theorem::SL: return "SL";
    case Theorem::UU: return "UU";
    case Theorem::pU3: return "pU3";
  }
  return "?";
}

Theorem parse_theorem(std::string_view s) {
  for (Theorem t : {Theorem::GL, Theorem::SL, Theorem::UU, Theorem::pU3})
    if (theorem_name(t) == s) return t;
  fail(ErrorCode::invalid_argument, "unknown theorem '" + std::string(s) + "' (expected GL, SL, UU or pU3)");
}

std::vector<Label> labels_in(std::string_view text) {
  static const std::regex token(R"([A-Za-z_]+\[[^\]]*\])");
  std::set<Label> out;
  std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), token); it != std::sregex_iterator(); ++it)
    out.insert(Label::parse(it->str()));
  return {out.begin(), out.end()};
}

namespace {

Vars label_vars(const std::vector<Label>& labels) {
  std::vector<std::string> names;
  for (auto& l : labels) names.push_back(l.str());
  return VarSet::labels(std::move(names));
}

std::uint64_t qpow(int q, int i) {
  std::uint64_t r = 1;
  for (int t = 0; t < i; ++t) r *= static_cast<std::uint64_t>(q);
  return r;
}

// Polynomials in a small, step-local set of labels.
class LocalRing {
 public:
  LocalRing(Field f, std::vector<Label> labels) : f_(std::move(f)) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    vars_ = label_vars(labels);
  }

  MPoly operator()(const Label& l) const {
    auto idx = vars_->find(l.str());
    require(idx.has_value(), ErrorCode::internal, "label " + l.str() + " missing from step ring");
    return MPoly::variable(f_, vars_, *idx);
  }
  MPoly one() const { return MPoly::constant(f_, vars_, 1); }

  MPoly import(const MPoly& p) const {
    RingEndo e{p.vars(), {}};
    for (auto& name : p.vars()->names()) e.images.push_back((*this)(Label::parse(name)));
    return apply_endo(e, p);
  }

 private:
  Field f_;
  Vars vars_;
};

}  // namespace

MPoly parse_label_poly(const Field& field, std::string_view text) {
  return MPoly::parse(field, label_vars(labels_in(text)), text);
}

namespace {

class ChainBuilder {
 public:
  ChainBuilder(Theorem th, const Field& f, const Space& s)
      : b_(f, s, resolved_conventions().sign), conv_(resolved_conventions()) {
    cert_.theorem = th;
    cert_.field = f;
    cert_.space = s;
    cert_.conventions = conv_.describe();
  }

  Certificate take() { return std::move(cert_); }
  Certificate& cert() { return cert_; }
  const InvariantBuilder& builder() const { return b_; }

  void axiom(const std::string& set_name, int j, int k, const std::vector<Label>& basis,
             const std::vector<Label>& targets) {
    for (auto& t : targets) {
      CertStep st;
      st.target = t;
      st.axiom = true;
      st.num = t.str();
      st.den = "1";
      st.justification = set_name + "(" + std::to_string(j) + "," + std::to_string(k) + ")";
      st.basis = basis;
      cert_.steps.push_back(std::move(st));
    }
  }

  void derive(const Label& target, const MPoly& num, const MPoly& den, std::string why) {
    require(!den.is_zero(), ErrorCode::division_by_zero, "zero denominator while deriving " + target.str());
    cert_.steps.push_back({target, false, num.str(), den.str(), std::move(why), {}});
  }

  // (T_r*) for copy j solved for u[j,r], or (T_r) for copy k solved for v[k,r].
  void t_step(bool star, int copy, int r) {
    require(conv_.v == VOrientation::Reflected, ErrorCode::internal, "certificate chain assumes reflected (T_r)");
    const int n = b_.space().n, q = b_.field()->q();
    const std::string dk = star ? "cstar" : "c";
    const std::string pk = star ? "u" : "v";
    std::vector<Label> labs;
    for (int i = 0; i < n; ++i) labs.push_back({dk, 1, i});
    for (int i = 0; i <= n; ++i) labs.push_back({pk, copy, r - i});
    LocalRing R(b_.field(), labs);
    MPoly num = R.one() - R.one();
    for (int i = 1; i <= n; ++i) {
      const int tw = conv_.twist == Twist::Staggered ? std::min(r, i) : r;
      MPoly term = R({pk, copy, r - i}).pow(qpow(q, tw));
      if (i < n) term = R({dk, 1, i}) * term;
      num = (i % 2) ? num + term : num - term;
    }
    derive({pk, copy, r}, num, R({dk, 1, 0}),
           (star ? "T*_" : "T_") + std::to_string(r) + (star ? "(j=" : "(k=") + std::to_string(copy) + ")");
  }

  MPoly moore_det(const LocalRing& R, const std::string& pk, int copy, bool mirror) const {
    const int n = b_.space().n, q = b_.field()->q();
    std::vector<std::vector<MPoly>> m(n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) m[r].push_back(R({pk, copy, mirror ? s - r : r - s}).pow(qpow(q, std::min(r, s))));
    return poly_det(m);
  }

  // R-relation solved either for one left-hand factor or for one pairing term.
  void r_step(RKind kind, int s, PairView view, const Label& target) {
    const int n = b_.space().n, q = b_.field()->q();
    auto sol = solve_relation_coeffs(b_, kind, s, view);
    require(sol.feasible && sol.residual_zero && sol.all_nonzero, ErrorCode::infeasible,
            "no valid coefficients for " + sol.relation);
    auto t = make_template(kind, s, n, view, q, sol.variant);
    auto coeffs = solved_term_coefficients(t, sol, b_.field());

    std::vector<Label> labs = t.ring;
    for (auto& [l, e] : t.lhs) labs.push_back(l);
    for (auto& term : t.terms) labs.push_back(view.pair(term.pair_index));
    LocalRing R(b_.field(), labs);

    std::vector<MPoly> rhs;
    for (std::size_t i = 0; i < t.terms.size(); ++i)
      rhs.push_back(R.import(coeffs[i]) * R(view.pair(t.terms[i].pair_index)).pow(qpow(q, t.terms[i].twist)));
    const std::string why = sol.relation + " [" + template_variant_name(sol.variant) + "]";

    auto lhs_it = std::find_if(t.lhs.begin(), t.lhs.end(), [&](auto& pr) { return pr.first == target; });
    if (lhs_it != t.lhs.end()) {
      require(lhs_it->second == 1, ErrorCode::internal, "target appears with a power in " + sol.relation);
      MPoly num = R.one() - R.one(), den = R.one();
      for (auto& x : rhs) num += x;
      for (auto& [l, e] : t.lhs)
        if (!(l == target)) den *= R(l).pow(static_cast<std::uint64_t>(e));
      derive(target, num, den, why);
      return;
    }
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < t.terms.size(); ++i)
      if (view.pair(t.terms[i].pair_index) == target && t.terms[i].twist == 0) hit = i;
    require(hit.has_value(), ErrorCode::internal, target.str() + " does not occur linearly in " + sol.relation);
    MPoly num = R.one();
    for (auto& [l, e] : t.lhs) num *= R(l).pow(static_cast<std::uint64_t>(e));
    for (std::size_t i = 0; i < rhs.size(); ++i)
      if (i != *hit) num -= rhs[i];
    derive(target, num, R.import(coeffs[*hit]), why);
  }

 private:
  InvariantBuilder b_;
  Conventions conv_;
  Certificate cert_;
};

std::vector<Label> range(const std::string& kind, int copy, int lo, int hi) {
  std::vector<Label> out;
  for (int i = lo; i <= hi; ++i) out.push_back({kind, copy, i});
  return out;
}

void gl_sl_chain(ChainBuilder& cb, bool sl) {
  const Space& s = cb.builder().space();
  const int n = s.n, q = cb.builder().field()->q();
  const std::string ax = sl ? "pSL" : "pGL";
  auto basis_u = [&](const std::string& pk, int copy, Label head) {
    std::vector<Label> bs{head};
    for (auto& l : range(pk, copy, 1 - n, n - 1)) bs.push_back(l);
    return bs;
  };
  const Label head1 = sl ? Label{"d", 1, n} : Label{"c", 1, 0};

  std::vector<Label> first = range("c", 1, 1, n - 1);
  for (auto& l : range("cstar", 1, sl ? 1 : 0, n - 1)) first.push_back(l);
  if (sl) first.push_back({"dstar", 1, n});
  cb.axiom(ax, 1, 1, basis_u("u", 1, head1), first);

  if (sl) {
    for (auto [c, dk, ck] : {std::tuple{1, "d", "c"}, std::tuple{1, "dstar", "cstar"}}) {
      LocalRing R(cb.builder().field(), {Label{dk, c, n}});
      cb.derive({ck, c, 0}, R({dk, c, n}).pow(static_cast<std::uint64_t>(q - 1)), R.one(), "c0 = d^(q-1)");
    }
  }

  for (int j = 2; j <= s.m; ++j) {
    for (int r = 1; r <= n - 1; ++r) cb.t_step(true, j, r);
    std::vector<Label> labs = range("u", j, 1 - n, n - 1);
    labs.push_back(sl ? Label{"dstar", 1, n} : Label{"cstar", 1, 0});
    LocalRing R(cb.builder().field(), labs);
    MPoly det = cb.moore_det(R, "u", j, false);
    if (sl) cb.derive({"d", j, n}, det, R({"dstar", 1, n}), "det identity (j=" + std::to_string(j) + ")");
    else cb.derive({"c", j, 0}, det.pow(static_cast<std::uint64_t>(q - 1)), R({"cstar", 1, 0}),
                   "det identity (j=" + std::to_string(j) + ")");
    cb.axiom(ax, j, 1, basis_u("u", j, sl ? Label{"d", j, n} : Label{"c", j, 0}), range("c", j, 1, n - 1));
  }

  for (int k = 2; k <= s.d; ++k) {
    for (int r = 1; r <= n - 1; ++r) cb.t_step(false, k, r);
    std::vector<Label> targets;
    if (sl) {
      std::vector<Label> labs = range("v", k, 1 - n, n - 1);
      labs.push_back({"d", 1, n});
      LocalRing R(cb.builder().field(), labs);
      cb.derive({"dstar", k, n}, cb.moore_det(R, "v", k, true), R({"d", 1, n}),
                "mirrored det identity (k=" + std::to_string(k) + ")");
      targets = range("cstar", k, 1, n - 1);
    } else {
      targets = range("cstar", k, 0, n - 1);
    }
    cb.axiom(ax, 1, k, basis_u("v", k, head1), targets);
  }
}

// Copy-1 chain for n >= 3: (R_2), (R_1^+), then (R_s^-), (R_s) for s = 3..n.
void uu_copy_chain(ChainBuilder& cb, PairView view, bool first_copy) {
  const int n = cb.builder().space().n;
  if (first_copy) {
    cb.r_step(RKind::R, 2, view, view.cov_mui(n - 1));
    cb.r_step(RKind::Rplus1, 1, view, view.cov_mui(n));
  } else {
    cb.r_step(RKind::Rplus1, 1, view, view.pair(1));
    cb.r_step(RKind::R, 2, view, view.vec_mui(2));
  }
  for (int s = 3; s <= n; ++s) {
    cb.r_step(RKind::Rminus, s, view, view.vec_mui(s));
    if (s <= n - 1) cb.r_step(RKind::R, s, view, view.pair(s - 1));
  }
}

void uu_chain(ChainBuilder& cb, bool copy1_only) {
  const Space& s = cb.builder().space();
  const int n = s.n, q = cb.builder().field()->q();
  const auto qq = static_cast<std::uint64_t>(q);
  const Field& f = cb.builder().field();
  if (n == 1) {
    for (int j = 1; j <= s.m; ++j) {
      LocalRing R(f, {Label{"f", j, 1}, Label{"fstar", 1, 1}});
      cb.derive({"u", j, 0}, R({"f", j, 1}) * R({"fstar", 1, 1}), R.one(), "n=1 pairing");
    }
    for (int k = 2; k <= s.d; ++k) {
      LocalRing R(f, {Label{"fstar", k, 1}, Label{"f", 1, 1}});
      cb.derive({"v", k, 0}, R({"fstar", k, 1}) * R({"f", 1, 1}), R.one(), "n=1 pairing");
    }
    return;
  }
  if (n == 2) {
    auto hyper = [&](Label f1, Label f2, Label g1, Label g2, Label w, bool solve_f2, const std::string& why) {
      LocalRing R(f, {f1, f2, g1, g2, w});
      MPoly W = R(w), F1 = R(f1), G1 = R(g1);
      MPoly base = W.pow(qq) - (F1 * G1).pow(qq - 1) * W;
      if (solve_f2) cb.derive(f2, base - F1.pow(qq) * R(g2), G1.pow(qq), why);
      else cb.derive(g2, base - G1.pow(qq) * R(f2), F1.pow(qq), why);
    };
    for (int j = 1; j <= s.m; ++j)
      hyper({"f", j, 1}, {"f", j, 2}, {"fstar", 1, 1}, {"fstar", 1, 2}, {"u", j, 0}, true,
            "hypersurface (" + std::to_string(j) + ",1)");
    for (int k = 2; k <= s.d; ++k)
      hyper({"f", 1, 1}, {"f", 1, 2}, {"fstar", k, 1}, {"fstar", k, 2}, {"v", k, 0}, false,
            "hypersurface (1," + std::to_string(k) + ")");
    return;
  }
  uu_copy_chain(cb, PairView{false, 1}, true);
  if (copy1_only) return;
  for (int j = 2; j <= s.m; ++j) uu_copy_chain(cb, PairView{false, j}, false);
  for (int k = 2; k <= s.d; ++k) uu_copy_chain(cb, PairView{true, k}, false);
}

std::string claimed_set_name(Theorem t, int n) {
  switch (t) {
    case Theorem::GL: return "thm_GL";
    case Theorem::SL: return "thm_SL";
    case Theorem::UU: return "thm_UU";
    case Theorem::pU3: return n >= 3 ? "pU_n3" : "pU_n" + std::to_string(n);
  }
  return "";
}

std::vector<Label> closure_labels(Theorem t, const Space& s) {
  if (t == Theorem::pU3) {
    std::vector<Label> out = range("f", 1, 1, s.n);
    for (auto& l : range("fstar", 1, 1, s.n)) out.push_back(l);
    out.push_back({"u", 1, 0});
    return out;
  }
  const char* name = t == Theorem::GL ? "prec_GL" : t == Theorem::SL ? "prec_SL" : "prec_U";
  return generating_set(name, s).labels;
}

}  // namespace

Certificate build_certificate(Theorem theorem, const Field& field, const Space& space) {
  require(space.n >= 1 && space.m >= 1 && space.d >= 1, ErrorCode::invalid_argument, "n, m, d must be >= 1");
  if (theorem == Theorem::pU3) require(space.n >= 3, ErrorCode::domain, "pU3 needs n >= 3");
  ChainBuilder cb(theorem, field, space);
  cb.cert().claimed_set = claimed_set_name(theorem, space.n);
  cb.cert().generators = generating_set(cb.cert().claimed_set, space).labels;
  switch (theorem) {
    case Theorem::GL: gl_sl_chain(cb, false); break;
    case Theorem::SL: gl_sl_chain(cb, true); break;
    case Theorem::UU: uu_chain(cb, false); break;
    case Theorem::pU3: uu_chain(cb, true); break;
  }
  return cb.take();
}

CertVerdict verify_certificate(const Certificate& cert) {
  CertVerdict v;
  try {
    const Space& s = cert.space;
    InvariantBuilder b(cert.field, s, resolved_conventions().sign);
    v.generators_match = cert.claimed_set == claimed_set_name(cert.theorem, s.n) &&
                         cert.generators == generating_set(cert.claimed_set, s).labels;

    std::set<Label> avail(cert.generators.begin(), cert.generators.end());
    std::map<Family, std::vector<RingEndo>> actions;
    auto invariant_under = [&](Family fam, const MPoly& p) {
      auto& acts = actions[fam];
      if (acts.empty())
        for (auto& g : group_generators({fam, s.n, cert.field})) acts.push_back(action_endo(g, s));
      return std::all_of(acts.begin(), acts.end(), [&](const RingEndo& e) { return apply_endo(e, p) == p; });
    };

    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
      const CertStep& st = cert.steps[i];
      StepVerdict sv{i, st.target.str(), false, ""};
      auto reject = [&](std::string why) { sv.detail = std::move(why); };
      try {
        b.validate(st.target);
        MPoly num = parse_label_poly(cert.field, st.num);
        MPoly den = parse_label_poly(cert.field, st.den);
        std::vector<Label> used = labels_in(st.num);
        for (auto& l : labels_in(st.den)) used.push_back(l);
        if (st.axiom) used.erase(std::remove(used.begin(), used.end(), st.target), used.end());
        auto outside = std::find_if(used.begin(), used.end(), [&](const Label& l) { return !avail.count(l); });

        if (avail.count(st.target)) {
          reject("target already known");
        } else if (outside != used.end()) {
          reject("uses " + outside->str() + " before it is known");
        } else if (den.is_zero()) {
          reject("zero denominator");
        } else {
          auto to_xy = [&](const MPoly& p) {
            RingEndo e{p.vars(), {}};
            for (auto& name : p.vars()->names()) e.images.push_back(b.get(Label::parse(name)));
            if (p.vars()->size() == 0)
              return p.is_zero() ? MPoly(cert.field, VarSet::xy(s)) : MPoly::constant(cert.field, VarSet::xy(s), p.terms()[0].coef);
            return apply_endo(e, p);
          };
          MPoly N = to_xy(num), D = to_xy(den);
          const MPoly& T = b.get(st.target);
          if (D.is_zero()) {
            reject("denominator vanishes in F[mW + dW*]");
          } else if (!(N == T * D)) {
            reject("num != target * den");
          } else if (st.axiom) {
            std::set<Label> basis(st.basis.begin(), st.basis.end());
            const bool fam_sl = st.justification.rfind("pSL", 0) == 0;
            if (basis.size() != st.basis.size() || static_cast<int>(basis.size()) != 2 * s.n)
              reject("axiom basis must have 2n distinct members");
            else if (std::any_of(basis.begin(), basis.end(), [&](const Label& l) { return !avail.count(l); }))
              reject("axiom basis uses unknown labels");
            else if (!invariant_under(fam_sl ? Family::SL : Family::GL, T))
              reject("axiom target is not invariant");
            else
              sv.pass = true;
          } else {
            sv.pass = true;
          }
        }
      } catch (const Error& e) {
        reject(e.what());
      }
      if (sv.pass) {
        sv.detail = st.axiom ? "axiom checked" : "cross-multiplied exactly";
        avail.insert(st.target);
      }
      v.steps.push_back(std::move(sv));
    }
    for (auto& l : closure_labels(cert.theorem, s))
      if (!avail.count(l)) v.missing.push_back(l.str());
    v.closed = v.missing.empty();
    v.pass = v.generators_match && v.closed &&
             std::all_of(v.steps.begin(), v.steps.end(), [](const StepVerdict& x) { return x.pass; });
  } catch (const Error& e) {
    v.error = e.what();
    v.pass = false;
  }
  return v;
}

std::size_t first_derived_step(const Certificate& cert) {
  for (std::size_t i = 0; i < cert.steps.size(); ++i)
    if (!cert.steps[i].axiom) return i;
  return 0;
}

Certificate corrupt_step(const Certificate& cert, std::size_t index) {
  require(index < cert.steps.size(), ErrorCode::invalid_argument, "step index out of range");
  Certificate out = cert;
  MPoly num = parse_label_poly(cert.field, out.steps[index].num);
  MPoly bump = num.is_zero() ? num.one() : MPoly::from_terms(cert.field, num.vars(), {Term{num.terms()[0].mono, 1}});
  out.steps[index].num = (num + bump).str();
  return out;
}

namespace {
using nlohmann::ordered_json;

ordered_json labels_json(const std::vector<Label>& ls) {
  ordered_json a = ordered_json::array();
  for (auto& l : ls) a.push_back(l.str());
  return a;
}

std::vector<Label> labels_from(const ordered_json& a) {
  std::vector<Label> out;
  for (auto& x : a) out.push_back(Label::parse(x.get<std::string>()));
  return out;
}
}  // namespace

std::string certificate_to_json(const Certificate& cert, int indent) {
  ordered_json j;
  j["schema"] = "invfield-cert/1";
  j["theorem"] = theorem_name(cert.theorem);
  j["field"] = {{"p", cert.field->p()}, {"e", cert.field->e()}, {"modulus", cert.field->modulus()}};
  j["space"] = {{"n", cert.space.n}, {"m", cert.space.m}, {"d", cert.space.d}};
  j["claimed_set"] = cert.claimed_set;
  j["generators"] = labels_json(cert.generators);
  j["conventions"] = cert.conventions;
  ordered_json steps = ordered_json::array();
  for (auto& st : cert.steps) {
    ordered_json o;
    o["target"] = st.target.str();
    o["kind"] = st.axiom ? "axiom" : "derive";
    o["num"] = st.num;
    o["den"] = st.den;
    o["justification"] = st.justification;
    if (st.axiom) o["basis"] = labels_json(st.basis);
    steps.push_back(std::move(o));
  }
  j["steps"] = std::move(steps);
  return j.dump(indent) + "\n";
}

Certificate certificate_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::parse, std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    require(j.value("schema", "") == "invfield-cert/1", ErrorCode::parse, "unsupported certificate schema");
    Certificate c;
    c.theorem = parse_theorem(j.at("theorem").get<std::string>());
    auto& fj = j.at("field");
    c.field = FieldCtx::make(fj.at("p").get<int>(), fj.at("e").get<int>(), fj.at("modulus").get<std::vector<int>>());
    auto& sj = j.at("space");
    c.space = {sj.at("n").get<int>(), sj.at("m").get<int>(), sj.at("d").get<int>()};
    c.claimed_set = j.at("claimed_set").get<std::string>();
    c.generators = labels_from(j.at("generators"));
    c.conventions = j.value("conventions", "");
    for (auto& o : j.at("steps")) {
      CertStep st;
      st.target = Label::parse(o.at("target").get<std::string>());
      const auto kind = o.at("kind").get<std::string>();
      require(kind == "axiom" || kind == "derive", ErrorCode::parse, "unknown step kind '" + kind + "'");
      st.axiom = kind == "axiom";
      st.num = o.at("num").get<std::string>();
      st.den = o.at("den").get<std::string>();
      st.justification = o.value("justification", "");
      if (st.axiom) st.basis = labels_from(o.at("basis"));
      c.steps.push_back(std::move(st));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace invfield
