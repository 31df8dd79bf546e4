#include "invfield/invariants.hpp"

#include <algorithm>
#include <cctype>

namespace invfield {

std::string Label::str() const { return kind + "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

Label Label::parse(std::string_view text) {
  auto bad = [&] { fail(ErrorCode::parse, "malformed label '" + std::string(text) + "'"); };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto lb = s.find('['), comma = s.find(','), rb = s.find(']');
  if (lb == std::string::npos || comma == std::string::npos || rb != s.size() - 1 || lb == 0 || comma < lb) bad();
  Label l;
  l.kind = s.substr(0, lb);
  try {
    std::size_t used = 0;
    std::string as = s.substr(lb + 1, comma - lb - 1), bs = s.substr(comma + 1, rb - comma - 1);
    l.a = std::stoi(as, &used);
    if (used != as.size()) bad();
    l.b = std::stoi(bs, &used);
    if (used != bs.size()) bad();
  } catch (const Error&) {
    throw;
  } catch (...) {
    bad();
  }
  return l;
}

std::string dickson_sign_name(DicksonSign s) { return s == DicksonSign::Alternating ? "alternating" : "plain"; }

namespace {

std::uint64_t qpow(const Field& f, int i) {
  std::uint64_t r = 1;
  for (int t = 0; t < i; ++t) r *= static_cast<std::uint64_t>(f->q());
  return r;
}

}  // namespace

MPoly pairing(const Field& f, const Space& s, int j, int k, int i) {
  require(j >= 1 && j <= s.m, ErrorCode::invalid_argument, "vector copy out of range");
  require(k >= 1 && k <= s.d, ErrorCode::invalid_argument, "covector copy out of range");
  auto vars = VarSet::xy(s);
  const Exp ex = checked_exp(qpow(f, std::max(i, 0)));
  const Exp ey = checked_exp(qpow(f, std::max(-i, 0)));
  std::vector<Term> terms;
  for (int t = 1; t <= s.n; ++t) {
    Term term{Mono{}, 1};
    term.mono.e[s.index({Block::X, j, t})] = ex;
    term.mono.e[s.index({Block::Y, k, t})] = ey;
    terms.push_back(term);
  }
  return MPoly::from_terms(f, vars, std::move(terms));
}

MPoly pairing_u(const Field& f, const Space& s, int j, int i) { return pairing(f, s, j, 1, i); }

MPoly pairing_v(const Field& f, const Space& s, int k, int i) { return pairing(f, s, 1, k, -i); }

std::vector<MPoly> subspace_poly(const Field& f, const Space& s, const std::vector<std::size_t>& vars) {
  auto vs = VarSet::xy(s);
  std::vector<MPoly> kappa{MPoly::constant(f, vs, 1)};
  const auto q = static_cast<std::uint64_t>(f->q());
  for (std::size_t w : vars) {
    MPoly b = eval_qpoly(kappa, MPoly::variable(f, vs, w));
    MPoly bq1 = b.pow(q - 1);
    std::vector<MPoly> next;
    for (std::size_t l = 0; l <= kappa.size(); ++l) {
      MPoly term(f, vs);
      if (l >= 1) term = kappa[l - 1].pow(q);
      if (l < kappa.size()) term -= bq1 * kappa[l];
      next.push_back(std::move(term));
    }
    kappa = std::move(next);
  }
  return kappa;
}

MPoly eval_qpoly(const std::vector<MPoly>& coeffs, const MPoly& value) {
  require(!coeffs.empty(), ErrorCode::invalid_argument, "empty q-polynomial");
  const auto q = static_cast<std::uint64_t>(coeffs.front().field()->q());
  MPoly acc = coeffs.front().zero();
  MPoly pw = value;
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    if (l) pw = pw.pow(q);
    acc += coeffs[l] * pw;
  }
  return acc;
}

MPoly mui(const Field& f, const Space& s, int j, int i) {
  require(j >= 1 && j <= s.m, ErrorCode::invalid_argument, "vector copy out of range");
  require(i >= 1 && i <= s.n, ErrorCode::invalid_argument, "Mui index out of range");
  std::vector<std::size_t> span;
  for (int t = 1; t < i; ++t) span.push_back(s.index({Block::X, j, t}));
  return eval_qpoly(subspace_poly(f, s, span), MPoly::x(f, s, j, i));
}

MPoly mui_star(const Field& f, const Space& s, int k, int i) {
  require(k >= 1 && k <= s.d, ErrorCode::invalid_argument, "covector copy out of range");
  require(i >= 1 && i <= s.n, ErrorCode::invalid_argument, "Mui index out of range");
  // Image of f_{1,i} under x[1,t] -> y[k,n+1-t].
  std::vector<std::size_t> span;
  for (int t = 1; t < i; ++t) span.push_back(s.index({Block::Y, k, s.n + 1 - t}));
  return eval_qpoly(subspace_poly(f, s, span), MPoly::y(f, s, k, s.n + 1 - i));
}

namespace {

MPoly moore(const Field& f, const Space& s, Block block, int copy) {
  auto vars = VarSet::xy(s);
  std::vector<std::vector<MPoly>> m;
  for (int r = 0; r < s.n; ++r) {
    std::vector<MPoly> row;
    for (int t = 1; t <= s.n; ++t)
      row.push_back(MPoly::variable(f, vars, s.index({block, copy, t}), checked_exp(qpow(f, r))));
    m.push_back(std::move(row));
  }
  return poly_det(m);
}

std::vector<MPoly> signed_dickson(const Field& f, std::vector<MPoly> kappa, int n, DicksonSign sign) {
  kappa.pop_back();  // kappa_n = 1
  if (sign == DicksonSign::Alternating)
    for (int i = 0; i < n; ++i)
      if ((n - i) % 2) kappa[i] = -kappa[i];
  (void)f;
  return kappa;
}

}  // namespace

DicksonResult dickson(const Field& f, const Space& s, int j, DicksonSign sign) {
  require(j >= 1 && j <= s.m, ErrorCode::invalid_argument, "vector copy out of range");
  std::vector<std::size_t> span;
  for (int t = 1; t <= s.n; ++t) span.push_back(s.index({Block::X, j, t}));
  return {signed_dickson(f, subspace_poly(f, s, span), s.n, sign), moore(f, s, Block::X, j)};
}

DicksonResult dickson_star(const Field& f, const Space& s, int k, DicksonSign sign) {
  require(k >= 1 && k <= s.d, ErrorCode::invalid_argument, "covector copy out of range");
  std::vector<std::size_t> span;
  for (int t = s.n; t >= 1; --t) span.push_back(s.index({Block::Y, k, t}));
  return {signed_dickson(f, subspace_poly(f, s, span), s.n, sign), moore(f, s, Block::Y, k)};
}

// ---------------------------------------------------------------- builder

InvariantBuilder::InvariantBuilder(Field field, Space space, DicksonSign sign)
    : field_(std::move(field)), space_(space), sign_(sign) {
  require(field_ != nullptr, ErrorCode::invalid_argument, "null field");
  VarSet::xy(space_);
}

void InvariantBuilder::validate(const Label& l) const {
  const Space& s = space_;
  auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  bool ok = false;
  if (l.kind == "c") ok = in(l.a, 1, s.m) && in(l.b, 0, s.n - 1);
  else if (l.kind == "cstar") ok = in(l.a, 1, s.d) && in(l.b, 0, s.n - 1);
  else if (l.kind == "d") ok = in(l.a, 1, s.m) && l.b == s.n;
  else if (l.kind == "dstar") ok = in(l.a, 1, s.d) && l.b == s.n;
  else if (l.kind == "f") ok = in(l.a, 1, s.m) && in(l.b, 1, s.n);
  else if (l.kind == "fstar") ok = in(l.a, 1, s.d) && in(l.b, 1, s.n);
  else if (l.kind == "u") ok = in(l.a, 1, s.m);
  else if (l.kind == "v") ok = in(l.a, 1, s.d);
  else fail(ErrorCode::not_found, "unknown invariant kind in label " + l.str());
  require(ok, ErrorCode::invalid_argument,
          "label " + l.str() + " is out of range for n=" + std::to_string(s.n) + ", m=" + std::to_string(s.m) +
              ", d=" + std::to_string(s.d));
}

const MPoly& InvariantBuilder::get(const Label& label) const {
  std::lock_guard lock(mu_);
  if (auto it = cache_.find(label); it != cache_.end()) return it->second;
  validate(label);
  MPoly p = build(label);
  return cache_.emplace(label, std::move(p)).first->second;
}

MPoly InvariantBuilder::build(const Label& l) const {
  const Field& f = field_;
  const Space& s = space_;
  if (l.kind == "u") return pairing_u(f, s, l.a, l.b);
  if (l.kind == "v") return pairing_v(f, s, l.a, l.b);
  if (l.kind == "f") return mui(f, s, l.a, l.b);
  if (l.kind == "fstar") return mui_star(f, s, l.a, l.b);
  if (l.kind == "c" || l.kind == "d") {
    auto r = dickson(f, s, l.a, sign_);
    for (int i = 0; i < s.n; ++i) cache_.emplace(Label{"c", l.a, i}, r.c[i]);
    cache_.emplace(Label{"d", l.a, s.n}, r.d);
    return l.kind == "c" ? r.c[l.b] : r.d;
  }
  auto r = dickson_star(f, s, l.a, sign_);
  for (int i = 0; i < s.n; ++i) cache_.emplace(Label{"cstar", l.a, i}, r.c[i]);
  cache_.emplace(Label{"dstar", l.a, s.n}, r.d);
  return l.kind == "cstar" ? r.c[l.b] : r.d;
}

// ---------------------------------------------------------------- generating sets

namespace {

struct SetBuilder {
  GeneratorSet set;
  void add(const std::string& part, const std::string& kind, int a, int b) {
    set.labels.push_back({kind, a, b});
    set.parts.push_back(part);
  }
};

void need(bool cond, std::string_view name, const std::string& why) {
  require(cond, ErrorCode::invalid_argument, "generating set " + std::string(name) + " " + why);
}

}  // namespace

std::vector<std::string> generating_set_names() {
  return {"pGL", "pSL", "pU_n1", "pU_n2", "pU_n3", "prec_GL", "prec_SL", "prec_U", "thm_GL", "thm_SL", "thm_UU"};
}

Family generating_set_family(std::string_view name) {
  if (name == "pGL" || name == "prec_GL" || name == "thm_GL") return Family::GL;
  if (name == "pSL" || name == "prec_SL" || name == "thm_SL") return Family::SL;
  if (name == "pU_n1" || name == "pU_n2" || name == "pU_n3" || name == "prec_U" || name == "thm_UU") return Family::U;
  fail(ErrorCode::not_found, "unknown generating set '" + std::string(name) + "'");
}

GeneratorSet generating_set(std::string_view name, const Space& space) {
  generating_set_family(name);
  const int n = space.n, m = space.m, d = space.d;
  SetBuilder b;
  b.set.name = std::string(name);

  if (name == "pGL" || name == "pSL") {
    if (name == "pGL") b.add("", "c", 1, 0);
    else b.add("", "d", 1, n);
    for (int i = 1 - n; i <= n - 1; ++i) b.add("", "u", 1, i);
  } else if (name == "pU_n1") {
    need(n == 1, name, "requires n = 1");
    b.add("", "f", 1, 1);
    b.add("", "fstar", 1, 1);
  } else if (name == "pU_n2") {
    need(n == 2, name, "requires n = 2");
    b.add("", "f", 1, 1);
    b.add("", "fstar", 1, 1);
    b.add("", "fstar", 1, 2);
    b.add("", "u", 1, 0);
  } else if (name == "pU_n3") {
    need(n >= 3, name, "requires n >= 3");
    b.add("", "f", 1, 1);
    b.add("", "f", 1, 2);
    for (int s = 1; s <= n - 2; ++s) b.add("", "fstar", 1, s);
    for (int i = 1; i >= 2 - n; --i) b.add("", "u", 1, i);
  } else if (name == "prec_GL" || name == "prec_SL" || name == "prec_U") {
    for (int j = 1; j <= m; ++j) {
      if (name == "prec_GL") {
        for (int i = 0; i < n; ++i) b.add("W", "c", j, i);
      } else if (name == "prec_SL") {
        b.add("W", "d", j, n);
        for (int i = 1; i < n; ++i) b.add("W", "c", j, i);
      } else {
        for (int i = 1; i <= n; ++i) b.add("W", "f", j, i);
      }
      b.add("W", "u", j, 0);
    }
    for (int k = 1; k <= d; ++k) {
      if (name == "prec_GL") {
        for (int i = 0; i < n; ++i) b.add("W*", "cstar", k, i);
      } else if (name == "prec_SL") {
        b.add("W*", "dstar", k, n);
        for (int i = 1; i < n; ++i) b.add("W*", "cstar", k, i);
      } else {
        for (int i = 1; i <= n; ++i) b.add("W*", "fstar", k, i);
      }
    }
    for (int k = 2; k <= d; ++k) b.add("V", "v", k, 0);
  } else if (name == "thm_GL" || name == "thm_SL") {
    if (name == "thm_GL") b.add("A", "c", 1, 0);
    else b.add("A", "d", 1, n);
    for (int i = 1 - n; i <= n - 1; ++i) b.add("A", "u", 1, i);
    for (int j = 2; j <= m; ++j)
      for (int i = 1 - n; i <= 0; ++i) b.add("B", "u", j, i);
    for (int k = 2; k <= d; ++k)
      for (int i = 1 - n; i <= 0; ++i) b.add("C", "v", k, i);
  } else {  // thm_UU
    if (n == 1) {
      for (int j = 1; j <= m; ++j) b.add("W", "f", j, 1);
      for (int k = 1; k <= d; ++k) b.add("W*", "fstar", k, 1);
    } else if (n == 2) {
      b.add("D", "f", 1, 1);
      b.add("D", "fstar", 1, 1);
      b.add("D", "fstar", 1, 2);
      b.add("D", "u", 1, 0);
      for (int j = 2; j <= m; ++j) {
        b.add("E", "f", j, 1);
        b.add("E", "u", j, 0);
      }
      for (int k = 2; k <= d; ++k) {
        b.add("F", "fstar", k, 1);
        b.add("F", "v", k, 0);
      }
    } else {
      b.add("D", "f", 1, 1);
      b.add("D", "f", 1, 2);
      for (int s = 1; s <= n - 2; ++s) b.add("D", "fstar", 1, s);
      for (int i = 1; i >= 2 - n; --i) b.add("D", "u", 1, i);
      for (int j = 2; j <= m; ++j) {
        b.add("E", "f", j, 1);
        for (int i = 2 - n; i <= 0; ++i) b.add("E", "u", j, i);
      }
      for (int k = 2; k <= d; ++k) {
        b.add("F", "fstar", k, 1);
        for (int i = 2 - n; i <= 0; ++i) b.add("F", "v", k, i);
      }
    }
  }
  return b.set;
}

}  // namespace invfield
