#include "invfield/groups.hpp"

#include <deque>
#include <sstream>
#include <unordered_set>

namespace invfield {

std::string family_name(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::SL: return "SL";
    case Family::U: return "U";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  if (s == "GL") return Family::GL;
  if (s == "SL") return Family::SL;
  if (s == "U") return Family::U;
  fail(ErrorCode::invalid_argument, "unknown group family '" + std::string(s) + "'");
}

GroupElem::GroupElem(Field field, int n, std::vector<Coef> entries)
    : field_(std::move(field)), n_(n), a_(std::move(entries)) {
  require(n_ >= 1, ErrorCode::invalid_argument, "matrix dimension must be >= 1");
  require(a_.size() == static_cast<std::size_t>(n_ * n_), ErrorCode::invalid_argument, "matrix has wrong size");
  for (Coef c : a_) require(c < static_cast<Coef>(field_->q()), ErrorCode::invalid_argument, "matrix entry out of range");
}

GroupElem GroupElem::identity(Field field, int n) {
  std::vector<Coef> a(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) a[i * n + i] = 1;
  return {std::move(field), n, std::move(a)};
}

GroupElem GroupElem::operator*(const GroupElem& o) const {
  require(n_ == o.n_, ErrorCode::mismatch, "matrix dimensions differ");
  const FieldCtx& f = *field_;
  std::vector<Coef> r(a_.size(), 0);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      Coef a = at(i, k);
      if (!a) continue;
      for (int j = 0; j < n_; ++j) r[i * n_ + j] = f.add(r[i * n_ + j], f.mul(a, o.at(k, j)));
    }
  return {field_, n_, std::move(r)};
}

Coef GroupElem::det() const {
  const FieldCtx& f = *field_;
  std::vector<Coef> m = a_;
  Coef d = 1;
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    while (piv < n_ && m[piv * n_ + c] == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != c) {
      for (int k = 0; k < n_; ++k) std::swap(m[piv * n_ + k], m[c * n_ + k]);
      d = f.neg(d);
    }
    Coef p = m[c * n_ + c];
    d = f.mul(d, p);
    Coef pinv = f.inv(p);
    for (int r = c + 1; r < n_; ++r) {
      Coef factor = f.mul(m[r * n_ + c], pinv);
      if (!factor) continue;
      for (int k = c; k < n_; ++k) m[r * n_ + k] = f.sub(m[r * n_ + k], f.mul(factor, m[c * n_ + k]));
    }
  }
  return d;
}

GroupElem GroupElem::inverse() const {
  const FieldCtx& f = *field_;
  const int w = 2 * n_;
  std::vector<Coef> m(static_cast<std::size_t>(n_ * w), 0);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) m[r * w + c] = at(r, c);
    m[r * w + n_ + r] = 1;
  }
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    while (piv < n_ && m[piv * w + c] == 0) ++piv;
    require(piv < n_, ErrorCode::domain, "singular matrix");
    if (piv != c)
      for (int k = 0; k < w; ++k) std::swap(m[piv * w + k], m[c * w + k]);
    Coef pinv = f.inv(m[c * w + c]);
    for (int k = 0; k < w; ++k) m[c * w + k] = f.mul(m[c * w + k], pinv);
    for (int r = 0; r < n_; ++r) {
      if (r == c || !m[r * w + c]) continue;
      Coef factor = m[r * w + c];
      for (int k = 0; k < w; ++k) m[r * w + k] = f.sub(m[r * w + k], f.mul(factor, m[c * w + k]));
    }
  }
  std::vector<Coef> out(a_.size());
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) out[r * n_ + c] = m[r * w + n_ + c];
  return {field_, n_, std::move(out)};
}

std::string GroupElem::str() const {
  std::string s;
  for (int r = 0; r < n_; ++r) {
    if (r) s += ';';
    for (int c = 0; c < n_; ++c) {
      if (c) s += ',';
      s += field_->format(at(r, c));
    }
  }
  return s;
}

GroupElem GroupElem::parse(Field field, std::string_view text) {
  // Entries may themselves contain commas inside brackets, so split by hand.
  std::vector<std::vector<Coef>> rows(1);
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    require(!cur.empty(), ErrorCode::parse, "empty matrix entry in '" + std::string(text) + "'");
    rows.back().push_back(field->parse(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ' ') continue;
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (depth == 0 && ch == ',') {
      flush();
    } else if (depth == 0 && ch == ';') {
      flush();
      rows.emplace_back();
    } else {
      cur += ch;
    }
  }
  flush();
  const int n = static_cast<int>(rows.size());
  std::vector<Coef> a;
  for (auto& r : rows) {
    require(static_cast<int>(r.size()) == n, ErrorCode::parse, "matrix is not square");
    a.insert(a.end(), r.begin(), r.end());
  }
  return {std::move(field), n, std::move(a)};
}

bool is_member(const GroupSpec& spec, const GroupElem& g) {
  if (g.n() != spec.n) return false;
  const Coef d = g.det();
  switch (spec.family) {
    case Family::GL: return d != 0;
    case Family::SL: return d == 1;
    case Family::U:
      for (int r = 0; r < g.n(); ++r)
        for (int c = 0; c <= r; ++c)
          if (g.at(r, c) != (r == c ? 1u : 0u)) return false;
      return true;
  }
  return false;
}

std::uint64_t group_order(const GroupSpec& spec) {
  const std::uint64_t q = static_cast<std::uint64_t>(spec.field->q());
  std::uint64_t qn = 1;
  for (int i = 0; i < spec.n; ++i) qn *= q;
  if (spec.family == Family::U) {
    std::uint64_t r = 1;
    for (int i = 0; i < spec.n * (spec.n - 1) / 2; ++i) r *= q;
    return r;
  }
  std::uint64_t gl = 1, qi = 1;
  for (int i = 0; i < spec.n; ++i) {
    gl *= qn - qi;
    qi *= q;
  }
  return spec.family == Family::GL ? gl : gl / (q - 1);
}

namespace {

GroupElem transvection(const Field& f, int n, int r, int c, Coef t) {
  auto g = GroupElem::identity(f, n);
  std::vector<Coef> a = g.entries();
  a[r * n + c] = t;
  return {f, n, std::move(a)};
}

struct VecHash {
  std::size_t operator()(const std::vector<Coef>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Coef c : v) h = (h ^ c) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

std::vector<GroupElem> group_generators(const GroupSpec& spec) {
  require(spec.n >= 1 && spec.field, ErrorCode::invalid_argument, "invalid group spec");
  const Field& f = spec.field;
  const int n = spec.n;
  std::vector<Coef> basis;  // GF(p)-basis 1, X, ..., X^{e-1}
  for (int b = 0, code = 1; b < f->e(); ++b, code *= f->p()) basis.push_back(static_cast<Coef>(code));

  std::vector<GroupElem> gens;
  if (spec.family == Family::U) {
    for (int i = 0; i + 1 < n; ++i)
      for (Coef t : basis) gens.push_back(transvection(f, n, i, i + 1, t));
    return gens;
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (r != c)
        for (Coef t : basis) gens.push_back(transvection(f, n, r, c, t));
  if (spec.family == Family::GL && f->q() > 2) {
    auto g = GroupElem::identity(f, n);
    std::vector<Coef> a = g.entries();
    a[0] = f->primitive();
    gens.emplace_back(f, n, std::move(a));
  }
  return gens;
}

std::vector<GroupElem> group_enumerate(const GroupSpec& spec, std::uint64_t cap) {
  const std::uint64_t order = group_order(spec);
  require(order <= cap, ErrorCode::cap_exceeded,
          family_name(spec.family) + "(" + std::to_string(spec.n) + "," + std::to_string(spec.field->q()) +
              ") has order " + std::to_string(order) + " above the enumeration cap " + std::to_string(cap));
  auto gens = group_generators(spec);
  std::vector<GroupElem> out{GroupElem::identity(spec.field, spec.n)};
  std::unordered_set<std::vector<Coef>, VecHash> seen{out.front().entries()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      GroupElem h = out[head] * g;
      if (seen.insert(h.entries()).second) {
        require(out.size() < cap, ErrorCode::cap_exceeded, "closure exceeded the enumeration cap");
        out.push_back(std::move(h));
      }
    }
  }
  return out;
}

bool certify_generators(const GroupSpec& spec, std::uint64_t cap) {
  for (const auto& g : group_generators(spec))
    if (!is_member(spec, g)) return false;
  return group_enumerate(spec, cap).size() == group_order(spec);
}

RingEndo action_endo(const GroupElem& g, const Space& space) {
  require(g.n() == space.n, ErrorCode::mismatch, "matrix dimension differs from the space dimension");
  const Field& f = g.field();
  const GroupElem inv = g.inverse();
  auto vars = VarSet::xy(space);
  const int n = space.n;
  RingEndo e{vars, {}};
  e.images.reserve(space.nvars());
  for (std::size_t idx = 0; idx < space.nvars(); ++idx) {
    VarId v = space.var(idx);
    const int i = v.coord - 1;
    std::vector<Term> terms;
    for (int t = 0; t < n; ++t) {
      Coef c = v.block == Block::X ? g.at(t, i) : inv.at(i, t);
      if (!c) continue;
      Term term{Mono{}, c};
      term.mono.e[space.index({v.block, v.copy, t + 1})] = 1;
      terms.push_back(term);
    }
    e.images.push_back(MPoly::from_terms(f, vars, std::move(terms)));
  }
  return e;
}

}  // namespace invfield
