#include "invfield/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <mutex>
#include <sstream>

namespace invfield {

std::uint64_t Mono::degree() const {
  std::uint64_t s = 0;
  for (Exp x : e) s += x;
  return s;
}

std::size_t MonoHash::operator()(const Mono& m) const noexcept {
  static_assert(sizeof(m.e) % sizeof(std::uint64_t) == 0);
  std::uint64_t words[sizeof(m.e) / sizeof(std::uint64_t)];
  std::memcpy(words, m.e.data(), sizeof(m.e));
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : words) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

Exp checked_exp(std::uint64_t v) {
  require(v <= 0xFFFF, ErrorCode::domain, "exponent overflow (" + std::to_string(v) + ")");
  return static_cast<Exp>(v);
}

namespace {

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.e[i]) + unsigned(b.e[i]);
    if (s > 0xFFFF) checked_exp(s);
    r.e[i] = static_cast<Exp>(s);
  }
  return r;
}

bool desc(const Term& a, const Term& b) { return a.mono > b.mono; }

}  // namespace

// ---------------------------------------------------------------- Space

std::size_t Space::index(VarId v) const {
  require(v.coord >= 1 && v.coord <= n, ErrorCode::invalid_argument, "coordinate out of range");
  if (v.block == Block::X) {
    require(v.copy >= 1 && v.copy <= m, ErrorCode::invalid_argument, "vector copy out of range");
    return static_cast<std::size_t>((v.copy - 1) * n + (v.coord - 1));
  }
  require(v.copy >= 1 && v.copy <= d, ErrorCode::invalid_argument, "covector copy out of range");
  return static_cast<std::size_t>(m * n + (v.copy - 1) * n + (v.coord - 1));
}

VarId Space::var(std::size_t idx) const {
  const auto i = static_cast<int>(idx);
  if (i < m * n) return {Block::X, i / n + 1, i % n + 1};
  const int r = i - m * n;
  return {Block::Y, r / n + 1, r % n + 1};
}

// ---------------------------------------------------------------- VarSet

std::shared_ptr<const VarSet> VarSet::xy(const Space& space) {
  require(space.n >= 1 && space.m >= 0 && space.d >= 0, ErrorCode::invalid_argument, "invalid space");
  require(space.nvars() <= kMaxVars, ErrorCode::domain,
          "space has " + std::to_string(space.nvars()) + " variables; at most " + std::to_string(kMaxVars) +
              " supported");
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const VarSet>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(space.n, space.m, space.d);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto vs = std::shared_ptr<VarSet>(new VarSet());
  vs->xy_ = true;
  vs->space_ = space;
  for (std::size_t i = 0; i < space.nvars(); ++i) {
    VarId v = space.var(i);
    std::string nm = std::string(v.block == Block::X ? "x" : "y") + "[" + std::to_string(v.copy) + "," +
                     std::to_string(v.coord) + "]";
    vs->index_[nm] = i;
    vs->names_.push_back(std::move(nm));
  }
  cache[key] = vs;
  return vs;
}

std::shared_ptr<const VarSet> VarSet::labels(std::vector<std::string> names) {
  require(names.size() <= kMaxVars, ErrorCode::domain, "too many labels in one expression");
  auto vs = std::shared_ptr<VarSet>(new VarSet());
  vs->xy_ = false;
  for (std::size_t i = 0; i < names.size(); ++i) {
    require(vs->index_.emplace(names[i], i).second, ErrorCode::invalid_argument, "duplicate label " + names[i]);
  }
  vs->names_ = std::move(names);
  return vs;
}

std::optional<std::size_t> VarSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(Field field, Vars vars) : field_(std::move(field)), vars_(std::move(vars)) {
  require(field_ && vars_, ErrorCode::invalid_argument, "polynomial needs a field and a variable set");
}

MPoly MPoly::constant(Field field, Vars vars, Coef c) {
  MPoly p(std::move(field), std::move(vars));
  if (c != 0) p.terms_.push_back({Mono{}, c});
  return p;
}

MPoly MPoly::variable(Field field, Vars vars, std::size_t idx, Exp e) {
  require(idx < vars->size(), ErrorCode::invalid_argument, "variable index out of range");
  MPoly p(std::move(field), std::move(vars));
  Mono m;
  m.e[idx] = e;
  p.terms_.push_back({m, 1});
  return p;
}

MPoly MPoly::x(Field field, const Space& s, int copy, int coord) {
  return variable(std::move(field), VarSet::xy(s), s.index({Block::X, copy, coord}));
}

MPoly MPoly::y(Field field, const Space& s, int copy, int coord) {
  return variable(std::move(field), VarSet::xy(s), s.index({Block::Y, copy, coord}));
}

MPoly MPoly::from_terms(Field field, Vars vars, std::vector<Term> terms) {
  MPoly p(std::move(field), std::move(vars));
  std::sort(terms.begin(), terms.end(), desc);
  const FieldCtx& f = *p.field_;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef = f.add(p.terms_.back().coef, t.coef);
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(t);
    }
  }
  return p;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == Mono{}); }

Coef MPoly::coefficient(const Mono& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{m, 0}, desc);
  return (it != terms_.end() && it->mono == m) ? it->coef : 0;
}

std::uint64_t MPoly::total_degree() const {
  std::uint64_t d = 0;
  for (auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::uint64_t MPoly::partial_degree(std::size_t lo, std::size_t hi) const {
  std::uint64_t d = 0;
  for (auto& t : terms_) {
    std::uint64_t s = 0;
    for (std::size_t i = lo; i < hi && i < kMaxVars; ++i) s += t.mono.e[i];
    d = std::max(d, s);
  }
  return d;
}

bool MPoly::uses_var(std::size_t idx) const {
  for (auto& t : terms_)
    if (t.mono.e[idx] != 0) return true;
  return false;
}

void MPoly::check_compatible(const MPoly& o) const {
  require(field_ == o.field_ || field_->same_as(*o.field_), ErrorCode::mismatch, "polynomials over different fields");
  require(vars_ == o.vars_ || *vars_ == *o.vars_, ErrorCode::mismatch, "polynomials over different variable sets");
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  MPoly r(field_, vars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  const FieldCtx& f = *field_;
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].mono > o.terms_[j].mono) {
      r.terms_.push_back(terms_[i++]);
    } else if (o.terms_[j].mono > terms_[i].mono) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Coef c = f.add(terms_[i].coef, o.terms_[j].coef);
      if (c != 0) r.terms_.push_back({terms_[i].mono, c});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& t : r.terms_) t.coef = field_->neg(t.coef);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::scale(Coef c) const {
  if (c == 0) return zero();
  MPoly r(*this);
  for (auto& t : r.terms_) t.coef = field_->mul(t.coef, c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  if (terms_.empty() || o.terms_.empty()) return zero();
  const FieldCtx& f = *field_;
  if (terms_.size() == 1 || o.terms_.size() == 1) {
    const MPoly& big = terms_.size() == 1 ? o : *this;
    const Term& t = terms_.size() == 1 ? terms_[0] : o.terms_[0];
    MPoly r(field_, vars_);
    r.terms_.reserve(big.terms_.size());
    // Multiplying by a monomial preserves the order.
    for (auto& b : big.terms_) r.terms_.push_back({mono_mul(b.mono, t.mono), f.mul(b.coef, t.coef)});
    return r;
  }
  std::unordered_map<Mono, Coef, MonoHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (auto& a : terms_)
    for (auto& b : o.terms_) {
      auto [it, inserted] = acc.try_emplace(mono_mul(a.mono, b.mono), 0);
      it->second = f.add(it->second, f.mul(a.coef, b.coef));
    }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back({m, c});
  std::sort(out.begin(), out.end(), desc);
  MPoly r(field_, vars_);
  r.terms_ = std::move(out);
  return r;
}

MPoly MPoly::frobenius_p() const {
  MPoly r(field_, vars_);
  r.terms_.reserve(terms_.size());
  const int p = field_->p();
  for (auto& t : terms_) {
    Term u;
    for (std::size_t i = 0; i < kMaxVars; ++i) u.mono.e[i] = checked_exp(std::uint64_t(t.mono.e[i]) * p);
    u.coef = field_->pow(t.coef, p);
    r.terms_.push_back(u);
  }
  return r;
}

MPoly MPoly::pow(std::uint64_t k) const {
  if (k == 0) return one();
  if (k == 1) return *this;
  const std::uint64_t p = field_->p();
  if (terms_.size() == 1) {
    Term u;
    for (std::size_t i = 0; i < kMaxVars; ++i) u.mono.e[i] = checked_exp(k * terms_[0].mono.e[i]);
    u.coef = field_->pow(terms_[0].coef, k);
    MPoly r(field_, vars_);
    r.terms_.push_back(u);
    return r;
  }
  // f^k = (f^(k div p))^p * f^(k mod p), with the p-th power taken coefficientwise.
  MPoly r = pow(k / p).frobenius_p();
  for (std::uint64_t i = 0; i < k % p; ++i) r = r * *this;
  return r;
}

bool MPoly::operator==(const MPoly& o) const {
  if (!(field_ == o.field_ || field_->same_as(*o.field_))) return false;
  if (!(vars_ == o.vars_ || *vars_ == *o.vars_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coef != o.terms_[i].coef) return false;
  return true;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t ti = 0; ti < terms_.size(); ++ti) {
    const Term& t = terms_[ti];
    if (ti) out += " + ";
    std::string factors;
    for (std::size_t i = 0; i < vars_->size(); ++i) {
      if (!t.mono.e[i]) continue;
      if (!factors.empty()) factors += '*';
      factors += vars_->name(i);
      if (t.mono.e[i] > 1) factors += "^" + std::to_string(t.mono.e[i]);
    }
    if (factors.empty()) {
      out += field_->format(t.coef);
    } else if (t.coef == 1) {
      out += factors;
    } else {
      out += field_->format(t.coef) + "*" + factors;
    }
  }
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(const Field& field, const Vars& vars, std::string_view text) : f_(field), v_(vars), s_(text) {}

  MPoly run() {
    MPoly acc(f_, v_);
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = get() == '-';
    }
    while (true) {
      MPoly t = term();
      acc = negate ? acc - t : acc + t;
      skip_ws();
      if (pos_ >= s_.size()) break;
      char c = get();
      if (c != '+' && c != '-') bad("expected '+' or '-'");
      negate = c == '-';
    }
    return acc;
  }

 private:
  MPoly term() {
    MPoly acc = MPoly::constant(f_, v_, 1);
    while (true) {
      acc = acc * factor();
      skip_ws();
      if (peek() != '*') break;
      get();
    }
    return acc;
  }

  MPoly factor() {
    skip_ws();
    MPoly base(f_, v_);
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        name += s_[pos_++];
      if (peek() == '[') {
        while (pos_ < s_.size() && s_[pos_] != ']') {
          if (!std::isspace(static_cast<unsigned char>(s_[pos_]))) name += s_[pos_];
          ++pos_;
        }
        if (pos_ >= s_.size()) bad("unterminated '['");
        name += s_[pos_++];
      }
      auto idx = v_->find(name);
      if (!idx) fail(ErrorCode::parse, "unknown variable '" + name + "'");
      base = MPoly::variable(f_, v_, *idx);
    } else if (c == '[') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ']') ++pos_;
      if (pos_ >= s_.size()) bad("unterminated coefficient");
      ++pos_;
      base = MPoly::constant(f_, v_, f_->parse(s_.substr(start, pos_ - start)));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      base = MPoly::constant(f_, v_, f_->parse(s_.substr(start, pos_ - start)));
    } else {
      bad("expected a variable or coefficient");
    }
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) bad("expected exponent");
      std::uint64_t e = std::stoull(std::string(s_.substr(start, pos_ - start)));
      base = base.pow(e);
    }
    return base;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void bad(const std::string& why) {
    fail(ErrorCode::parse, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  const Field& f_;
  const Vars& v_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly MPoly::parse(Field field, Vars vars, std::string_view text) { return Parser(field, vars, text).run(); }

// ---------------------------------------------------------------- endomorphisms

RingEndo RingEndo::identity(const Field& field, const Vars& vars) {
  RingEndo e{vars, {}};
  for (std::size_t i = 0; i < vars->size(); ++i) e.images.push_back(MPoly::variable(field, vars, i));
  return e;
}

const MPoly& PowerCache::power(std::size_t var, Exp e) {
  auto& slot = cache_[var];
  if (auto it = slot.find(e); it != slot.end()) return it->second;
  const MPoly& base = endo_.images[var];
  MPoly value = base;
  const Exp p = static_cast<Exp>(base.field()->p());
  if (e == 0) {
    value = base.one();
  } else if (e == 1) {
    value = base;
  } else if (e % p == 0) {
    value = power(var, static_cast<Exp>(e / p)).frobenius_p();
  } else if (e > p) {
    const Exp r = static_cast<Exp>(e % p);
    value = power(var, static_cast<Exp>(e - r)) * power(var, r);
  } else {
    value = power(var, static_cast<Exp>(e - 1)) * base;
  }
  return slot.emplace(e, std::move(value)).first->second;
}

MPoly apply_endo(PowerCache& cache, const RingEndo& endo, const MPoly& f) {
  require(*endo.source == *f.vars(), ErrorCode::mismatch, "endomorphism source does not match polynomial");
  require(endo.images.size() == f.vars()->size(), ErrorCode::invalid_argument, "missing variable image");
  if (endo.images.empty()) return f;
  const MPoly& proto = endo.images.front();
  const FieldCtx& fc = *proto.field();
  std::unordered_map<Mono, Coef, MonoHash> acc;
  for (const Term& t : f.terms()) {
    std::optional<MPoly> prod;
    for (std::size_t v = 0; v < endo.images.size(); ++v) {
      if (!t.mono.e[v]) continue;
      const MPoly& pw = cache.power(v, t.mono.e[v]);
      prod = prod ? *prod * pw : pw;
      if (prod->is_zero()) break;
    }
    if (!prod) prod = proto.one();
    for (const Term& u : prod->terms()) {
      auto [it, ins] = acc.try_emplace(u.mono, 0);
      it->second = fc.add(it->second, fc.mul(u.coef, t.coef));
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c) out.push_back({m, c});
  return MPoly::from_terms(proto.field(), proto.vars(), std::move(out));
}

MPoly apply_endo(const RingEndo& endo, const MPoly& f) {
  PowerCache cache(endo);
  return apply_endo(cache, endo, f);
}

RingEndo compose(const RingEndo& a, const RingEndo& b) {
  RingEndo r{b.source, {}};
  PowerCache cache(a);
  for (const auto& img : b.images) r.images.push_back(apply_endo(cache, a, img));
  return r;
}

RingEndo frobenius_endo(const Field& field, const Space& space, Frobenius which, int power) {
  require(power >= 0, ErrorCode::invalid_argument, "Frobenius power must be non-negative");
  auto vars = VarSet::xy(space);
  std::uint64_t e = 1;
  for (int i = 0; i < power; ++i) e *= static_cast<std::uint64_t>(field->q());
  RingEndo r{vars, {}};
  const Block target = which == Frobenius::F ? Block::X : Block::Y;
  for (std::size_t i = 0; i < space.nvars(); ++i) {
    Exp ex = space.var(i).block == target ? checked_exp(e) : Exp{1};
    r.images.push_back(MPoly::variable(field, vars, i, ex));
  }
  return r;
}

RingEndo involution_endo(const Field& field, const Space& space, int j, int k) {
  require(j >= 1 && j <= space.m, ErrorCode::invalid_argument, "vector copy out of range");
  require(k >= 1 && k <= space.d, ErrorCode::invalid_argument, "covector copy out of range");
  auto r = RingEndo::identity(field, VarSet::xy(space));
  const int n = space.n;
  for (int i = 1; i <= n; ++i) {
    r.images[space.index({Block::X, j, i})] = MPoly::y(field, space, k, n + 1 - i);
    r.images[space.index({Block::Y, k, i})] = MPoly::x(field, space, j, n + 1 - i);
  }
  return r;
}

// ---------------------------------------------------------------- determinants, rational expressions

MPoly poly_det(const std::vector<std::vector<MPoly>>& m) {
  const std::size_t n = m.size();
  require(n >= 1, ErrorCode::invalid_argument, "empty matrix");
  for (auto& row : m) require(row.size() == n, ErrorCode::invalid_argument, "determinant of a non-square matrix");
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  MPoly acc = m[0][0].zero();
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<MPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MPoly> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    MPoly term = m[0][c] * poly_det(minor);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

bool rat_eq(const RatExpr& a, const RatExpr& b) {
  require(!a.den.is_zero() && !b.den.is_zero(), ErrorCode::division_by_zero, "rational expression with zero denominator");
  return a.num * b.den == b.num * a.den;
}

// ---------------------------------------------------------------- evaluation, Jacobian

Coef evaluate(const MPoly& f, std::span<const Coef> point) {
  require(point.size() >= f.vars()->size(), ErrorCode::invalid_argument, "missing coordinate");
  const FieldCtx& fc = *f.field();
  Coef acc = 0;
  for (const Term& t : f.terms()) {
    Coef v = t.coef;
    for (std::size_t i = 0; i < f.vars()->size() && v; ++i)
      if (t.mono.e[i]) v = fc.mul(v, fc.pow(point[i], t.mono.e[i]));
    acc = fc.add(acc, v);
  }
  return acc;
}

FieldElem evaluate(const MPoly& f, const std::map<VarId, FieldElem>& point) {
  require(f.vars()->is_xy(), ErrorCode::invalid_argument, "evaluation by VarId needs an x/y polynomial");
  const Space& s = f.vars()->space();
  std::vector<Coef> pt(s.nvars(), 0);
  for (std::size_t i = 0; i < s.nvars(); ++i) {
    auto it = point.find(s.var(i));
    if (it == point.end()) {
      require(!f.uses_var(i), ErrorCode::invalid_argument, "missing coordinate for " + f.vars()->name(i));
      continue;
    }
    pt[i] = it->second.code();
  }
  return FieldElem(f.field(), evaluate(f, pt));
}

int jacobian_rank(const std::vector<MPoly>& polys, std::span<const Coef> point) {
  if (polys.empty()) return 0;
  const FieldCtx& fc = *polys.front().field();
  const std::size_t nv = polys.front().vars()->size();
  require(point.size() >= nv, ErrorCode::invalid_argument, "missing coordinate");
  std::vector<std::vector<Coef>> jac(polys.size(), std::vector<Coef>(nv, 0));
  for (std::size_t r = 0; r < polys.size(); ++r) {
    for (const Term& t : polys[r].terms()) {
      for (std::size_t v = 0; v < nv; ++v) {
        if (!t.mono.e[v]) continue;
        Coef mult = fc.from_int(t.mono.e[v]);
        if (!mult) continue;
        Coef val = fc.mul(t.coef, mult);
        for (std::size_t w = 0; w < nv && val; ++w) {
          Exp e = t.mono.e[w] - (w == v ? 1 : 0);
          if (e) val = fc.mul(val, fc.pow(point[w], e));
        }
        jac[r][v] = fc.add(jac[r][v], val);
      }
    }
  }
  return matrix_rank(fc, std::move(jac));
}

// ---------------------------------------------------------------- linear algebra over GF(q)

namespace {

// Reduces [A | b] to row echelon form in place; returns pivot columns.
std::vector<std::size_t> eliminate(const FieldCtx& f, std::vector<std::vector<Coef>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][c] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    Coef inv = f.inv(a[row][c]);
    for (auto& x : a[row]) x = f.mul(x, inv);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Coef factor = a[r][c];
      for (std::size_t k = 0; k < a[r].size(); ++k)
        if (a[row][k]) a[r][k] = f.sub(a[r][k], f.mul(factor, a[row][k]));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

int matrix_rank(const FieldCtx& f, std::vector<std::vector<Coef>> a) {
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  return static_cast<int>(eliminate(f, a, cols).size());
}

LinearSolution solve_linear(const FieldCtx& f, std::vector<std::vector<Coef>> a, std::vector<Coef> b) {
  require(a.size() == b.size(), ErrorCode::invalid_argument, "row count mismatch");
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
  auto pivots = eliminate(f, a, cols);
  LinearSolution sol;
  sol.rank = static_cast<int>(pivots.size());
  sol.nullity = static_cast<int>(cols) - sol.rank;
  sol.feasible = true;
  for (std::size_t r = pivots.size(); r < a.size(); ++r)
    if (a[r][cols] != 0) sol.feasible = false;
  sol.x.assign(cols, 0);
  if (sol.feasible)
    for (std::size_t r = 0; r < pivots.size(); ++r) sol.x[pivots[r]] = a[r][cols];
  return sol;
}

}  // namespace invfield
