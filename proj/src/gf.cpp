#include "invfield/gf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace invfield {

namespace {

// Low-to-high coefficients, monic. First irreducible found by exhaustive
// lexicographic search for each (p, e).
const std::map<std::pair<int, int>, std::vector<int>>& builtin_moduli() {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 0, 1, 1}},    {{2, 4}, {1, 0, 0, 1, 1}},
      {{3, 2}, {1, 0, 1}},    {{3, 3}, {1, 0, 2, 1}},    {{3, 4}, {1, 0, 1, 1, 1}},
      {{5, 2}, {1, 1, 1}},    {{5, 3}, {1, 0, 1, 1}},    {{5, 4}, {1, 0, 1, 1, 1}},
      {{7, 2}, {1, 0, 1}},    {{7, 3}, {1, 0, 1, 1}},    {{7, 4}, {1, 0, 0, 1, 1}},
  };
  return table;
}

int modp(long long v, int p) {
  long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

// Remainder of a by b over GF(p); both low-to-high, b monic.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  while (a.size() >= b.size()) {
    int c = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = modp(a[shift + i] - c * b[i], p);
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool is_irreducible(const std::vector<int>& poly, int p) {
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg < 1) return false;
  for (int k = 1; k <= deg / 2; ++k) {
    std::vector<int> g(k + 1, 0);
    g[k] = 1;
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      long long t = idx;
      for (int i = 0; i < k; ++i) {
        g[i] = static_cast<int>(t % p);
        t /= p;
      }
      if (poly_rem(poly, g, p).empty()) return false;
    }
  }
  return true;
}

std::shared_ptr<const FieldCtx> FieldCtx::make(int p, int e, std::optional<std::vector<int>> modulus) {
  require(invfield::is_prime(p), ErrorCode::invalid_argument, "field characteristic " + std::to_string(p) + " is not prime");
  require(e >= 1, ErrorCode::invalid_argument, "extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    require(q <= 65536, ErrorCode::domain, "field size exceeds supported range");
  }
  std::vector<int> mod;
  if (modulus) {
    mod = *modulus;
    for (int& c : mod) c = modp(c, p);
    require(static_cast<int>(mod.size()) == e + 1 && mod.back() == 1, ErrorCode::invalid_argument,
            "modulus must be monic of degree " + std::to_string(e));
    require(is_irreducible(mod, p), ErrorCode::invalid_argument, "modulus is reducible");
  } else if (e == 1) {
    mod = {0, 1};
  } else {
    auto it = builtin_moduli().find({p, e});
    require(it != builtin_moduli().end(), ErrorCode::not_found,
            "no built-in modulus for GF(" + std::to_string(p) + "^" + std::to_string(e) + ")");
    mod = it->second;
    require(is_irreducible(mod, p), ErrorCode::internal, "built-in modulus is reducible");
  }
  return std::shared_ptr<const FieldCtx>(new FieldCtx(p, e, std::move(mod)));
}

FieldCtx::FieldCtx(int p, int e, std::vector<int> modulus) : p_(p), e_(e), modulus_(std::move(modulus)) {
  q_ = 1;
  for (int i = 0; i < e_; ++i) q_ *= p_;

  tables_ = false;
  neg_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    auto d = digits(a);
    for (int& c : d) c = modp(-c, p_);
    neg_[a] = from_digits(d);
  }
  if (q_ <= 256) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) {
        add_table_[a * q_ + b] = static_cast<std::uint16_t>(add_slow(a, b));
        mul_table_[a * q_ + b] = static_cast<std::uint16_t>(mul_slow(a, b));
      }
    tables_ = true;
  }
  inv_.assign(q_, 0);
  for (int a = 1; a < q_; ++a) {
    if (inv_[a] != 0) continue;
    for (int b = 1; b < q_; ++b)
      if (mul(a, b) == 1) {
        inv_[a] = b;
        inv_[b] = a;
        break;
      }
  }

  elements_.resize(q_);
  for (int a = 0; a < q_; ++a) elements_[a] = a;
  std::sort(elements_.begin(), elements_.end(), [this](Coef a, Coef b) { return digits(a) < digits(b); });

  for (int g = 1; g < q_; ++g) {
    Coef x = g;
    int order = 1;
    while (x != 1) {
      x = mul(x, g);
      ++order;
    }
    if (order == q_ - 1) {
      primitive_ = g;
      break;
    }
  }
}

Coef FieldCtx::from_int(long long v) const { return static_cast<Coef>(modp(v, p_)); }

Coef FieldCtx::from_digits(const std::vector<int>& coeffs) const {
  require(static_cast<int>(coeffs.size()) <= e_, ErrorCode::invalid_argument, "too many coefficients for field element");
  Coef code = 0;
  Coef place = 1;
  for (int c : coeffs) {
    code += static_cast<Coef>(modp(c, p_)) * place;
    place *= p_;
  }
  return code;
}

std::vector<int> FieldCtx::digits(Coef a) const {
  std::vector<int> d(e_);
  for (int i = 0; i < e_; ++i) {
    d[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return d;
}

Coef FieldCtx::add_slow(Coef a, Coef b) const {
  Coef out = 0;
  Coef place = 1;
  for (int i = 0; i < e_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

Coef FieldCtx::mul_slow(Coef a, Coef b) const {
  auto da = digits(a), db = digits(b);
  std::vector<int> prod(2 * e_ - 1, 0);
  for (int i = 0; i < e_; ++i)
    for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  auto r = poly_rem(prod, modulus_, p_);
  return from_digits(r);
}

Coef FieldCtx::add(Coef a, Coef b) const {
  if (e_ == 1) {
    Coef s = a + b;
    return s >= static_cast<Coef>(p_) ? s - p_ : s;
  }
  if (tables_) return add_table_[a * q_ + b];
  return add_slow(a, b);
}

Coef FieldCtx::neg(Coef a) const { return neg_[a]; }

Coef FieldCtx::mul(Coef a, Coef b) const {
  if (e_ == 1) return static_cast<Coef>((static_cast<std::uint64_t>(a) * b) % p_);
  if (tables_) return mul_table_[a * q_ + b];
  return mul_slow(a, b);
}

Coef FieldCtx::inv(Coef a) const {
  require(a != 0, ErrorCode::division_by_zero, "inverse of zero");
  return inv_[a];
}

Coef FieldCtx::pow(Coef a, std::uint64_t k) const {
  Coef result = 1;
  Coef base = a;
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::string FieldCtx::format(Coef a) const {
  if (e_ == 1) return std::to_string(a);
  std::ostringstream os;
  os << '[';
  auto d = digits(a);
  for (int i = 0; i < e_; ++i) os << (i ? "," : "") << d[i];
  os << ']';
  return os.str();
}

Coef FieldCtx::parse(std::string_view text) const {
  auto bad = [&] { fail(ErrorCode::parse, "bad field element '" + std::string(text) + "'"); };
  if (text.empty()) bad();
  if (text.front() == '[') {
    if (text.back() != ']') bad();
    std::vector<int> coeffs;
    std::string body(text.substr(1, text.size() - 2));
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        coeffs.push_back(std::stoi(item));
      } catch (...) {
        bad();
      }
    }
    if (static_cast<int>(coeffs.size()) > e_) bad();
    return from_digits(coeffs);
  }
  long long v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') bad();
    v = v * 10 + (c - '0');
    if (v > (1LL << 40)) bad();
  }
  return from_int(v);
}

FieldElem::FieldElem(Field ctx, Coef code) : ctx_(std::move(ctx)), code_(code) {
  require(ctx_ != nullptr, ErrorCode::invalid_argument, "null field context");
  require(code_ < static_cast<Coef>(ctx_->q()), ErrorCode::invalid_argument, "field element code out of range");
}

const FieldCtx& FieldElem::checked(const FieldElem& o) const {
  require(ctx_ == o.ctx_ || ctx_->same_as(*o.ctx_), ErrorCode::mismatch, "field elements from different fields");
  return *ctx_;
}

FieldElem FieldElem::operator+(const FieldElem& o) const { return {ctx_, checked(o).add(code_, o.code_)}; }
FieldElem FieldElem::operator-(const FieldElem& o) const { return {ctx_, checked(o).sub(code_, o.code_)}; }
FieldElem FieldElem::operator*(const FieldElem& o) const { return {ctx_, checked(o).mul(code_, o.code_)}; }
FieldElem FieldElem::operator/(const FieldElem& o) const { return {ctx_, checked(o).div(code_, o.code_)}; }
FieldElem FieldElem::operator-() const { return {ctx_, ctx_->neg(code_)}; }
FieldElem FieldElem::inv() const { return {ctx_, ctx_->inv(code_)}; }
FieldElem FieldElem::pow(std::uint64_t k) const { return {ctx_, ctx_->pow(code_, k)}; }

bool FieldElem::operator==(const FieldElem& o) const { return code_ == o.code_ && ctx_->same_as(*o.ctx_); }

std::vector<FieldElem> enumerate_field(const Field& ctx) {
  std::vector<FieldElem> out;
  out.reserve(ctx->q());
  for (Coef c : ctx->elements()) out.emplace_back(ctx, c);
  return out;
}

std::vector<Coef> embed_field(const FieldCtx& small, const FieldCtx& big) {
  require(small.p() == big.p() && big.e() % small.e() == 0, ErrorCode::mismatch,
          "GF(" + std::to_string(small.q()) + ") does not embed in GF(" + std::to_string(big.q()) + ")");
  const auto& mod = small.modulus();
  Coef root = 0;
  bool found = false;
  for (Coef w = 0; w < static_cast<Coef>(big.q()) && !found; ++w) {
    Coef acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = big.add(big.mul(acc, w), big.from_int(mod[i]));
    if (acc == 0) {
      root = w;
      found = true;
    }
  }
  require(found, ErrorCode::internal, "modulus has no root in the extension");
  std::vector<Coef> out(small.q());
  for (Coef a = 0; a < static_cast<Coef>(small.q()); ++a) {
    auto d = small.digits(a);
    Coef acc = 0;
    for (std::size_t i = d.size(); i-- > 0;) acc = big.add(big.mul(acc, root), big.from_int(d[i]));
    out[a] = acc;
  }
  return out;
}

}  // namespace invfield
