#include "invfield/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "invfield/certificate.hpp"
#include "invfield/invariants.hpp"
#include "nlohmann/json.hpp"

namespace invfield {

namespace {
constexpr const char* kVersion = "0.1.0";
}

std::string GridPoint::str() const {
  return "n=" + std::to_string(n) + ",q=" + std::to_string(q) + ",m=" + std::to_string(m) + ",d=" + std::to_string(d);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string CheckRecord::id() const { return suite + "/" + family + "/" + point.str() + "/" + instance; }

std::size_t Report::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [v](const CheckRecord& c) { return c.verdict == v; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"invariance",   "counts",       "relations",    "determinant",
                                                 "hypersurface", "coefficients", "certificates", "independence"};
  return names;
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (...) {
  }
  fail(ErrorCode::invalid_argument, "bad integer for " + what + ": '" + s + "'");
}

}  // namespace

std::vector<GridPoint> parse_grid(std::string_view text) {
  std::vector<GridPoint> out;
  for (auto& entry : split(text, ';')) {
    if (entry.empty()) continue;
    GridPoint g;
    std::set<std::string> seen;
    for (auto& kv : split(entry, ',')) {
      auto eq = kv.find('=');
      require(eq != std::string::npos, ErrorCode::invalid_argument, "grid entry '" + entry + "': expected key=value");
      std::string key = trim(kv.substr(0, eq)), val = trim(kv.substr(eq + 1));
      require(seen.insert(key).second, ErrorCode::invalid_argument, "grid entry '" + entry + "': repeated " + key);
      int v = parse_int(val, key);
      if (key == "n") g.n = v;
      else if (key == "q") g.q = v;
      else if (key == "m") g.m = v;
      else if (key == "d") g.d = v;
      else fail(ErrorCode::invalid_argument, "grid entry '" + entry + "': unknown key '" + key + "'");
    }
    require(seen.size() == 4, ErrorCode::invalid_argument, "grid entry '" + entry + "' must set n, q, m and d");
    out.push_back(g);
  }
  require(!out.empty(), ErrorCode::invalid_argument, "empty grid");
  return out;
}

std::vector<Family> parse_families(std::string_view text) {
  std::vector<Family> out;
  for (auto& f : split(text, ',')) {
    Family fam = parse_family(f);
    if (std::find(out.begin(), out.end(), fam) == out.end()) out.push_back(fam);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> parse_suites(std::string_view text, bool* is_explicit) {
  if (trim(text) == "all") {
    if (is_explicit) *is_explicit = false;
    return suite_names();
  }
  std::set<std::string> want;
  for (auto& s : split(text, ',')) {
    require(std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end(),
            ErrorCode::invalid_argument, "unknown suite '" + s + "'");
    want.insert(s);
  }
  std::vector<std::string> out;
  for (auto& s : suite_names())
    if (want.count(s)) out.push_back(s);
  if (is_explicit) *is_explicit = true;
  return out;
}

std::string default_grid_text() { return "n=1,q=3,m=2,d=2;n=2,q=2,m=2,d=2;n=2,q=3,m=2,d=2;n=3,q=2,m=2,d=1"; }

SuiteConfig default_config() {
  SuiteConfig c;
  c.grid = parse_grid(default_grid_text());
  c.suites = suite_names();
  return c;
}

Field field_for_q(int q) {
  static std::mutex mu;
  static std::map<int, Field> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(q); it != cache.end()) return it->second;
  require(q >= 2, ErrorCode::invalid_argument, "q must be a prime power >= 2");
  int p = 2;
  while (q % p) ++p;
  int e = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  require(r == 1, ErrorCode::invalid_argument, "q = " + std::to_string(q) + " is not a prime power");
  auto f = FieldCtx::make(p, e);
  cache[q] = f;
  return f;
}

namespace {

std::optional<std::string> inapplicable(const std::string& suite, const GridPoint& g) {
  if (suite == "hypersurface" && g.n != 2) return "hypersurface requires n = 2";
  if (suite == "coefficients" && g.n < 2) return "coefficients requires n >= 2";
  return std::nullopt;
}

}  // namespace

void validate_config(const SuiteConfig& cfg) {
  require(!cfg.families.empty(), ErrorCode::invalid_argument, "no families selected");
  require(!cfg.grid.empty(), ErrorCode::invalid_argument, "empty grid");
  require(!cfg.suites.empty(), ErrorCode::invalid_argument, "no suites selected");
  for (auto& s : cfg.suites)
    require(std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end(),
            ErrorCode::invalid_argument, "unknown suite '" + s + "'");
  for (auto& g : cfg.grid) {
    require(g.n >= 1 && g.m >= 1 && g.d >= 1, ErrorCode::invalid_argument, g.str() + ": n, m, d must be >= 1");
    require(static_cast<std::size_t>((g.m + g.d) * g.n) <= kMaxVars, ErrorCode::invalid_argument,
            g.str() + ": (m+d)n exceeds " + std::to_string(kMaxVars) + " variables");
    field_for_q(g.q);
    if (cfg.suites_explicit)
      for (auto& s : cfg.suites)
        if (auto why = inapplicable(s, g)) fail(ErrorCode::invalid_argument, *why + " (grid entry " + g.str() + ")");
  }
}

namespace {

using nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string theorem_set(Family f) { return f == Family::GL ? "thm_GL" : f == Family::SL ? "thm_SL" : "thm_UU"; }
std::string big_set(Family f) { return f == Family::GL ? "prec_GL" : f == Family::SL ? "prec_SL" : "prec_U"; }

// Shared state across checks; every cache is guarded by its own mutex.
class Context {
 public:
  explicit Context(const SuiteConfig& cfg) : cfg_(cfg) {}

  const InvariantBuilder& builder(int q, const Space& s) {
    std::lock_guard lock(mu_b_);
    auto key = std::tuple{q, s.n, s.m, s.d};
    auto it = builders_.find(key);
    if (it == builders_.end())
      it = builders_.emplace(key, std::make_unique<InvariantBuilder>(field_for_q(q), s, resolved_conventions().sign))
               .first;
    return *it->second;
  }

  struct GroupInfo {
    std::uint64_t order = 0;
    bool enumerated = false;
    bool certified = false;
    std::vector<GroupElem> elems;
  };

  const GroupInfo& group(Family fam, int n, int q) {
    std::lock_guard lock(mu_g_);
    auto key = std::tuple{fam, n, q};
    auto it = groups_.find(key);
    if (it != groups_.end()) return it->second;
    GroupSpec spec{fam, n, field_for_q(q)};
    GroupInfo gi;
    gi.order = group_order(spec);
    if (gi.order <= cfg_.cap) {
      gi.elems = group_enumerate(spec, cfg_.cap);
      gi.enumerated = true;
      gi.certified = gi.elems.size() == gi.order;
    } else {
      gi.elems = group_generators(spec);
    }
    return groups_.emplace(key, std::move(gi)).first->second;
  }

  // Invariance of one label, evaluated in the smallest ambient ring that contains it.
  bool label_invariant(Family fam, int n, int q, const Label& l) {
    auto key = std::tuple{fam, n, q, l.str()};
    {
      std::lock_guard lock(mu_i_);
      if (auto it = inv_.find(key); it != inv_.end()) return it->second;
    }
    const bool cov = l.kind == "cstar" || l.kind == "dstar" || l.kind == "fstar" || l.kind == "v";
    Space s{n, cov ? 1 : l.a, cov ? l.a : 1};
    const MPoly& p = builder(q, s).get(l);
    const auto& gi = group(fam, n, q);
    bool ok = true;
    for (auto& g : gi.elems) {
      if (apply_endo(action_endo(g, s), p) != p) {
        ok = false;
        break;
      }
    }
    std::lock_guard lock(mu_i_);
    inv_[key] = ok;
    return ok;
  }

  const SuiteConfig& cfg() const { return cfg_; }

 private:
  const SuiteConfig& cfg_;
  std::mutex mu_b_, mu_g_, mu_i_;
  std::map<std::tuple<int, int, int, int>, std::unique_ptr<InvariantBuilder>> builders_;
  std::map<std::tuple<Family, int, int>, GroupInfo> groups_;
  std::map<std::tuple<Family, int, int, std::string>, bool> inv_;
};

using Task = std::function<std::vector<CheckRecord>()>;

CheckRecord make(const std::string& suite, const std::string& fam, const GridPoint& g, std::string inst, bool ok,
                 std::string detail) {
  return {suite, fam, g, std::move(inst), ok ? Verdict::Pass : Verdict::Fail, std::move(detail), 0};
}

std::vector<CheckRecord> run_invariance(Context& ctx, Family fam, const GridPoint& g) {
  std::vector<CheckRecord> out;
  const auto& gi = ctx.group(fam, g.n, g.q);
  std::string scope = gi.enumerated ? "all " + std::to_string(gi.order) + " elements"
                                    : "generators only (order " + std::to_string(gi.order) + " exceeds cap " +
                                          std::to_string(ctx.cfg().cap) + ")";
  Space s{g.n, g.m, g.d};
  for (const auto& set_name : {theorem_set(fam), big_set(fam)}) {
    auto set = generating_set(set_name, s);
    std::vector<std::string> bad;
    for (auto& l : set.labels)
      if (!ctx.label_invariant(fam, g.n, g.q, l)) bad.push_back(l.str());
    std::string detail = std::to_string(set.labels.size()) + " labels fixed by " + scope;
    bool ok = bad.empty();
    if (gi.enumerated && !gi.certified) {
      ok = false;
      detail = "generator closure does not reach the group order";
    } else if (!bad.empty()) {
      detail = "not invariant: ";
      for (std::size_t i = 0; i < bad.size(); ++i) detail += (i ? ", " : "") + bad[i];
    }
    out.push_back(make("invariance", family_name(fam), g, set_name, ok, detail));
  }
  return out;
}

std::vector<CheckRecord> run_counts(Family fam, const GridPoint& g) {
  auto set = generating_set(theorem_set(fam), Space{g.n, g.m, g.d});
  std::set<Label> distinct(set.labels.begin(), set.labels.end());
  const std::size_t want = static_cast<std::size_t>((g.m + g.d) * g.n);
  bool ok = set.labels.size() == want && distinct.size() == want;
  return {make("counts", family_name(fam), g, theorem_set(fam), ok,
               "|set| = " + std::to_string(set.labels.size()) + ", (m+d)n = " + std::to_string(want))};
}

std::vector<CheckRecord> run_relations(Context& ctx, const GridPoint& g) {
  std::vector<CheckRecord> out;
  const Space s{g.n, g.m, g.d};
  const auto& b = ctx.builder(g.q, s);
  const auto& conv = resolved_conventions();
  const int n = g.n;
  const auto q = static_cast<std::uint64_t>(g.q);
  auto add = [&](std::string inst, bool ok) {
    out.push_back(make("relations", "-", g, std::move(inst), ok, ok ? "exact zero" : "non-zero residual"));
  };
  add("identity u[1,0]=v[1,0]", b.get("u[1,0]") == b.get("v[1,0]"));
  auto star = involution_endo(b.field(), s, 1, 1);
  for (int i = 0; i < n; ++i)
    add("identity *(u[1," + std::to_string(-i) + "])=u[1," + std::to_string(i) + "]",
        apply_endo(star, b.get(Label{"u", 1, -i})) == b.get(Label{"u", 1, i}));
  for (int j = 1; j <= g.m; ++j)
    add("identity c[" + std::to_string(j) + ",0]=d^(q-1)",
        b.get(Label{"c", j, 0}) == b.get(Label{"d", j, n}).pow(q - 1));
  for (int k = 1; k <= g.d; ++k)
    add("identity cstar[" + std::to_string(k) + ",0]=dstar^(q-1)",
        b.get(Label{"cstar", k, 0}) == b.get(Label{"dstar", k, n}).pow(q - 1));
  for (int r = 1; r < n; ++r) {
    for (int j = 1; j <= g.m; ++j)
      add("T*_" + std::to_string(r) + "(j=" + std::to_string(j) + ")", check_T_star(b, j, r, conv));
    for (int k = 1; k <= g.d; ++k)
      add("T_" + std::to_string(r) + "(k=" + std::to_string(k) + ")", check_T(b, k, r, conv));
  }
  return out;
}

std::vector<CheckRecord> run_determinant(Context& ctx, const GridPoint& g) {
  std::vector<CheckRecord> out;
  const auto& b = ctx.builder(g.q, Space{g.n, g.m, g.d});
  for (int j = 1; j <= g.m; ++j) {
    bool ok = check_det_identity(b, j);
    out.push_back(make("determinant", "-", g, "d[" + std::to_string(j) + ",n]*dstar[1,n]=det(U)", ok,
                       ok ? "exact equality" : "sides differ"));
  }
  for (int k = 1; k <= g.d; ++k) {
    bool ok = check_det_identity_mirror(b, k);
    out.push_back(make("determinant", "-", g, "d[1,n]*dstar[" + std::to_string(k) + ",n]=det(V)", ok,
                       ok ? "exact equality" : "sides differ"));
  }
  return out;
}

std::vector<CheckRecord> run_hypersurface(Context& ctx, const GridPoint& g) {
  std::vector<CheckRecord> out;
  const auto& b = ctx.builder(g.q, Space{g.n, g.m, g.d});
  for (int j = 1; j <= g.m; ++j)
    for (int k = 1; k <= g.d; ++k) {
      bool ok = check_hypersurface_n2(b, j, k);
      out.push_back(make("hypersurface", "-", g, "pair(" + std::to_string(j) + "," + std::to_string(k) + ")", ok,
                         ok ? "exact zero" : "non-zero residual"));
    }
  return out;
}

std::vector<std::tuple<RKind, int>> r_relations(int n) {
  std::vector<std::tuple<RKind, int>> out{{RKind::Rplus1, 1}};
  for (int s = 2; s <= n; ++s) out.push_back({RKind::R, s});
  for (int s = 3; s <= n; ++s) out.push_back({RKind::Rminus, s});
  return out;
}

std::vector<CheckRecord> run_coefficients(Context& ctx, const GridPoint& g) {
  std::vector<CheckRecord> out;
  const auto& b = ctx.builder(g.q, Space{g.n, g.m, g.d});
  std::vector<PairView> views;
  for (int j = 1; j <= g.m; ++j) views.push_back({false, j});
  for (int k = 2; k <= g.d; ++k) views.push_back({true, k});
  for (auto& view : views)
    for (auto [kind, s] : r_relations(g.n)) {
      auto sol = solve_relation_coeffs(b, kind, s, view);
      bool ok = sol.feasible && sol.residual_zero && sol.all_nonzero;
      std::ostringstream d;
      d << "variant=" << template_variant_name(sol.variant) << "; unknowns=" << sol.unknowns
        << "; equations=" << sol.equations << "; rank=" << sol.rank << "; nullity=" << sol.nullity;
      if (!sol.feasible) d << "; infeasible";
      else d << "; residual=" << (sol.residual_zero ? "0" : "non-zero")
             << "; coefficients " << (sol.all_nonzero ? "all non-zero" : "include zero");
      if (sol.nullity > 0) d << "; underdetermined (one representative shown)";
      for (auto& f : sol.printed_failures) d << "; printed: " << f;
      out.push_back(make("coefficients", "-", g, sol.relation, ok, d.str()));
    }
  return out;
}

Theorem theorem_for(Family f) { return f == Family::GL ? Theorem::GL : f == Family::SL ? Theorem::SL : Theorem::UU; }

std::vector<CheckRecord> run_certificates(Family fam, const GridPoint& g) {
  std::vector<CheckRecord> out;
  const std::string fn = family_name(fam);
  auto cert = build_certificate(theorem_for(fam), field_for_q(g.q), Space{g.n, g.m, g.d});
  auto v = verify_certificate(cert);
  std::size_t axioms = std::count_if(cert.steps.begin(), cert.steps.end(), [](auto& s) { return s.axiom; });
  std::string detail = std::to_string(cert.steps.size()) + " steps (" + std::to_string(axioms) + " axiom)";
  if (!v.error.empty()) detail = v.error;
  for (auto& s : v.steps)
    if (!s.pass) detail += "; step " + std::to_string(s.index) + " " + s.target + ": " + s.detail;
  for (auto& m : v.missing) detail += "; never derived: " + m;
  if (!v.generators_match) detail += "; generators differ from " + cert.claimed_set;
  out.push_back(make("certificates", fn, g, "verify", v.pass, detail));

  auto idx = first_derived_step(cert);
  auto bad = verify_certificate(corrupt_step(cert, idx));
  bool caught = !bad.pass && idx < bad.steps.size() && !bad.steps[idx].pass;
  out.push_back(make("certificates", fn, g, "negative-control", caught,
                     "corrupted step " + std::to_string(idx) + " (" + cert.steps[idx].target.str() + ") " +
                         (caught ? "rejected" : "accepted")));

  auto text = certificate_to_json(cert);
  bool same = certificate_to_json(certificate_from_json(text)) == text;
  out.push_back(make("certificates", fn, g, "json-roundtrip", same, same ? "identical" : "differs"));
  return out;
}

// Smallest built-in GF(p^E) with e | E and E >= 4; the field itself if none.
Field point_field(const Field& f) {
  for (int E = f->e(); E <= 4; E += f->e())
    if (E >= 4) return FieldCtx::make(f->p(), E);
  return f;
}

std::vector<CheckRecord> run_independence(Context& ctx, Family fam, const GridPoint& g, std::uint64_t seed) {
  const Space s{g.n, g.m, g.d};
  const auto& b = ctx.builder(g.q, s);
  const Field ext = point_field(b.field());
  const auto emb = embed_field(*b.field(), *ext);
  auto set = generating_set(theorem_set(fam), s);
  std::vector<MPoly> polys;
  for (auto& l : set.labels) {
    std::vector<Term> terms = b.get(l).terms();
    for (auto& t : terms) t.coef = emb[t.coef];
    polys.push_back(MPoly::from_terms(ext, b.get(l).vars(), std::move(terms)));
  }
  CheckRecord rec = make("independence", family_name(fam), g, theorem_set(fam), true, "");
  std::mt19937_64 rng(seed ^ fnv1a(rec.id()));
  const int want = static_cast<int>(s.nvars());
  int best = 0;
  const int tries = 8;
  for (int t = 0; t < tries && best < want; ++t) {
    std::vector<Coef> pt(s.nvars());
    for (auto& c : pt) c = static_cast<Coef>(rng() % static_cast<std::uint64_t>(ext->q()));
    best = std::max(best, jacobian_rank(polys, pt));
  }
  const std::string where = " at points of GF(" + std::to_string(ext->q()) + ")";
  if (best == want) {
    rec.detail = "independence confirmed: Jacobian rank " + std::to_string(best) + " = (m+d)n" + where;
  } else {
    rec.verdict = Verdict::Inconclusive;
    rec.detail = "inconclusive: best Jacobian rank " + std::to_string(best) + " < " + std::to_string(want) + " over " +
                 std::to_string(tries) + " points" + where + " (derivatives may vanish in characteristic p)";
  }
  return {rec};
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
  validate_config(cfg);
  Report rep;
  rep.config = cfg;
  rep.bootstrap = run_bootstrap();
  resolved_conventions();
  Context ctx(cfg);

  auto wants = [&](const std::string& s) { return std::find(cfg.suites.begin(), cfg.suites.end(), s) != cfg.suites.end(); };
  std::vector<std::pair<std::string, Task>> tasks;  // (label for errors, task)
  for (auto& g : cfg.grid) {
    for (auto& s : cfg.suites)
      if (auto why = inapplicable(s, g)) rep.notes.push_back(s + " skipped for " + g.str() + ": " + *why);
    auto agnostic = [&](const std::string& suite, auto fn) {
      if (wants(suite) && !inapplicable(suite, g)) tasks.push_back({suite + "/-/" + g.str(), [&ctx, g, fn] { return fn(ctx, g); }});
    };
    agnostic("relations", run_relations);
    agnostic("determinant", run_determinant);
    agnostic("hypersurface", run_hypersurface);
    agnostic("coefficients", run_coefficients);
    for (Family fam : cfg.families) {
      const std::string key = family_name(fam) + "/" + g.str();
      if (wants("invariance")) tasks.push_back({"invariance/" + key, [&ctx, fam, g] { return run_invariance(ctx, fam, g); }});
      if (wants("counts")) tasks.push_back({"counts/" + key, [fam, g] { return run_counts(fam, g); }});
      if (wants("certificates")) tasks.push_back({"certificates/" + key, [fam, g] { return run_certificates(fam, g); }});
      if (wants("independence"))
        tasks.push_back({"independence/" + key, [&ctx, fam, g, seed = cfg.seed] { return run_independence(ctx, fam, g, seed); }});
    }
    if (wants("invariance"))
      for (Family fam : cfg.families)
        if (GroupSpec spec{fam, g.n, field_for_q(g.q)}; group_order(spec) > cfg.cap)
          rep.notes.push_back("invariance for " + family_name(fam) + " " + g.str() + " checks generators only: order " +
                              std::to_string(group_order(spec)) + " exceeds cap " + std::to_string(cfg.cap));
  }

  std::vector<std::vector<CheckRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        results[i] = tasks[i].second();
      } catch (const std::exception& e) {
        auto parts = tasks[i].first;
        auto slash = parts.find('/');
        auto slash2 = parts.find('/', slash + 1);
        CheckRecord r;
        r.suite = parts.substr(0, slash);
        r.family = parts.substr(slash + 1, slash2 - slash - 1);
        r.point = parse_grid(parts.substr(slash2 + 1)).front();
        r.instance = "error";
        r.verdict = Verdict::Fail;
        r.detail = e.what();
        results[i] = {r};
      }
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      for (auto& r : results[i]) r.millis = ms / static_cast<double>(results[i].size());
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (auto& batch : results)
    for (auto& r : batch) rep.checks.push_back(std::move(r));
  std::sort(rep.checks.begin(), rep.checks.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.id() < b.id(); });

  std::map<std::string, std::set<std::string>> variants;
  for (auto& c : rep.checks) {
    if (c.suite != "coefficients") continue;
    auto base = c.instance.substr(0, c.instance.find_first_of("(*"));
    auto v = c.detail.substr(8, c.detail.find(';') - 8);
    variants[base].insert(v);
  }
  for (auto& [rel, vs] : variants) rep.r_variants.push_back({rel, vs.size() == 1 ? *vs.begin() : "mixed"});
  std::sort(rep.notes.begin(), rep.notes.end());
  rep.notes.erase(std::unique(rep.notes.begin(), rep.notes.end()), rep.notes.end());
  return rep;
}

namespace {

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["schema"] = "invfield-report/1";
  j["tool"] = "invfield";
  j["version"] = kVersion;
  ordered_json cfg;
  ordered_json fams = ordered_json::array();
  for (auto f : r.config.families) fams.push_back(family_name(f));
  cfg["families"] = fams;
  ordered_json grid = ordered_json::array();
  for (auto& g : r.config.grid) grid.push_back(g.str());
  cfg["grid"] = grid;
  cfg["suites"] = r.config.suites;
  cfg["seed"] = r.config.seed;
  cfg["cap"] = r.config.cap;
  cfg["prng"] = "mt19937_64, seeded per check with seed ^ fnv1a64(check id)";
  cfg["independence_points"] = "uniform in GF(p^E), E the least multiple of e with E >= 4 (E = e when p^E has no built-in modulus)";
  j["config"] = cfg;

  ordered_json conv;
  conv["action"] = "x[j,i] -> sum_t g(t,i) x[j,t]; y[k,i] -> sum_t ginv(i,t) y[k,t]";
  ordered_json boot;
  ordered_json cands = ordered_json::array();
  for (auto& c : r.bootstrap.candidates)
    cands.push_back({{"convention", c.conv.describe()}, {"pass", c.pass}, {"failure", c.failure}});
  boot["candidates"] = cands;
  boot["outcome"] = r.bootstrap.chosen ? "unique: " + r.bootstrap.chosen->describe() : std::string("not conclusive");
  conv["bootstrap"] = boot;
  if (r.bootstrap.chosen) {
    conv["dickson_sign"] = dickson_sign_name(r.bootstrap.chosen->sign);
    conv["t_twist"] = twist_name(r.bootstrap.chosen->twist);
    conv["t_orientation"] = v_orientation_name(r.bootstrap.chosen->v);
  }
  ordered_json rv = ordered_json::object();
  for (auto& [rel, v] : r.r_variants) rv[rel] = v;
  conv["r_templates"] = rv;
  conv["r3_minus_index"] = "template uses the pattern-consistent u[i-l-1]; the printed index differs only for n >= 5 (not exercised)";
  j["conventions"] = conv;

  j["notes"] = r.notes;
  ordered_json checks = ordered_json::array();
  for (auto& c : r.checks) {
    ordered_json o;
    o["id"] = c.id();
    o["suite"] = c.suite;
    o["family"] = c.family;
    o["params"] = {{"n", c.point.n}, {"q", c.point.q}, {"m", c.point.m}, {"d", c.point.d}};
    o["instance"] = c.instance;
    o["verdict"] = verdict_name(c.verdict);
    o["detail"] = c.detail;
    if (r.config.timing) o["millis"] = std::round(c.millis * 1000.0) / 1000.0;
    checks.push_back(std::move(o));
  }
  j["checks"] = checks;
  j["summary"] = {{"total", r.checks.size()},
                  {"pass", r.count(Verdict::Pass)},
                  {"fail", r.count(Verdict::Fail)},
                  {"inconclusive", r.count(Verdict::Inconclusive)},
                  {"all_passed", r.all_passed()}};
  return j;
}

}  // namespace

std::string report_json(const Report& r, int indent) { return to_json(r).dump(indent) + "\n"; }

std::string report_text(const Report& r) {
  const ordered_json j = to_json(r);
  std::ostringstream os;
  os << j["tool"].get<std::string>() << " " << j["version"].get<std::string>() << " (" << j["schema"].get<std::string>()
     << ")\n";
  os << "seed " << j["config"]["seed"].get<std::uint64_t>() << ", cap " << j["config"]["cap"].get<std::uint64_t>() << "\n";
  os << "conventions:\n";
  for (auto& [k, v] : j["conventions"].items()) {
    if (k == "bootstrap") {
      os << "  bootstrap: " << v["outcome"].get<std::string>() << "\n";
    } else if (v.is_object()) {
      for (auto& [rel, var] : v.items()) os << "  " << k << "." << rel << ": " << var.get<std::string>() << "\n";
    } else {
      os << "  " << k << ": " << v.get<std::string>() << "\n";
    }
  }
  for (auto& n : j["notes"]) os << "note: " << n.get<std::string>() << "\n";
  for (auto& c : j["checks"]) {
    std::string v = c["verdict"].get<std::string>();
    for (auto& ch : v) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << v << "  " << c["id"].get<std::string>() << "  " << c["detail"].get<std::string>();
    if (c.contains("millis")) os << "  [" << c["millis"].get<double>() << " ms]";
    os << "\n";
  }
  auto& s = j["summary"];
  os << "summary: " << s["pass"].get<std::size_t>() << " pass, " << s["fail"].get<std::size_t>() << " fail, "
     << s["inconclusive"].get<std::size_t>() << " inconclusive, " << s["total"].get<std::size_t>() << " total\n";
  return os.str();
}

}  // namespace invfield
