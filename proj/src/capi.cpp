#include "invfield/invfield.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "invfield/certificate.hpp"
#include "invfield/invariants.hpp"
#include "invfield/suite.hpp"

using namespace invfield;

struct invfield_poly {
  MPoly poly;
};
struct invfield_cert {
  Certificate cert;
};
struct invfield_report {
  Report report;
};

namespace {

thread_local std::string g_last_error;

template <class F>
invfield_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return INVFIELD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<invfield_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  }
  return INVFIELD_INTERNAL;
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::invalid_argument, std::string("null ") + what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Space space_of(int n, int m, int d) {
  require(n >= 1 && m >= 1 && d >= 1, ErrorCode::invalid_argument, "n, m, d must be >= 1");
  require(static_cast<std::size_t>((m + d) * n) <= kMaxVars, ErrorCode::invalid_argument,
          "(m+d)n exceeds " + std::to_string(kMaxVars) + " variables");
  return {n, m, d};
}

}  // namespace

extern "C" {

const char* invfield_version(void) { return "0.1.0"; }
const char* invfield_last_error(void) { return g_last_error.c_str(); }

const char* invfield_status_name(invfield_status s) {
  switch (s) {
    case INVFIELD_OK: return "ok";
    case INVFIELD_INVALID_ARGUMENT: return "invalid_argument";
    case INVFIELD_DOMAIN: return "domain";
    case INVFIELD_MISMATCH: return "mismatch";
    case INVFIELD_DIVISION_BY_ZERO: return "division_by_zero";
    case INVFIELD_NOT_FOUND: return "not_found";
    case INVFIELD_CAP_EXCEEDED: return "cap_exceeded";
    case INVFIELD_INFEASIBLE: return "infeasible";
    case INVFIELD_PARSE: return "parse";
    case INVFIELD_IO: return "io";
    case INVFIELD_INTERNAL: return "internal";
  }
  return "unknown";
}

void invfield_string_free(char* s) { std::free(s); }

invfield_status invfield_invariant(int q, int n, int m, int d, const char* label, invfield_poly** out) {
  return guarded([&] {
    need(label, "label");
    need(out, "output");
    InvariantBuilder b(field_for_q(q), space_of(n, m, d), resolved_conventions().sign);
    *out = new invfield_poly{b.get(std::string_view(label))};
  });
}

invfield_status invfield_poly_str(const invfield_poly* p, char** out) {
  return guarded([&] {
    need(p, "polynomial");
    need(out, "output");
    *out = dup(p->poly.str());
  });
}

invfield_status invfield_poly_equal(const invfield_poly* a, const invfield_poly* b, int* out) {
  return guarded([&] {
    need(a, "polynomial");
    need(b, "polynomial");
    need(out, "output");
    *out = a->poly == b->poly ? 1 : 0;
  });
}

void invfield_poly_free(invfield_poly* p) { delete p; }

invfield_status invfield_dump_set(int q, int n, int m, int d, const char* set_name, char** out) {
  return guarded([&] {
    need(set_name, "set name");
    need(out, "output");
    Space s = space_of(n, m, d);
    auto set = generating_set(set_name, s);
    InvariantBuilder b(field_for_q(q), s, resolved_conventions().sign);
    std::ostringstream os;
    for (std::size_t i = 0; i < set.labels.size(); ++i) {
      os << set.labels[i].str();
      if (!set.parts[i].empty()) os << " (" << set.parts[i] << ")";
      os << " = " << b.get(set.labels[i]).str() << "\n";
    }
    *out = dup(os.str());
  });
}

invfield_status invfield_cert_build(const char* theorem, int q, int n, int m, int d, invfield_cert** out) {
  return guarded([&] {
    need(theorem, "theorem");
    need(out, "output");
    *out = new invfield_cert{build_certificate(parse_theorem(theorem), field_for_q(q), space_of(n, m, d))};
  });
}

invfield_status invfield_cert_from_json(const char* text, invfield_cert** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "output");
    *out = new invfield_cert{certificate_from_json(text)};
  });
}

invfield_status invfield_cert_to_json(const invfield_cert* c, char** out) {
  return guarded([&] {
    need(c, "certificate");
    need(out, "output");
    *out = dup(certificate_to_json(c->cert));
  });
}

size_t invfield_cert_step_count(const invfield_cert* c) { return c ? c->cert.steps.size() : 0; }

invfield_status invfield_cert_corrupt(const invfield_cert* c, size_t step, invfield_cert** out) {
  return guarded([&] {
    need(c, "certificate");
    need(out, "output");
    *out = new invfield_cert{corrupt_step(c->cert, step)};
  });
}

invfield_status invfield_cert_verify(const invfield_cert* c, int* passed, char** text) {
  return guarded([&] {
    need(c, "certificate");
    need(passed, "output");
    auto v = verify_certificate(c->cert);
    *passed = v.pass ? 1 : 0;
    if (!text) return;
    std::ostringstream os;
    os << "certificate " << theorem_name(c->cert.theorem) << " over GF(" << c->cert.field->q() << "), n=" << c->cert.space.n
       << " m=" << c->cert.space.m << " d=" << c->cert.space.d << ", claimed set " << c->cert.claimed_set << "\n";
    if (!v.error.empty()) os << "error: " << v.error << "\n";
    for (auto& s : v.steps) {
      const auto& st = c->cert.steps[s.index];
      os << (s.pass ? "PASS" : "FAIL") << "  step " << s.index << "  " << s.target << "  [" << st.justification
         << "]  " << s.detail << "\n";
    }
    os << "generators " << (v.generators_match ? "match " : "differ from ") << c->cert.claimed_set << "\n";
    if (v.closed) {
      os << "closure: every required label derived\n";
    } else {
      os << "closure: missing";
      for (auto& m : v.missing) os << " " << m;
      os << "\n";
    }
    os << "verdict: " << (v.pass ? "PASS" : "FAIL") << "\n";
    *text = dup(os.str());
  });
}

void invfield_cert_free(invfield_cert* c) { delete c; }

invfield_status invfield_suite_run(const char* families, const char* grid, const char* suites, uint64_t seed,
                                   uint64_t cap, int timing, unsigned threads, invfield_report** out) {
  return guarded([&] {
    need(out, "output");
    SuiteConfig cfg = default_config();
    if (families) cfg.families = parse_families(families);
    if (grid) cfg.grid = parse_grid(grid);
    if (suites) cfg.suites = parse_suites(suites, &cfg.suites_explicit);
    cfg.seed = seed;
    cfg.cap = cap;
    cfg.timing = timing != 0;
    cfg.threads = threads;
    *out = new invfield_report{run_suite(cfg)};
  });
}

invfield_status invfield_report_json(const invfield_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "output");
    *out = dup(report_json(r->report));
  });
}

invfield_status invfield_report_text(const invfield_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "output");
    *out = dup(report_text(r->report));
  });
}

int invfield_report_all_passed(const invfield_report* r) { return r && r->report.all_passed() ? 1 : 0; }

size_t invfield_report_count(const invfield_report* r, const char* verdict) {
  if (!r || !verdict) return 0;
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::Inconclusive})
    if (verdict_name(v) == verdict) return r->report.count(v);
  return 0;
}

void invfield_report_free(invfield_report* r) { delete r; }

}  // extern "C"
