#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "invfield/invfield.h"

namespace {

enum Exit { kOk = 0, kChecksFailed = 1, kUsage = 2, kIo = 3 };

int report_error(invfield_status s) {
  std::cerr << "invfield: " << invfield_status_name(s) << ": " << invfield_last_error() << "\n";
  return s == INVFIELD_IO ? kIo : kUsage;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  invfield_string_free(s);
  return out;
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    std::cerr << "invfield: cannot write " << path << "\n";
    return false;
  }
  return true;
}

struct VerifyOpts {
  std::string family = "GL,SL,U";
  std::string grid;
  std::string suite = "all";
  std::uint64_t seed = 42;
  std::uint64_t cap = 10000;
  std::string out;
  std::string format = "json";
  bool timing = false;
  unsigned threads = 0;
};

int run_verify(const VerifyOpts& o) {
  invfield_report* r = nullptr;
  auto s = invfield_suite_run(o.family.c_str(), o.grid.empty() ? nullptr : o.grid.c_str(), o.suite.c_str(), o.seed,
                              o.cap, o.timing ? 1 : 0, o.threads, &r);
  if (s != INVFIELD_OK) return report_error(s);
  char* text = nullptr;
  s = o.format == "json" ? invfield_report_json(r, &text) : invfield_report_text(r, &text);
  const bool passed = invfield_report_all_passed(r);
  std::fprintf(stderr, "invfield: %zu pass, %zu fail, %zu inconclusive\n", invfield_report_count(r, "pass"),
               invfield_report_count(r, "fail"), invfield_report_count(r, "inconclusive"));
  invfield_report_free(r);
  if (s != INVFIELD_OK) return report_error(s);
  if (!write_output(o.out, take(text))) return kIo;
  return passed ? kOk : kChecksFailed;
}

struct SpaceOpts {
  int n = 2, q = 2, m = 1, d = 1;
};

void add_space(CLI::App* app, SpaceOpts& s) {
  app->add_option("--n", s.n, "dimension n")->required();
  app->add_option("--q", s.q, "field size (prime power)")->required();
  app->add_option("--m", s.m, "number of vector copies")->capture_default_str();
  app->add_option("--d", s.d, "number of covector copies")->capture_default_str();
}

int run_dump(const SpaceOpts& sp, const std::string& label, const std::string& set) {
  if (label.empty() == set.empty()) {
    std::cerr << "invfield dump: give exactly one of --label or --set\n";
    return kUsage;
  }
  if (!set.empty()) {
    char* text = nullptr;
    auto s = invfield_dump_set(sp.q, sp.n, sp.m, sp.d, set.c_str(), &text);
    if (s != INVFIELD_OK) return report_error(s);
    std::cout << take(text);
    return kOk;
  }
  invfield_poly* p = nullptr;
  auto s = invfield_invariant(sp.q, sp.n, sp.m, sp.d, label.c_str(), &p);
  if (s != INVFIELD_OK) return report_error(s);
  char* text = nullptr;
  s = invfield_poly_str(p, &text);
  invfield_poly_free(p);
  if (s != INVFIELD_OK) return report_error(s);
  std::cout << take(text) << "\n";
  return kOk;
}

int run_cert(const SpaceOpts& sp, const std::string& theorem, const std::string& out, long corrupt) {
  invfield_cert* c = nullptr;
  auto s = invfield_cert_build(theorem.c_str(), sp.q, sp.n, sp.m, sp.d, &c);
  if (s != INVFIELD_OK) return report_error(s);
  if (corrupt >= 0) {
    invfield_cert* bad = nullptr;
    s = invfield_cert_corrupt(c, static_cast<size_t>(corrupt), &bad);
    invfield_cert_free(c);
    if (s != INVFIELD_OK) return report_error(s);
    c = bad;
  }
  char* json = nullptr;
  s = invfield_cert_to_json(c, &json);
  std::size_t steps = invfield_cert_step_count(c);
  invfield_cert_free(c);
  if (s != INVFIELD_OK) return report_error(s);
  if (!write_output(out, take(json))) return kIo;
  if (!out.empty() && out != "-") std::cerr << "invfield: wrote " << steps << " steps to " << out << "\n";
  return kOk;
}

int run_cert_verify(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "invfield: cannot read " << path << "\n";
    return kIo;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  invfield_cert* c = nullptr;
  auto s = invfield_cert_from_json(buf.str().c_str(), &c);
  if (s != INVFIELD_OK) return report_error(s);
  int passed = 0;
  char* text = nullptr;
  s = invfield_cert_verify(c, &passed, &text);
  invfield_cert_free(c);
  if (s != INVFIELD_OK) return report_error(s);
  std::cout << take(text);
  return passed ? kOk : kChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invfield: invariants of GL, SL and U over finite fields, with exact verification"};
  app.set_version_flag("--version", std::string(invfield_version()));
  app.require_subcommand(1);

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "run verification suites over a parameter grid");
  verify->add_option("--family", vo.family, "comma-separated subset of GL,SL,U")->capture_default_str();
  verify->add_option("--grid", vo.grid, "grid entries \"n=2,q=2,m=2,d=2;...\" (default: built-in desk grid)");
  verify->add_option("--suite", vo.suite,
                     "all, or comma-separated subset of invariance,counts,relations,determinant,hypersurface,"
                     "coefficients,certificates,independence")
      ->capture_default_str();
  verify->add_option("--seed", vo.seed, "seed for randomized spot checks")->capture_default_str();
  verify->add_option("--cap", vo.cap, "largest group enumerated element by element")->capture_default_str();
  verify->add_option("--out", vo.out, "output path (default: standard output)");
  verify->add_option("--format", vo.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  verify->add_flag("--timing", vo.timing, "include per-check timings (output is then not byte-reproducible)");
  verify->add_option("--threads", vo.threads, "worker threads (0: hardware concurrency)")->capture_default_str();

  SpaceOpts dump_sp;
  std::string label, set;
  auto* dump = app.add_subcommand("dump", "print an invariant or a named generating set");
  dump->add_option("--label", label, "label such as u[1,0], c[1,0], fstar[2,1]");
  dump->add_option("--set", set, "set name such as thm_GL, prec_U, pGL");
  add_space(dump, dump_sp);

  SpaceOpts cert_sp;
  std::string theorem, cert_out;
  long corrupt = -1;
  auto* cert = app.add_subcommand("cert", "build a derivation certificate");
  cert->add_option("--theorem", theorem, "GL, SL, UU or pU3")->required();
  add_space(cert, cert_sp);
  cert->add_option("--out", cert_out, "output path (default: standard output)");
  cert->add_option("--corrupt-step", corrupt, "perturb one step (negative control)");

  std::string cert_path;
  auto* cert_verify = app.add_subcommand("cert-verify", "verify a certificate file");
  cert_verify->add_option("file", cert_path, "certificate JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*verify) return run_verify(vo);
  if (*dump) return run_dump(dump_sp, label, set);
  if (*cert) return run_cert(cert_sp, theorem, cert_out, corrupt);
  if (*cert_verify) return run_cert_verify(cert_path);
  return kUsage;
}
