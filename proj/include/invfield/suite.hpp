#pragma once

// Verification suites over parameter grids and the deterministic report.
//
// Suites: invariance, counts, relations, determinant, hypersurface,
// coefficients, certificates, independence. Family-independent suites
// (relations, determinant, hypersurface, coefficients) run once per grid
// point and are reported under family "-".
//
// Randomness (independence evaluation points) comes from std::mt19937_64
// seeded with seed XOR fnv1a64(check id), so every check draws the same
// points no matter in which order checks execute.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "invfield/groups.hpp"
#include "invfield/relations.hpp"

namespace invfield {

struct GridPoint {
  int n = 1;
  int q = 2;
  int m = 1;
  int d = 1;

  std::string str() const;
  auto operator<=>(const GridPoint&) const = default;
};

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

struct CheckRecord {
  std::string suite;
  std::string family;  // "GL", "SL", "U" or "-"
  GridPoint point;
  std::string instance;
  Verdict verdict = Verdict::Fail;
  std::string detail;
  double millis = 0;

  std::string id() const;
};

struct SuiteConfig {
  std::vector<Family> families{Family::GL, Family::SL, Family::U};
  std::vector<GridPoint> grid;
  std::vector<std::string> suites;
  bool suites_explicit = false;  // false when the suite list came from "all"
  std::uint64_t seed = 42;
  std::uint64_t cap = 10000;
  bool timing = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Report {
  SuiteConfig config;
  BootstrapResult bootstrap;
  std::vector<std::pair<std::string, std::string>> r_variants;  // relation -> variant that held
  std::vector<std::string> notes;
  std::vector<CheckRecord> checks;  // sorted by id

  std::size_t count(Verdict v) const;
  bool all_passed() const { return count(Verdict::Fail) == 0; }
};

const std::vector<std::string>& suite_names();
// "n=2,q=2,m=2,d=2;n=3,q=2,m=2,d=1"
std::vector<GridPoint> parse_grid(std::string_view text);
std::vector<Family> parse_families(std::string_view text);
// "all" or a comma-separated subset; sets *is_explicit accordingly.
std::vector<std::string> parse_suites(std::string_view text, bool* is_explicit = nullptr);
SuiteConfig default_config();
std::string default_grid_text();

// GF(q) for a prime power q using the built-in moduli.
Field field_for_q(int q);

// Throws Error(invalid_argument) on malformed or inapplicable configurations.
void validate_config(const SuiteConfig& cfg);
Report run_suite(const SuiteConfig& cfg);

std::string report_json(const Report& r, int indent = 2);
// Human-readable rendering of the JSON report.
std::string report_text(const Report& r);

}  // namespace invfield
