#pragma once

#include <string>
#include <vector>

#include "hecke_atlas/hecke.hpp"
#include "hecke_atlas/ringoid.hpp"

namespace atlas {

struct VerifyCase {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

// Machine-readable verification report. Every suite names the statement
// it checks through `anchor` (a short quote of the identity or property).
struct VerifyReport {
  std::string suite;
  std::string anchor;
  std::vector<VerifyCase> cases;
  double wall_ms = 0;

  u64 total() const { return cases.size(); }
  u64 passed() const;
  u64 failed() const;
  u64 skipped() const;
  bool ok() const { return failed() == 0; }
  std::string to_json() const;  // deterministic except wall_ms
  std::string summary_line() const;
};

// Tunable work bounds for the enumerative suites.
struct VerifyOptions {
  u64 budget = 1000000;          // group enumeration budget
  u64 assoc_exhaustive = 20000;  // morphism-triple budget per configuration
  int assoc_samples = 500;       // sampled triples above the budget
  u64 setlevel_budget = 1 << 20;
  u64 module_dim_budget = 4096;  // |F| * |G| cap for the direct graded route
  int jobs = 1;
  u64 seed = 20240801;
};

VerifyReport suite_char_tables(const VerifyOptions& opt = {});
VerifyReport suite_series_partition(const VerifyOptions& opt = {});
VerifyReport suite_broue_michel(const VerifyOptions& opt = {});
VerifyReport suite_parabolic_compat(const VerifyOptions& opt = {});
VerifyReport suite_dl_consistency(const VerifyOptions& opt = {});
VerifyReport suite_complex_axioms(int n, u64 q, const VerifyOptions& opt = {});
VerifyReport suite_lemmeW(const VerifyOptions& opt = {});
VerifyReport suite_hecke(u64 q, const VerifyOptions& opt = {});
VerifyReport suite_ringoid_engine(const VerifyOptions& opt = {});
VerifyReport suite_centralizer_condition(const VerifyOptions& opt = {});

// The full acceptance battery (all ten statements).
std::vector<VerifyReport> verify_all(const VerifyOptions& opt = {});

}  // namespace atlas
