#ifndef MONALG_SUITES_HPP
#define MONALG_SUITES_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "monalg/betam.hpp"

namespace monalg {

enum class CheckStatus { Pass, Fail, Skip };

// One executed law check. Frozen worked examples and random sample batches
// each produce one record; a failing batch reports the first failing sample
// as a minimized counterexample in `detail`.
struct SuiteCheck {
  std::string tag;       // stable name of the law being exercised
  std::string instance;  // which instance or sample batch was run
  CheckStatus status = CheckStatus::Pass;
  std::string detail;       // counterexample or skip reason; empty on pass
  double runtime_ms = 0.0;  // wall time; kept out of serialized reports so
                            // equal inputs yield byte-identical output
};

// Result of one suite run. Deterministic: identical (suite, seed, samples,
// schedule) inputs produce an identical check list, sorted by (tag,
// instance).
struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  unsigned long samples = 0;  // 0 means per-check default counts
  std::string schedule_fingerprint;
  std::vector<SuiteCheck> checks;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  unsigned long samples = 0;  // 0 = per-check defaults
  // Near-unit checks use this schedule; null selects gen_primes(12).
  const PrimeSchedule* schedule = nullptr;
  unsigned deg_max = 24;  // degree ceiling for random polynomial samples
  unsigned depth = 8;     // trace/tree/chain depth for randomized walks
};

// Registered suite names, sorted.
std::vector<std::string> suite_names();

// Tags a suite declares (and emits on every run), sorted; throws
// std::invalid_argument on an unknown name.
std::vector<std::string> suite_tags(const std::string& name);

// Runs one suite; throws std::invalid_argument on an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

// The full set of law tags that must stay covered, sorted.
std::vector<std::string> required_check_tags();

// True when every required tag is declared by some registered suite; when
// `missing` is non-null the uncovered tags are appended to it.
bool verify_tag_coverage(std::vector<std::string>* missing = nullptr);

}  // namespace monalg

#endif  // MONALG_SUITES_HPP
