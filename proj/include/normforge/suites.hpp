#pragma once

#include "normforge/json_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace normforge {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::optional<std::size_t> samples;  // per-suite defaults when unset
  Index max_dim = 4;                   // depth cap for frames
  Rat eps = Rat(1, 1000000000);
  bool timing = false;
  /// Replaces the four standard spaces in the embedding and renorming suites.
  std::optional<PolytopeBall> space;
};

enum class Verdict { Pass, Fail, Undecided };
std::string to_string(Verdict v);

struct CheckRecord {
  std::string check;
  std::string inputs;  // digest of the inputs
  Verdict verdict = Verdict::Pass;
  std::string value;   // slack or enclosure
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<CheckRecord> records;
  std::vector<Json> artifacts;  // standalone inputs of failing checks
  std::vector<std::string> notes;
  std::optional<double> seconds;

  std::size_t count(Verdict v) const;
  bool passed() const { return count(Verdict::Fail) == 0 && count(Verdict::Undecided) == 0; }
  Json to_json() const;
};

/// The canonical suite names, in the order `verify all` runs them.
const std::vector<std::string>& suite_names();
/// Resolves aliases ("rho", "renorm:<s>") and throws on unknown names.
std::string canonical_suite(const std::string& name);
std::size_t default_samples(const std::string& suite);

SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

/// Re-executes a failure artifact and returns a report of the single check.
SuiteReport replay(const Json& artifact);

}  // namespace normforge
