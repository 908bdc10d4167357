#include "normforge/generators.hpp"
#include "normforge/interpolation.hpp"
#include "normforge/renorming.hpp"
#include "normforge/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <unistd.h>

using namespace normforge;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct Timed {
  SuiteReport report;
  double seconds = 0;
};

std::map<std::string, Timed> reports;

const Timed& suite(const std::string& name) {
  auto it = reports.find(name);
  if (it != reports.end()) return it->second;
  SuiteConfig c;
  c.seed = 42;
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r = run_suite(name, c);
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return reports.emplace(name, Timed{std::move(r), s}).first->second;
}

std::size_t count(const SuiteReport& r, const std::string& check, Verdict v) {
  std::size_t n = 0;
  for (const auto& rec : r.records) n += rec.check == check && rec.verdict == v;
  return n;
}

// Every record of the named checks passes, and there is at least `min` of them.
void all_pass(Outcome& o, const SuiteReport& r, const std::vector<std::string>& checks, std::size_t min = 1) {
  for (const auto& c : checks) {
    std::size_t ok = count(r, c, Verdict::Pass);
    std::size_t bad = count(r, c, Verdict::Fail) + count(r, c, Verdict::Undecided);
    o.require(bad == 0, c + ": " + std::to_string(bad) + " not passing");
    o.require(ok >= min, c + ": only " + std::to_string(ok) + " checks");
  }
}

void within(Outcome& o, double seconds, double budget) {
  o.require(seconds <= budget, "took " + std::to_string(seconds) + " s, budget " + std::to_string(budget) + " s");
}

double seconds_of(const std::vector<std::string>& names) {
  double s = 0;
  for (const auto& n : names) s += suite(n).seconds;
  return s;
}

// Sixty terms of the series in long double; the remainder is below 4^-60.
long double series_constant() {
  long double s = 0;
  for (int n = 1; n <= 60; ++n) {
    long double d = std::ldexp(1.0L, n) + std::ldexp(1.0L, -n);
    s += 1 / (d * d);
  }
  return std::sqrt(s);
}

long double ld(const Rat& r) { return r.convert_to<long double>(); }

Outcome embedding_sandwich() {
  Outcome o;
  const SuiteReport& r = suite("embedding-sandwich").report;
  all_pass(o, r, {"find_ld", "sandwich-generators", "F-sandwich"}, 4);
  all_pass(o, r, {"sandwich-random"}, 4 * 200);
  o.require(count(r, "find_ld", Verdict::Pass) == 16, "expected 4 spaces x 4 levels");
  within(o, suite("embedding-sandwich").seconds, 600);
  return o;
}

Outcome operators() {
  Outcome o;
  const SuiteReport& r = suite("embedding-sandwich").report;
  all_pass(o, r, {"operT"}, 4 * 200);
  all_pass(o, r, {"TU", "operU"}, 4 * 200);
  within(o, suite("embedding-sandwich").seconds, 120);
  return o;
}

Outcome further_lemmas() {
  Outcome o;
  all_pass(o, suite("furthlemma").report, {"furthlemma"}, 200 * 3);
  all_pass(o, suite("furthI").report, {"furthI"}, 200 * 3);
  const SuiteReport& r = suite("furthII").report;
  all_pass(o, r, {"furthII"}, 200 * 3);
  Rat widest;
  for (const auto& rec : r.records) {
    auto open = rec.value.find('['), comma = rec.value.find(", "), close = rec.value.find(']');
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos) {
      o.require(false, "unreadable slack '" + rec.value + "'");
      continue;
    }
    Rat lo = parse_rat(rec.value.substr(open + 1, comma - open - 1));
    Rat hi = parse_rat(rec.value.substr(comma + 2, close - comma - 2));
    widest = std::max(widest, hi - lo);
  }
  o.require(widest <= Rat(1, 1000000000), "slack enclosure wider than 1e-9");
  std::ostringstream os;
  os << "widest slack enclosure " << widest.convert_to<double>();
  if (o.pass) o.detail = os.str();
  within(o, seconds_of({"furthlemma", "furthI", "furthII"}), 600);
  return o;
}

Outcome seminorm_bounds() {
  Outcome o;
  all_pass(o, suite("betabound").report, {"betabound", "betanull-ii", "betanull-iii"}, 500);
  all_pass(o, suite("alphabound").report, {"alphabound"}, 500);
  within(o, seconds_of({"betabound", "alphabound"}), 120);
  return o;
}

Outcome rho_properties() {
  Outcome o;
  const SuiteReport& r = suite("rho-properties").report;
  all_pass(o, r, {"rho-enclosure", "rho-sandwich", "rho-monotone", "rho-strict", "rho-slope"}, 1000);
  all_pass(o, r, {"rho-anchor"}, 3);
  const Rat eps(1, 1000000);
  const long double target = 0.5L + std::sqrt(2.0L) / 2;
  CertInterval a = rho(Rat(2), Rat(0), Rat(0), eps);
  o.require(ld(a.lo) - 1e-6L <= target && target <= ld(a.hi) + 1e-6L, "rho(2,0,0) misses 1/2 + sqrt(2)/2");
  o.require(std::fabs(ld(a.midpoint()) - target) <= 1e-6L, "rho(2,0,0) midpoint off by more than 1e-6");
  o.require(rho(Rat(1), Rat(1), Rat(1), eps).contains(Rat(1)), "rho(1,1,1) misses 1");
  o.require(rho(Rat(1), Rat(1), Rat(0), eps).contains(Rat(1)), "rho(1,1,0) misses 1");
  within(o, suite("rho-properties").seconds, 120);
  return o;
}

Outcome tree_fidelity() {
  Outcome o;
  all_pass(o, suite("tree-equivalence").report, {"E-chain", "B-chain", "branch-b001"}, 5);
  all_pass(o, suite("tree-monotone").report, {"E-projection", "B-projection"}, 500);
  within(o, seconds_of({"tree-equivalence", "tree-monotone"}), 180);
  return o;
}

Outcome level_gain() {
  Outcome o;
  const SuiteReport& r = suite("b001").report;
  all_pass(o, r, {"b001"}, 8);
  all_pass(o, r, {"b001-negative-control"}, 1);
  within(o, suite("b001").seconds, 180);
  return o;
}

Outcome interpolation_scale() {
  Outcome o;
  const long double c = series_constant();
  auto line = InterpolationSpec::polytope(cube(1), cube(1));
  for (const Rat& x : {Rat(1), Rat(-3, 7), Rat(5, 2)}) {
    InterpValue v = interpolation_norm(line, make_vec({x}), Rat(1, 1000000000000LL));
    const long double ax = std::fabs(ld(x));
    o.require(std::fabs(ld(v.value.lo) / ax - c) <= 1e-9L && std::fabs(ld(v.value.hi) / ax - c) <= 1e-9L,
              "ratio at " + to_string(x) + " is not within 1e-9 of the series constant");
  }
  all_pass(o, suite("interp-contraction").report, {"interp-contraction"}, 50);
  std::size_t pairs = 0;
  for (const auto& rec : suite("interp-contraction").report.records) pairs += std::stoul(rec.value);
  o.require(pairs >= 500, "only " + std::to_string(pairs) + " projection-vector pairs");
  all_pass(o, suite("interp-scale").report, {"line-ratio", "branch-ratio", "single-branch"}, 1);
  if (o.pass) {
    std::ostringstream os;
    os.precision(10);
    os << "c = " << static_cast<double>(c) << ", " << pairs << " pairs";
    o.detail = os.str();
  }
  within(o, seconds_of({"interp-contraction", "interp-scale"}), 300);
  return o;
}

Outcome segment_lemmas() {
  Outcome o;
  const SuiteReport& r = suite("segments").report;
  all_pass(o, r, {"linesegm-U-flat", "linesegm-U-curved", "linesegm-B-flat"}, 1);
  all_pass(o, r, {"segment-random-renorm", "segment-random-tree"}, 1);
  o.require(count(r, "segment-random-renorm", Verdict::Pass) + count(r, "segment-random-tree", Verdict::Pass) >= 500,
            "fewer than 500 random pairs");
  within(o, suite("segments").seconds, 180);
  return o;
}

std::string run_cli(const std::string& binary, const std::filesystem::path& out) {
  const std::string cmd = "\"" + binary + "\" verify all --seed 42 --json > \"" + out.string() + "\"";
  int status = std::system(cmd.c_str());
  std::ifstream in(out, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return status == 0 ? ss.str() : "";
}

Outcome determinism(const std::string& binary) {
  Outcome o;
  auto dir = std::filesystem::temp_directory_path() / ("normforge-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string a = run_cli(binary, dir / "first.json");
  std::string b = run_cli(binary, dir / "second.json");
  o.require(!a.empty(), "verify all failed or printed nothing");
  o.require(a == b, "the two reports differ");
  if (o.pass) o.detail = std::to_string(a.size()) + " identical bytes";
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to normforge>\n";
    return 2;
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"embedding sandwich", embedding_sandwich},
      {"operators T and U", operators},
      {"further inequalities", further_lemmas},
      {"beta and alpha bounds", seminorm_bounds},
      {"rho properties", rho_properties},
      {"tree-space fidelity", tree_fidelity},
      {"level-gain inequality", level_gain},
      {"interpolation scale law", interpolation_scale},
      {"segment lemmas", segment_lemmas},
      {"determinism", [&] { return determinism(argv[1]); }}};
  bool all = true;
  int i = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    all = all && o.pass;
    std::cout << "criterion " << ++i << " " << name << ": " << (o.pass ? "PASS" : "FAIL");
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
