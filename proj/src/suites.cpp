#include "normforge/suites.hpp"

#include "normforge/generators.hpp"
#include "normforge/random.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <mutex>
#include <sstream>

namespace normforge {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

std::size_t SuiteReport::count(Verdict v) const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.verdict == v;
  return n;
}

Json SuiteReport::to_json() const {
  Json checks = Json::array();
  for (const auto& r : records) {
    checks.push_back({{"check", r.check}, {"inputs", r.inputs}, {"verdict", normforge::to_string(r.verdict)},
                      {"value", r.value}});
  }
  Json j = {{"suite", suite},
            {"seed", seed},
            {"samples", samples},
            {"checks", checks},
            {"summary",
             {{"pass", count(Verdict::Pass)}, {"fail", count(Verdict::Fail)}, {"undecided", count(Verdict::Undecided)}}},
            {"passed", passed()}};
  if (!notes.empty()) j["notes"] = notes;
  if (!artifacts.empty()) j["artifacts"] = artifacts;
  if (seconds) j["seconds"] = *seconds;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "embedding-sandwich", "furthlemma", "betabound",      "alphabound", "rho-properties",
      "furthI",             "furthII",    "segments",       "tree-monotone", "tree-equivalence",
      "b001",               "interp-contraction", "interp-scale"};
  return names;
}

std::string canonical_suite(const std::string& name) {
  std::string n = name;
  for (const char* prefix : {"renorm:", "embedding:", "tree:", "interp:"}) {
    if (n.rfind(prefix, 0) == 0) n = n.substr(std::string(prefix).size());
  }
  if (n == "rho") return "rho-properties";
  if (n == "embedding" || n == "sandwich") return "embedding-sandwich";
  for (const auto& s : suite_names()) {
    if (s == n) return s;
  }
  throw Error("unknown suite '" + name + "'");
}

std::size_t default_samples(const std::string& suite) {
  static const std::map<std::string, std::size_t> defaults = {
      {"embedding-sandwich", 200}, {"furthlemma", 200},    {"betabound", 500},        {"alphabound", 500},
      {"rho-properties", 1000},    {"furthI", 200},        {"furthII", 200},          {"segments", 500},
      {"tree-monotone", 500},      {"tree-equivalence", 100}, {"b001", 200},         {"interp-contraction", 500},
      {"interp-scale", 50}};
  return defaults.at(canonical_suite(suite));
}

namespace {

std::string digest(const Json& inputs) { return hex64(fnv1a(inputs.dump())); }

class Recorder {
 public:
  Recorder(SuiteReport& report, const SuiteConfig& config) : report_(report), config_(config) {}

  void add(const std::string& check, const Json& inputs, Verdict v, std::string value = {}) {
    std::string d = digest(inputs);
    report_.records.push_back({check, d, v, std::move(value)});
    if (v != Verdict::Pass && report_.artifacts.size() < 20) {
      Json a = {{"artifact", check},
                {"suite", report_.suite},
                {"seed", report_.seed},
                {"samples", report_.samples},
                {"max_dim", config_.max_dim},
                {"eps", to_json(config_.eps)},
                {"digest", d},
                {"inputs", inputs},
                {"verdict", to_string(v)}};
      if (config_.space) a["space_ball"] = to_json(*config_.space);
      report_.artifacts.push_back(a);
    }
  }
  void add(const std::string& check, const Json& inputs, bool ok, std::string value = {}) {
    add(check, inputs, ok ? Verdict::Pass : Verdict::Fail, std::move(value));
  }
  void note(std::string s) { report_.notes.push_back(std::move(s)); }

 private:
  SuiteReport& report_;
  const SuiteConfig& config_;
};

struct NamedSpace {
  std::string name;
  PolytopeBall ball;
};

// The four acceptance spaces: the line, l1(2), l_inf(2) and a random
// monotone plane norm.
std::vector<NamedSpace> standard_spaces(std::uint64_t seed) {
  Rng rng(seed ^ 0x5eed5eedULL);
  return {{"line", cube(1)},
          {"l1(2)", cross_polytope(2)},
          {"linf(2)", cube(2)},
          {"random(2)", random_monotone_ball(rng, 2)}};
}

std::vector<NamedSpace> config_spaces(const SuiteConfig& c) {
  if (c.space) return {{"custom", *c.space}};
  return standard_spaces(c.seed);
}

std::shared_ptr<const EmbeddingFrame> frame_for(const PolytopeBall& ball, Index depth) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, Index>, std::shared_ptr<const EmbeddingFrame>> cache;
  const auto key = std::make_pair(to_json(ball).dump(), depth);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto frame = std::make_shared<const EmbeddingFrame>(BasisSpace::polytope(ball, {"monotone", "normalized"}), depth);
  cache.emplace(key, frame);
  return frame;
}

std::shared_ptr<const RenormFrame> renorm_for(const PolytopeBall& ball, Index depth) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, Index>, std::shared_ptr<const RenormFrame>> cache;
  const auto key = std::make_pair(to_json(ball).dump(), depth);
  auto base = frame_for(ball, depth);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto frame = std::make_shared<const RenormFrame>(base);
  cache.emplace(key, frame);
  return frame;
}

Index frame_depth(const SuiteConfig& c) { return std::max<Index>(1, std::min<Index>(4, c.max_dim)); }

// Per-space share of the sample budget, at least one.
std::size_t share(std::size_t total, std::size_t parts) { return std::max<std::size_t>(1, (total + parts - 1) / parts); }

std::string str(const Rat& r) { return to_string(r); }
std::string str(const CertInterval& iv) { return "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]"; }

RatVec pad(const RatVec& f, Index depth) {
  RatVec out = zeros(depth);
  out.head(f.size()) = f;
  return out;
}

Json space_inputs(const NamedSpace& s, Index depth) { return {{"space", s.name}, {"depth", depth}}; }

void suite_embedding(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed);
  const Index depth = frame_depth(c);
  for (const auto& s : config_spaces(c)) {
    std::shared_ptr<const EmbeddingFrame> frame;
    try {
      frame = frame_for(s.ball, depth);
    } catch (const Error& e) {
      rec.add("find_ld", space_inputs(s, depth), false, e.what());
      continue;
    }
    for (Index d = 1; d <= depth; ++d) {
      const LevelBall& level = frame->level(d);
      Json in = {{"space", s.name}, {"d", d}};
      std::string how = level.catalog_index ? "catalog " + std::to_string(*level.catalog_index)
                                            : "join M=" + std::to_string(level.polygon_edges);
      rec.add("find_ld", in, true, how);
      const Rat lo2 = sandwich_lower(d) * sandwich_lower(d), hi2 = sandwich_upper(d) * sandwich_upper(d);
      if (level.catalog_ball) rec.add("sandwich-exact", in, sandwich_holds(frame->space(), d, *level.catalog_ball));
      // At a generator |g|_d = 1.
      std::size_t bad = 0, count = 0;
      Rat worst;
      for (const auto& g : level.generators()) {
        Rat l2 = frame->l2x_square(pad(g, depth));
        Rat slack = std::min(1 - lo2 * l2, hi2 * l2 - 1);
        if (count == 0 || slack < worst) worst = slack;
        ++count;
        if (slack < 0) ++bad;
      }
      in["generators"] = count;
      rec.add("sandwich-generators", in, bad == 0, "min slack " + str(worst));
    }
    const std::size_t n = share(samples, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const Index d = 1 + static_cast<Index>(i % static_cast<std::size_t>(depth));
      RatVec f = rng.nonzero_vector(d);
      Json in = {{"space", s.name}, {"d", d}, {"f", to_json(f)}};
      Rat l2 = frame->l2x_square(pad(f, depth));
      Rat nd = frame->level(d).norm(f);
      Rat kl = sandwich_lower(d), kh = sandwich_upper(d);
      bool ok = kl * kl * l2 <= nd * nd && nd * nd <= kh * kh * l2;
      rec.add("sandwich-random", in, ok);
      RatVec g = rng.nonzero_vector(depth);
      Json ing = {{"space", s.name}, {"f", to_json(g)}};
      Rat gl2 = frame->l2x_square(g);
      Rat fn = frame->f_norm(g);
      rec.add("F-sandwich", ing, Rat(49, 64) * gl2 <= fn * fn && fn * fn <= gl2);
      ScaledVec t = frame->operator_t(g);
      Rat tx = frame->space().ball().gauge(t.v);
      rec.add("operT", ing, t.radicand * tx * tx <= fn * fn);
    }
    const Index xd = s.ball.dim();
    for (std::size_t i = 0; i < n; ++i) {
      RatVec x = rng.nonzero_vector(xd);
      Json in = {{"space", s.name}, {"x", to_json(x)}};
      rec.add("TU", in, equal(frame->tu(x), x));
      ScaledVec u = frame->operator_u(x);
      Rat F = frame->f_norm(u.v);
      Rat b = frame->space().ball().gauge(x);
      Rat T = frame->u_tail_square(x);
      // |sqrt(q) F - b| <= sqrt(T) with q = 3/4, squared: q F^2 + b^2 - T - 2 b F sqrt(q) <= 0
      if (u.radicand != Rat(3, 4)) throw Error("operU: unexpected radicand");
      int sign = sign_linear_surd(u.radicand * F * F + b * b - T, -F * b, Rat(3));
      rec.add("operU", in, sign <= 0, "tail^2 " + str(T));
    }
  }
}

void suite_furthlemma(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 1);
  const Index depth = frame_depth(c);
  auto spaces = config_spaces(c);
  for (const auto& s : spaces) {
    auto frame = frame_for(s.ball, depth);
    for (std::size_t i = 0; i < share(samples, spaces.size()); ++i) {
      RatVec f = rng.nonzero_vector(depth);
      for (Index n = 1; n < depth; ++n) {
        Rat slack = furthlemma_slack(*frame, f, n);
        rec.add("furthlemma", {{"space", s.name}, {"n", n}, {"f", to_json(f)}}, slack >= 0, str(slack));
      }
    }
  }
}

void suite_further_renorm(const SuiteConfig& c, std::size_t samples, Recorder& rec, RenormKind which) {
  Rng rng(c.seed + (which == RenormKind::I ? 2 : 3));
  const Index depth = frame_depth(c);
  auto spaces = config_spaces(c);
  const std::string name = which == RenormKind::I ? "furthI" : "furthII";
  for (const auto& s : spaces) {
    auto frame = renorm_for(s.ball, depth);
    for (std::size_t i = 0; i < share(samples, spaces.size()); ++i) {
      RatVec f = rng.nonzero_vector(depth);
      for (Index d = 1; d < depth; ++d) {
        Json in = {{"space", s.name}, {"d", d}, {"f", to_json(f)}};
        if (which == RenormKind::I) {
          rec.add(name, in, further_i_holds(*frame, f, d));
          continue;
        }
        CertifiedCheck r = further_ii_check(*frame, f, d, c.eps / 4, c.eps / pow2(60));
        Verdict v = !r.decided ? Verdict::Undecided : (r.holds ? Verdict::Pass : Verdict::Fail);
        rec.add(name, in, v, "slack in " + str(r.slack));
      }
    }
  }
}

void suite_betabound(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 4);
  const Index depth = frame_depth(c);
  auto spaces = config_spaces(c);
  rec.note("betanull (iii) is tested on U images in the untruncated calculus only");
  for (const auto& s : spaces) {
    auto frame = renorm_for(s.ball, depth);
    for (std::size_t i = 0; i < share(samples, spaces.size()); ++i) {
      // Supported past index d.
      if (depth > 1) {
        const Index d = 1 + static_cast<Index>(i % static_cast<std::size_t>(depth - 1));
        RatVec f = rng.nonzero_vector(depth);
        for (Index j = 0; j < d; ++j) f(j) = 0;
        if (is_zero(f)) f(depth - 1) = 1;
        Rat b2 = frame->beta_square(f), n = frame->norm(f);
        rec.add("betabound", {{"space", s.name}, {"d", d}, {"f", to_json(f)}}, b2 * pow2(4 * static_cast<int>(d)) <= 4 * n * n,
                "beta^2 " + str(b2));
      }
      RatVec g = rng.vector(depth);
      if (i % 5 == 0) g = zeros(depth);
      bool vanish = true;
      for (const auto& x : frame->beta_differences(g)) vanish = vanish && x == 0;
      rec.add("betanull-ii", {{"space", s.name}, {"f", to_json(g)}}, (frame->beta_square(g) == 0) == vanish);
      RatVec x = rng.nonzero_vector(s.ball.dim());
      bool zero = true;
      for (const auto& v : frame->u_beta_differences(x, 16)) zero = zero && v == 0;
      rec.add("betanull-iii", {{"space", s.name}, {"x", to_json(x)}}, zero);
    }
  }
}

void suite_alphabound(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 5);
  const Index depth = frame_depth(c);
  auto spaces = config_spaces(c);
  for (const auto& s : spaces) {
    auto frame = renorm_for(s.ball, depth);
    for (std::size_t i = 0; i < share(samples, spaces.size()); ++i) {
      RatVec f = rng.nonzero_vector(depth);
      Rat a2 = frame->alpha_square(f), n = frame->norm(f);
      rec.add("alphabound", {{"space", s.name}, {"f", to_json(f)}}, a2 < n * n, "alpha^2 " + str(a2));
    }
  }
}

Rat positive(Rng& rng) {
  Rat v;
  do v = rng.nonnegative(9, 8);
  while (v == 0);
  return v;
}

void suite_rho(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 6);
  const Rat eps = std::min(c.eps, Rat(1, 1000000));
  auto in3 = [](const Rat& r, const Rat& s, const Rat& t) { return Json{{"r", to_json(r)}, {"s", to_json(s)}, {"t", to_json(t)}}; };
  auto encloses = [](const CertInterval& iv, const QuadSurd& q) { return compare(q, iv.lo) >= 0 && compare(q, iv.hi) <= 0; };
  CertInterval a = rho(Rat(1), Rat(1), Rat(1), eps);
  rec.add("rho-anchor", in3(1, 1, 1), a.contains(Rat(1)) && a.width() <= eps, str(a));
  CertInterval b = rho(Rat(1), Rat(1), Rat(0), eps);
  rec.add("rho-anchor", in3(1, 1, 0), b.contains(Rat(1)) && b.width() <= eps, str(b));
  CertInterval e = rho(Rat(2), Rat(0), Rat(0), eps);
  rec.add("rho-anchor", in3(2, 0, 0), encloses(e, QuadSurd{Rat(1, 2), Rat(1, 2)}) && e.width() <= eps, str(e));
  for (std::size_t i = 0; i < samples; ++i) {
    Rat r = rng.rational(9, 8), s = rng.rational(9, 8), t = rng.rational(9, 8);
    Json in = in3(r, s, t);
    QuadSurd v = rho_exact(r, s, t);
    CertInterval iv = rho(r, s, t, eps);
    rec.add("rho-enclosure", in, encloses(iv, v) && iv.width() <= eps, str(iv));
    Rat ar = abs(r), as = abs(s), at = abs(t);
    rec.add("rho-sandwich", in, compare(v, (ar + as) / 2) >= 0 && compare(v, std::max({ar, as, at})) <= 0);
    // Monotone on the positive octant.
    Rat r1 = ar + rng.nonnegative(5, 4), s1 = as + rng.nonnegative(5, 4), t1 = at + rng.nonnegative(5, 4);
    Json in1 = {{"from", in3(ar, as, at)}, {"to", in3(r1, s1, t1)}};
    rec.add("rho-monotone", in1, compare(rho_exact(r1, s1, t1), rho_exact(ar, as, at)) >= 0);
    // Strict in t for 0 < r < s.
    Rat p = positive(rng), q = p + positive(rng), u = positive(rng), u1 = u + positive(rng);
    Json in2 = {{"r", to_json(p)}, {"s", to_json(q)}, {"t", to_json(u)}, {"t1", to_json(u1)}};
    rec.add("rho-strict", in2, compare(rho_exact(p, q, u1), rho_exact(p, q, u)) > 0);
    // Slope 1/4 in r.
    Rat p1 = p + positive(rng), w = positive(rng);
    Json in4 = {{"r", to_json(p)}, {"r1", to_json(p1)}, {"s", to_json(w)}, {"t", to_json(u)}};
    rec.add("rho-slope", in4, compare(rho_exact(p1, w, u), rho_exact(p, w, u).plus((p1 - p) / 4)) >= 0);
  }
}

bool no_false_constancy(SegmentVerdict v) {
  return v == SegmentVerdict::NotConstant || v == SegmentVerdict::ConclusionHolds;
}

Rat unit_fraction(Rng& rng) { return Rat(rng.uniform(0, 16), 16); }

// Pairs of distinct points on a flat face of the unit sphere of X.
std::pair<RatVec, RatVec> flat_pair(Rng& rng, const std::string& space) {
  Rat a = unit_fraction(rng), b = unit_fraction(rng);
  while (b == a) b = unit_fraction(rng);
  if (space == "l1(2)") return {make_vec({a, 1 - a}), make_vec({b, 1 - b})};
  return {make_vec({Rat(1), 2 * a - 1}), make_vec({Rat(1), 2 * b - 1})};
}

FiniteTree l1_branch_tree() {
  std::map<TreeNode, BasisSpace> branches;
  branches.emplace(TreeNode{"a", "a"}, BasisSpace::polytope(cross_polytope(2), {"monotone", "normalized"}));
  branches.emplace(TreeNode{"a", "b"}, BasisSpace::polytope(cross_polytope(2), {"monotone", "normalized"}));
  return FiniteTree({"a", "b"}, {{"a"}, {"a", "a"}, {"a", "b"}}, branches, summ_constants(2));
}

void suite_segments(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 7);
  const Index depth = frame_depth(c);
  auto spaces = config_spaces(c);
  for (const auto& s : spaces) {
    if (s.name != "l1(2)" && s.name != "linf(2)") continue;
    auto frame = renorm_for(s.ball, depth);
    for (int i = 0; i < 4; ++i) {
      auto [x, y] = flat_pair(rng, s.name);
      for (RenormKind k : {RenormKind::I, RenormKind::II}) {
        Json in = {{"space", s.name}, {"which", to_string(k)}, {"x", to_json(x)}, {"y", to_json(y)}};
        auto r = u_segment_check(*frame, x, y, k);
        rec.add("linesegm-U-flat", in, r.verdict == SegmentVerdict::ConclusionHolds, to_string(r.verdict));
      }
    }
    RatVec x = make_vec({Rat(1), Rat(0)}), z = make_vec({Rat(-1), Rat(1)});
    for (RenormKind k : {RenormKind::I, RenormKind::II}) {
      auto r = u_segment_check(*frame, x, z, k);
      Json in = {{"space", s.name}, {"which", to_string(k)}, {"x", to_json(x)}, {"y", to_json(z)}};
      rec.add("linesegm-U-curved", in, r.verdict == SegmentVerdict::NotConstant, to_string(r.verdict));
    }
  }
  FiniteTree flat = l1_branch_tree();
  {
    RatVec u = flat.embed_chain({"a", "a"}, make_vec({Rat(1), Rat(0)}));
    RatVec v = flat.embed_chain({"a", "a"}, make_vec({Rat(0), Rat(1)}));
    auto r = b_segment_check(flat, u, v);
    rec.add("linesegm-B-flat", {{"tree", to_json(flat)}, {"u", to_json(u)}, {"v", to_json(v)}},
            r.verdict == SegmentVerdict::ConclusionHolds, to_string(r.verdict));
  }
  // Random pairs: half in the renormed F_D, half in tree spaces.
  const std::size_t renorm_pairs = samples / 2;
  for (std::size_t i = 0; i < renorm_pairs; ++i) {
    const auto& s = spaces[i % spaces.size()];
    auto frame = renorm_for(s.ball, depth);
    RatVec u = rng.vector(depth), v = rng.vector(depth);
    if (equal(u, v)) v(0) += 1;
    RenormKind k = (i / spaces.size()) % 2 == 0 ? RenormKind::I : RenormKind::II;
    auto r = segment_check(*frame, u, v, k);
    Json in = {{"space", s.name}, {"which", to_string(k)}, {"u", to_json(u)}, {"v", to_json(v)}};
    rec.add("segment-random-renorm", in, no_false_constancy(r.verdict), to_string(r.verdict));
  }
  std::vector<FiniteTree> trees;
  for (int t = 0; t < 5; ++t) trees.push_back(random_tree(rng, 12, 4, summ_constants(4)));
  for (std::size_t i = renorm_pairs; i < samples; ++i) {
    const FiniteTree& tree = trees[i % trees.size()];
    RatVec u = rng.vector(tree.size()), v = rng.vector(tree.size());
    if (equal(u, v)) v(0) += 1;
    auto r = b_segment_check(tree, u, v);
    Json in = {{"tree", to_json(tree)}, {"u", to_json(u)}, {"v", to_json(v)}};
    rec.add("segment-random-tree", in, no_false_constancy(r.verdict), to_string(r.verdict));
  }
}

std::vector<TreeNode> random_subtree(Rng& rng, const FiniteTree& tree) {
  std::set<TreeNode> picked;
  const auto count = rng.uniform(1, std::max<std::int64_t>(1, tree.size() / 2));
  for (std::int64_t i = 0; i < count; ++i) {
    TreeNode n = tree.nodes()[static_cast<std::size_t>(rng.uniform(0, tree.size() - 1))];
    for (std::size_t k = 1; k <= n.size(); ++k) picked.insert(TreeNode(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(k)));
  }
  return {picked.begin(), picked.end()};
}

// Exact comparison of two norm values, or nullopt when one is an enclosure
// that does not decide it.
std::optional<int> compare_values(const NormValue& a, const NormValue& b) {
  if (a.is_exact() && b.is_exact()) {
    Rat d = a.square() - b.square();
    return d < 0 ? -1 : (d > 0 ? 1 : 0);
  }
  const Rat eps = pow2(-60);
  CertInterval x = a.enclose(eps), y = b.enclose(eps);
  if (x.hi < y.lo) return -1;
  if (x.lo > y.hi) return 1;
  return std::nullopt;
}

std::vector<FiniteTree> acceptance_trees(std::uint64_t seed) {
  Rng rng(seed ^ 0x7ee57ee5ULL);
  std::vector<FiniteTree> trees;
  for (int t = 0; t < 5; ++t) trees.push_back(random_tree(rng, 20, 4, summ_constants(4)));
  return trees;
}

void suite_tree_monotone(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 8);
  auto trees = acceptance_trees(c.seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t ti = i % trees.size();
    const FiniteTree& tree = trees[ti];
    auto sub = random_subtree(rng, tree);
    RatVec x = rng.nonzero_vector(tree.size());
    RatVec px = subtree_projection(tree, sub, x);
    Json subj = Json::array();
    for (const auto& n : sub) subj.push_back(node_key(n));
    Json in = {{"tree_index", ti}, {"subtree", subj}, {"x", to_json(x)}};
    for (TreeNormKind k : {TreeNormKind::E, TreeNormKind::B}) {
      const bool e = k == TreeNormKind::E;
      NormValue full = e ? e_norm(tree, x).value : b_norm(tree, x).value;
      NormValue part = e ? e_norm(tree, px).value : b_norm(tree, px).value;
      auto cmp = compare_values(part, full);
      Verdict v = !cmp ? Verdict::Undecided : (*cmp <= 0 ? Verdict::Pass : Verdict::Fail);
      rec.add(e ? "E-projection" : "B-projection", in, v);
    }
  }
}

void suite_tree_equivalence(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 9);
  auto trees = acceptance_trees(c.seed);
  for (std::size_t ti = 0; ti < trees.size(); ++ti) {
    const FiniteTree& tree = trees[ti];
    for (const auto& leaf : tree.leaves()) {
      B001Report b = verify_b001(tree.branch(leaf), tree.constants(), {});
      rec.add("branch-b001", {{"tree_index", ti}, {"leaf", node_key(leaf)}}, b.ok && b.decided,
              b.min_slack ? "min slack " + str(*b.min_slack) : "");
    }
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t ti = i % trees.size();
    const FiniteTree& tree = trees[ti];
    const TreeNode& leaf = tree.leaves()[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(tree.leaves().size()) - 1))];
    RatVec y = rng.nonzero_vector(static_cast<Index>(tree.chain(leaf).size()));
    RatVec x = tree.embed_chain(leaf, y);
    NormValue branch = tree.branch(leaf).norm->eval(y, c.eps);
    Json in = {{"tree_index", ti}, {"leaf", node_key(leaf)}, {"y", to_json(y)}};
    for (TreeNormKind k : {TreeNormKind::E, TreeNormKind::B}) {
      const bool e = k == TreeNormKind::E;
      NormValue v = e ? e_norm(tree, x).value : b_norm(tree, x).value;
      bool ok = v.is_exact() && branch.is_exact() && v.square() == branch.square();
      rec.add(e ? "E-chain" : "B-chain", in, ok);
    }
  }
}

void suite_b001(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 10);
  const Index depth = frame_depth(c);
  const auto constants = summ_constants(depth);
  auto spaces = config_spaces(c);
  for (const auto& s : spaces) {
    auto frame = renorm_for(s.ball, depth);
    for (RenormKind k : {RenormKind::I, RenormKind::II}) {
      BasisSpace space(std::make_shared<RenormNorm>(frame, k));
      std::vector<RatVec> vectors;
      for (std::size_t i = 0; i < samples; ++i) vectors.push_back(rng.nonzero_vector(depth));
      B001Report r = verify_b001(space, constants, vectors);
      Json in = {{"space", s.name}, {"which", to_string(k)}, {"depth", depth}};
      Verdict v = !r.decided ? Verdict::Undecided : (r.ok ? Verdict::Pass : Verdict::Fail);
      std::string value = std::to_string(r.checked) + " vectors";
      if (r.witness) value += ", witness " + to_json(*r.witness).dump();
      rec.add("b001", in, v, value);
    }
  }
  // l_inf is the negative control: adding a coordinate below the maximum
  // gains nothing.
  BasisSpace linf = BasisSpace::polytope(cube(depth), {"monotone", "normalized"});
  B001Report r = verify_b001(linf, constants, {});
  const bool rejected = r.decided && !r.ok && r.witness.has_value();
  rec.add("b001-negative-control", {{"space", "linf"}, {"depth", depth}}, rejected,
          r.witness ? "witness " + to_json(*r.witness).dump() : "no witness");
}

std::vector<FiniteTree> small_trees(std::uint64_t seed, int count) {
  Rng rng(seed ^ 0x1e7e1e7eULL);
  std::vector<FiniteTree> trees;
  for (int t = 0; t < count; ++t) trees.push_back(random_tree(rng, 5, 3));
  return trees;
}

void suite_interp_contraction(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 11);
  auto trees = small_trees(c.seed, 4);
  std::vector<std::shared_ptr<const InterpolationSpec>> specs;
  for (const auto& t : trees) specs.push_back(std::make_shared<const InterpolationSpec>(build_A(t)));
  const Rat eps = std::max(c.eps, Rat(1, 1000000));
  std::size_t done = 0;
  for (std::size_t round = 0; done < samples; ++round) {
    const std::size_t ti = round % trees.size();
    const FiniteTree& tree = trees[ti];
    std::vector<Index> coords;
    Json proj;
    if (round % 2 == 0) {
      const auto& leaves = tree.leaves();
      const TreeNode& leaf = leaves[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(leaves.size()) - 1))];
      coords = branch_coords(tree, leaf);
      proj = "branch:" + node_key(leaf);
    } else {
      auto sub = random_subtree(rng, tree);
      coords = subtree_coords(tree, sub);
      proj = Json::array();
      for (const auto& n : sub) proj.push_back(node_key(n));
    }
    const std::size_t batch = std::min<std::size_t>(10, samples - done);
    std::vector<RatVec> vectors;
    for (std::size_t i = 0; i < batch; ++i) vectors.push_back(rng.nonzero_vector(tree.size()));
    Json vj = Json::array();
    for (const auto& v : vectors) vj.push_back(to_json(v));
    InterpProjReport r = verify_interpproj(*specs[ti], coords, vectors, eps);
    Verdict v = r.violations > 0 || !r.contractive_x || !r.w_invariant || !r.failure.empty()
                    ? Verdict::Fail
                    : (r.undecided > 0 ? Verdict::Undecided : Verdict::Pass);
    std::string value = std::to_string(r.checked) + " vectors";
    if (!r.failure.empty()) value += ", " + r.failure;
    rec.add("interp-contraction", {{"tree_index", ti}, {"projection", proj}, {"vectors", vj}}, v, value);
    done += batch;
  }
}

void suite_interp_scale(const SuiteConfig& c, std::size_t samples, Recorder& rec) {
  Rng rng(c.seed + 12);
  const Rat eps = std::min(c.eps, Rat(1, 1000000000));
  const CertInterval constant = interpolation_constant(eps);
  auto line = InterpolationSpec::polytope(cube(1), cube(1));
  for (int i = 0; i < 4; ++i) {
    RatVec x = rng.nonzero_vector(1);
    InterpValue v = interpolation_norm(line, x, eps);
    const Rat a = abs(x(0));
    CertInterval ratio{v.value.lo / a, v.value.hi / a};
    rec.add("line-ratio", {{"x", to_json(x)}}, ratio.overlaps(constant) && v.value.width() <= eps,
            str(ratio));
  }
  auto trees = small_trees(c.seed, 2);
  for (std::size_t ti = 0; ti < trees.size(); ++ti) {
    const FiniteTree& tree = trees[ti];
    InterpolationSpec spec = build_A(tree);
    for (const auto& leaf : tree.leaves()) {
      std::vector<RatVec> vectors;
      for (std::size_t i = 0; i < samples; ++i) vectors.push_back(rng.nonzero_vector(tree.size()));
      InterpProjReport r = verify_interpproj(spec, branch_coords(tree, leaf), vectors, eps);
      bool ok = r.ok() && r.scale_law_applies && r.ratio && r.ratio->overlaps(constant);
      rec.add("branch-ratio", {{"tree_index", ti}, {"leaf", node_key(leaf)}, {"vectors", samples}}, ok,
              r.ratio ? str(*r.ratio) : r.failure);
    }
  }
  // A single branch: A is the branch space itself, rescaled by the constant.
  std::map<TreeNode, BasisSpace> branch;
  branch.emplace(TreeNode{"a", "a"}, BasisSpace::polytope(cross_polytope(2), {"monotone", "normalized"}));
  FiniteTree single({"a"}, {{"a"}, {"a", "a"}}, branch);
  InterpolationSpec spec = build_A(single);
  std::vector<RatVec> vectors;
  for (int i = 0; i < 8; ++i) vectors.push_back(rng.nonzero_vector(2));
  InterpProjReport r = verify_interpproj(spec, branch_coords(single, {"a", "a"}), vectors, eps);
  rec.add("single-branch", {{"tree", to_json(single)}}, r.ok() && r.scale_law_applies && r.ratio && r.ratio->overlaps(constant),
          r.ratio ? str(*r.ratio) : r.failure);
}

}  // namespace

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  SuiteReport report;
  report.suite = canonical_suite(name);
  report.seed = config.seed;
  report.samples = config.samples.value_or(default_samples(report.suite));
  if (config.eps <= 0) throw Error("eps must be positive");
  Recorder rec(report, config);
  const auto start = std::chrono::steady_clock::now();
  const std::string& s = report.suite;
  const std::size_t n = report.samples;
  if (s == "embedding-sandwich") suite_embedding(config, n, rec);
  else if (s == "furthlemma") suite_furthlemma(config, n, rec);
  else if (s == "betabound") suite_betabound(config, n, rec);
  else if (s == "alphabound") suite_alphabound(config, n, rec);
  else if (s == "rho-properties") suite_rho(config, n, rec);
  else if (s == "furthI") suite_further_renorm(config, n, rec, RenormKind::I);
  else if (s == "furthII") suite_further_renorm(config, n, rec, RenormKind::II);
  else if (s == "segments") suite_segments(config, n, rec);
  else if (s == "tree-monotone") suite_tree_monotone(config, n, rec);
  else if (s == "tree-equivalence") suite_tree_equivalence(config, n, rec);
  else if (s == "b001") suite_b001(config, n, rec);
  else if (s == "interp-contraction") suite_interp_contraction(config, n, rec);
  else if (s == "interp-scale") suite_interp_scale(config, n, rec);
  if (config.timing) {
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

SuiteReport replay(const Json& artifact) {
  for (const char* key : {"artifact", "suite", "seed", "samples", "digest"}) {
    if (!artifact.contains(key)) throw Error(std::string("artifact: missing field '") + key + "'");
  }
  SuiteConfig config;
  config.seed = artifact.at("seed").get<std::uint64_t>();
  config.samples = artifact.at("samples").get<std::size_t>();
  if (artifact.contains("max_dim")) config.max_dim = artifact.at("max_dim").get<Index>();
  if (artifact.contains("eps")) config.eps = rat_from_json(artifact.at("eps"));
  if (artifact.contains("space_ball")) config.space = ball_from_json(artifact.at("space_ball"));
  SuiteReport full = run_suite(artifact.at("suite").get<std::string>(), config);
  const std::string check = artifact.at("artifact").get<std::string>();
  const std::string d = artifact.at("digest").get<std::string>();
  SuiteReport out;
  out.suite = full.suite;
  out.seed = full.seed;
  out.samples = full.samples;
  for (const auto& r : full.records) {
    if (r.check == check && r.inputs == d) {
      out.records.push_back(r);
      break;
    }
  }
  if (out.records.empty()) throw Error("artifact: no check " + check + " with digest " + d + " in suite " + full.suite);
  if (out.records.front().verdict != Verdict::Pass) {
    for (const auto& a : full.artifacts) {
      if (a.at("digest") == d && a.at("artifact") == check) out.artifacts.push_back(a);
    }
  }
  return out;
}

}  // namespace normforge
