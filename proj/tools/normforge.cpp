#include "normforge/catalog.hpp"
#include "normforge/json_io.hpp"
#include "normforge/random.hpp"
#include "normforge/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace normforge;

namespace {

struct Globals {
  std::uint64_t seed = 42;
  std::optional<std::size_t> samples;
  Index max_dim = 4;
  std::string eps = "1/1000000000";
  bool json = false;
  bool timing = false;
  std::string artifacts_dir;

  Rat eps_value() const {
    Rat e = parse_rat(eps);
    if (e <= 0) throw Error("--eps must be positive");
    return e;
  }
  SuiteConfig config() const {
    SuiteConfig c;
    c.seed = seed;
    c.samples = samples;
    c.max_dim = max_dim;
    c.eps = eps_value();
    c.timing = timing;
    return c;
  }
};

void emit(const Globals& g, const Json& j, const std::string& text) {
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string value_text(const Json& v) {
  if (v.contains("exact")) return v.at("exact").get<std::string>();
  std::string s = "[" + v.at("lo").get<std::string>() + ", " + v.at("hi").get<std::string>() + "]";
  if (v.contains("sqrt_of")) s += " (sqrt of " + v.at("sqrt_of").get<std::string>() + ")";
  return s;
}

std::string enclosure_decimal(const CertInterval& iv) {
  std::ostringstream os;
  os.precision(12);
  os << "~" << iv.midpoint().convert_to<double>();
  return os.str();
}

// The cache directory from NORMFORGE_CACHE, created on demand.
std::optional<std::filesystem::path> cache_dir() {
  const char* env = std::getenv("NORMFORGE_CACHE");
  if (!env || !*env) return std::nullopt;
  std::filesystem::path p(env);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) return std::nullopt;
  return p;
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

PolytopeBall frame_ball(const Json& frame) {
  BasisSpace s = space_from_json(frame.at("space"));
  const PolytopeBall* ball = s.norm->polytope();
  if (!ball) throw Error("frame: the space must be a polytope norm");
  return *ball;
}

// A space file holds {"norm": ..., "tags": [...]} or a bare polytope ball.
BasisSpace load_space(const Json& j) {
  if (j.contains("norm")) return space_from_json(j);
  if (j.contains("generators")) {
    PolytopeBall ball = ball_from_json(j);
    if (!is_monotone(ball).monotone) throw Error("space: the basis is not monotone");
    return BasisSpace::polytope(ball, {"monotone"});
  }
  if (j.contains("type")) return BasisSpace(norm_from_json(j));
  throw Error("space: expected {\"norm\": ...} or {\"generators\": ...}");
}

int cmd_norm_eval(const Globals& g, const std::string& norm_arg, const std::string& vec_arg) {
  BasisSpace space = load_space(read_json_arg(norm_arg));
  RatVec x = vec_from_json(read_json_arg(vec_arg));
  if (x.size() != space.dim()) throw DimensionMismatch("vector has the wrong dimension for the norm");
  const Rat eps = g.eps_value();
  NormValue v = eval_norm(space, x, eps);
  Json j = {{"kind", space.norm->kind()}, {"value", to_json(v, eps)}};
  emit(g, j, value_text(j["value"]) + "  " + enclosure_decimal(v.enclose(eps)) + "\n");
  return 0;
}

int cmd_catalog_list(const Globals& g, Index dim, std::size_t count, std::size_t start) {
  if (dim < 1) throw Error("--dim must be positive");
  Json list = Json::array();
  std::ostringstream text;
  for (std::size_t l = start; l < start + count; ++l) {
    PolytopeBall b = rational_norm(dim, l);
    list.push_back({{"index", l}, {"encoding_size", encoding_size(b)}, {"ball", to_json(b)}});
    text << l << "  size " << encoding_size(b) << "  " << to_json(b).at("generators").dump() << "\n";
  }
  emit(g, {{"dim", dim}, {"norms", list}}, text.str());
  return 0;
}

int cmd_embed(const Globals& g, const std::string& space_arg, Index depth) {
  BasisSpace space = load_space(read_json_arg(space_arg));
  Json key = {{"space", to_json(space)}, {"depth", depth}};
  auto dir = cache_dir();
  std::filesystem::path cached;
  Json frame;
  if (dir) {
    cached = *dir / ("frame-" + hex64(fnv1a(key.dump())) + ".json");
    if (std::filesystem::exists(cached)) frame = read_json_file(cached);
  }
  if (frame.is_null()) {
    EmbeddingFrame f(space, depth);
    frame = to_json(f);
    if (dir) write_file(cached, frame);
  }
  std::ostringstream text;
  text << "depth " << depth << ", layout " << frame.at("layout").dump() << "\n";
  for (const auto& l : frame.at("levels")) {
    text << "d=" << l.at("d") << "  " << l.at("construction").get<std::string>();
    if (!l.at("catalog_index").is_null()) text << " index " << l.at("catalog_index");
    else text << " M=" << l.at("polygon_edges") << " generators " << l.at("generator_count");
    text << "  kappa [" << l.at("kappa_lo").get<std::string>() << ", " << l.at("kappa_hi").get<std::string>() << "]\n";
  }
  emit(g, frame, text.str());
  return 0;
}

int cmd_renorm_eval(const Globals& g, const std::string& frame_arg, const std::string& which_arg,
                    const std::string& vec_arg) {
  auto frame = std::make_shared<const RenormFrame>(frame_from_json(read_json_arg(frame_arg)));
  RenormKind which = parse_renorm_kind(which_arg);
  RatVec f = vec_from_json(read_json_arg(vec_arg));
  if (f.size() != frame->dim()) throw DimensionMismatch("vector must have " + std::to_string(frame->dim()) + " coordinates");
  const Rat eps = g.eps_value();
  Json j = {{"which", to_string(which)},
            {"norm", to_json(frame->norm(f))},
            {"beta_square", to_json(frame->beta_square(f))},
            {"alpha_square", to_json(frame->alpha_square(f))}};
  std::ostringstream text;
  text << "||f|| = " << to_string(frame->norm(f)) << "\n";
  if (which == RenormKind::I) {
    NormValue v = frame->norm_i(f);
    j["value"] = to_json(v, eps);
    text << "||f||_I = " << value_text(j["value"]) << "  " << enclosure_decimal(v.enclose(eps)) << "\n";
  } else {
    CertInterval v = frame->norm_ii(f, eps);
    j["value"] = to_json(v);
    text << "||f||_II in " << value_text(j["value"]) << "  " << enclosure_decimal(v) << "\n";
  }
  emit(g, j, text.str());
  return 0;
}

int cmd_tree_eval(const Globals& g, const std::string& tree_arg, const std::string& vec_arg, const std::string& which) {
  FiniteTree tree = tree_from_json(read_json_arg(tree_arg));
  RatVec x = vec_from_json(read_json_arg(vec_arg));
  if (x.size() != tree.size()) throw DimensionMismatch("vector must have one coordinate per node");
  if (which != "E" && which != "B") throw Error("--which must be E or B");
  const Rat eps = g.eps_value();
  TreeValue v = which == "E" ? e_norm(tree, x, eps) : b_norm(tree, x, eps);
  Json j = {{"which", which}, {"value", to_json(v.value, eps)}, {"leaf", node_key(v.leaf)}};
  emit(g, j, value_text(j["value"]) + "  attained at " + node_key(v.leaf) + "\n");
  return 0;
}

int cmd_interp_eval(const Globals& g, const std::string& spec_arg, const std::string& vec_arg) {
  auto spec = spec_from_json(read_json_arg(spec_arg));
  RatVec x = vec_from_json(read_json_arg(vec_arg));
  if (x.size() != spec->dim()) throw DimensionMismatch("vector has the wrong dimension for the spec");
  const Rat eps = g.eps_value();
  InterpValue v = interpolation_norm(*spec, x, eps);
  Json j = {{"value", to_json(v.value)},
            {"levels", v.levels},
            {"partial_square", to_json(v.partial_square)},
            {"tail_bound", to_json(v.tail_bound)}};
  emit(g, j, value_text(j["value"]) + "  " + enclosure_decimal(v.value) + "  (" + std::to_string(v.levels) + " levels)\n");
  return 0;
}

std::vector<Index> parse_projection(const std::string& proj, const InterpolationSpec& spec) {
  auto colon = proj.find(':');
  if (colon == std::string::npos) throw Error("--proj must be branch:<leaf> or coords:<i,j,...>");
  const std::string kind = proj.substr(0, colon), rest = proj.substr(colon + 1);
  if (kind == "branch") {
    if (!spec.source_tree()) throw Error("branch projections need a tree spec");
    return branch_coords(*spec.source_tree(), parse_node_key(rest));
  }
  if (kind == "coords") {
    std::vector<Index> coords;
    std::stringstream ss(rest);
    for (std::string item; std::getline(ss, item, ',');) coords.push_back(std::stol(item));
    return coords;
  }
  throw Error("unknown projection kind '" + kind + "'");
}

int cmd_interp_verify(const Globals& g, const std::string& spec_arg, const std::string& proj) {
  auto spec = spec_from_json(read_json_arg(spec_arg));
  std::vector<Index> coords = parse_projection(proj, *spec);
  Rng rng(g.seed);
  std::vector<RatVec> vectors;
  for (std::size_t i = 0; i < g.samples.value_or(20); ++i) vectors.push_back(rng.nonzero_vector(spec->dim()));
  InterpProjReport r = verify_interpproj(*spec, coords, vectors, g.eps_value());
  Json j = {{"projection", proj},
            {"coords", coords},
            {"contractive_x", r.contractive_x},
            {"w_invariant", r.w_invariant},
            {"scale_law_applies", r.scale_law_applies},
            {"checked", r.checked},
            {"violations", r.violations},
            {"undecided", r.undecided},
            {"ratio_matches", r.ratio_matches},
            {"exact_levels", r.exact_levels},
            {"passed", r.ok()}};
  if (r.ratio) j["ratio"] = to_json(*r.ratio);
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (!r.failure.empty()) j["failure"] = r.failure;
  std::ostringstream text;
  text << (r.ok() ? "pass" : "FAIL") << ": " << r.checked << " vectors, " << r.violations << " violations, "
       << r.undecided << " undecided\n";
  text << "P B_X in B_X: " << (r.contractive_x ? "yes" : "no") << ", P W in W: " << (r.w_invariant ? "yes" : "no")
       << ", P W = P B_X: " << (r.scale_law_applies ? "yes" : "no") << "\n";
  if (r.ratio) text << "ratio |||x|||/||x|| in " << value_text(to_json(*r.ratio)) << "  " << enclosure_decimal(*r.ratio) << "\n";
  if (!r.failure.empty()) text << r.failure << "\n";
  emit(g, j, text.str());
  return r.ok() ? 0 : 1;
}

void dump_artifacts(const Globals& g, const SuiteReport& r) {
  if (g.artifacts_dir.empty()) return;
  std::filesystem::create_directories(g.artifacts_dir);
  for (std::size_t i = 0; i < r.artifacts.size(); ++i) {
    write_file(std::filesystem::path(g.artifacts_dir) / (r.suite + "-" + std::to_string(i + 1) + ".json"), r.artifacts[i]);
  }
}

std::string report_line(const SuiteReport& r) {
  std::ostringstream os;
  os << (r.passed() ? "pass" : "FAIL") << "  " << r.suite << "  " << r.count(Verdict::Pass) << " pass, "
     << r.count(Verdict::Fail) << " fail, " << r.count(Verdict::Undecided) << " undecided";
  if (r.seconds) os << "  (" << *r.seconds << " s)";
  os << "\n";
  for (const auto& a : r.artifacts) os << "    " << a.at("artifact").get<std::string>() << " " << a.at("inputs").dump() << "\n";
  return os.str();
}

std::vector<std::string> expand_target(const std::string& target, const std::string& suite) {
  static const std::map<std::string, std::vector<std::string>> groups = {
      {"embedding", {"embedding-sandwich", "furthlemma"}},
      {"renorm", {"betabound", "alphabound", "rho-properties", "furthI", "furthII", "segments"}},
      {"tree", {"tree-monotone", "tree-equivalence", "b001"}},
      {"interp", {"interp-contraction", "interp-scale"}}};
  if (target == "all") {
    if (!suite.empty()) throw Error("--suite cannot be combined with 'all'");
    return suite_names();
  }
  auto it = groups.find(target);
  if (it != groups.end()) {
    if (suite.empty()) return it->second;
    return {canonical_suite(suite)};
  }
  if (!suite.empty()) throw Error("--suite needs a group: embedding, renorm, tree or interp");
  return {canonical_suite(target)};
}

int cmd_verify(const Globals& g, const std::string& target, const std::string& suite, const std::string& frame_arg) {
  SuiteConfig c = g.config();
  if (!frame_arg.empty()) {
    Json frame = read_json_arg(frame_arg);
    c.space = frame_ball(frame);
    c.max_dim = frame.at("depth").get<Index>();
  }
  const auto names = expand_target(target, suite);
  std::vector<SuiteReport> reports;
  bool passed = true;
  for (const auto& n : names) {
    reports.push_back(run_suite(n, c));
    passed = passed && reports.back().passed();
    dump_artifacts(g, reports.back());
    if (!g.json) std::cout << report_line(reports.back()) << std::flush;
  }
  if (g.json) {
    if (reports.size() == 1) {
      std::cout << reports.front().to_json().dump(2) << "\n";
    } else {
      Json all = Json::array();
      for (const auto& r : reports) all.push_back(r.to_json());
      std::cout << Json{{"suites", all}, {"passed", passed}}.dump(2) << "\n";
    }
  }
  return passed ? 0 : 1;
}

int cmd_replay(const Globals& g, const std::string& path) {
  Json a = read_json_arg(path);
  if (a.contains("artifacts")) {
    if (a.at("artifacts").empty()) throw Error("report has no artifacts");
    a = a.at("artifacts").front();
  }
  SuiteReport r = replay(a);
  emit(g, r.to_json(), report_line(r));
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normforge: exact verification toolkit for renormings of rational Banach spaces"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for all random samples");
  app.add_option("--samples", g.samples, "Sample count (per-suite defaults otherwise)");
  app.add_option("--max-dim", g.max_dim, "Depth cap D for embedding frames")->check(CLI::Range(1, 8));
  app.add_option("--eps", g.eps, "Enclosure width p/q");
  app.add_flag("--json", g.json, "Print JSON");
  app.add_flag("--timing", g.timing, "Add wall-clock seconds to reports");

  std::function<int()> run;
  std::string norm_arg, vec_arg, space_arg, frame_arg, which, tree_arg, spec_arg, proj, target, suite, artifact;
  Index dim = 2, depth = 2;
  std::size_t count = 10, start = 1;

  auto* norm = app.add_subcommand("norm", "Norm expressions")->require_subcommand(1);
  auto* norm_eval = norm->add_subcommand("eval", "Evaluate a norm at a vector");
  norm_eval->add_option("--norm", norm_arg, "Norm or space JSON (file or inline)")->required();
  norm_eval->add_option("--vec", vec_arg, "Vector JSON")->required();
  norm_eval->callback([&] { run = [&] { return cmd_norm_eval(g, norm_arg, vec_arg); }; });

  auto* catalog = app.add_subcommand("catalog", "The enumeration of monotone rational norms")->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List catalog entries");
  list->add_option("--dim", dim, "Dimension")->required();
  list->add_option("--count", count, "Number of entries");
  list->add_option("--start", start, "First index")->check(CLI::PositiveNumber);
  list->callback([&] { run = [&] { return cmd_catalog_list(g, dim, count, start); }; });

  auto* embed = app.add_subcommand("embed", "Build the embedding frame of a space");
  embed->add_option("--space", space_arg, "Space JSON")->required();
  embed->add_option("--depth", depth, "Depth D")->required()->check(CLI::Range(1, 8));
  embed->callback([&] { run = [&] { return cmd_embed(g, space_arg, depth); }; });

  auto* renorm = app.add_subcommand("renorm", "The renormed spaces I and II")->require_subcommand(1);
  auto* renorm_eval = renorm->add_subcommand("eval", "Evaluate ||.||_I or ||.||_II");
  renorm_eval->add_option("--frame", frame_arg, "Frame JSON from embed")->required();
  renorm_eval->add_option("--which", which, "I or II")->required();
  renorm_eval->add_option("--vec", vec_arg, "Vector JSON")->required();
  renorm_eval->callback([&] { run = [&] { return cmd_renorm_eval(g, frame_arg, which, vec_arg); }; });

  auto* tree = app.add_subcommand("tree", "Tree spaces")->require_subcommand(1);
  auto* tree_eval = tree->add_subcommand("eval", "Evaluate the E- or B-norm");
  tree_eval->add_option("--tree", tree_arg, "Tree JSON")->required();
  tree_eval->add_option("--vec", vec_arg, "Vector JSON")->required();
  tree_eval->add_option("--which", which, "E or B")->required();
  tree_eval->callback([&] { run = [&] { return cmd_tree_eval(g, tree_arg, vec_arg, which); }; });

  auto* interp = app.add_subcommand("interp", "2-interpolation spaces")->require_subcommand(1);
  auto* interp_eval = interp->add_subcommand("eval", "Enclose |||x|||");
  interp_eval->add_option("--spec", spec_arg, "Spec JSON")->required();
  interp_eval->add_option("--vec", vec_arg, "Vector JSON")->required();
  interp_eval->callback([&] { run = [&] { return cmd_interp_eval(g, spec_arg, vec_arg); }; });
  auto* interp_verify = interp->add_subcommand("verify", "Check the projection lemma for one projection");
  interp_verify->add_option("--spec", spec_arg, "Spec JSON")->required();
  interp_verify->add_option("--proj", proj, "branch:<leaf> or coords:<i,j,...>")->required();
  interp_verify->callback([&] { run = [&] { return cmd_interp_verify(g, spec_arg, proj); }; });

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("target", target, "Suite name, group (embedding, renorm, tree, interp) or all")->required();
  verify->add_option("--suite", suite, "Suite within a group");
  verify->add_option("--frame", frame_arg, "Frame JSON replacing the standard spaces");
  verify->add_option("--artifacts", g.artifacts_dir, "Directory for failure artifacts");
  verify->callback([&] { run = [&] { return cmd_verify(g, target, suite, frame_arg); }; });

  auto* rep = app.add_subcommand("replay", "Re-run a failure artifact");
  rep->add_option("artifact", artifact, "Artifact or report JSON")->required();
  rep->callback([&] { run = [&] { return cmd_replay(g, artifact); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
