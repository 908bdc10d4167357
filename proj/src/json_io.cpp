#include "normforge/json_io.hpp"

#include <fstream>
#include <sstream>

namespace normforge {

Json to_json(const Rat& r) { return to_string(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  throw Error("expected a rational \"p/q\", got " + j.dump());
}

Json to_json(const RatVec& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

RatVec vec_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected a vector, got " + j.dump());
  RatVec v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = rat_from_json(j[i]);
  return v;
}

Json to_json(const CertInterval& iv) { return {{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}}; }

CertInterval interval_from_json(const Json& j) { return {rat_from_json(j.at("lo")), rat_from_json(j.at("hi"))}; }

Json to_json(const NormValue& v, const Rat& eps) {
  switch (v.kind()) {
    case NormValue::Kind::Rational: return {{"exact", to_json(*v.value())}};
    case NormValue::Kind::Sqrt: {
      if (auto r = v.value()) return {{"exact", to_json(*r)}};
      Json j = to_json(v.enclose(eps));
      j["sqrt_of"] = to_json(v.square());
      return j;
    }
    case NormValue::Kind::Interval: return to_json(v.interval());
  }
  return {};
}

Json to_json(const PolytopeBall& ball) {
  Json g = Json::array();
  for (const auto& v : ball.generators()) g.push_back(to_json(v));
  return {{"dim", ball.dim()}, {"generators", g}};
}

PolytopeBall ball_from_json(const Json& j) {
  std::vector<RatVec> gens;
  for (const auto& g : j.at("generators")) gens.push_back(vec_from_json(g));
  PolytopeBall ball(gens);
  if (j.contains("dim") && j.at("dim").get<Index>() != ball.dim()) {
    throw DimensionMismatch("ball: dim does not match the generators");
  }
  return ball;
}

Json norm_to_json(const NormNode& norm) {
  if (auto p = dynamic_cast<const PolytopeNorm*>(&norm)) return {{"type", "polytope"}, {"ball", to_json(p->ball())}};
  if (auto l = dynamic_cast<const L2SumNorm*>(&norm)) {
    Json blocks = Json::array();
    for (const auto& b : l->blocks()) blocks.push_back({{"coords", b.coords}, {"norm", norm_to_json(*b.norm)}});
    return {{"type", "l2sum"}, {"dim", l->dim()}, {"blocks", blocks}};
  }
  if (auto r = dynamic_cast<const RenormNorm*>(&norm)) {
    return {{"type", r->kind()},
            {"space", to_json(r->frame().base().space())},
            {"depth", r->frame().base().depth()}};
  }
  if (auto t = dynamic_cast<const TreeNorm*>(&norm)) return {{"type", t->kind()}, {"tree", to_json(t->tree())}};
  if (auto s = dynamic_cast<const InterpolationNorm*>(&norm)) {
    return {{"type", "interpolation"}, {"spec", to_json(s->spec())}};
  }
  throw Error("norm_to_json: unsupported norm kind " + norm.kind());
}

NormPtr norm_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "polytope") return std::make_shared<PolytopeNorm>(ball_from_json(j.at("ball")));
  if (type == "l2sum") {
    std::vector<L2SumNorm::Block> blocks;
    for (const auto& b : j.at("blocks")) {
      blocks.push_back({norm_from_json(b.at("norm")), b.at("coords").get<std::vector<Index>>()});
    }
    return std::make_shared<L2SumNorm>(j.at("dim").get<Index>(), std::move(blocks));
  }
  if (type == "renorm-I" || type == "renorm-II") {
    auto base = std::make_shared<const EmbeddingFrame>(space_from_json(j.at("space")), j.at("depth").get<Index>());
    auto frame = std::make_shared<const RenormFrame>(base);
    return std::make_shared<RenormNorm>(frame, type == "renorm-I" ? RenormKind::I : RenormKind::II);
  }
  if (type == "tree-E" || type == "tree-B") {
    return std::make_shared<TreeNorm>(tree_from_json(j.at("tree")), type == "tree-E" ? TreeNormKind::E : TreeNormKind::B);
  }
  if (type == "interpolation") return std::make_shared<InterpolationNorm>(spec_from_json(j.at("spec")));
  throw Error("unknown norm type '" + type + "'");
}

Json to_json(const BasisSpace& space) {
  return {{"dim", space.dim()}, {"norm", norm_to_json(*space.norm)}, {"tags", space.tags}};
}

BasisSpace space_from_json(const Json& j) {
  BasisSpace s;
  s.norm = norm_from_json(j.at("norm"));
  if (j.contains("tags")) s.tags = j.at("tags").get<std::set<std::string>>();
  if (j.contains("dim") && j.at("dim").get<Index>() != s.norm->dim()) {
    throw DimensionMismatch("space: dim does not match the norm");
  }
  if (s.tags.count("monotone")) {
    if (const PolytopeBall* ball = s.norm->polytope()) {
      auto verdict = is_monotone(*ball);
      if (!verdict.monotone) throw Error("space tagged monotone is not monotone");
    }
  }
  return s;
}

Json to_json(const FiniteTree& tree) {
  Json nodes = Json::array();
  for (const auto& n : tree.nodes()) nodes.push_back(node_key(n));
  Json branches = Json::object();
  for (const auto& leaf : tree.leaves()) branches[node_key(leaf)] = to_json(tree.branch(leaf));
  Json constants = Json::array();
  for (const auto& c : tree.constants()) constants.push_back(to_json(c));
  return {{"labels", tree.labels()}, {"nodes", nodes}, {"branch_norms", branches}, {"constants", constants}};
}

FiniteTree tree_from_json(const Json& j) {
  std::vector<TreeNode> nodes;
  for (const auto& n : j.at("nodes")) nodes.push_back(parse_node_key(n.get<std::string>()));
  std::map<TreeNode, BasisSpace> branches;
  for (const auto& [key, value] : j.at("branch_norms").items()) branches.emplace(parse_node_key(key), space_from_json(value));
  std::vector<Rat> constants;
  if (j.contains("constants")) {
    for (const auto& c : j.at("constants")) constants.push_back(rat_from_json(c));
  }
  return FiniteTree(j.at("labels").get<std::vector<std::string>>(), nodes, branches, constants);
}

Json to_json(const EmbeddingFrame& frame, std::size_t max_generators) {
  Json levels = Json::array();
  for (Index d = 1; d <= frame.depth(); ++d) {
    const LevelBall& l = frame.level(d);
    Json e = {{"d", d},
              {"construction", l.construction()},
              {"kappa_lo", to_json(sandwich_lower(d))},
              {"kappa_hi", to_json(sandwich_upper(d))}};
    e["catalog_index"] = l.catalog_index ? Json(*l.catalog_index) : Json(nullptr);
    if (l.catalog_ball) e["ball"] = to_json(*l.catalog_ball);
    if (!l.catalog_index) {
      e["polygon_edges"] = l.polygon_edges;
      e["scale"] = to_json(l.scale);
      auto gens = l.generators();
      e["generator_count"] = gens.size();
      if (gens.size() <= max_generators) e["ball"] = to_json(PolytopeBall(gens));
    }
    levels.push_back(e);
  }
  Json layout = Json::array();
  for (const auto& [n, k] : frame.layout()) layout.push_back({n, k});
  return {{"space", to_json(frame.space())}, {"depth", frame.depth()}, {"layout", layout}, {"levels", levels}};
}

std::shared_ptr<const EmbeddingFrame> frame_from_json(const Json& j) {
  return std::make_shared<const EmbeddingFrame>(space_from_json(j.at("space")), j.at("depth").get<Index>());
}

Json to_json(const InterpolationSpec& spec) {
  if (spec.source_tree()) return {{"type", "tree"}, {"tree", to_json(*spec.source_tree())}};
  auto g = dynamic_cast<const GeneratorBody*>(spec.x_ball().get());
  if (!g) throw Error("interpolation spec: X has no generators");
  return {{"type", "polytope"}, {"x", to_json(PolytopeBall(g->generators()))}, {"w", to_json(spec.w())}};
}

std::shared_ptr<const InterpolationSpec> spec_from_json(const Json& j) {
  const std::string type = j.value("type", "polytope");
  if (type == "tree") return std::make_shared<const InterpolationSpec>(build_A(tree_from_json(j.at("tree"))));
  if (type != "polytope") throw Error("unknown interpolation spec type '" + type + "'");
  return std::make_shared<const InterpolationSpec>(
      InterpolationSpec::polytope(ball_from_json(j.at("x")), ball_from_json(j.at("w"))));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Json read_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error& e) {
      throw Error(std::string("malformed JSON argument: ") + e.what());
    }
  }
  return read_json_file(arg);
}

}  // namespace normforge
