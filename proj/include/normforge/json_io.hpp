#pragma once

#include "normforge/embedding.hpp"
#include "normforge/interpolation.hpp"
#include "normforge/interval.hpp"
#include "normforge/normed_space.hpp"
#include "normforge/polytope.hpp"
#include "normforge/renorming.hpp"
#include "normforge/treespace.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <string>

namespace normforge {

using Json = nlohmann::json;

/// Rationals are "p/q" strings; integers are accepted on input.
Json to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json to_json(const RatVec& v);
RatVec vec_from_json(const Json& j);

Json to_json(const CertInterval& iv);
CertInterval interval_from_json(const Json& j);
/// {"exact": q}, {"sqrt_of": q, "lo", "hi"} or {"lo", "hi"}.
Json to_json(const NormValue& v, const Rat& eps);

/// {"dim": d, "generators": [[...], ...]}
Json to_json(const PolytopeBall& ball);
PolytopeBall ball_from_json(const Json& j);

/// Tagged union on "type": polytope, l2sum, renorm-I, renorm-II, tree-E,
/// tree-B, interpolation.
Json norm_to_json(const NormNode& norm);
NormPtr norm_from_json(const Json& j);

/// {"dim": d, "norm": <norm>, "tags": [...]}
Json to_json(const BasisSpace& space);
BasisSpace space_from_json(const Json& j);

/// {"labels", "nodes": ["a", "a/b", ...], "branch_norms": {leaf: space},
/// "constants"}
Json to_json(const FiniteTree& tree);
FiniteTree tree_from_json(const Json& j);

/// {"space": X, "depth": D, "levels": [...]}. Frames are rebuilt from the
/// space and depth; the levels are descriptive.
Json to_json(const EmbeddingFrame& frame, std::size_t max_generators = 2000);
std::shared_ptr<const EmbeddingFrame> frame_from_json(const Json& j);

/// {"type": "polytope", "x": ball, "w": ball} or {"type": "tree", "tree": t}.
Json to_json(const InterpolationSpec& spec);
std::shared_ptr<const InterpolationSpec> spec_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// A file path, or inline JSON when the argument starts with '{' or '['.
Json read_json_arg(const std::string& arg);

}  // namespace normforge
