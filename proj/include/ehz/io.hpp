#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ehz/bounds.hpp"
#include "ehz/capacity.hpp"
#include "ehz/polytope.hpp"
#include "ehz/products.hpp"

namespace ehz {

struct ProductAnnotation {
  ProductKind kind = ProductKind::general;
  int factor_dim = 0;
};

/// A polytope together with its optional product provenance.
struct PolytopeDocument {
  HPolytope poly;
  std::optional<ProductAnnotation> product;
};

/// Parses {"dim": d, "halfspaces": [{"normal": [...], "height": h}, ...]} or
/// {"dim": d, "vertices": [[...], ...]} — exactly one of the two — plus an
/// optional {"product": {"kind": ..., "factor_dim": ...}} block. Errors name
/// the offending field. Geometry validation errors propagate.
PolytopeDocument read_polytope_json(const nlohmann::json& j);
PolytopeDocument read_polytope_file(const std::string& path);

nlohmann::json to_json(const HPolytope& k,
                       const std::optional<ProductAnnotation>& product = std::nullopt);
nlohmann::json to_json(const Candidate& candidate);
nlohmann::json to_json(const CapacityResult& result);
nlohmann::json to_json(const BoundReport& report);

}  // namespace ehz
