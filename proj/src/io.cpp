#include "ehz/io.hpp"

#include <fstream>

#include "ehz/errors.hpp"

namespace ehz {

namespace {

double number_at(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw InputFormatError(field + ": expected a number");
  return j.get<double>();
}

Eigen::VectorXd vector_at(const nlohmann::json& j, int dim, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw InputFormatError(field + ": expected an array of " + std::to_string(dim) + " numbers");
  Eigen::VectorXd out(dim);
  for (int i = 0; i < dim; ++i) out(i) = number_at(j[i], field + "[" + std::to_string(i) + "]");
  return out;
}

ProductKind kind_from_string(const std::string& s, const std::string& field) {
  if (s == "jk") return ProductKind::jk;
  if (s == "kk") return ProductKind::kk;
  if (s == "general") return ProductKind::general;
  throw InputFormatError(field + ": expected one of \"jk\", \"kk\", \"general\"");
}

}  // namespace

PolytopeDocument read_polytope_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputFormatError("document: expected a JSON object");
  if (!j.contains("dim")) throw InputFormatError("dim: missing");
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() <= 0)
    throw InputFormatError("dim: expected a positive integer");
  const int dim = j["dim"].get<int>();

  const bool has_halfspaces = j.contains("halfspaces");
  const bool has_vertices = j.contains("vertices");
  if (has_halfspaces == has_vertices)
    throw InputFormatError("document: exactly one of \"halfspaces\" or \"vertices\" must be present");

  PolytopeDocument doc;
  if (has_halfspaces) {
    const auto& hs = j["halfspaces"];
    if (!hs.is_array() || hs.empty()) throw InputFormatError("halfspaces: expected a nonempty array");
    Eigen::MatrixXd normals(static_cast<int>(hs.size()), dim);
    Eigen::VectorXd heights(static_cast<int>(hs.size()));
    for (size_t i = 0; i < hs.size(); ++i) {
      const std::string field = "halfspaces[" + std::to_string(i) + "]";
      if (!hs[i].is_object() || !hs[i].contains("normal") || !hs[i].contains("height"))
        throw InputFormatError(field + ": expected {\"normal\": [...], \"height\": h}");
      normals.row(static_cast<int>(i)) = vector_at(hs[i]["normal"], dim, field + ".normal");
      heights(static_cast<int>(i)) = number_at(hs[i]["height"], field + ".height");
    }
    doc.poly = from_halfspaces(dim, normals, heights);
  } else {
    const auto& vs = j["vertices"];
    if (!vs.is_array() || vs.empty()) throw InputFormatError("vertices: expected a nonempty array");
    Eigen::MatrixXd points(static_cast<int>(vs.size()), dim);
    for (size_t i = 0; i < vs.size(); ++i)
      points.row(static_cast<int>(i)) =
          vector_at(vs[i], dim, "vertices[" + std::to_string(i) + "]");
    doc.poly = from_vertices({dim, points});
  }

  if (j.contains("product")) {
    const auto& p = j["product"];
    if (!p.is_object() || !p.contains("kind") || !p.contains("factor_dim"))
      throw InputFormatError("product: expected {\"kind\": ..., \"factor_dim\": ...}");
    if (!p["kind"].is_string()) throw InputFormatError("product.kind: expected a string");
    if (!p["factor_dim"].is_number_integer() || p["factor_dim"].get<int>() <= 0)
      throw InputFormatError("product.factor_dim: expected a positive integer");
    ProductAnnotation note;
    note.kind = kind_from_string(p["kind"].get<std::string>(), "product.kind");
    note.factor_dim = p["factor_dim"].get<int>();
    if (2 * note.factor_dim != dim)
      throw InputFormatError("product.factor_dim: must be half of dim");
    doc.product = note;
  }
  return doc;
}

PolytopeDocument read_polytope_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputFormatError("cannot open input file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputFormatError("invalid JSON in " + path + ": " + e.what());
  }
  return read_polytope_json(j);
}

nlohmann::json to_json(const HPolytope& k, const std::optional<ProductAnnotation>& product) {
  nlohmann::json halfspaces = nlohmann::json::array();
  for (int i = 0; i < k.facet_count(); ++i) {
    nlohmann::json entry;
    entry["normal"] = std::vector<double>(k.normals.row(i).begin(), k.normals.row(i).end());
    entry["height"] = k.heights(i);
    halfspaces.push_back(std::move(entry));
  }
  nlohmann::json j;
  j["dim"] = k.dim;
  j["halfspaces"] = std::move(halfspaces);
  if (product) {
    j["product"] = {{"kind", to_string(product->kind)}, {"factor_dim", product->factor_dim}};
  }
  return j;
}

nlohmann::json to_json(const Candidate& candidate) {
  nlohmann::json j;
  j["order"] = candidate.order;
  j["beta"] = std::vector<double>(candidate.beta.data(), candidate.beta.data() + candidate.beta.size());
  j["q_value"] = candidate.q_value;
  return j;
}

nlohmann::json to_json(const CapacityResult& result) {
  nlohmann::json j = to_json(result.best);
  j["value"] = result.value;
  j["strategy"] = result.strategy;
  j["candidates_examined"] = result.candidates_examined;
  j["cross_checked"] = result.cross_checked;
  return j;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  if (report.error) {
    j["lhs"] = nullptr;
    j["rhs"] = nullptr;
    j["slack"] = nullptr;
    j["error"] = *report.error;
  } else {
    j["lhs"] = report.lhs;
    j["rhs"] = report.rhs;
    j["slack"] = report.slack;
  }
  j["passed"] = report.passed;
  j["certificate"] = report.certificate ? to_json(*report.certificate) : nlohmann::json(nullptr);
  j["metadata"] = report.metadata;
  return j;
}

}  // namespace ehz
