// Command-line front end: polytope JSON in, capacities / products / bound
// reports / ratio out. Exit codes: 0 ok, 1 a bound check failed, 2 bad
// input, 3 solver failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ehz/bounds.hpp"
#include "ehz/capacity.hpp"
#include "ehz/errors.hpp"
#include "ehz/io.hpp"
#include "ehz/polytope.hpp"
#include "ehz/products.hpp"
#include "ehz/symplectic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct RunConfig {
  std::string input;
  std::string second_input;
  std::string kind = "kk";
  std::string format = "text";
  std::string output;
  int support_cap = 0;  // 0 = unset
  bool full_enumeration = false;
  double tol_feas = ehz::Tolerances{}.feasibility;
  double tol_pos = ehz::Tolerances{}.positivity;
  int jobs = 1;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ehz::SearchOptions search_options(const RunConfig& cfg) {
  ehz::SearchOptions options;
  if (cfg.support_cap > 0) options.support_cap = cfg.support_cap;
  options.full_enumeration = cfg.full_enumeration;
  options.tol.feasibility = cfg.tol_feas;
  options.tol.positivity = cfg.tol_pos;
  options.jobs = cfg.jobs;
  return options;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw ehz::InputFormatError("cannot open output file: " + cfg.output);
  out << text;
}

ehz::PolytopeDocument read_even_dim(const std::string& path) {
  ehz::PolytopeDocument doc = ehz::read_polytope_file(path);
  if (doc.poly.dim % 2 != 0)
    throw ehz::InputFormatError("dim: capacities need an even ambient dimension");
  return doc;
}

int cmd_capacity(const RunConfig& cfg) {
  const ehz::PolytopeDocument doc = read_even_dim(cfg.input);
  // Under the block coordinate convention the product form equals the
  // standard form of matching dimension, so one space serves both.
  const ehz::SymplecticSpace space = ehz::standard_space(doc.poly.dim / 2);
  const ehz::CapacityResult result = ehz::ehz_capacity(space, doc.poly, search_options(cfg));

  if (cfg.format == "json") {
    emit(cfg, ehz::to_json(result).dump(2) + "\n");
  } else {
    std::string text;
    text += "capacity: " + fmt(result.value) + "\n";
    text += "order:";
    for (int idx : result.best.order) text += " " + std::to_string(idx);
    text += "\nbeta:";
    for (int i = 0; i < result.best.beta.size(); ++i) text += " " + fmt(result.best.beta(i));
    text += "\nq-value: " + fmt(result.best.q_value) + "\n";
    text += "strategy: " + result.strategy + "\n";
    text += "candidates-examined: " + std::to_string(result.candidates_examined) + "\n";
    emit(cfg, text);
  }
  return kExitOk;
}

int cmd_product(const RunConfig& cfg) {
  const ehz::PolytopeDocument doc = read_even_dim(cfg.input);
  ehz::ProductPolytope product;
  if (cfg.kind == "jk") {
    if (!cfg.second_input.empty())
      throw ehz::InputFormatError("second input is only valid with --kind general");
    product = ehz::jk_product(doc.poly);
  } else if (cfg.kind == "kk") {
    if (!cfg.second_input.empty())
      throw ehz::InputFormatError("second input is only valid with --kind general");
    product = ehz::kk_product(doc.poly);
  } else if (cfg.kind == "general") {
    if (cfg.second_input.empty())
      throw ehz::InputFormatError("--kind general needs a second input polytope");
    const ehz::PolytopeDocument second = ehz::read_polytope_file(cfg.second_input);
    product = ehz::lagrangian_product(doc.poly, second.poly);
  } else {
    throw ehz::InputFormatError("kind: expected one of jk, kk, general");
  }
  const ehz::ProductAnnotation note{product.kind, product.factor_dim};
  emit(cfg, ehz::to_json(product.base, note).dump(2) + "\n");
  return kExitOk;
}

int cmd_bounds(const RunConfig& cfg) {
  const ehz::PolytopeDocument doc = read_even_dim(cfg.input);
  const auto reports = ehz::full_report(doc.poly, search_options(cfg));

  if (cfg.format == "json") {
    nlohmann::json bundle = nlohmann::json::array();
    for (const auto& report : reports) bundle.push_back(ehz::to_json(report));
    emit(cfg, bundle.dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& report : reports) {
      if (report.error) {
        text += report.name + ": ERROR " + *report.error + "\n";
      } else {
        text += report.name + ": lhs=" + fmt(report.lhs) + " rhs=" + fmt(report.rhs) +
                " slack=" + fmt(report.slack) + (report.passed ? " PASS" : " FAIL") + "\n";
      }
    }
    emit(cfg, text);
  }
  for (const auto& report : reports)
    if (!report.passed) return kExitBoundFailed;
  return kExitOk;
}

int cmd_viterbo(const RunConfig& cfg) {
  const ehz::PolytopeDocument doc = read_even_dim(cfg.input);
  const double ratio = ehz::viterbo_ratio(doc.poly, search_options(cfg));
  const bool planar_jk = doc.product && doc.product->kind == ehz::ProductKind::jk &&
                         doc.product->factor_dim == 2;

  if (cfg.format == "json") {
    nlohmann::json j;
    j["ratio"] = ratio;
    j["conjectured_threshold"] = 1.0;
    if (planar_jk) j["jk_product_threshold"] = std::sqrt(2.0);
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::string text = "viterbo-ratio: " + fmt(ratio) + "\n";
    text += "conjectured-threshold: 1\n";
    if (planar_jk) text += "jk-product-threshold: " + fmt(std::sqrt(2.0)) + "\n";
    emit(cfg, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EHZ capacities of convex polytopes and their Lagrangian products"};
  app.require_subcommand(1);

  RunConfig cfg;
  const auto add_common = [&cfg](CLI::App* cmd) {
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--support-cap", cfg.support_cap, "Cap on enumerated support sizes (>= 2)")
        ->check(CLI::Range(2, 1024));
    cmd->add_flag("--full-enumeration", cfg.full_enumeration, "Enumerate every support size");
    cmd->add_option("--tol-feas", cfg.tol_feas, "Feasibility tolerance");
    cmd->add_option("--tol-pos", cfg.tol_pos, "Support positivity tolerance");
    cmd->add_option("--jobs", cfg.jobs, "Parallel workers")->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", cfg.output, "Write output to a file instead of stdout");
  };

  CLI::App* capacity = app.add_subcommand("capacity", "Compute the EHZ capacity");
  capacity->add_option("input", cfg.input, "Polytope JSON file")->required();
  add_common(capacity);

  CLI::App* product = app.add_subcommand("product", "Construct a Lagrangian product");
  product->add_option("input", cfg.input, "Polytope JSON file")->required();
  product->add_option("second", cfg.second_input, "Second factor (kind general)");
  product->add_option("--kind", cfg.kind, "Product kind: jk, kk or general")->required();
  add_common(product);

  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate every applicable bound report");
  bounds->add_option("input", cfg.input, "Polytope JSON file")->required();
  add_common(bounds);

  CLI::App* viterbo = app.add_subcommand("viterbo", "Capacity-volume ratio");
  viterbo->add_option("input", cfg.input, "Polytope JSON file")->required();
  add_common(viterbo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (app.got_subcommand(capacity)) return cmd_capacity(cfg);
    if (app.got_subcommand(product)) return cmd_product(cfg);
    if (app.got_subcommand(bounds)) return cmd_bounds(cfg);
    if (app.got_subcommand(viterbo)) return cmd_viterbo(cfg);
  } catch (const ehz::InputFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ehz::UnboundedError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ehz::EmptyInteriorError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ehz::DegenerateError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ehz::DimensionMismatchError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitInput;
}
