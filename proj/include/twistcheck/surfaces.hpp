#pragma once

// Surface models: spine, peripheral words, homology data and the named curves
// with their twist tables. Builtin models are shipped as JSON documents and
// embedded at build time; the F_{k,k} fibers beyond k = 3 exist only at the
// homology level.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistcheck/homology.hpp"
#include "twistcheck/words.hpp"

namespace twistcheck {

enum class ModelLevel { homology, exact };

struct CurveData {
  std::string name;
  bool is_boundary = false;
  HomologyClass homology;
  std::optional<GroupoidMorphism> twist;  // carries the declared inverse; exact models only
  std::map<std::string, int> intersections;
};

struct PeripheralWord {
  VertexId basepoint = 0;
  Word word;
};

class SurfaceModel {
 public:
  std::string name;
  int genus = 0;
  int boundary_count = 0;
  ModelLevel level = ModelLevel::homology;
  std::shared_ptr<const SpineGraph> graph;  // null for homology-level models
  std::vector<PeripheralWord> peripheral;
  std::vector<std::string> homology_basis;
  IntersectionForm form;
  std::vector<CurveData> curves;
  // Extra names for existing curves, e.g. "1_1" -> "b" on F_{3,3}.
  std::map<std::string, std::string> aliases;

  std::size_t rank() const { return homology_basis.size(); }
  const CurveData* find_curve(std::string_view name) const;
  const CurveData& curve(std::string_view name) const;  // throws Error
  bool is_exact() const { return level == ModelLevel::exact; }

  // Basis edges in basis order, and the complementary tree edges (exact only).
  std::vector<EdgeId> basis_edges() const;
  std::vector<EdgeId> tree_edges() const;
  // Declared geometric intersection, if any, after alias resolution.
  std::optional<int> declared_intersection(std::string_view a, std::string_view b) const;
};

int euler_characteristic(int genus, int boundary);

SurfaceModel load_surface_json(std::string_view text);
SurfaceModel load_surface_file(const std::string& path);
std::string save_surface_json(const SurfaceModel& model);

// One of S_1_1, S_1_2, S_1_3, annulus. Throws Error for other names.
std::shared_ptr<const SurfaceModel> builtin(std::string_view name);
std::vector<std::string> builtin_names();

// Homology model of F_{k,k}: basis alpha_{i,j} (curves "i_j"), boundary
// classes b1..bk, grid intersection form.
std::shared_ptr<const SurfaceModel> grid_surface(int k);

// F_{k,k}. Exact level exists for k = 2 (the annulus) and k = 3 (S_1_3); both
// carry "i_j" aliases. Throws Error for k < 2 and UnsupportedError for exact
// with k >= 4.
std::shared_ptr<const SurfaceModel> chain_surface(int k, ModelLevel level);

// Builtin names, "F_k_k" (exact when available), or a path ending in ".json".
std::shared_ptr<const SurfaceModel> resolve_surface(std::string_view name);

struct CheckResult {
  std::string check;    // euler, connected, rank, basis, form, ...
  std::string subject;  // curve or pair concerned, empty for global checks
  bool passed = true;
  std::string witness;  // set on failure
};

struct ValidationReport {
  std::string surface;
  std::vector<CheckResult> checks;
  bool passed() const;
  std::vector<const CheckResult*> failures() const;
};

ValidationReport validate(const SurfaceModel& model);

}  // namespace twistcheck
