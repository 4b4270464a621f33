#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cantorval/boundary.hpp"
#include "cantorval/config.hpp"
#include "cantorval/free_group.hpp"
#include "cantorval/geometry.hpp"
#include "cantorval/quadratic.hpp"
#include "cantorval/window_ifs.hpp"
#include "cantorval/words.hpp"

namespace cantorval {

using Json = nlohmann::ordered_json;

// Boundary-graph dimension pipeline with a stability probe at B+1.
struct DimensionReport {
  BoundaryGraph graph;
  DimensionResult result;
  double spectral_radius_next = 0.0;
  bool stable = false;
  std::vector<NodeWitness> witnesses;  // filled when a cloud was supplied
};

DimensionReport run_dimension(const Substitution& s, const Options& opt,
                              const PointCloud* cloud = nullptr);

// The full pipeline: matrix checks, PF data, displacement matrix, window
// system, interval solve, invertibility, and (for fractal windows) the
// boundary dimension.  Throws Error with a rejection code for inputs
// outside scope.
struct AnalysisResult {
  Substitution subst;
  IntMatrix2 matrix;
  bool primitive = false;
  bool unimodular = false;
  bool pisot_unit = false;
  PFData pf;
  TileLengths lengths;
  DisplacementMatrix displacement;
  WindowSystem system;
  HullBounds hulls;
  WindowSolve windows;
  bool invertible = false;
  std::optional<std::pair<GroupWord, GroupWord>> inverse_pair;
  std::optional<DimensionReport> boundary;
  Classification classification{};
};

AnalysisResult run_analysis(const Substitution& s, const Options& opt);

Json quadnum_json(const QuadNum& x);
Json report_json(const AnalysisResult& r);
Json dimension_json(const Substitution& s, const DimensionReport& rep);
Json graph_json(const BoundaryGraph& g);
Json error_json(const Error& e);

// Validates the matrix-level preconditions shared by every command and
// throws the corresponding rejection otherwise.
void check_in_scope(const IntMatrix2& m);

}  // namespace cantorval
