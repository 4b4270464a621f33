#include "cantorval/analyze.hpp"

#include <cmath>

namespace cantorval {

void check_in_scope(const IntMatrix2& m) {
  if (!is_primitive(m))
    fail(ErrorCode::NotPrimitive, "substitution matrix is not primitive");
  if (!is_unimodular(m))
    fail(ErrorCode::NonUnimodular,
         "substitution matrix has determinant " + std::to_string(m.det()) +
             "; only unimodular substitutions are supported");
  const QuadField f = make_field(m);
  if (!is_pisot_unit(f))
    fail(ErrorCode::NotPisotUnit, "inflation factor is not a Pisot unit");
}

DimensionReport run_dimension(const Substitution& s, const Options& opt,
                              const PointCloud* cloud) {
  const IntMatrix2 m = substitution_matrix(s);
  check_in_scope(m);
  const PFData pf = pf_data(m);
  const TileLengths lengths{pf.left[0], pf.left[1]};
  const DisplacementMatrix T = displacement_matrix(s, lengths);
  const WindowSystem sys = build_window_system(T, pf);
  const HullBounds hulls = exact_hull(sys);
  const QuadNum beta = lengths.beta();

  DimensionReport rep{
      build_boundary_graph(T, pf, hulls, beta, opt.bound, true, opt.node_cap),
      {},
      0.0,
      false,
      {}};
  const SpectralRadius sr = spectral_radius(rep.graph);
  rep.result = hausdorff_dimension(sr, pf);
  rep.result.node_count = static_cast<int>(rep.graph.nodes.size());
  rep.result.edge_count = rep.graph.edge_count();
  rep.result.bound = opt.bound;

  const BoundaryGraph next = build_boundary_graph(T, pf, hulls, beta,
                                                  opt.bound + 1, true,
                                                  opt.node_cap);
  rep.spectral_radius_next = spectral_radius(next).value;
  rep.stable =
      std::abs(rep.spectral_radius_next - rep.result.spectral_radius) <= 1e-9;

  if (cloud)
    rep.witnesses = witness_check(rep.graph, *cloud, opt.witness_tol);
  return rep;
}

AnalysisResult run_analysis(const Substitution& s, const Options& opt) {
  AnalysisResult r;
  r.subst = s;
  r.matrix = substitution_matrix(s);
  r.primitive = is_primitive(r.matrix);
  r.unimodular = is_unimodular(r.matrix);
  check_in_scope(r.matrix);
  r.pf = pf_data(r.matrix);
  r.pisot_unit = is_pisot_unit(r.pf.field);
  r.lengths = TileLengths{r.pf.left[0], r.pf.left[1]};
  r.displacement = displacement_matrix(s, r.lengths);
  r.system = build_window_system(r.displacement, r.pf);
  r.hulls = exact_hull(r.system);
  r.windows = solve_interval_fixed_point(r.system);
  r.invertible = is_invertible(s);
  if (r.invertible) r.inverse_pair = inverse(s);

  double dim = 0.0;
  if (!r.windows.is_intervals) {
    const PointCloud cloud =
        chaos_game(r.system, opt.witness_samples, opt.seed, opt.burn_in);
    r.boundary = run_dimension(s, opt, &cloud);
    dim = r.boundary->result.dimension;
  }
  r.classification =
      classify(r.invertible, r.windows.is_intervals, dim, opt.dim_tolerance);
  return r;
}

Json quadnum_json(const QuadNum& x) {
  return Json{{"a", rational_to_string(x.a)},
              {"b", rational_to_string(x.b)},
              {"decimal", to_decimal_string(x)},
              {"str", to_string(x)}};
}

namespace {

Json interval_json(const Interval& w) {
  return Json{{"lo", quadnum_json(w.lo)}, {"hi", quadnum_json(w.hi)}};
}

Json displacement_json(const DisplacementMatrix& T) {
  Json out;
  for (Letter i : {Letter::A, Letter::B}) {
    for (Letter j : {Letter::A, Letter::B}) {
      std::string key{letter_to_char(i)};
      key += letter_to_char(j);
      Json cell = Json::array();
      for (const QuadNum& t : T.at(i, j)) cell.push_back(quadnum_json(t));
      out[key] = std::move(cell);
    }
  }
  return out;
}

Json dimension_result_json(const DimensionReport& rep) {
  Json out{{"spectral_radius", rep.result.spectral_radius},
           {"spectral_radius_error", rep.result.spectral_radius_error},
           {"dimension", rep.result.dimension},
           {"dimension_error", rep.result.dimension_error},
           {"node_count", rep.result.node_count},
           {"edge_count", rep.result.edge_count},
           {"B", rep.result.bound},
           {"spectral_radius_next_B", rep.spectral_radius_next},
           {"stable", rep.stable}};
  if (!rep.witnesses.empty()) {
    Json missing = Json::array();
    for (const NodeWitness& w : rep.witnesses) {
      if (!w.found) missing.push_back(node_label(w.node));
    }
    out["witness"] = Json{{"checked", rep.witnesses.size()},
                          {"missing", std::move(missing)}};
  }
  return out;
}

}  // namespace

Json report_json(const AnalysisResult& r) {
  Json out;
  out["schema_version"] = 1;
  out["substitution"] = Json{{"a", word_to_string(r.subst.image_a)},
                             {"b", word_to_string(r.subst.image_b)},
                             {"text", to_string(r.subst)}};
  out["matrix"] = Json::array({Json::array({r.matrix.m11, r.matrix.m12}),
                               Json::array({r.matrix.m21, r.matrix.m22})});
  out["determinant"] = r.matrix.det();
  out["primitive"] = r.primitive;
  out["unimodular"] = r.unimodular;
  out["pisot_unit"] = r.pisot_unit;
  out["field"] = Json{{"trace", r.pf.field.t},
                      {"det", r.pf.field.d},
                      {"discriminant", r.pf.field.discriminant()}};
  out["lambda"] = quadnum_json(r.pf.lambda);
  out["lambda_star"] = quadnum_json(r.pf.lambda_star);
  out["beta"] = quadnum_json(r.lengths.beta());
  out["tile_lengths"] = Json{{"a", quadnum_json(r.lengths.len_a)},
                             {"b", quadnum_json(r.lengths.len_b)}};
  out["displacement"] = displacement_json(r.displacement);
  out["hulls"] = Json{{"a", interval_json(r.hulls.hull_a)},
                      {"b", interval_json(r.hulls.hull_b)},
                      {"error", rational_to_string(r.hulls.error)}};
  out["invertible"] = r.invertible;
  if (r.inverse_pair) {
    out["inverse"] = Json{{"a", to_string(r.inverse_pair->first)},
                          {"b", to_string(r.inverse_pair->second)}};
  } else {
    out["inverse"] = nullptr;
  }
  if (r.windows.is_intervals) {
    out["windows"] = Json{{"kind", "intervals"},
                          {"a", interval_json(*r.windows.window_a)},
                          {"b", interval_json(*r.windows.window_b)}};
  } else {
    out["windows"] = Json{{"kind", "not_intervals"},
                          {"reason", r.windows.reason}};
  }
  out["boundary"] = r.boundary ? dimension_result_json(*r.boundary) : Json();
  out["classification"] =
      Json{{"kind", window_kind_name(r.classification.kind)},
           {"invertible", r.classification.invertible},
           {"interval_solution", r.classification.interval_solution},
           {"boundary_dimension", r.classification.boundary_dimension}};
  out["consistency"] =
      Json{{"invertibility_matches_interval_solve",
            r.invertible == r.windows.is_intervals}};
  return out;
}

Json dimension_json(const Substitution& s, const DimensionReport& rep) {
  Json out = dimension_result_json(rep);
  out["substitution"] = to_string(s);
  return out;
}

Json graph_json(const BoundaryGraph& g) {
  Json nodes = Json::array();
  for (const BoundaryNode& n : g.nodes) {
    nodes.push_back(Json{{"alpha", std::string(1, letter_to_char(n.alpha))},
                         {"beta", std::string(1, letter_to_char(n.beta))},
                         {"x", quadnum_json(n.x)},
                         {"label", node_label(n)}});
  }
  Json edges = Json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (const auto& e : g.out[i]) {
      edges.push_back(Json{{"from", i},
                           {"to", e.to},
                           {"translate", quadnum_json(e.translate)},
                           {"multiplicity", e.multiplicity}});
    }
  }
  return Json{{"canonical", g.canonical},
              {"B", g.bound},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}};
}

Json error_json(const Error& e) {
  return Json{{"error", Json{{"code", error_code_name(e.code())},
                             {"message", e.what()}}}};
}

}  // namespace cantorval
