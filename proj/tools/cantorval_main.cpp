#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cantorval/analyze.hpp"
#include "cantorval/image.hpp"

namespace cv = cantorval;

namespace {

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) cv::fail(cv::ErrorCode::IoError, "cannot write " + path);
  out << text;
}

struct CommonFlags {
  std::string config_path;
  int bound = 0;
  std::int64_t samples = 0;
  std::int64_t burn_in = 0;
  std::uint64_t seed = 0;
  double bin_width = 0;

  void add_to(CLI::App& app) {
    app.add_option("--config", config_path,
                   "key=value file with tolerance and sampling defaults");
    app.add_option("--bound", bound, "boundary-graph seeding bound B");
    app.add_option("--samples", samples, "chaos-game steps")
        ->check(CLI::PositiveNumber);
    app.add_option("--burn-in", burn_in, "chaos-game burn-in steps")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "random generator seed");
    app.add_option("--bin-width", bin_width, "measure-estimate bin width")
        ->check(CLI::PositiveNumber);
  }

  cv::Options resolve(const CLI::App& app) const {
    cv::Options opt;
    if (app.count("--config")) opt = cv::load_config(config_path, opt);
    if (app.count("--bound")) opt.bound = bound;
    if (app.count("--samples")) opt.samples = samples;
    if (app.count("--burn-in")) opt.burn_in = burn_in;
    if (app.count("--seed")) opt.seed = seed;
    if (app.count("--bin-width")) opt.bin_width = bin_width;
    return opt;
  }
};

std::string points_csv(const cv::ControlPoints& pts, const cv::QuadNum& beta) {
  std::string out = "type,m,n,approx\n";
  char buf[80];
  auto emit = [&](char type, const std::vector<cv::QuadNum>& list) {
    for (const cv::QuadNum& p : list) {
      const auto coords = cv::module_coordinates(p, beta);
      if (!coords)
        cv::fail(cv::ErrorCode::Internal,
                 "control point outside the return module");
      std::snprintf(buf, sizeof(buf), "%c,%s,%s,%.12g\n", type,
                    coords->first.get_str().c_str(),
                    coords->second.get_str().c_str(), cv::to_real(p));
      out += buf;
    }
  };
  emit('a', pts.points_a);
  emit('b', pts.points_b);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyzer for binary inflation rules: exact window systems, "
               "invertibility, chaos-game images and the Hausdorff dimension "
               "of window boundaries"};
  app.require_subcommand(1);

  std::string subst_text;
  std::string out_path;

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "full pipeline: checks, windows, dimension, classification");
  CommonFlags analyze_flags;
  analyze->add_option("substitution", subst_text, "e.g. \"(ab,a)\"")
      ->required();
  analyze->add_option("--out", out_path, "write the JSON report to a file");
  analyze_flags.add_to(*analyze);

  // render
  auto* render = app.add_subcommand(
      "render", "chaos-game raster of the two windows (PPM, optional SVG)");
  CommonFlags render_flags;
  std::string render_out = "windows.ppm";
  std::string render_svg_path;
  std::string render_csv_path;
  int render_width = 1200, render_height = 160;
  render->add_option("substitution", subst_text)->required();
  render->add_option("--out", render_out, "output PPM path");
  render->add_option("--svg", render_svg_path, "also write an SVG");
  render->add_option("--csv", render_csv_path,
                     "also dump the sample cloud as window,position CSV");
  render->add_option("--width", render_width)->check(CLI::PositiveNumber);
  render->add_option("--height", render_height)->check(CLI::PositiveNumber);
  render_flags.add_to(*render);

  // dimension
  auto* dimension = app.add_subcommand(
      "dimension", "boundary graph and Hausdorff dimension of the boundary");
  CommonFlags dimension_flags;
  std::string export_graph_path;
  dimension->add_option("substitution", subst_text)->required();
  dimension->add_option("--export-graph", export_graph_path,
                        "write the boundary graph as DOT");
  dimension->add_option("--out", out_path);
  dimension_flags.add_to(*dimension);

  // points
  auto* points = app.add_subcommand(
      "points", "control points by inflation level or cut-and-project radius");
  CommonFlags points_flags;
  int level = -1;
  double radius = 0.0;
  bool via_window = false;
  auto* level_opt =
      points->add_option("--level", level, "inflation level of the patch")
          ->check(CLI::NonNegativeNumber);
  auto* radius_opt =
      points->add_option("--radius", radius, "select |x| <= R via the window")
          ->check(CLI::PositiveNumber);
  points->add_flag("--via-window", via_window,
                   "force the cut-and-project route (implied by --radius)");
  points->add_option("substitution", subst_text)->required();
  points->add_option("--out", out_path);
  points_flags.add_to(*points);

  // export-graph
  auto* export_graph = app.add_subcommand(
      "export-graph", "boundary graph as DOT and/or JSON adjacency");
  CommonFlags export_flags;
  std::string dot_path, json_path;
  bool raw_graph = false;
  export_graph->add_option("substitution", subst_text)->required();
  export_graph->add_option("--dot", dot_path, "DOT output path");
  export_graph->add_option("--json", json_path, "JSON adjacency output path");
  export_graph->add_flag("--raw", raw_graph,
                         "keep both symmetry partners of every node");
  export_graph->add_option("--out", out_path);
  export_flags.add_to(*export_graph);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage problems are rejected input
  }

  try {
    const cv::Substitution s = cv::parse_substitution(subst_text);

    if (*analyze) {
      const cv::Options opt = analyze_flags.resolve(*analyze);
      const cv::AnalysisResult result = cv::run_analysis(s, opt);
      write_output(cv::report_json(result).dump(2) + "\n", out_path);
      return 0;
    }

    if (*render) {
      const cv::Options opt = render_flags.resolve(*render);
      const cv::IntMatrix2 m = cv::substitution_matrix(s);
      cv::check_in_scope(m);
      const cv::PFData pf = cv::pf_data(m);
      const cv::TileLengths lengths{pf.left[0], pf.left[1]};
      const auto T = cv::displacement_matrix(s, lengths);
      const auto sys = cv::build_window_system(T, pf);
      const auto cloud =
          cv::chaos_game(sys, opt.samples, opt.seed, opt.burn_in);
      cv::render_ppm(cloud, render_out, render_width, render_height);
      if (!render_svg_path.empty())
        cv::render_svg(cloud, render_svg_path, render_width, render_height);
      if (!render_csv_path.empty())
        write_output(cv::cloud_to_csv(cloud), render_csv_path);
      std::cerr << "wrote " << render_out << " (" << cloud.points_a.size()
                << " + " << cloud.points_b.size() << " samples)\n";
      return 0;
    }

    if (*dimension) {
      const cv::Options opt = dimension_flags.resolve(*dimension);
      const cv::DimensionReport rep = cv::run_dimension(s, opt);
      if (!export_graph_path.empty())
        write_output(cv::graph_to_dot(rep.graph), export_graph_path);
      write_output(cv::dimension_json(s, rep).dump(2) + "\n", out_path);
      return 0;
    }

    if (*points) {
      const cv::Options opt = points_flags.resolve(*points);
      const cv::IntMatrix2 m = cv::substitution_matrix(s);
      cv::check_in_scope(m);
      const cv::TileLengths lengths = cv::natural_lengths(s);
      const cv::QuadNum beta = lengths.beta();
      cv::ControlPoints pts;
      if (radius_opt->count()) {
        (void)via_window;
        const auto T = cv::displacement_matrix(s, lengths);
        const auto sys = cv::build_window_system(T, cv::pf_data(m));
        const auto solve = cv::solve_interval_fixed_point(sys);
        if (!solve.is_intervals)
          cv::fail(cv::ErrorCode::NonIntervalWindow,
                   "cut-and-project needs interval windows: " + solve.reason);
        pts = cv::cut_and_project(cv::make_field(m), beta, solve.window_a,
                                  solve.window_b, cv::Rational(radius));
      } else if (level_opt->count()) {
        pts = cv::control_points(s, level, cv::seed_cycle(s), opt.length_cap);
      } else {
        cv::fail(cv::ErrorCode::SyntaxError,
                 "points requires --level or --radius");
      }
      write_output(points_csv(pts, beta), out_path);
      return 0;
    }

    if (*export_graph) {
      const cv::Options opt = export_flags.resolve(*export_graph);
      const cv::IntMatrix2 m = cv::substitution_matrix(s);
      cv::check_in_scope(m);
      const cv::PFData pf = cv::pf_data(m);
      const cv::TileLengths lengths{pf.left[0], pf.left[1]};
      const auto T = cv::displacement_matrix(s, lengths);
      const auto sys = cv::build_window_system(T, pf);
      const auto hulls = cv::exact_hull(sys);
      const auto graph = cv::build_boundary_graph(
          T, pf, hulls, lengths.beta(), opt.bound, !raw_graph, opt.node_cap);
      if (!dot_path.empty()) write_output(cv::graph_to_dot(graph), dot_path);
      if (!json_path.empty())
        write_output(cv::graph_json(graph).dump(2) + "\n", json_path);
      if (dot_path.empty() && json_path.empty())
        write_output(cv::graph_to_dot(graph), out_path);
      return 0;
    }
  } catch (const cv::Error& e) {
    std::cout << cv::error_json(e).dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    if (cv::is_rejection(e.code())) return 2;
    if (cv::is_resource_limit(e.code())) return 3;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
