#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cantorval/analyze.hpp"
#include "cantorval/image.hpp"

namespace py = pybind11;
namespace cv = cantorval;

namespace {

cv::Options options_from_kwargs(int bound, std::int64_t samples,
                                std::uint64_t seed, std::int64_t burn_in) {
  cv::Options opt;
  if (bound > 0) opt.bound = bound;
  if (samples > 0) opt.samples = samples;
  opt.seed = seed;
  if (burn_in >= 0) opt.burn_in = burn_in;
  return opt;
}

cv::WindowSystem system_of(const std::string& text) {
  const cv::Substitution s = cv::parse_substitution(text);
  const cv::IntMatrix2 m = cv::substitution_matrix(s);
  cv::check_in_scope(m);
  const cv::PFData pf = cv::pf_data(m);
  const cv::TileLengths lengths{pf.left[0], pf.left[1]};
  return cv::build_window_system(cv::displacement_matrix(s, lengths), pf);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact analysis of binary inflation rules: window systems, "
            "invertibility, chaos-game sampling and boundary dimensions";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cv::Error& e) {
      const std::string message =
          std::string(cv::error_code_name(e.code())) + ": " + e.what();
      if (cv::is_rejection(e.code())) {
        PyErr_SetString(PyExc_ValueError, message.c_str());
      } else if (cv::is_resource_limit(e.code())) {
        PyErr_SetString(PyExc_RuntimeError, message.c_str());
      } else {
        PyErr_SetString(PyExc_RuntimeError, message.c_str());
      }
    }
  });

  m.def(
      "analyze_json",
      [](const std::string& text, int bound, std::int64_t samples,
         std::uint64_t seed, std::int64_t burn_in) {
        const cv::Substitution s = cv::parse_substitution(text);
        const cv::Options opt =
            options_from_kwargs(bound, samples, seed, burn_in);
        return cv::report_json(cv::run_analysis(s, opt)).dump();
      },
      py::arg("substitution"), py::arg("bound") = 0, py::arg("samples") = 0,
      py::arg("seed") = 20250809, py::arg("burn_in") = -1,
      "Full analysis report as a JSON string");

  m.def(
      "dimension_json",
      [](const std::string& text, int bound) {
        const cv::Substitution s = cv::parse_substitution(text);
        cv::Options opt;
        if (bound > 0) opt.bound = bound;
        return cv::dimension_json(s, cv::run_dimension(s, opt)).dump();
      },
      py::arg("substitution"), py::arg("bound") = 0,
      "Boundary-graph dimension report as a JSON string");

  m.def(
      "boundary_graph_dot",
      [](const std::string& text, int bound) {
        const cv::Substitution s = cv::parse_substitution(text);
        cv::Options opt;
        if (bound > 0) opt.bound = bound;
        return cv::graph_to_dot(cv::run_dimension(s, opt).graph);
      },
      py::arg("substitution"), py::arg("bound") = 0,
      "Boundary graph in DOT format");

  m.def(
      "substitution_matrix",
      [](const std::string& text) {
        const cv::IntMatrix2 m =
            cv::substitution_matrix(cv::parse_substitution(text));
        return std::vector<std::vector<std::int64_t>>{{m.m11, m.m12},
                                                      {m.m21, m.m22}};
      },
      py::arg("substitution"));

  m.def(
      "iterate",
      [](const std::string& text, const std::string& word, int n) {
        const cv::Substitution s = cv::parse_substitution(text);
        return cv::word_to_string(
            cv::iterate(s, cv::word_from_string(word), n));
      },
      py::arg("substitution"), py::arg("word"), py::arg("n"));

  m.def(
      "is_invertible",
      [](const std::string& text) {
        return cv::is_invertible(cv::parse_substitution(text));
      },
      py::arg("substitution"));

  m.def(
      "inverse",
      [](const std::string& text) {
        const auto [a, b] = cv::inverse(cv::parse_substitution(text));
        return std::make_pair(cv::to_string(a), cv::to_string(b));
      },
      py::arg("substitution"),
      "Images of the generators under the inverse automorphism");

  m.def(
      "chaos_game",
      [](const std::string& text, std::int64_t samples, std::uint64_t seed,
         std::int64_t burn_in) {
        const cv::PointCloud cloud =
            cv::chaos_game(system_of(text), samples, seed, burn_in);
        return std::make_pair(cloud.points_a, cloud.points_b);
      },
      py::arg("substitution"), py::arg("samples") = 10000,
      py::arg("seed") = 20250809, py::arg("burn_in") = 100,
      "Chaos-game samples of the two windows");

  m.def(
      "render_ppm",
      [](const std::string& text, const std::string& path,
         std::int64_t samples, std::uint64_t seed, int width, int height) {
        const cv::PointCloud cloud =
            cv::chaos_game(system_of(text), samples, seed, 100);
        cv::render_ppm(cloud, path, width, height);
      },
      py::arg("substitution"), py::arg("path"), py::arg("samples") = 10000,
      py::arg("seed") = 20250809, py::arg("width") = 1200,
      py::arg("height") = 160);
}
