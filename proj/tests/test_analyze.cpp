#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "cantorval/analyze.hpp"

using namespace cantorval;

namespace {

Options fast_options() {
  Options opt;
  opt.witness_samples = 50000;
  return opt;
}

// Minimal structural validator: checks "type", "required" and "properties"
// recursively, which is all the bundled schema uses.
bool validate_against(const Json& schema, const Json& value);

bool type_matches(const std::string& type, const Json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

bool validate_against(const Json& schema, const Json& value) {
  if (schema.contains("type")) {
    const Json& t = schema["type"];
    bool ok = false;
    if (t.is_array()) {
      for (const auto& alt : t) ok = ok || type_matches(alt, value);
    } else {
      ok = type_matches(t, value);
    }
    if (!ok) return false;
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>())) return false;
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema["properties"].items())
        if (value.contains(key) && !validate_against(sub, value[key]))
          return false;
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (const auto& item : value)
      if (!validate_against(schema["items"], item)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("analysis of the Fibonacci rule") {
  const AnalysisResult r =
      run_analysis(parse_substitution("(ab,a)"), fast_options());
  CHECK(r.classification.kind == WindowKind::Interval);
  CHECK(r.invertible);
  CHECK(r.windows.is_intervals);
  CHECK_FALSE(r.boundary.has_value());
  CHECK(r.inverse_pair.has_value());
  CHECK(to_string(r.inverse_pair->first) == "b");
  CHECK(to_string(r.inverse_pair->second) == "b^-1 a");
}

TEST_CASE("analysis of the scrambled rule") {
  const AnalysisResult r =
      run_analysis(parse_substitution("(aab,ba)"), fast_options());
  CHECK(r.classification.kind == WindowKind::Cantorval);
  CHECK_FALSE(r.invertible);
  CHECK_FALSE(r.windows.is_intervals);
  REQUIRE(r.boundary.has_value());
  CHECK(std::abs(r.boundary->result.dimension - 0.91578546) < 1e-6);
  CHECK(r.boundary->stable);
}

TEST_CASE("invertibility matches the interval solve on the examples") {
  for (const char* text : {"(ab,a)", "(aab,ba)", "(bba,ab)"}) {
    const AnalysisResult r =
        run_analysis(parse_substitution(text), fast_options());
    CHECK(r.invertible == r.windows.is_intervals);
  }
}

TEST_CASE("invertibility matches the interval solve on random rules") {
  // The two classification routes are independent implementations; on
  // primitive unimodular input they must always agree.
  std::mt19937 rng(20250810);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<int> bit(0, 1);
  int found = 0, invertible_count = 0;
  while (found < 40) {
    Word wa, wb;
    for (int i = len(rng); i-- > 0;)
      wa.push_back(bit(rng) ? Letter::B : Letter::A);
    for (int i = len(rng); i-- > 0;)
      wb.push_back(bit(rng) ? Letter::B : Letter::A);
    const Substitution s{wa, wb};
    const IntMatrix2 m = substitution_matrix(s);
    if (!is_primitive(m) || !is_unimodular(m)) continue;
    ++found;
    const PFData pf = pf_data(m);
    const TileLengths L{pf.left[0], pf.left[1]};
    const WindowSolve solve =
        solve_interval_fixed_point(build_window_system(
            displacement_matrix(s, L), pf));
    const bool inv = is_invertible(s);
    INFO(to_string(s));
    CHECK(inv == solve.is_intervals);
    if (inv) ++invertible_count;
  }
  // Both branches must actually occur for the check to mean anything.
  CHECK(invertible_count > 0);
  CHECK(invertible_count < 40);
}

TEST_CASE("rejections carry machine-readable codes") {
  try {
    run_analysis(parse_substitution("(aaba,aa)"), fast_options());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonUnimodular);
    CHECK(std::string(error_code_name(e.code())) == "NON_UNIMODULAR");
    CHECK(is_rejection(e.code()));
    const Json j = error_json(e);
    CHECK(j["error"]["code"] == "NON_UNIMODULAR");
  }
  try {
    run_analysis(parse_substitution("(b,a)"), fast_options());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrimitive);
    CHECK(std::string(error_code_name(e.code())) == "NOT_PRIMITIVE");
  }
}

TEST_CASE("reports are deterministic and schema-conforming") {
  const Options opt = fast_options();
  const AnalysisResult r1 = run_analysis(parse_substitution("(aab,ba)"), opt);
  const AnalysisResult r2 = run_analysis(parse_substitution("(aab,ba)"), opt);
  const std::string dump1 = report_json(r1).dump(2);
  const std::string dump2 = report_json(r2).dump(2);
  CHECK(dump1 == dump2);

  std::ifstream schema_file(std::string(CANTORVAL_SOURCE_DIR) +
                            "/schema/analysis_report.schema.json");
  REQUIRE(schema_file.good());
  const Json schema = Json::parse(schema_file);
  CHECK(validate_against(schema, report_json(r1)));
  const AnalysisResult fib = run_analysis(parse_substitution("(ab,a)"), opt);
  CHECK(validate_against(schema, report_json(fib)));
}

TEST_CASE("dimension report JSON carries the stability pair") {
  Options opt = fast_options();
  opt.bound = 2;
  const Substitution s = parse_substitution("(aab,ba)");
  const DimensionReport rep = run_dimension(s, opt);
  const Json j = dimension_json(s, rep);
  CHECK(j["B"] == 2);
  CHECK(j["stable"] == true);
  CHECK(std::abs(j["spectral_radius"].get<double>() -
                 j["spectral_radius_next_B"].get<double>()) < 1e-9);
  CHECK(j["node_count"].get<int>() > 0);
}

TEST_CASE("graph JSON lists nodes and weighted edges") {
  Options opt = fast_options();
  opt.bound = 2;
  const DimensionReport rep =
      run_dimension(parse_substitution("(aab,ba)"), opt);
  const Json j = graph_json(rep.graph);
  CHECK(j["nodes"].size() == rep.graph.nodes.size());
  CHECK(j["edges"].size() > 0);
  for (const auto& e : j["edges"]) {
    CHECK(e.contains("translate"));
    CHECK(e["multiplicity"].get<int>() >= 1);
  }
}

TEST_CASE("config files override defaults") {
  const std::string path = "/tmp/cantorval_test_config.txt";
  {
    std::ofstream out(path);
    out << "# comment\n";
    out << "bound = 5\n";
    out << "samples = 31337\n";
    out << "seed=17\n";
    out << "bin_width = 0.002  # inline comment\n";
  }
  const Options opt = load_config(path);
  CHECK(opt.bound == 5);
  CHECK(opt.samples == 31337);
  CHECK(opt.seed == 17);
  CHECK(opt.bin_width == doctest::Approx(0.002));
  CHECK(opt.burn_in == Options{}.burn_in);  // untouched default
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "no_such_key = 1\n";
  }
  CHECK_THROWS_AS(load_config(path), Error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("/nonexistent/config"), Error);
}
