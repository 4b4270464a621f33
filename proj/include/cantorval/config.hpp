#pragma once

#include <cstdint>
#include <string>

namespace cantorval {

// Tunable knobs with reproducible defaults; a key=value config file and CLI
// flags override them in that order.
struct Options {
  int bound = 3;                        // boundary-graph seeding bound B
  std::int64_t samples = 10000;         // chaos-game steps for rendering
  std::int64_t burn_in = 100;
  std::uint64_t seed = 20250809;
  double bin_width = 1e-3;              // measure-estimate bin width
  double hull_eps = 1e-9;               // certified-hull accuracy
  double power_tol = 1e-12;             // spectral-radius tolerance
  double dim_tolerance = 1e-6;          // Cantorval threshold on dim
  std::int64_t length_cap = 10'000'000; // word/patch size cap
  int node_cap = 20000;                 // boundary closure cap
  std::int64_t witness_samples = 200000;
  double witness_tol = 1e-3;
};

// Parses "key = value" lines ('#' comments, blank lines ignored).
Options load_config(const std::string& path, Options base = Options{});

}  // namespace cantorval
