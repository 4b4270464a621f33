#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantorval/geometry.hpp"
#include "cantorval/quadratic.hpp"

namespace cantorval {

// One contraction of the internal-space GIFS: W_target contains
// lambda* . W_source + translate*.
struct AffineMap {
  Letter target;
  Letter source;
  QuadNum translate;       // direct-space offset t
  QuadNum translate_star;  // t*
};

struct WindowSystem {
  QuadField field;
  QuadNum contraction;  // lambda*, |lambda*| < 1
  std::vector<AffineMap> maps;

  std::vector<const AffineMap*> maps_with_target(Letter t) const;
  std::vector<const AffineMap*> maps_with_source(Letter s) const;
};

// Star-conjugates the displacement matrix: one map per t in T[i][j].
WindowSystem build_window_system(const DisplacementMatrix& T, const PFData& pf);

// Outer interval bounds H_i >= W_i with a certified error bound.
struct HullBounds {
  Interval hull_a;
  Interval hull_b;
  Rational error = 0;  // Hausdorff distance bound to the true hulls

  const Interval& of(Letter l) const {
    return l == Letter::A ? hull_a : hull_b;
  }
};

// Iterates the interval-hull map from a safe seed box until the contraction
// bound guarantees the requested accuracy.
HullBounds certified_hull(const WindowSystem& sys, const Rational& eps);

// Exact attractor hulls: solves the min/max endpoint equations and verifies
// the solution exactly (error bound 0).
HullBounds exact_hull(const WindowSystem& sys);

struct WindowSolve {
  bool is_intervals = false;
  std::optional<Interval> window_a;
  std::optional<Interval> window_b;
  std::string reason;  // why the candidate failed, when not intervals
};

// Solves the endpoint equations exactly, then verifies that for each target
// the image intervals tile [u_i, v_i] with disjoint interiors and no gaps.
WindowSolve solve_interval_fixed_point(const WindowSystem& sys);

struct PointCloud {
  std::vector<double> points_a;
  std::vector<double> points_b;
  std::uint64_t rng_seed = 0;
  std::int64_t samples = 0;
  std::int64_t burn_in = 0;

  const std::vector<double>& of(Letter l) const {
    return l == Letter::A ? points_a : points_b;
  }
  bool empty() const { return points_a.empty() && points_b.empty(); }
};

// Random backward walk on the GIFS; deterministic for a fixed seed.  n is
// the total number of steps, points are recorded after burn_in of them.
PointCloud chaos_game(const WindowSystem& sys, std::int64_t n,
                      std::uint64_t rng_seed, std::int64_t burn_in = 100);

std::string cloud_to_csv(const PointCloud& cloud);

// Occupied-bin measure estimate (count of distinct bins of width h times h).
std::pair<double, double> measure_estimate(const PointCloud& cloud, double h);

struct Gap {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

// Maximal empty subintervals of the union cloud longer than resolution,
// sorted by length descending.
std::vector<Gap> gap_profile(const PointCloud& cloud, double resolution);

}  // namespace cantorval
