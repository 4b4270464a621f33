#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantorval/quadratic.hpp"
#include "cantorval/words.hpp"

namespace cantorval {

// Natural tile lengths: left PF eigenvector entries, shortest tile = 1.
struct TileLengths {
  QuadNum len_a;
  QuadNum len_b;

  const QuadNum& of(Letter l) const { return l == Letter::A ? len_a : len_b; }
  // The longer of the two lengths; the return module is Z[beta].
  const QuadNum& beta() const { return cmp(len_a, len_b) >= 0 ? len_a : len_b; }
};

TileLengths natural_lengths(const Substitution& s);

// T[i][j] = left-endpoint offsets of type-i tiles inside the level-1
// supertile rho(j), sorted ascending; |T[i][j]| = M[i][j].
struct DisplacementMatrix {
  std::vector<QuadNum> cells[2][2];

  const std::vector<QuadNum>& at(Letter i, Letter j) const {
    return cells[index_of(i)][index_of(j)];
  }
};

DisplacementMatrix displacement_matrix(const Substitution& s,
                                       const TileLengths& lengths);

struct Tile {
  Letter type;
  QuadNum position;  // left endpoint
};

// Left endpoints of all tiles of a patch, per type, sorted ascending.
struct ControlPoints {
  std::vector<QuadNum> points_a;
  std::vector<QuadNum> points_b;

  const std::vector<QuadNum>& of(Letter l) const {
    return l == Letter::A ? points_a : points_b;
  }
  std::size_t size() const { return points_a.size() + points_b.size(); }
};

ControlPoints control_points_from_tiles(std::vector<Tile> tiles);
std::vector<Tile> sorted_tiles(const ControlPoints& pts,
                               const TileLengths& lengths);

// Level-n patch grown from the bi-infinite seed left|right (left tile ends
// at the origin, right tile starts there).
ControlPoints control_points(const Substitution& s, int level,
                             const SeedCycle& seed,
                             std::int64_t tile_cap = 10'000'000);

// One-sided variant: level-n inflation of a single tile at the origin.
ControlPoints patch_from_tile(const Substitution& s, Letter type, int level,
                              std::int64_t tile_cap = 10'000'000);

// A patch that is exactly invariant under one inflation step: grown to the
// right from a letter r with rho(r) starting in r, or to the left from a
// letter l with rho(l) ending in l.  (Two-sided seed patches are only
// invariant under rho^k and disagree with their image near the origin.)
ControlPoints nesting_patch(const Substitution& s, int level,
                            std::int64_t tile_cap = 10'000'000);

struct Interval {
  QuadNum lo;
  QuadNum hi;

  QuadNum length() const { return hi - lo; }
  bool contains(const QuadNum& x) const {
    return sign(x - lo) >= 0 && sign(hi - x) >= 0;
  }
};

// {m + n*beta : |x| <= R, x* in W_i} by exact enumeration; windows must be
// intervals.  A missing window selects nothing.
ControlPoints cut_and_project(QuadField f, const QuadNum& beta,
                              const std::optional<Interval>& window_a,
                              const std::optional<Interval>& window_b,
                              const Rational& radius);

// Coordinates of x in the return module: x = m + n*beta, or nothing if the
// coordinates are not integers.
std::optional<std::pair<mpz_class, mpz_class>> module_coordinates(
    const QuadNum& x, const QuadNum& beta);

struct SelfSimilarityReport {
  bool pass = true;
  std::size_t checked_points = 0;
  Interval core;  // the window on which the identity was compared
  std::vector<std::string> issues;
};

// Checks Lambda_i = union_j union_{t in T_ij} (lambda*Lambda_j + t) on the
// patch support minus a one-supertile margin.
SelfSimilarityReport verify_self_similarity(const Substitution& s,
                                            const TileLengths& lengths,
                                            const DisplacementMatrix& T,
                                            const ControlPoints& patch);

}  // namespace cantorval
