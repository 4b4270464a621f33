#include "cantorval/geometry.hpp"

#include <algorithm>
#include <map>

namespace cantorval {

TileLengths natural_lengths(const Substitution& s) {
  const IntMatrix2 m = substitution_matrix(s);
  const PFData pf = pf_data(m);
  return TileLengths{pf.left[0], pf.left[1]};
}

DisplacementMatrix displacement_matrix(const Substitution& s,
                                       const TileLengths& lengths) {
  const IntMatrix2 m = substitution_matrix(s);
  const QuadField f = make_field(m);
  DisplacementMatrix T;
  for (Letter j : {Letter::A, Letter::B}) {
    QuadNum pos = make_rational(0, f);
    for (Letter c : s.image(j)) {
      T.cells[index_of(c)][index_of(j)].push_back(pos);
      pos = pos + lengths.of(c);
    }
  }
  // Offsets are scanned left to right, hence already ascending.
  return T;
}

ControlPoints control_points_from_tiles(std::vector<Tile> tiles) {
  ControlPoints pts;
  for (Tile& t : tiles) {
    (t.type == Letter::A ? pts.points_a : pts.points_b)
        .push_back(std::move(t.position));
  }
  auto by_value = [](const QuadNum& x, const QuadNum& y) { return x < y; };
  std::sort(pts.points_a.begin(), pts.points_a.end(), by_value);
  std::sort(pts.points_b.begin(), pts.points_b.end(), by_value);
  return pts;
}

std::vector<Tile> sorted_tiles(const ControlPoints& pts,
                               const TileLengths& /*lengths*/) {
  std::vector<Tile> tiles;
  tiles.reserve(pts.size());
  for (const QuadNum& p : pts.points_a) tiles.push_back(Tile{Letter::A, p});
  for (const QuadNum& p : pts.points_b) tiles.push_back(Tile{Letter::B, p});
  std::sort(tiles.begin(), tiles.end(),
            [](const Tile& s, const Tile& t) { return s.position < t.position; });
  return tiles;
}

namespace {

std::vector<Tile> inflate_tiles(const Substitution& s,
                                const TileLengths& lengths,
                                const QuadNum& lambda,
                                const std::vector<Tile>& tiles,
                                std::int64_t tile_cap) {
  std::int64_t next_count = 0;
  for (const Tile& t : tiles)
    next_count += static_cast<std::int64_t>(s.image(t.type).size());
  if (next_count > tile_cap)
    fail(ErrorCode::ResourceLimit,
         "patch would contain " + std::to_string(next_count) + " tiles");
  std::vector<Tile> out;
  out.reserve(static_cast<std::size_t>(next_count));
  for (const Tile& t : tiles) {
    QuadNum pos = lambda * t.position;
    for (Letter c : s.image(t.type)) {
      out.push_back(Tile{c, pos});
      pos = pos + lengths.of(c);
    }
  }
  return out;
}

std::vector<Tile> grow_patch(const Substitution& s, int level,
                             std::vector<Tile> tiles, std::int64_t tile_cap) {
  const TileLengths lengths = natural_lengths(s);
  const QuadNum lambda = make_lambda(lengths.len_a.field);
  for (int i = 0; i < level; ++i)
    tiles = inflate_tiles(s, lengths, lambda, tiles, tile_cap);
  return tiles;
}

}  // namespace

ControlPoints control_points(const Substitution& s, int level,
                             const SeedCycle& seed, std::int64_t tile_cap) {
  const TileLengths lengths = natural_lengths(s);
  std::vector<Tile> tiles{
      Tile{seed.left, -lengths.of(seed.left)},
      Tile{seed.right, make_rational(0, lengths.len_a.field)},
  };
  return control_points_from_tiles(grow_patch(s, level, std::move(tiles), tile_cap));
}

ControlPoints patch_from_tile(const Substitution& s, Letter type, int level,
                              std::int64_t tile_cap) {
  const TileLengths lengths = natural_lengths(s);
  std::vector<Tile> tiles{Tile{type, make_rational(0, lengths.len_a.field)}};
  return control_points_from_tiles(grow_patch(s, level, std::move(tiles), tile_cap));
}

ControlPoints nesting_patch(const Substitution& s, int level,
                            std::int64_t tile_cap) {
  const TileLengths lengths = natural_lengths(s);
  for (Letter r : {Letter::A, Letter::B}) {
    if (s.image(r).front() == r)
      return patch_from_tile(s, r, level, tile_cap);
  }
  for (Letter l : {Letter::A, Letter::B}) {
    if (s.image(l).back() == l) {
      std::vector<Tile> tiles{Tile{l, -lengths.of(l)}};
      return control_points_from_tiles(
          grow_patch(s, level, std::move(tiles), tile_cap));
    }
  }
  fail(ErrorCode::NoLegalSeed,
       "no letter extends to a one-sided fixed point of " + to_string(s));
}

std::optional<std::pair<mpz_class, mpz_class>> module_coordinates(
    const QuadNum& x, const QuadNum& beta) {
  // x = m + n*beta with beta = B0 + B1*lambda: n = b/B1, m = a - n*B0.
  if (sgn(beta.b) == 0) return std::nullopt;
  const Rational n = x.b / beta.b;
  const Rational m = x.a - n * beta.a;
  if (n.get_den() != 1 || m.get_den() != 1) return std::nullopt;
  return std::make_pair(mpz_class(m.get_num()), mpz_class(n.get_num()));
}

ControlPoints cut_and_project(QuadField f, const QuadNum& beta,
                              const std::optional<Interval>& window_a,
                              const std::optional<Interval>& window_b,
                              const Rational& radius) {
  std::vector<Tile> selected;
  if (window_a || window_b) {
    const QuadNum beta_star = star(beta);
    const QuadNum gap = beta - beta_star;  // nonzero since beta is irrational
    QuadNum star_lo = window_a ? window_a->lo : window_b->lo;
    QuadNum star_hi = window_a ? window_a->hi : window_b->hi;
    if (window_a && window_b) {
      star_lo = min(star_lo, window_b->lo);
      star_hi = max(star_hi, window_b->hi);
    }
    const QuadNum r_num = make_rational(radius, f);
    // x - x* = n*(beta - beta*) constrains n; then m ranges over the
    // integers allowed by |m + n*beta| <= R.
    QuadNum n_bound_1 = (-r_num - star_hi) / gap;
    QuadNum n_bound_2 = (r_num - star_lo) / gap;
    if (cmp(n_bound_1, n_bound_2) > 0) std::swap(n_bound_1, n_bound_2);
    const mpz_class n_lo = floor_int(n_bound_1);
    const mpz_class n_hi = floor_int(n_bound_2) + 1;
    for (mpz_class n = n_lo; n <= n_hi; ++n) {
      const QuadNum nb = beta * Rational(n);
      const mpz_class m_lo = floor_int(-r_num - nb);
      const mpz_class m_hi = floor_int(r_num - nb) + 1;
      for (mpz_class m = m_lo; m <= m_hi; ++m) {
        const QuadNum x = nb + Rational(m);
        if (sign(abs(x) - r_num) > 0) continue;
        const QuadNum xs = star(x);
        if (window_a && window_a->contains(xs)) {
          selected.push_back(Tile{Letter::A, x});
        } else if (window_b && window_b->contains(xs)) {
          selected.push_back(Tile{Letter::B, x});
        }
      }
    }
  }
  return control_points_from_tiles(std::move(selected));
}

namespace {

using PointSet = std::map<std::pair<Rational, Rational>, int>;

std::pair<Rational, Rational> key_of(const QuadNum& x) {
  return {x.a, x.b};
}

}  // namespace

SelfSimilarityReport verify_self_similarity(const Substitution& /*s*/,
                                            const TileLengths& lengths,
                                            const DisplacementMatrix& T,
                                            const ControlPoints& patch) {
  SelfSimilarityReport report;
  const QuadField f = lengths.len_a.field;
  const QuadNum lambda = make_lambda(f);
  const std::vector<Tile> tiles = sorted_tiles(patch, lengths);
  if (tiles.empty()) {
    report.issues.push_back("empty patch");
    report.pass = false;
    return report;
  }
  const QuadNum support_lo = tiles.front().position;
  const QuadNum support_hi =
      tiles.back().position + lengths.of(tiles.back().type);
  const QuadNum margin = lambda * max(lengths.len_a, lengths.len_b);
  report.core = Interval{support_lo + margin, support_hi - margin};
  if (cmp(report.core.lo, report.core.hi) >= 0) {
    report.issues.push_back("patch too small for a one-supertile margin");
    report.pass = false;
    return report;
  }

  for (Letter i : {Letter::A, Letter::B}) {
    // Right-hand side: union over j and t in T[i][j] of lambda*Lambda_j + t.
    PointSet rhs;
    for (Letter j : {Letter::A, Letter::B}) {
      for (const QuadNum& t : T.at(i, j)) {
        for (const QuadNum& p : patch.of(j)) {
          const QuadNum q = lambda * p + t;
          if (report.core.contains(q)) rhs[key_of(q)]++;
        }
      }
    }
    PointSet lhs;
    for (const QuadNum& p : patch.of(i)) {
      if (report.core.contains(p)) lhs[key_of(p)]++;
    }
    report.checked_points += lhs.size();
    for (const auto& [key, count] : lhs) {
      auto it = rhs.find(key);
      if (it == rhs.end()) {
        report.pass = false;
        report.issues.push_back(
            std::string("point of type ") + letter_to_char(i) + " at (" +
            key.first.get_str() + ", " + key.second.get_str() +
            ") is not reproduced by the inflation");
      }
    }
    for (const auto& [key, count] : rhs) {
      if (count > 1) {
        report.pass = false;
        report.issues.push_back(
            std::string("inflated point of type ") + letter_to_char(i) +
            " at (" + key.first.get_str() + ", " + key.second.get_str() +
            ") produced " + std::to_string(count) + " times");
      }
      if (lhs.find(key) == lhs.end()) {
        report.pass = false;
        report.issues.push_back(
            std::string("inflated point of type ") + letter_to_char(i) +
            " at (" + key.first.get_str() + ", " + key.second.get_str() +
            ") is not a control point of the patch");
      }
    }
  }
  return report;
}

}  // namespace cantorval
