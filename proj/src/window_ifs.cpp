#include "cantorval/window_ifs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <unordered_set>

namespace cantorval {

std::vector<const AffineMap*> WindowSystem::maps_with_target(Letter t) const {
  std::vector<const AffineMap*> out;
  for (const AffineMap& m : maps)
    if (m.target == t) out.push_back(&m);
  return out;
}

std::vector<const AffineMap*> WindowSystem::maps_with_source(Letter s) const {
  std::vector<const AffineMap*> out;
  for (const AffineMap& m : maps)
    if (m.source == s) out.push_back(&m);
  return out;
}

WindowSystem build_window_system(const DisplacementMatrix& T, const PFData& pf) {
  if (!is_pisot_unit(pf.field))
    fail(ErrorCode::NotPisotUnit,
         "the internal-space system requires a Pisot unit inflation factor");
  WindowSystem sys;
  sys.field = pf.field;
  sys.contraction = pf.lambda_star;
  for (Letter i : {Letter::A, Letter::B}) {
    for (Letter j : {Letter::A, Letter::B}) {
      for (const QuadNum& t : T.at(i, j))
        sys.maps.push_back(AffineMap{i, j, t, star(t)});
    }
  }
  return sys;
}

namespace {

// Variable layout for the endpoint equations: 0 = lo_a, 1 = hi_a,
// 2 = lo_b, 3 = hi_b.
constexpr int kLo[2] = {0, 2};
constexpr int kHi[2] = {1, 3};

struct EndpointEq {
  int source_var = -1;  // x_v = contraction * x_source + translate
  QuadNum translate;
};

// The image of [lo_j, hi_j] under w -> c*w + ts has its lower endpoint at
// c*lo_j + ts for c > 0 and at c*hi_j + ts for c < 0.
int image_lo_var(const AffineMap& m, bool contraction_negative) {
  const int j = index_of(m.source);
  return contraction_negative ? kHi[j] : kLo[j];
}

int image_hi_var(const AffineMap& m, bool contraction_negative) {
  const int j = index_of(m.source);
  return contraction_negative ? kLo[j] : kHi[j];
}

// Solves the functional-graph system x_v = c * x_{src(v)} + t_v exactly.
std::optional<std::array<QuadNum, 4>> solve_endpoint_equations(
    const QuadNum& c, const std::array<EndpointEq, 4>& eqs,
    const QuadField& field) {
  std::array<QuadNum, 4> value;
  std::array<int, 4> state{};  // 0 unknown, 1 in progress, 2 solved
  for (int start = 0; start < 4; ++start) {
    if (state[start] == 2 || eqs[start].source_var < 0) continue;
    std::vector<int> chain;
    int v = start;
    while (state[v] == 0 && eqs[v].source_var >= 0) {
      state[v] = 1;
      chain.push_back(v);
      v = eqs[v].source_var;
    }
    if (eqs[v].source_var < 0 && state[v] != 2) return std::nullopt;
    if (state[v] == 1) {
      // Cycle through v: compose the affine maps around it.
      auto it = std::find(chain.begin(), chain.end(), v);
      QuadNum coef = make_rational(1, field);
      QuadNum trans = make_rational(0, field);
      for (auto jt = it; jt != chain.end(); ++jt) {
        // x_{w} = c * x_{next} + t_w accumulated left to right
        trans = trans + coef * eqs[*jt].translate;
        coef = coef * c;
      }
      const QuadNum denom = make_rational(1, field) - coef;
      if (denom.is_zero()) return std::nullopt;
      value[v] = trans / denom;
      state[v] = 2;
    }
    // Unwind the tail back from the solved variable.
    for (auto jt = chain.rbegin(); jt != chain.rend(); ++jt) {
      if (state[*jt] == 2) continue;
      value[*jt] = c * value[eqs[*jt].source_var] + eqs[*jt].translate;
      state[*jt] = 2;
    }
  }
  for (int v = 0; v < 4; ++v)
    if (state[v] != 2 && eqs[v].source_var >= 0) return std::nullopt;
  return value;
}

struct HullCandidate {
  std::array<QuadNum, 4> vars;
  bool targets_present[2] = {false, false};
};

// Exact check that the candidate satisfies lo_i = min image-lo and
// hi_i = max image-hi over all maps of target i.
bool verify_hull_equations(const WindowSystem& sys,
                           const std::array<QuadNum, 4>& vars) {
  const bool neg = sign(sys.contraction) < 0;
  for (Letter i : {Letter::A, Letter::B}) {
    const auto maps = sys.maps_with_target(i);
    if (maps.empty()) continue;
    std::optional<QuadNum> lo, hi;
    for (const AffineMap* m : maps) {
      const QuadNum image_lo =
          sys.contraction * vars[image_lo_var(*m, neg)] + m->translate_star;
      const QuadNum image_hi =
          sys.contraction * vars[image_hi_var(*m, neg)] + m->translate_star;
      if (!lo || cmp(image_lo, *lo) < 0) lo = image_lo;
      if (!hi || cmp(image_hi, *hi) > 0) hi = image_hi;
    }
    if (!(*lo == vars[kLo[index_of(i)]])) return false;
    if (!(*hi == vars[kHi[index_of(i)]])) return false;
  }
  return true;
}

std::array<double, 4> numeric_hull(const WindowSystem& sys, int iterations) {
  const double c = to_real(sys.contraction);
  struct NumMap {
    int target;
    int lo_var;
    int hi_var;
    double ts;
  };
  std::vector<NumMap> nm;
  const bool neg = c < 0;
  double max_ts = 0;
  for (const AffineMap& m : sys.maps) {
    nm.push_back(NumMap{index_of(m.target), image_lo_var(m, neg),
                        image_hi_var(m, neg), to_real(m.translate_star)});
    max_ts = std::max(max_ts, std::abs(nm.back().ts));
  }
  const double S = (max_ts + 1.0) / (1.0 - std::abs(c)) + 1.0;
  std::array<double, 4> vars{-S, S, -S, S};
  for (int it = 0; it < iterations; ++it) {
    std::array<double, 4> next = vars;
    for (int i = 0; i < 2; ++i) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      bool any = false;
      for (const NumMap& m : nm) {
        if (m.target != i) continue;
        any = true;
        lo = std::min(lo, c * vars[m.lo_var] + m.ts);
        hi = std::max(hi, c * vars[m.hi_var] + m.ts);
      }
      if (any) {
        next[kLo[i]] = lo;
        next[kHi[i]] = hi;
      } else {
        next[kLo[i]] = next[kHi[i]] = 0.0;
      }
    }
    vars = next;
  }
  return vars;
}

// Chooses, per endpoint equation, the map that attains the bound in the
// numeric solution, solves exactly and verifies; falls back to exhaustive
// pattern search if the warm start failed to verify.
std::optional<std::array<QuadNum, 4>> exact_hull_vars(const WindowSystem& sys) {
  const bool neg = sign(sys.contraction) < 0;
  const auto numeric = numeric_hull(sys, 400);
  const double c = to_real(sys.contraction);

  std::array<std::vector<const AffineMap*>, 2> by_target{
      sys.maps_with_target(Letter::A), sys.maps_with_target(Letter::B)};

  auto build_eqs = [&](const std::array<int, 4>& picks) {
    std::array<EndpointEq, 4> eqs;
    for (int i = 0; i < 2; ++i) {
      if (by_target[i].empty()) continue;
      const AffineMap* mlo = by_target[i][static_cast<std::size_t>(picks[kLo[i]])];
      const AffineMap* mhi = by_target[i][static_cast<std::size_t>(picks[kHi[i]])];
      eqs[kLo[i]] = EndpointEq{image_lo_var(*mlo, neg), mlo->translate_star};
      eqs[kHi[i]] = EndpointEq{image_hi_var(*mhi, neg), mhi->translate_star};
    }
    return eqs;
  };

  auto try_picks = [&](const std::array<int, 4>& picks)
      -> std::optional<std::array<QuadNum, 4>> {
    auto eqs = build_eqs(picks);
    auto solved = solve_endpoint_equations(sys.contraction, eqs, sys.field);
    if (!solved) return std::nullopt;
    for (int i = 0; i < 2; ++i) {
      if (by_target[i].empty()) {
        (*solved)[kLo[i]] = make_rational(0, sys.field);
        (*solved)[kHi[i]] = make_rational(0, sys.field);
      }
    }
    if (!verify_hull_equations(sys, *solved)) return std::nullopt;
    return solved;
  };

  // Warm start from the numeric argmin/argmax pattern.
  std::array<int, 4> picks{0, 0, 0, 0};
  for (int i = 0; i < 2; ++i) {
    double best_lo = std::numeric_limits<double>::infinity();
    double best_hi = -best_lo;
    for (std::size_t k = 0; k < by_target[i].size(); ++k) {
      const AffineMap* m = by_target[i][k];
      const double ts = to_real(m->translate_star);
      const double image_lo = c * numeric[image_lo_var(*m, neg)] + ts;
      const double image_hi = c * numeric[image_hi_var(*m, neg)] + ts;
      if (image_lo < best_lo) {
        best_lo = image_lo;
        picks[kLo[i]] = static_cast<int>(k);
      }
      if (image_hi > best_hi) {
        best_hi = image_hi;
        picks[kHi[i]] = static_cast<int>(k);
      }
    }
  }
  if (auto solved = try_picks(picks)) return solved;

  // Exhaustive pattern search (small: at most (#maps)^2 per target).
  const int na = static_cast<int>(std::max<std::size_t>(by_target[0].size(), 1));
  const int nb = static_cast<int>(std::max<std::size_t>(by_target[1].size(), 1));
  for (int la = 0; la < na; ++la)
    for (int ha = 0; ha < na; ++ha)
      for (int lb = 0; lb < nb; ++lb)
        for (int hb = 0; hb < nb; ++hb) {
          if (auto solved = try_picks({la, ha, lb, hb})) return solved;
        }
  return std::nullopt;
}

}  // namespace

HullBounds exact_hull(const WindowSystem& sys) {
  auto vars = exact_hull_vars(sys);
  if (!vars)
    fail(ErrorCode::SingularSystem,
         "could not certify the attractor hull equations");
  return HullBounds{Interval{(*vars)[0], (*vars)[1]},
                    Interval{(*vars)[2], (*vars)[3]}, Rational(0)};
}

HullBounds certified_hull(const WindowSystem& sys, const Rational& eps) {
  if (sgn(eps) <= 0)
    fail(ErrorCode::Internal, "certified_hull requires a positive accuracy");
  // Rational upper bound on |lambda*|, verified exactly.
  const QuadNum c_abs = abs(sys.contraction);
  Rational c_up(1, 2);
  {
    const double cd = to_real(c_abs);
    c_up = Rational(cd) + Rational(1, 1 << 20);
    c_up.canonicalize();
    while (sign(make_rational(c_up, sys.field) - c_abs) <= 0)
      c_up += Rational(1, 1 << 20);
  }
  if (c_up >= 1)
    fail(ErrorCode::NotPisotUnit, "contraction bound is not below one");

  Rational max_ts = 0;
  for (const AffineMap& m : sys.maps) {
    const QuadNum a = abs(m.translate_star);
    Rational up = Rational(to_real(a)) + Rational(1, 1 << 20);
    while (sign(make_rational(up, sys.field) - a) < 0)
      up += Rational(1, 1 << 20);
    max_ts = std::max(max_ts, up);
  }

  const Rational S = (max_ts + 1) / (1 - c_up) + 1;
  QuadNum lo_a = make_rational(-S, sys.field), hi_a = make_rational(S, sys.field);
  QuadNum lo_b = lo_a, hi_b = hi_a;

  Rational err = 2 * S;  // Hausdorff bound between the seed box and the hull
  const bool neg = sign(sys.contraction) < 0;
  int guard = 0;
  while (err > eps) {
    if (++guard > 100000)
      fail(ErrorCode::Internal, "certified_hull failed to converge");
    std::array<QuadNum, 4> cur{lo_a, hi_a, lo_b, hi_b};
    std::array<QuadNum, 4> next = cur;
    for (Letter i : {Letter::A, Letter::B}) {
      const auto maps = sys.maps_with_target(i);
      if (maps.empty()) continue;
      std::optional<QuadNum> lo, hi;
      for (const AffineMap* m : maps) {
        const QuadNum image_lo =
            sys.contraction * cur[image_lo_var(*m, neg)] + m->translate_star;
        const QuadNum image_hi =
            sys.contraction * cur[image_hi_var(*m, neg)] + m->translate_star;
        if (!lo || cmp(image_lo, *lo) < 0) lo = image_lo;
        if (!hi || cmp(image_hi, *hi) > 0) hi = image_hi;
      }
      next[kLo[index_of(i)]] = *lo;
      next[kHi[index_of(i)]] = *hi;
    }
    lo_a = next[0], hi_a = next[1], lo_b = next[2], hi_b = next[3];
    err *= c_up;
  }
  return HullBounds{Interval{lo_a, hi_a}, Interval{lo_b, hi_b}, err};
}

WindowSolve solve_interval_fixed_point(const WindowSystem& sys) {
  auto vars_opt = exact_hull_vars(sys);
  if (!vars_opt)
    fail(ErrorCode::SingularSystem, "endpoint equations could not be solved");
  const auto& vars = *vars_opt;
  const bool neg = sign(sys.contraction) < 0;

  WindowSolve out;
  for (Letter i : {Letter::A, Letter::B}) {
    const auto maps = sys.maps_with_target(i);
    const Interval candidate{vars[kLo[index_of(i)]], vars[kHi[index_of(i)]]};
    if (maps.empty()) {
      (i == Letter::A ? out.window_a : out.window_b) = candidate;
      continue;
    }
    std::vector<Interval> images;
    for (const AffineMap* m : maps) {
      images.push_back(
          Interval{sys.contraction * vars[image_lo_var(*m, neg)] + m->translate_star,
                   sys.contraction * vars[image_hi_var(*m, neg)] + m->translate_star});
    }
    std::sort(images.begin(), images.end(),
              [](const Interval& x, const Interval& y) {
                const int c = cmp(x.lo, y.lo);
                return c != 0 ? c < 0 : cmp(x.hi, y.hi) < 0;
              });
    if (!(images.front().lo == candidate.lo) ||
        !(images.back().hi == candidate.hi)) {
      out.reason = "image union does not reach the candidate endpoints";
      return out;
    }
    for (std::size_t k = 0; k + 1 < images.size(); ++k) {
      const int c = cmp(images[k + 1].lo, images[k].hi);
      if (c > 0) {
        out.reason = std::string("gap inside window ") + letter_to_char(i) +
                     " between " + to_string(images[k].hi) + " and " +
                     to_string(images[k + 1].lo);
        return out;
      }
      if (c < 0) {
        out.reason = std::string("image intervals of window ") +
                     letter_to_char(i) + " overlap on an interior from " +
                     to_string(images[k + 1].lo) + " to " +
                     to_string(images[k].hi);
        return out;
      }
    }
    (i == Letter::A ? out.window_a : out.window_b) = candidate;
  }
  out.is_intervals = true;
  return out;
}

PointCloud chaos_game(const WindowSystem& sys, std::int64_t n,
                      std::uint64_t rng_seed, std::int64_t burn_in) {
  if (burn_in < 0 || n < burn_in)
    fail(ErrorCode::Internal, "chaos_game requires n >= burn_in >= 0");
  struct Step {
    int target;
    double c;
    double ts;
  };
  std::array<std::vector<Step>, 2> by_source;
  const double c = to_real(sys.contraction);
  for (const AffineMap& m : sys.maps) {
    by_source[index_of(m.source)].push_back(
        Step{index_of(m.target), c, to_real(m.translate_star)});
  }
  PointCloud cloud;
  cloud.rng_seed = rng_seed;
  cloud.samples = n;
  cloud.burn_in = burn_in;
  if (by_source[0].empty() && by_source[1].empty()) return cloud;

  std::mt19937_64 rng(rng_seed);
  int label = 0;
  double w = 0.0;
  for (std::int64_t step = 0; step < n; ++step) {
    const auto& choices = by_source[label];
    if (choices.empty())
      fail(ErrorCode::Internal, "window has no outgoing map in the chaos game");
    // Plain modulo keeps the stream identical across platforms; the tiny
    // bias is irrelevant for filling the support.
    const Step& pick = choices[rng() % choices.size()];
    w = pick.c * w + pick.ts;
    label = pick.target;
    if (step >= burn_in)
      (label == 0 ? cloud.points_a : cloud.points_b).push_back(w);
  }
  return cloud;
}

std::string cloud_to_csv(const PointCloud& cloud) {
  std::string out = "window,position\n";
  char buf[48];
  for (double p : cloud.points_a) {
    std::snprintf(buf, sizeof(buf), "a,%.17g\n", p);
    out += buf;
  }
  for (double p : cloud.points_b) {
    std::snprintf(buf, sizeof(buf), "b,%.17g\n", p);
    out += buf;
  }
  return out;
}

std::pair<double, double> measure_estimate(const PointCloud& cloud, double h) {
  if (h <= 0) fail(ErrorCode::Internal, "bin width must be positive");
  auto occupied = [&](const std::vector<double>& pts) {
    std::unordered_set<long long> bins;
    bins.reserve(pts.size());
    for (double p : pts)
      bins.insert(static_cast<long long>(std::floor(p / h)));
    return static_cast<double>(bins.size()) * h;
  };
  return {occupied(cloud.points_a), occupied(cloud.points_b)};
}

std::vector<Gap> gap_profile(const PointCloud& cloud, double resolution) {
  std::vector<double> all;
  all.reserve(cloud.points_a.size() + cloud.points_b.size());
  all.insert(all.end(), cloud.points_a.begin(), cloud.points_a.end());
  all.insert(all.end(), cloud.points_b.begin(), cloud.points_b.end());
  std::sort(all.begin(), all.end());
  std::vector<Gap> gaps;
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    if (all[i + 1] - all[i] > resolution)
      gaps.push_back(Gap{all[i], all[i + 1]});
  }
  std::sort(gaps.begin(), gaps.end(),
            [](const Gap& x, const Gap& y) { return x.length() > y.length(); });
  return gaps;
}

}  // namespace cantorval
