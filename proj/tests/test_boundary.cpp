#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "cantorval/boundary.hpp"

using namespace cantorval;

namespace {

struct Setup {
  Substitution s;
  PFData pf;
  TileLengths lengths;
  DisplacementMatrix T;
  WindowSystem sys;
  HullBounds hulls;
  QuadNum beta;
};

Setup make_setup(const char* text) {
  Setup st{parse_substitution(text), {}, {}, {}, {}, {}, {}};
  st.pf = pf_data(substitution_matrix(st.s));
  st.lengths = TileLengths{st.pf.left[0], st.pf.left[1]};
  st.T = displacement_matrix(st.s, st.lengths);
  st.sys = build_window_system(st.T, st.pf);
  st.hulls = exact_hull(st.sys);
  st.beta = st.lengths.beta();
  return st;
}

// tau expressed in the lambda = tau^2 field of the scrambled rule.
QuadNum sc_tau(const QuadField& f) { return make_lambda(f) - Rational(1); }

Interval node_box(const HullBounds& hulls, const BoundaryNode& n) {
  const QuadNum xs = star(n.x);
  const Interval& ha = hulls.of(n.alpha);
  const Interval& hb = hulls.of(n.beta);
  return Interval{max(ha.lo, hb.lo + xs), min(ha.hi, hb.hi + xs)};
}

}  // namespace

TEST_CASE("canonicalisation") {
  const Setup st = make_setup("(aab,ba)");
  const QuadField f = st.pf.field;
  const QuadNum tau = sc_tau(f);

  // O_{ba}(1 - tau) has star image tau > 0, so it flips to O_{ab}(tau - 1).
  const BoundaryNode n{Letter::B, Letter::A, make_rational(1, f) - tau};
  const BoundaryNode c = canonicalize(n);
  CHECK(c.alpha == Letter::A);
  CHECK(c.beta == Letter::B);
  CHECK(c.x == tau - Rational(1));

  // x = 0 sorts the letter pair.
  const BoundaryNode z{Letter::B, Letter::A, make_rational(0, f)};
  const BoundaryNode cz = canonicalize(z);
  CHECK(cz.alpha == Letter::A);
  CHECK(cz.beta == Letter::B);

  // Idempotence on random module elements.
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int rep = 0; rep < 200; ++rep) {
    const QuadNum x = st.beta * Rational(coef(rng)) + Rational(coef(rng));
    const BoundaryNode r{rep % 2 ? Letter::A : Letter::B,
                         rep % 3 ? Letter::A : Letter::B, x};
    if (r.alpha == r.beta && x.is_zero()) continue;
    CHECK(canonicalize(canonicalize(r)) == canonicalize(r));
  }
}

TEST_CASE("candidate nodes of the scrambled rule contain the reduced system") {
  const Setup st = make_setup("(aab,ba)");
  const QuadField f = st.pf.field;
  const QuadNum tau = sc_tau(f);
  const auto nodes = candidate_nodes(st.hulls, st.pf, st.beta, 2);
  auto contains = [&](Letter a, Letter b, const QuadNum& x) {
    const BoundaryNode n = canonicalize(BoundaryNode{a, b, x});
    for (const BoundaryNode& m : nodes)
      if (m == n) return true;
    return false;
  };
  const QuadNum one = make_rational(1, f);
  CHECK(contains(Letter::B, Letter::A, tau - one));   // O_{ba}(tau-1)
  CHECK(contains(Letter::A, Letter::A, -one));        // O_{aa}(-1)
  CHECK(contains(Letter::A, Letter::B, one * 0));     // O_{ab}(0)
  CHECK(contains(Letter::A, Letter::A, tau - one));   // O_{aa}(tau-1)
  CHECK(contains(Letter::A, Letter::B, -one));        // O_{ab}(-1)
  CHECK(contains(Letter::B, Letter::B, tau - one));   // O_{bb}(tau-1)
}

TEST_CASE("B = 0 excludes the diagonal") {
  const Setup st = make_setup("(aab,ba)");
  const auto nodes = candidate_nodes(st.hulls, st.pf, st.beta, 0);
  for (const BoundaryNode& n : nodes) {
    CHECK(n.x.is_zero());
    CHECK(n.alpha != n.beta);
  }
}

TEST_CASE("expansion of O_{aa}(-1) reproduces the three-term equation") {
  const Setup st = make_setup("(aab,ba)");
  const QuadField f = st.pf.field;
  const QuadNum tau = sc_tau(f);
  const QuadNum minus_inv_tau = make_rational(2, f) - make_lambda(f);  // 1-tau

  const BoundaryNode node{Letter::A, Letter::A, make_rational(-1, f)};
  const auto edges = expand_node(node, st.T, st.pf, st.hulls);
  REQUIRE(edges.size() == 3);
  int found = 0;
  for (const BoundaryEdge& e : edges) {
    CHECK(e.multiplicity == 1);
    if (e.to == node) {
      CHECK(e.translate == minus_inv_tau);  // -1/tau
      ++found;
    } else if (e.to == BoundaryNode{Letter::A, Letter::B, make_rational(0, f)}) {
      CHECK(e.translate.is_zero());
      ++found;
    } else if (e.to ==
               BoundaryNode{Letter::B, Letter::A, tau - Rational(1)}) {
      CHECK(e.translate.is_zero());
      ++found;
    }
  }
  CHECK(found == 3);
}

TEST_CASE("expansion of the singleton node is a single self-loop") {
  const Setup st = make_setup("(aab,ba)");
  const QuadField f = st.pf.field;
  const BoundaryNode node{Letter::A, Letter::B, make_rational(-1, f)};
  const auto edges = expand_node(node, st.T, st.pf, st.hulls);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].to == node);
  CHECK(edges[0].multiplicity == 1);
  CHECK(edges[0].translate == make_rational(2, f) - make_lambda(f));  // -1/tau
}

TEST_CASE("children that cannot meet are dropped") {
  const Setup st = make_setup("(aab,ba)");
  // A node far outside the hull ranges has no surviving children at all.
  const QuadNum far = st.beta * Rational(40);
  const BoundaryNode node{Letter::A, Letter::A, far};
  CHECK(expand_node(node, st.T, st.pf, st.hulls).empty());
}

TEST_CASE("boundary graph of the scrambled rule") {
  const Setup st = make_setup("(aab,ba)");
  const QuadField f = st.pf.field;
  const QuadNum tau = sc_tau(f);
  const BoundaryGraph g =
      build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 2);

  SUBCASE("pruning is a fixpoint: every node keeps an outgoing edge") {
    for (const auto& row : g.out) CHECK(!row.empty());
  }

  SUBCASE("closure respects the translate bounds") {
    // |x| <= max(seed bound, C/(lambda-1)) with C = max |s - t|.
    QuadNum c_max = make_rational(0, f);
    for (Letter i : {Letter::A, Letter::B})
      for (Letter j : {Letter::A, Letter::B})
        for (const QuadNum& t : st.T.at(i, j)) c_max = max(c_max, abs(t));
    c_max = c_max * Rational(2);
    const QuadNum seed_bound =
        abs(st.beta) * Rational(2) + Rational(2);  // |m|,|n| <= B = 2
    const QuadNum contraction_bound =
        c_max / (make_lambda(f) - Rational(1));
    const QuadNum bound =
        max(seed_bound, contraction_bound) + Rational(1, 1000);
    for (const BoundaryNode& n : g.nodes) CHECK(sign(abs(n.x) - bound) <= 0);
  }

  SUBCASE("edge rule maps child boxes into the parent box") {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const Interval parent = node_box(st.hulls, g.nodes[i]);
      for (const auto& e : g.out[i]) {
        const Interval child = node_box(st.hulls, g.nodes[static_cast<std::size_t>(e.to)]);
        const QuadNum c = st.pf.lambda_star;
        // c > 0 for this rule
        const Interval image{c * child.lo + e.translate,
                             c * child.hi + e.translate};
        CHECK(sign(parent.lo - image.lo) <= 0);
        CHECK(sign(image.hi - parent.hi) <= 0);
      }
    }
  }

  SUBCASE("the four reduced equations appear with exact translates") {
    const QuadNum zero = make_rational(0, f);
    const QuadNum mt1 = make_rational(2, f) - make_lambda(f);   // -tau^-1
    const QuadNum mt2 = make_rational(4, f) - make_lambda(f) * Rational(2);
    const BoundaryNode n_ba{Letter::B, Letter::A, tau - Rational(1)};
    const BoundaryNode n_aa_m1{Letter::A, Letter::A, -make_rational(1, f)};
    const BoundaryNode n_ab_0{Letter::A, Letter::B, zero};
    const BoundaryNode n_aa_t1{Letter::A, Letter::A, tau - Rational(1)};
    const BoundaryNode n_bb{Letter::B, Letter::B, tau - Rational(1)};

    auto edges_of = [&](const BoundaryNode& n) {
      const auto id = g.find(n);
      REQUIRE(id.has_value());
      std::set<std::pair<int, std::string>> out;
      for (const auto& e : g.out[static_cast<std::size_t>(*id)])
        out.insert({e.to, to_string(e.translate)});
      return out;
    };
    auto id_of = [&](const BoundaryNode& n) {
      const auto id = g.find(n);
      REQUIRE(id.has_value());
      return *id;
    };

    CHECK(edges_of(n_ba) ==
          std::set<std::pair<int, std::string>>{
              {id_of(n_bb), to_string(zero)},
              {id_of(n_aa_m1), to_string(mt2)},
              {id_of(n_ba), to_string(mt1)}});
    CHECK(edges_of(n_aa_m1) ==
          std::set<std::pair<int, std::string>>{
              {id_of(n_aa_m1), to_string(mt1)},
              {id_of(n_ab_0), to_string(zero)},
              {id_of(n_ba), to_string(zero)}});
    CHECK(edges_of(n_ab_0) ==
          std::set<std::pair<int, std::string>>{
              {id_of(n_ab_0), to_string(zero)},
              {id_of(n_aa_t1), to_string(mt1)},
              {id_of(n_ba), to_string(zero)}});
    CHECK(edges_of(n_aa_t1) ==
          std::set<std::pair<int, std::string>>{
              {id_of(n_ab_0), to_string(mt1)}});
  }

  SUBCASE("spectral radius is 1 + sqrt(2)") {
    const SpectralRadius sr = spectral_radius(g);
    CHECK(sr.validated);
    CHECK(std::abs(sr.value - (1.0 + std::sqrt(2.0))) < 1e-9);
  }

  SUBCASE("singleton nodes carry their exact points") {
    const BoundaryNode s1{Letter::A, Letter::B, make_rational(-1, f)};
    const BoundaryNode s2{Letter::B, Letter::B, tau - Rational(1)};
    const auto id1 = g.find(s1);
    const auto id2 = g.find(s2);
    REQUIRE(id1.has_value());
    REQUIRE(id2.has_value());
    const auto v1 = singleton_value(g, *id1);
    const auto v2 = singleton_value(g, *id2);
    REQUIRE(v1.has_value());
    REQUIRE(v2.has_value());
    CHECK(*v1 == make_rational(-1, f));
    CHECK(*v2 == -tau);
    CHECK(reachable_spectral_radius(g, *id1).value == doctest::Approx(1.0));
    CHECK(reachable_spectral_radius(g, *id2).value == doctest::Approx(1.0));
    // The fractal core is not a chain of singletons.
    const auto core = g.find(BoundaryNode{Letter::A, Letter::A, -make_rational(1, f)});
    REQUIRE(core.has_value());
    CHECK_FALSE(singleton_value(g, *core).has_value());
  }
}

TEST_CASE("bound stability and symmetry invariance for the scrambled rule") {
  const Setup st = make_setup("(aab,ba)");
  const BoundaryGraph g2 =
      build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 2);
  const BoundaryGraph g3 =
      build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 3);
  const double sr2 = spectral_radius(g2).value;
  const double sr3 = spectral_radius(g3).value;
  CHECK(std::abs(sr2 - sr3) < 1e-9);

  const BoundaryGraph raw =
      build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 2, false);
  CHECK(std::abs(spectral_radius(raw).value - sr2) < 1e-9);
  CHECK(raw.nodes.size() >= g2.nodes.size());
}

TEST_CASE("raw graph keeps both partners of all twelve figure nodes") {
  const Setup st = make_setup("(aab,ba)");
  const BoundaryGraph raw =
      build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 2, false);
  const QuadField f = st.pf.field;
  const QuadNum one = make_rational(1, f);
  const QuadNum tau = sc_tau(f);
  const std::vector<BoundaryNode> figure{
      {Letter::A, Letter::B, -one},          // O_{ab}(-1)
      {Letter::B, Letter::B, tau - one},     // O_{bb}(tau-1)
      {Letter::B, Letter::A, tau - one},     // O_{ba}(tau-1)
      {Letter::B, Letter::A, one},           // O_{ba}(1)
      {Letter::B, Letter::B, one - tau},     // O_{bb}(1-tau)
      {Letter::A, Letter::B, one - tau},     // O_{ab}(1-tau)
      {Letter::A, Letter::A, one},           // O_{aa}(1)
      {Letter::A, Letter::A, -one},          // O_{aa}(-1)
      {Letter::B, Letter::A, one * 0},       // O_{ba}(0)
      {Letter::A, Letter::B, one * 0},       // O_{ab}(0)
      {Letter::A, Letter::A, one - tau},     // O_{aa}(1-tau)
      {Letter::A, Letter::A, tau - one},     // O_{aa}(tau-1)
  };
  for (const BoundaryNode& n : figure) {
    INFO(node_label(n));
    CHECK(raw.find(n).has_value());
  }
}

TEST_CASE("interval rule: every cycle is trivial") {
  const Setup st = make_setup("(ab,a)");
  const BoundaryGraph g =
      build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 2);
  CHECK(!g.nodes.empty());
  const SpectralRadius sr = spectral_radius(g);
  CHECK(sr.value == doctest::Approx(1.0).epsilon(1e-12));
  // Every node individually generates a spectral-radius-1 subgraph.
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    CHECK(reachable_spectral_radius(g, static_cast<int>(i)).value ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  const DimensionResult dim = hausdorff_dimension(sr, st.pf);
  CHECK(dim.dimension == 0.0);
}

TEST_CASE("synthetic spectral radii") {
  const QuadField f = make_field(IntMatrix2{1, 1, 1, 0});
  auto make_node = [&](int i) {
    return BoundaryNode{Letter::A, Letter::B, make_rational(i + 1, f)};
  };
  SUBCASE("single self-loop has radius 1") {
    BoundaryGraph g;
    g.field = f;
    g.nodes = {make_node(0)};
    g.out = {{BoundaryGraph::Edge{0, make_rational(0, f), 1}}};
    CHECK(spectral_radius(g).value == doctest::Approx(1.0));
  }
  SUBCASE("a 2-cycle of single edges has radius 1") {
    BoundaryGraph g;
    g.field = f;
    g.nodes = {make_node(0), make_node(1)};
    g.out = {{BoundaryGraph::Edge{1, make_rational(0, f), 1}},
             {BoundaryGraph::Edge{0, make_rational(0, f), 1}}};
    CHECK(spectral_radius(g).value == doctest::Approx(1.0));
  }
  SUBCASE("a double self-loop has radius 2") {
    BoundaryGraph g;
    g.field = f;
    g.nodes = {make_node(0)};
    g.out = {{BoundaryGraph::Edge{0, make_rational(0, f), 2}}};
    CHECK(spectral_radius(g).value == doctest::Approx(2.0));
  }
  SUBCASE("empty graph is rejected") {
    BoundaryGraph g;
    g.field = f;
    CHECK_THROWS_AS(spectral_radius(g), Error);
  }
}

TEST_CASE("dimension formula") {
  const Setup st = make_setup("(aab,ba)");
  SUBCASE("the scrambled rule hits the published constant") {
    const DimensionResult dim =
        hausdorff_dimension(SpectralRadius{1.0 + std::sqrt(2.0), 1e-12, true},
                            st.pf);
    CHECK(std::abs(dim.dimension - 0.91578546) < 1e-6);
  }
  SUBCASE("radius 1 gives dimension 0") {
    const DimensionResult dim =
        hausdorff_dimension(SpectralRadius{1.0, 0.0, true}, st.pf);
    CHECK(dim.dimension == 0.0);
  }
  SUBCASE("radius lambda clamps to dimension 1") {
    const DimensionResult dim = hausdorff_dimension(
        SpectralRadius{to_real(st.pf.lambda), 1e-12, true}, st.pf);
    CHECK(dim.dimension == doctest::Approx(1.0));
  }
}

TEST_CASE("witnesses exist for every retained node of the scrambled rule") {
  const Setup st = make_setup("(aab,ba)");
  const BoundaryGraph g =
      build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 2);
  const PointCloud cloud = chaos_game(st.sys, 300000, 99, 100);
  const auto witnesses = witness_check(g, cloud, 1e-3);
  CHECK(witnesses.size() == g.nodes.size());
  for (const NodeWitness& w : witnesses) {
    INFO(node_label(w.node));
    CHECK(w.found);
  }
}

TEST_CASE("closure explosion is reported") {
  const Setup st = make_setup("(aab,ba)");
  CHECK_THROWS_AS(
      build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 3, true, 4), Error);
  try {
    build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 3, true, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ClosureExplosion);
  }
}

TEST_CASE("graph export formats") {
  const Setup st = make_setup("(aab,ba)");
  const BoundaryGraph g =
      build_boundary_graph(st.T, st.pf, st.hulls, st.beta, 2);
  const std::string dot = graph_to_dot(g);
  CHECK(dot.find("digraph boundary") != std::string::npos);
  CHECK(dot.find("O_{ab}") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}
