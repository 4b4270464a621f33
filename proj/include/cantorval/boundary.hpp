#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantorval/geometry.hpp"
#include "cantorval/quadratic.hpp"
#include "cantorval/window_ifs.hpp"

namespace cantorval {

// The ordered intersection W_alpha /\ (W_beta + x*), a node of the boundary
// GIFS.  x = 0 together with alpha = beta is excluded (that would be the
// whole window).
struct BoundaryNode {
  Letter alpha;
  Letter beta;
  QuadNum x;

  friend bool operator==(const BoundaryNode& m, const BoundaryNode& n) {
    return m.alpha == n.alpha && m.beta == n.beta && m.x == n.x;
  }
};

// Total order used for canonical representatives and deterministic output.
bool node_less(const BoundaryNode& m, const BoundaryNode& n);

// Representative of the symmetry O_{ab}(x) = O_{ba}(-x) + x*: keeps the
// orientation with x* < 0 (for x = 0, the letter pair is sorted).
BoundaryNode canonicalize(const BoundaryNode& node);

std::string node_label(const BoundaryNode& node);

struct BoundaryEdge {
  BoundaryNode from;
  BoundaryNode to;        // canonical when the graph is canonical
  QuadNum translate;      // t* of the generating piece (canonicalised)
  int multiplicity = 1;   // number of (t, s) pairs with this child+translate
};

// Children of a node under one inflation step: for t in T[alpha][j] and
// s in T[beta][k] the child is (j, k, (x + s - t)/lambda) carried by the
// translate t*; children whose hulls cannot intersect are dropped.
std::vector<BoundaryEdge> expand_node(const BoundaryNode& node,
                                      const DisplacementMatrix& T,
                                      const PFData& pf,
                                      const HullBounds& hulls,
                                      bool canonical = true);

// Seed nodes: x = m + n*beta with |m|, |n| <= B whose translated hulls meet.
std::vector<BoundaryNode> candidate_nodes(const HullBounds& hulls,
                                          const PFData& pf,
                                          const QuadNum& beta, int B);

struct BoundaryGraph {
  struct Edge {
    int to;
    QuadNum translate;
    int multiplicity;
  };

  QuadField field;
  std::vector<BoundaryNode> nodes;
  std::vector<std::vector<Edge>> out;
  int bound = 0;       // seeding bound B
  bool canonical = true;

  std::optional<int> find(const BoundaryNode& node) const;
  std::int64_t edge_count() const;
  std::int64_t adjacency(int from, int to) const;
};

// Closure of the candidate set under expansion followed by iterated removal
// of nodes without outgoing edges.
BoundaryGraph build_boundary_graph(const DisplacementMatrix& T,
                                   const PFData& pf, const HullBounds& hulls,
                                   const QuadNum& beta, int B,
                                   bool canonical = true,
                                   int node_cap = 20000);

std::vector<std::vector<int>> strongly_connected_components(
    const BoundaryGraph& g);

struct SpectralRadius {
  double value = 0.0;
  double error = 0.0;
  bool validated = false;  // certified against the exact char. polynomial
};

// Largest eigenvalue modulus of the adjacency matrix with multiplicities,
// computed per strongly connected component (power iteration warm start,
// exact characteristic-polynomial bisection when the component is small).
SpectralRadius spectral_radius(const BoundaryGraph& g);

// Spectral radius of the subgraph reachable from one node.
SpectralRadius reachable_spectral_radius(const BoundaryGraph& g, int node);

// Exact value of a node's set when its reachable subgraph is a chain of
// single edges (the set is then one point).
std::optional<QuadNum> singleton_value(const BoundaryGraph& g, int node);

struct DimensionResult {
  double spectral_radius = 0.0;
  double spectral_radius_error = 0.0;
  double dimension = 0.0;
  double dimension_error = 0.0;
  int node_count = 0;
  std::int64_t edge_count = 0;
  int bound = 0;
};

// dim = log(spectral radius) / log(lambda), clamped to [0, 1].
DimensionResult hausdorff_dimension(const SpectralRadius& rho,
                                    const PFData& pf);

// Nearest pair of chaos-game samples witnessing nonemptiness of each node.
struct NodeWitness {
  BoundaryNode node;
  double distance = 0.0;
  bool found = false;
};

std::vector<NodeWitness> witness_check(const BoundaryGraph& g,
                                       const PointCloud& cloud,
                                       double tolerance);

std::string graph_to_dot(const BoundaryGraph& g);

}  // namespace cantorval
