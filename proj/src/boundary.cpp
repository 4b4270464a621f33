#include "cantorval/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>

namespace cantorval {

bool node_less(const BoundaryNode& m, const BoundaryNode& n) {
  if (m.alpha != n.alpha) return m.alpha < n.alpha;
  if (m.beta != n.beta) return m.beta < n.beta;
  const int c = cmp(m.x, n.x);
  return c < 0;
}

BoundaryNode canonicalize(const BoundaryNode& node) {
  const int s = sign(star(node.x));
  if (s > 0) return BoundaryNode{node.beta, node.alpha, -node.x};
  if (s == 0) {
    // x = 0: sort the letter pair.
    const Letter lo = std::min(node.alpha, node.beta);
    const Letter hi = std::max(node.alpha, node.beta);
    return BoundaryNode{lo, hi, node.x};
  }
  return node;
}

std::string node_label(const BoundaryNode& node) {
  return std::string("O_{") + letter_to_char(node.alpha) +
         letter_to_char(node.beta) + "}(" + to_string(node.x) + ")";
}

namespace {

// Closed-interval overlap of H_alpha and H_beta + xs.
bool hulls_meet(const HullBounds& hulls, Letter alpha, Letter beta,
                const QuadNum& xs) {
  const Interval& ha = hulls.of(alpha);
  const Interval& hb = hulls.of(beta);
  const QuadNum pad = make_rational(hulls.error, xs.field);
  // hb.lo + xs <= ha.hi and ha.lo <= hb.hi + xs, widened by the hull error.
  return sign((hb.lo + xs) - (ha.hi + pad)) <= 0 &&
         sign((ha.lo - pad) - (hb.hi + xs)) <= 0;
}

bool valid_node(const BoundaryNode& n) {
  return !(n.alpha == n.beta && n.x.is_zero());
}

}  // namespace

std::vector<BoundaryEdge> expand_node(const BoundaryNode& node,
                                      const DisplacementMatrix& T,
                                      const PFData& pf,
                                      const HullBounds& hulls,
                                      bool canonical) {
  std::vector<BoundaryEdge> edges;
  const QuadNum lambda = pf.lambda;
  for (Letter j : {Letter::A, Letter::B}) {
    for (const QuadNum& t : T.at(node.alpha, j)) {
      for (Letter k : {Letter::A, Letter::B}) {
        for (const QuadNum& s : T.at(node.beta, k)) {
          const QuadNum shifted = node.x + s - t;
          const QuadNum child_x = shifted / lambda;
          BoundaryNode child{j, k, child_x};
          if (!valid_node(child)) continue;
          if (!hulls_meet(hulls, j, k, star(child_x))) continue;
          QuadNum translate = star(t);
          if (canonical) {
            const BoundaryNode canon = canonicalize(child);
            if (!(canon == child)) {
              // O_{jk}(x') = O_{kj}(-x') + x'*, so the translate picks up
              // (lambda x')* = (x + s - t)*.
              translate = translate + star(shifted);
              child = canon;
            }
          }
          bool merged = false;
          for (BoundaryEdge& e : edges) {
            if (e.to == child && e.translate == translate) {
              e.multiplicity++;
              merged = true;
              break;
            }
          }
          if (!merged)
            edges.push_back(BoundaryEdge{node, child, translate, 1});
        }
      }
    }
  }
  return edges;
}

std::vector<BoundaryNode> candidate_nodes(const HullBounds& hulls,
                                          const PFData& /*pf*/,
                                          const QuadNum& beta, int B) {
  std::vector<BoundaryNode> out;
  auto push_unique = [&](const BoundaryNode& n) {
    for (const BoundaryNode& m : out)
      if (m == n) return;
    out.push_back(n);
  };
  for (Letter alpha : {Letter::A, Letter::B}) {
    for (Letter beta_l : {Letter::A, Letter::B}) {
      for (int m = -B; m <= B; ++m) {
        for (int n = -B; n <= B; ++n) {
          const QuadNum x = beta * Rational(n) + Rational(m);
          BoundaryNode node{alpha, beta_l, x};
          if (!valid_node(node)) continue;
          if (!hulls_meet(hulls, alpha, beta_l, star(x))) continue;
          push_unique(canonicalize(node));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), node_less);
  return out;
}

std::optional<int> BoundaryGraph::find(const BoundaryNode& node) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == node) return static_cast<int>(i);
  return std::nullopt;
}

std::int64_t BoundaryGraph::edge_count() const {
  std::int64_t total = 0;
  for (const auto& row : out)
    for (const Edge& e : row) total += e.multiplicity;
  return total;
}

std::int64_t BoundaryGraph::adjacency(int from, int to) const {
  std::int64_t total = 0;
  for (const Edge& e : out[static_cast<std::size_t>(from)])
    if (e.to == to) total += e.multiplicity;
  return total;
}

namespace {

using NodeKey = std::tuple<int, int, Rational, Rational>;

NodeKey key_of(const BoundaryNode& n) {
  return {index_of(n.alpha), index_of(n.beta), n.x.a, n.x.b};
}

}  // namespace

BoundaryGraph build_boundary_graph(const DisplacementMatrix& T,
                                   const PFData& pf, const HullBounds& hulls,
                                   const QuadNum& beta, int B, bool canonical,
                                   int node_cap) {
  BoundaryGraph g;
  g.field = pf.field;
  g.bound = B;
  g.canonical = canonical;

  std::map<NodeKey, int> index;
  std::deque<int> queue;
  auto intern = [&](const BoundaryNode& n) {
    const NodeKey key = key_of(n);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(g.nodes.size());
    if (id >= node_cap)
      fail(ErrorCode::ClosureExplosion,
           "boundary closure exceeded " + std::to_string(node_cap) + " nodes");
    index.emplace(key, id);
    g.nodes.push_back(n);
    g.out.emplace_back();
    queue.push_back(id);
    return id;
  };

  std::vector<BoundaryNode> seeds = candidate_nodes(hulls, pf, beta, B);
  if (!canonical) {
    // Raw mode keeps both symmetry partners.
    std::vector<BoundaryNode> raw;
    for (const BoundaryNode& n : seeds) {
      raw.push_back(n);
      raw.push_back(BoundaryNode{n.beta, n.alpha, -n.x});
    }
    seeds = std::move(raw);
  }
  for (const BoundaryNode& n : seeds) intern(n);

  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    const BoundaryNode node = g.nodes[static_cast<std::size_t>(id)];
    for (const BoundaryEdge& e : expand_node(node, T, pf, hulls, canonical)) {
      const int child = intern(e.to);
      g.out[static_cast<std::size_t>(id)].push_back(
          BoundaryGraph::Edge{child, e.translate, e.multiplicity});
    }
  }

  // Iterated pruning of nodes without outgoing edges.
  const int n = static_cast<int>(g.nodes.size());
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      bool has_out = false;
      for (const auto& e : g.out[static_cast<std::size_t>(v)]) {
        if (alive[static_cast<std::size_t>(e.to)]) {
          has_out = true;
          break;
        }
      }
      if (!has_out) {
        alive[static_cast<std::size_t>(v)] = false;
        changed = true;
      }
    }
  }

  BoundaryGraph pruned;
  pruned.field = g.field;
  pruned.bound = B;
  pruned.canonical = canonical;
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (!alive[static_cast<std::size_t>(v)]) continue;
    remap[static_cast<std::size_t>(v)] =
        static_cast<int>(pruned.nodes.size());
    pruned.nodes.push_back(g.nodes[static_cast<std::size_t>(v)]);
  }
  pruned.out.resize(pruned.nodes.size());
  for (int v = 0; v < n; ++v) {
    if (!alive[static_cast<std::size_t>(v)]) continue;
    for (const auto& e : g.out[static_cast<std::size_t>(v)]) {
      if (!alive[static_cast<std::size_t>(e.to)]) continue;
      pruned.out[static_cast<std::size_t>(remap[static_cast<std::size_t>(v)])]
          .push_back(BoundaryGraph::Edge{remap[static_cast<std::size_t>(e.to)],
                                         e.translate, e.multiplicity});
    }
  }
  return pruned;
}

std::vector<std::vector<int>> strongly_connected_components(
    const BoundaryGraph& g) {
  // Iterative Tarjan.
  const int n = static_cast<int>(g.nodes.size());
  std::vector<int> indices(static_cast<std::size_t>(n), -1);
  std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (indices[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> frames{Frame{root, 0}};
    indices[static_cast<std::size_t>(root)] = lowlink[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& edges = g.out[static_cast<std::size_t>(f.v)];
      if (f.edge < edges.size()) {
        const int w = edges[f.edge++].to;
        if (indices[static_cast<std::size_t>(w)] == -1) {
          indices[static_cast<std::size_t>(w)] = lowlink[static_cast<std::size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          frames.push_back(Frame{w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          lowlink[static_cast<std::size_t>(f.v)] =
              std::min(lowlink[static_cast<std::size_t>(f.v)],
                       indices[static_cast<std::size_t>(w)]);
        }
      } else {
        if (lowlink[static_cast<std::size_t>(f.v)] ==
            indices[static_cast<std::size_t>(f.v)]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp.push_back(w);
          } while (w != f.v);
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        const int v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          const int parent = frames.back().v;
          lowlink[static_cast<std::size_t>(parent)] =
              std::min(lowlink[static_cast<std::size_t>(parent)],
                       lowlink[static_cast<std::size_t>(v)]);
        }
      }
    }
  }
  return components;
}

namespace {

// Exact characteristic polynomial of an integer matrix (Faddeev-LeVerrier).
// Returns monic coefficients c[0] + c[1] x + ... + c[n] x^n.
std::vector<Rational> characteristic_polynomial(
    const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
  std::vector<std::vector<Rational>> acc(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  std::vector<Rational> coeff(n + 1, 0);
  coeff[n] = 1;
  acc = m;
  for (std::size_t k = 1; k <= n; ++k) {
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += acc[i][i];
    const Rational c = -tr / static_cast<long>(k);
    coeff[n - k] = c;
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) acc[i][i] += c;
    // acc <- m * acc
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (m[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          next[i][j] += m[i][l] * acc[l][j];
      }
    acc = std::move(next);
  }
  return coeff;
}

Rational eval_poly(const std::vector<Rational>& coeff, const Rational& x) {
  Rational value = 0;
  for (std::size_t i = coeff.size(); i-- > 0;) value = value * x + coeff[i];
  return value;
}

// Collatz-Wielandt style power iteration on a nonnegative matrix.
std::pair<double, double> power_iteration(
    const std::vector<std::vector<std::int64_t>>& a, int iterations) {
  const std::size_t n = a.size();
  std::vector<double> x(n, 1.0);
  double lo = 0.0, hi = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        y[i] += static_cast<double>(a[i][j]) * x[j];
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] > 0) {
        lo = std::min(lo, y[i] / x[i]);
        hi = std::max(hi, y[i] / x[i]);
      }
      norm = std::max(norm, y[i]);
    }
    if (norm == 0.0) return {0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    if (hi - lo < 1e-13) break;
  }
  return {(lo + hi) / 2, std::max(hi - lo, 1e-15)};
}

SpectralRadius component_spectral_radius(
    const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  if (n == 1) {
    const double v = static_cast<double>(a[0][0]);
    return SpectralRadius{v, 0.0, true};
  }
  auto [estimate, est_err] = power_iteration(a, 4000);
  SpectralRadius out{estimate, est_err, false};
  if (n > 64) return out;

  // Within one strongly connected component the dominant root is simple, so
  // the characteristic polynomial changes sign across it.
  const std::vector<Rational> poly = characteristic_polynomial(a);
  std::int64_t max_row = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) row += a[i][j];
    max_row = std::max(max_row, row);
  }
  Rational hi(max_row + 1);
  if (sgn(eval_poly(poly, hi)) <= 0)
    return out;  // should not happen; keep the numeric estimate
  Rational lo(-1);
  bool bracketed = false;
  for (double delta : {1e-9, 1e-6, 1e-4, 1e-2, 0.1, 0.5}) {
    Rational candidate(std::max(estimate - delta, 0.0));
    if (sgn(eval_poly(poly, candidate)) <= 0) {
      lo = candidate;
      bracketed = true;
      break;
    }
  }
  if (!bracketed) return out;
  for (int it = 0; it < 120 && hi - lo > Rational(1, 1000) / mpz_class(1e12); ++it) {
    Rational mid = (lo + hi) / 2;
    if (sgn(eval_poly(poly, mid)) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  const Rational mid = (lo + hi) / 2;
  const Rational width = hi - lo;
  return SpectralRadius{mid.get_d(), width.get_d() + 1e-14, true};
}

std::vector<std::vector<std::int64_t>> submatrix(const BoundaryGraph& g,
                                                 const std::vector<int>& comp) {
  std::map<int, std::size_t> pos;
  for (std::size_t i = 0; i < comp.size(); ++i) pos[comp[i]] = i;
  std::vector<std::vector<std::int64_t>> a(
      comp.size(), std::vector<std::int64_t>(comp.size(), 0));
  for (std::size_t i = 0; i < comp.size(); ++i) {
    for (const auto& e : g.out[static_cast<std::size_t>(comp[i])]) {
      auto it = pos.find(e.to);
      if (it != pos.end()) a[i][it->second] += e.multiplicity;
    }
  }
  return a;
}

SpectralRadius graph_spectral_radius(const BoundaryGraph& g,
                                     const std::vector<int>& vertices) {
  if (vertices.empty())
    fail(ErrorCode::EmptyGraph, "spectral radius of an empty graph");
  BoundaryGraph sub;  // view: reuse SCC on induced subgraph via masks
  // Build induced subgraph.
  std::map<int, int> remap;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    remap[vertices[i]] = static_cast<int>(i);
  sub.field = g.field;
  sub.canonical = g.canonical;
  sub.bound = g.bound;
  sub.nodes.reserve(vertices.size());
  sub.out.resize(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    sub.nodes.push_back(g.nodes[static_cast<std::size_t>(vertices[i])]);
    for (const auto& e : g.out[static_cast<std::size_t>(vertices[i])]) {
      auto it = remap.find(e.to);
      if (it != remap.end())
        sub.out[i].push_back(
            BoundaryGraph::Edge{it->second, e.translate, e.multiplicity});
    }
  }
  SpectralRadius best{0.0, 0.0, true};
  for (const auto& comp : strongly_connected_components(sub)) {
    const auto a = submatrix(sub, comp);
    if (comp.size() == 1 && a[0][0] == 0) continue;  // trivial component
    const SpectralRadius sr = component_spectral_radius(a);
    if (sr.value > best.value) best = sr;
  }
  return best;
}

}  // namespace

SpectralRadius spectral_radius(const BoundaryGraph& g) {
  if (g.nodes.empty())
    fail(ErrorCode::EmptyGraph, "spectral radius of an empty graph");
  std::vector<int> all(g.nodes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return graph_spectral_radius(g, all);
}

SpectralRadius reachable_spectral_radius(const BoundaryGraph& g, int node) {
  std::set<int> seen{node};
  std::deque<int> queue{node};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto& e : g.out[static_cast<std::size_t>(v)]) {
      if (seen.insert(e.to).second) queue.push_back(e.to);
    }
  }
  return graph_spectral_radius(g, std::vector<int>(seen.begin(), seen.end()));
}

std::optional<QuadNum> singleton_value(const BoundaryGraph& g, int node) {
  // Follow the unique outgoing edges; a cycle of single edges pins the value.
  std::vector<int> path;
  std::map<int, std::size_t> position;
  int v = node;
  for (;;) {
    const auto& edges = g.out[static_cast<std::size_t>(v)];
    if (edges.size() != 1 || edges[0].multiplicity != 1) return std::nullopt;
    auto it = position.find(v);
    if (it != position.end()) {
      // Cycle from position it->second to the end of path.
      const QuadNum c = star(make_lambda(g.field));
      QuadNum coef = make_rational(1, g.field);
      QuadNum trans = make_rational(0, g.field);
      for (std::size_t i = it->second; i < path.size(); ++i) {
        const auto& e = g.out[static_cast<std::size_t>(path[i])][0];
        trans = trans + coef * e.translate;
        coef = coef * c;
      }
      QuadNum value =
          trans / (make_rational(1, g.field) - coef);
      // Unwind the tail before the cycle.
      for (std::size_t i = it->second; i-- > 0;) {
        const auto& e = g.out[static_cast<std::size_t>(path[i])][0];
        value = c * value + e.translate;
      }
      return value;
    }
    position[v] = path.size();
    path.push_back(v);
    v = edges[0].to;
  }
}

DimensionResult hausdorff_dimension(const SpectralRadius& rho,
                                    const PFData& pf) {
  DimensionResult out;
  out.spectral_radius = rho.value;
  out.spectral_radius_error = rho.error;
  const double lambda = to_real(pf.lambda);
  const double log_lambda = std::log(lambda);
  double dim = rho.value >= 1.0 ? std::log(rho.value) / log_lambda : 0.0;
  double err = rho.value >= 1.0
                   ? rho.error / (std::max(rho.value, 1.0) * log_lambda) + 1e-14
                   : 1e-14;
  out.dimension = std::clamp(dim, 0.0, 1.0);
  out.dimension_error = err;
  return out;
}

std::vector<NodeWitness> witness_check(const BoundaryGraph& g,
                                       const PointCloud& cloud,
                                       double tolerance) {
  std::array<std::vector<double>, 2> sorted{cloud.points_a, cloud.points_b};
  std::sort(sorted[0].begin(), sorted[0].end());
  std::sort(sorted[1].begin(), sorted[1].end());
  std::vector<NodeWitness> out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const BoundaryNode& node = g.nodes[i];
    NodeWitness w{node, std::numeric_limits<double>::infinity(), false};
    const auto& ca = sorted[static_cast<std::size_t>(index_of(node.alpha))];
    const auto& cb = sorted[static_cast<std::size_t>(index_of(node.beta))];
    if (!ca.empty() && !cb.empty()) {
      const double xs = to_real(star(node.x));
      for (double p : ca) {
        // Nearest sample of W_beta + xs to p.
        const double target = p - xs;
        auto it = std::lower_bound(cb.begin(), cb.end(), target);
        if (it != cb.end())
          w.distance = std::min(w.distance, std::abs(*it - target));
        if (it != cb.begin())
          w.distance = std::min(w.distance, std::abs(*(it - 1) - target));
      }
      w.found = w.distance <= tolerance;
    }
    out.push_back(w);
  }
  return out;
}

std::string graph_to_dot(const BoundaryGraph& g) {
  std::string out = "digraph boundary {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + node_label(g.nodes[i]) +
           "\"];\n";
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (const auto& e : g.out[i]) {
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(e.to) +
             " [label=\"" + to_string(e.translate);
      if (e.multiplicity > 1) out += " x" + std::to_string(e.multiplicity);
      out += "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace cantorval
