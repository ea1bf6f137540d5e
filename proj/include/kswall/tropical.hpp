#pragma once

// Tropical discs with a stop, their multiplicities and weights, the
// brute-force count of rational tropical curves with fixed incoming lines,
// and the wall-crossing sum built from those counts.

#include "kswall/engine.hpp"
#include "kswall/lattice.hpp"
#include "kswall/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kswall {

struct TropicalError : Error {
  using Error::Error;
};

struct DegeneratePositions : TropicalError {
  using TropicalError::TropicalError;
};

struct DiscVertex {
  int id{0};
  std::optional<Point> pos;                 // nonsingular image
  std::optional<std::size_t> singularity;  // or a singularity of the scene

  friend bool operator==(const DiscVertex&, const DiscVertex&) = default;
};

/// `direction` is primitive and points from `from` to `to`; a contracted
/// edge keeps its direction.
struct DiscEdge {
  int from{0};
  int to{0};
  std::int64_t weight{1};
  BoundaryVector direction;

  friend bool operator==(const DiscEdge&, const DiscEdge&) = default;
};

struct TropicalDisc {
  std::vector<DiscVertex> vertices;
  std::vector<DiscEdge> edges;
  int root{0};

  friend bool operator==(const TropicalDisc&, const TropicalDisc&) = default;
};

namespace detail {

struct DiscIndex {
  std::map<int, std::size_t> vertex;
  std::map<int, std::vector<std::size_t>> incident;
};

inline DiscIndex index_disc(const TropicalDisc& disc) {
  DiscIndex ix;
  for (std::size_t i = 0; i < disc.vertices.size(); ++i) ix.vertex.emplace(disc.vertices[i].id, i);
  for (std::size_t e = 0; e < disc.edges.size(); ++e) {
    ix.incident[disc.edges[e].from].push_back(e);
    ix.incident[disc.edges[e].to].push_back(e);
  }
  return ix;
}

inline std::optional<Point> image(const DiscVertex& v, const Scene& scene) {
  if (v.singularity) {
    if (*v.singularity >= scene.singularities.size()) return std::nullopt;
    return scene.singularities[*v.singularity].pos;
  }
  return v.pos;
}

// Weighted direction of edge e pointing away from vertex id.
inline BoundaryVector outward(const DiscEdge& e, int id) {
  return e.from == id ? e.weight * e.direction : -(e.weight * e.direction);
}

// pos(to) - pos(from) = lambda * direction with lambda >= 0.
inline std::optional<Rational> edge_length(const Point& from, const Point& to, const BoundaryVector& dir) {
  const Rational dx = to.x - from.x;
  const Rational dy = to.y - from.y;
  const Rational da(static_cast<long>(dir.a));
  const Rational db(static_cast<long>(dir.b));
  if (dx * db != dy * da) return std::nullopt;
  Rational lambda = dir.a != 0 ? Rational(dx / da) : Rational(dy / db);
  if (lambda < 0) return std::nullopt;
  return lambda;
}

}  // namespace detail

/// Every rule a disc breaks; empty means valid.
inline std::vector<std::string> validate(const TropicalDisc& disc, const Scene& scene) {
  std::vector<std::string> out;
  const auto ix = detail::index_disc(disc);
  if (ix.vertex.size() != disc.vertices.size()) out.push_back("duplicate vertex id");
  if (ix.vertex.count(disc.root) == 0) {
    out.push_back("root " + std::to_string(disc.root) + " is not a vertex");
    return out;
  }
  for (const auto& e : disc.edges) {
    if (ix.vertex.count(e.from) == 0 || ix.vertex.count(e.to) == 0) {
      out.push_back("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " references a missing vertex");
      return out;
    }
  }

  // tree: |E| = |V| - 1 and connected
  if (disc.edges.size() + 1 != disc.vertices.size()) out.push_back("graph is not a tree (edge count)");
  {
    std::set<int> seen{disc.root};
    std::vector<int> stack{disc.root};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (ix.incident.count(v) == 0) continue;
      for (const auto e : ix.incident.at(v)) {
        const int w = disc.edges[e].from == v ? disc.edges[e].to : disc.edges[e].from;
        if (seen.insert(w).second) stack.push_back(w);
      }
    }
    if (seen.size() != disc.vertices.size()) out.push_back("graph is not connected");
  }

  for (const auto& e : disc.edges) {
    const std::string name = "edge " + std::to_string(e.from) + "->" + std::to_string(e.to);
    if (e.weight < 1) out.push_back(name + " has nonpositive weight");
    if (!is_primitive(e.direction)) out.push_back(name + " direction " + to_string(e.direction) + " is not primitive");
    const auto p = detail::image(disc.vertices[ix.vertex.at(e.from)], scene);
    const auto q = detail::image(disc.vertices[ix.vertex.at(e.to)], scene);
    if (!p || !q) {
      out.push_back(name + " has an endpoint without image");
      continue;
    }
    if (is_primitive(e.direction) && !detail::edge_length(*p, *q, e.direction))
      out.push_back(name + " is not a segment along " + to_string(e.direction));
  }

  for (const auto& v : disc.vertices) {
    const auto& inc = ix.incident.count(v.id) != 0 ? ix.incident.at(v.id) : std::vector<std::size_t>{};
    const std::string name = "vertex " + std::to_string(v.id);
    const auto img = detail::image(v, scene);
    if (!img) {
      out.push_back(name + " has no image");
      continue;
    }
    bool at_singularity = v.singularity.has_value();
    for (const auto& s : scene.singularities)
      if (s.pos == *img) at_singularity = true;
    if (v.id == disc.root) {
      if (at_singularity) out.push_back("stop maps to a singularity");
      if (inc.size() != 1) out.push_back("stop must be univalent");
      continue;
    }
    if (inc.size() == 1) {
      if (!v.singularity) {
        out.push_back(name + " is a leaf at a nonsingular point");
        continue;
      }
      const auto& e = disc.edges[inc.front()];
      const auto& m = scene.singularities[*v.singularity].direction;
      if (sympl_pairing(e.direction, m) != 0)
        out.push_back(name + " leaves its singularity off the invariant direction");
      continue;
    }
    if (at_singularity) out.push_back(name + " is an interior vertex at a singularity");
    BoundaryVector sum{0, 0};
    for (const auto e : inc) sum += detail::outward(disc.edges[e], v.id);
    if (!sum.is_zero()) out.push_back(name + " is not balanced");
  }
  return out;
}

/// w1 w2 |m1 ^ m2|
inline std::int64_t vertex_multiplicity(std::int64_t w1, const BoundaryVector& m1, std::int64_t w2,
                                        const BoundaryVector& m2) {
  const std::int64_t det = sympl_pairing(m1, m2);
  return w1 * w2 * (det < 0 ? -det : det);
}

/// Product of the vertex multiplicities over the interior vertices.
inline std::int64_t disc_multiplicity(const TropicalDisc& disc) {
  const auto ix = detail::index_disc(disc);
  std::int64_t mult = 1;
  for (const auto& v : disc.vertices) {
    if (v.id == disc.root || ix.incident.count(v.id) == 0) continue;
    const auto& inc = ix.incident.at(v.id);
    if (inc.size() == 1) continue;
    if (inc.size() != 3)
      throw TropicalError("vertex " + std::to_string(v.id) + " has valency " + std::to_string(inc.size()) +
                          "; multiplicity needs trivalent vertices");
    const auto& e1 = disc.edges[inc[0]];
    const auto& e2 = disc.edges[inc[1]];
    mult *= vertex_multiplicity(e1.weight, e1.direction, e2.weight, e2.direction);
  }
  return mult;
}

/// (-1)^{d-1} / d^2, the multiple-cover factor of a weight d edge at an I_1 singularity.
inline Rational multiple_cover(std::int64_t d) {
  return Rational(d % 2 == 1 ? 1 : -1) / Rational(static_cast<long>(d * d));
}

/// Multiplicity times the multiple-cover factor of every edge at a singularity.
inline Rational disc_weight(const TropicalDisc& disc) {
  Rational w(disc_multiplicity(disc));
  const auto ix = detail::index_disc(disc);
  for (const auto& e : disc.edges)
    for (const int id : {e.from, e.to})
      if (disc.vertices[ix.vertex.at(id)].singularity) w *= multiple_cover(e.weight);
  return w;
}

/// Sum of weight times lattice length over the edges.
inline Rational disc_energy(const TropicalDisc& disc, const Scene& scene) {
  const auto ix = detail::index_disc(disc);
  Rational total(0);
  for (const auto& e : disc.edges) {
    const auto p = detail::image(disc.vertices[ix.vertex.at(e.from)], scene);
    const auto q = detail::image(disc.vertices[ix.vertex.at(e.to)], scene);
    if (!p || !q) throw TropicalError("edge endpoint without image");
    const auto len = detail::edge_length(*p, *q, e.direction);
    if (!len) throw TropicalError("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " is not a segment");
    total += Rational(static_cast<long>(e.weight)) * *len;
  }
  return total;
}

/// Boundary class delivered at the stop.
inline BoundaryVector disc_class(const TropicalDisc& disc) {
  for (const auto& e : disc.edges)
    if (e.from == disc.root || e.to == disc.root) return -detail::outward(e, disc.root);
  return {0, 0};
}

// ---------------------------------------------------------------------------
// Curves with fixed incoming lines.

/// Unbounded incoming edge of weight `weight` on the line anchor + R direction,
/// travelling in `direction`.
struct IncomingLine {
  Point anchor;
  BoundaryVector direction;
  std::int64_t weight{1};
};

namespace detail {

struct PartialCurve {
  Point anchor;                  // a point of the outgoing line
  std::optional<Point> start;    // vertex the outgoing edge leaves from, if bounded below
  BoundaryVector flow;           // weighted direction of the outgoing edge
  std::int64_t mult{1};
};

// Intersection parameters: a.anchor + s a.flow = b.anchor + u b.flow.
inline std::optional<std::pair<Rational, Rational>> line_meet(const Point& pa, const BoundaryVector& va,
                                                              const Point& pb, const BoundaryVector& vb) {
  const std::int64_t det = sympl_pairing(va, vb);
  if (det == 0) return std::nullopt;
  const Rational ex = pb.x - pa.x;
  const Rational ey = pb.y - pa.y;
  const Rational dt(static_cast<long>(det));
  Rational s = (ex * Rational(static_cast<long>(vb.b)) - ey * Rational(static_cast<long>(vb.a))) / dt;
  Rational u = (ex * Rational(static_cast<long>(va.b)) - ey * Rational(static_cast<long>(va.a))) / dt;
  return std::make_pair(std::move(s), std::move(u));
}

class CurveCounter {
 public:
  explicit CurveCounter(const std::vector<IncomingLine>& lines) : lines_(lines) {}

  std::int64_t count() {
    if (lines_.size() < 2) return 0;
    std::int64_t total = 0;
    for (const auto& c : curves((1U << lines_.size()) - 1U)) total += c.mult;
    return total;
  }

 private:
  const std::vector<PartialCurve>& curves(unsigned mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    std::vector<PartialCurve> out;
    if ((mask & (mask - 1U)) == 0) {
      unsigned i = 0;
      while (((mask >> i) & 1U) == 0) ++i;
      out.push_back({lines_[i].anchor, std::nullopt, lines_[i].weight * lines_[i].direction, 1});
    } else {
      const unsigned low = mask & (~mask + 1U);
      // subsets A containing the lowest element, B the complement
      for (unsigned a = (mask - 1U) & mask; a != 0; a = (a - 1U) & mask) {
        if ((a & low) == 0) continue;
        const unsigned b = mask & ~a;
        if (b == 0) continue;
        for (const auto& ca : curves(a))
          for (const auto& cb : curves(b)) merge(ca, cb, out);
      }
    }
    return memo_.emplace(mask, std::move(out)).first->second;
  }

  static bool forward(const PartialCurve& c, const Rational& param) {
    if (!c.start) return true;
    if (sgn(param) == 0) throw DegeneratePositions("degenerate position data: a bounded edge has zero length");
    return sgn(param) > 0;
  }

  static void merge(const PartialCurve& a, const PartialCurve& b, std::vector<PartialCurve>& out) {
    const auto meet = line_meet(a.anchor, a.flow, b.anchor, b.flow);
    if (!meet) return;  // parallel: multiplicity zero
    if (!forward(a, meet->first) || !forward(b, meet->second)) return;
    const Point x = advance(a.anchor, meet->first, a.flow);
    const std::int64_t det = sympl_pairing(a.flow, b.flow);
    out.push_back({x, x, a.flow + b.flow, a.mult * b.mult * (det < 0 ? -det : det)});
  }

  const std::vector<IncomingLine>& lines_;
  std::map<unsigned, std::vector<PartialCurve>> memo_;
};

}  // namespace detail

/// Multiplicity-weighted number of trivalent rational tropical curves whose
/// unbounded incoming edges are the given lines. Throws DegeneratePositions
/// when a candidate curve has a bounded edge of length zero.
inline std::int64_t count_tropical_curves(const std::vector<IncomingLine>& lines) {
  if (lines.size() > 12) throw TropicalError("too many incoming edges for exhaustive enumeration");
  for (const auto& l : lines) {
    if (!is_primitive(l.direction)) throw TropicalError("incoming direction " + to_string(l.direction) + " is not primitive");
    if (l.weight < 1) throw TropicalError("incoming weight must be positive");
  }
  return detail::CurveCounter(lines).count();
}

/// Weights w_i1, ..., w_il of the edges coming in along direction m_i.
struct IncomingWeights {
  BoundaryVector direction;
  std::vector<std::int64_t> weights;
};

struct NtropOptions {
  std::uint64_t seed{1};
  int max_total_weight{8};
  int attempts{16};
};

/// Generic anchors for the incoming lines, one per weight.
inline std::vector<IncomingLine> generic_lines(const std::vector<IncomingWeights>& w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-100000, 100000);
  std::uniform_int_distribution<long> den(1, 997);
  std::vector<IncomingLine> lines;
  for (const auto& in : w)
    for (const auto wt : in.weights) {
      Point p{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
      p.x.canonicalize();
      p.y.canonicalize();
      lines.push_back({p, in.direction, wt});
    }
  return lines;
}

/// N^trop of a weight vector: the curve count for generic incoming lines,
/// retried with fresh positions when a draw is degenerate.
inline std::int64_t enumerate_Ntrop(const std::vector<IncomingWeights>& w, const NtropOptions& opts = {}) {
  std::int64_t total = 0;
  for (const auto& in : w) {
    if (!is_primitive(in.direction)) throw TropicalError("incoming direction " + to_string(in.direction) + " is not primitive");
    for (const auto x : in.weights) total += x;
  }
  if (total > opts.max_total_weight)
    throw TropicalError("total weight " + std::to_string(total) + " exceeds the enumeration bound " +
                        std::to_string(opts.max_total_weight));
  for (int attempt = 0; attempt < opts.attempts; ++attempt) {
    try {
      return count_tropical_curves(generic_lines(w, opts.seed + static_cast<std::uint64_t>(attempt) * 7919U));
    } catch (const DegeneratePositions&) {
    }
  }
  throw DegeneratePositions("degenerate position data in every attempt");
}

/// Order of the stabilizer of a multiset of weights.
inline std::int64_t multiset_aut(const std::vector<std::int64_t>& weights) {
  std::map<std::int64_t, std::int64_t> counts;
  for (const auto w : weights) ++counts[w];
  std::int64_t aut = 1;
  for (const auto& [w, c] : counts)
    for (std::int64_t k = 2; k <= c; ++k) aut *= k;
  return aut;
}

/// Omega~ of the class w * gamma_i for the i-th incoming direction.
using OmegaTildeTable = std::function<Rational(std::size_t i, std::int64_t w)>;

/// n (-1)^{d-1} / d^2 for every incoming direction.
inline OmegaTildeTable multiple_cover_table(int n = 1) {
  return [n](std::size_t, std::int64_t d) -> Rational { return Rational(n) * multiple_cover(d); };
}

struct WallCrossingTerm {
  std::vector<std::vector<std::int64_t>> weights;  // one multiset per incoming direction
  std::int64_t ntrop{0};
  std::int64_t aut{1};
  Rational product{1};
  Rational value{0};
};

struct WallCrossingSum {
  BoundaryVector target;
  Rational total{0};
  std::vector<WallCrossingTerm> components;
};

namespace detail {

// Partitions of n, largest part first, in decreasing lexicographic order.
inline void partitions(std::int64_t n, std::int64_t max_part, std::vector<std::int64_t>& cur,
                       std::vector<std::vector<std::int64_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::int64_t>> partitions(std::int64_t n) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  partitions(n, n, cur, out);
  return out;
}

inline void splittings(const std::vector<BoundaryVector>& gammas, std::size_t i, BoundaryVector rest, int budget,
                       std::vector<std::int64_t>& cur, std::vector<std::vector<std::int64_t>>& out) {
  if (i == gammas.size()) {
    if (rest.is_zero()) out.push_back(cur);
    return;
  }
  for (int a = 0; a <= budget; ++a) {
    cur.push_back(a);
    splittings(gammas, i + 1, rest - static_cast<std::int64_t>(a) * gammas[i], budget - a, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Sum over weight vectors w with sum |w_i| gamma_i = target of
/// N^trop(w) / |Aut(w)| * prod Omega~(w_ij gamma_i). Splittings that use a
/// single incoming direction are the incoming walls themselves and are skipped.
inline WallCrossingSum tropical_wall_crossing(const BoundaryVector& target, const std::vector<BoundaryVector>& incoming,
                           const OmegaTildeTable& table, const NtropOptions& opts = {}) {
  for (const auto& g : incoming)
    if (!is_primitive(g)) throw TropicalError("incoming direction " + to_string(g) + " is not primitive");
  WallCrossingSum result;
  result.target = target;
  std::vector<std::vector<std::int64_t>> splits;
  std::vector<std::int64_t> cur;
  detail::splittings(incoming, 0, target, opts.max_total_weight, cur, splits);

  for (const auto& a : splits) {
    int used = 0;
    for (const auto x : a) used += x > 0 ? 1 : 0;
    if (used < 2) continue;
    // cartesian product of partitions, first direction outermost
    std::vector<std::vector<std::vector<std::int64_t>>> choices;
    for (const auto x : a) choices.push_back(x > 0 ? detail::partitions(x) : std::vector<std::vector<std::int64_t>>{{}});
    std::vector<std::size_t> idx(choices.size(), 0);
    for (bool done = false; !done;) {
      WallCrossingTerm c;
      std::vector<IncomingWeights> w;
      for (std::size_t i = 0; i < choices.size(); ++i) {
        c.weights.push_back(choices[i][idx[i]]);
        w.push_back({incoming[i], choices[i][idx[i]]});
        c.aut *= multiset_aut(choices[i][idx[i]]);
        for (const auto x : choices[i][idx[i]]) c.product *= table(i, x);
      }
      c.ntrop = enumerate_Ntrop(w, opts);
      c.value = Rational(c.ntrop) / Rational(c.aut) * c.product;
      result.total += c.value;
      result.components.push_back(std::move(c));

      for (std::size_t k = choices.size();;) {
        if (k == 0) {
          done = true;
          break;
        }
        --k;
        if (++idx[k] < choices[k].size()) break;
        idx[k] = 0;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Discs with a fixed stop.

struct EnumeratedDisc {
  TropicalDisc disc;
  Rational weight;        // disc_weight
  std::int64_t aut{1};    // stabilizer of the multiset of leaves
};

namespace detail {

struct DiscLeafType {
  std::size_t singularity;
  int sign;
  std::int64_t weight;

  friend auto operator<=>(const DiscLeafType&, const DiscLeafType&) = default;
};

struct DiscNode {
  std::optional<std::size_t> leaf;  // index into the leaf list
  std::shared_ptr<const DiscNode> left, right;
  Point pos;                         // vertex position (singularity for a leaf)
  BoundaryVector flow;               // weighted class carried by the outgoing edge
  std::int64_t mult{1};
  std::string key;                   // canonical form, invariant under leaf relabelling
};

class DiscEnumerator {
 public:
  DiscEnumerator(const Scene& scene, const std::vector<DiscLeafType>& leaves) : scene_(scene), leaves_(leaves) {}

  std::vector<std::shared_ptr<const DiscNode>> roots() { return trees((1U << leaves_.size()) - 1U); }

 private:
  bool at_singularity(const Point& p) const {
    for (const auto& s : scene_.singularities)
      if (s.pos == p) return true;
    return false;
  }

  const std::vector<std::shared_ptr<const DiscNode>>& trees(unsigned mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    std::vector<std::shared_ptr<const DiscNode>> out;
    if ((mask & (mask - 1U)) == 0) {
      unsigned i = 0;
      while (((mask >> i) & 1U) == 0) ++i;
      const auto& t = leaves_[i];
      auto n = std::make_shared<DiscNode>();
      n->leaf = i;
      n->pos = scene_.singularities[t.singularity].pos;
      n->flow = (t.sign * t.weight) * scene_.singularities[t.singularity].direction;
      n->key = "s" + std::to_string(t.singularity) + (t.sign > 0 ? "+" : "-") + std::to_string(t.weight);
      out.push_back(std::move(n));
    } else {
      const unsigned low = mask & (~mask + 1U);
      for (unsigned a = (mask - 1U) & mask; a != 0; a = (a - 1U) & mask) {
        if ((a & low) == 0) continue;
        const unsigned b = mask & ~a;
        if (b == 0) continue;
        for (const auto& ta : trees(a))
          for (const auto& tb : trees(b))
            if (auto n = merge(ta, tb)) out.push_back(std::move(n));
      }
    }
    return memo_.emplace(mask, std::move(out)).first->second;
  }

  std::shared_ptr<const DiscNode> merge(const std::shared_ptr<const DiscNode>& a,
                                        const std::shared_ptr<const DiscNode>& b) const {
    const auto meet = line_meet(a->pos, a->flow, b->pos, b->flow);
    if (!meet) return nullptr;
    // leaf edges have positive length, interior edges may be contracted
    auto ok = [](const DiscNode& n, const Rational& s) { return n.leaf ? sgn(s) > 0 : sgn(s) >= 0; };
    if (!ok(*a, meet->first) || !ok(*b, meet->second)) return nullptr;
    const Point x = advance(a->pos, meet->first, a->flow);
    if (at_singularity(x)) return nullptr;
    auto n = std::make_shared<DiscNode>();
    n->left = a;
    n->right = b;
    n->pos = x;
    n->flow = a->flow + b->flow;
    const std::int64_t det = sympl_pairing(a->flow, b->flow);
    n->mult = a->mult * b->mult * (det < 0 ? -det : det);
    const auto& k1 = std::min(a->key, b->key);
    const auto& k2 = std::max(a->key, b->key);
    n->key = "(" + k1 + "," + k2 + ")";
    return n;
  }

  const Scene& scene_;
  const std::vector<DiscLeafType>& leaves_;
  std::map<unsigned, std::vector<std::shared_ptr<const DiscNode>>> memo_;
};

inline int build_disc(const DiscNode& n, const std::vector<DiscLeafType>& leaves, TropicalDisc& disc, int& next_id) {
  const int id = next_id++;
  if (n.leaf) {
    disc.vertices.push_back({id, std::nullopt, leaves[*n.leaf].singularity});
    return id;
  }
  disc.vertices.push_back({id, n.pos, std::nullopt});
  for (const auto* child : {n.left.get(), n.right.get()}) {
    const int c = build_disc(*child, leaves, disc, next_id);
    const auto [w, dir] = primitive_decompose(child->flow);
    disc.edges.push_back({c, id, w, dir});
  }
  return id;
}

inline void leaf_multisets(const std::vector<DiscLeafType>& types, std::size_t i, BoundaryVector rest, int budget,
                           std::size_t max_leaves, const Scene& scene, std::vector<DiscLeafType>& cur,
                           std::vector<std::vector<DiscLeafType>>& out) {
  if (i == types.size()) {
    if (rest.is_zero() && !cur.empty()) out.push_back(cur);
    return;
  }
  const auto& t = types[i];
  const BoundaryVector step = (t.sign * t.weight) * scene.singularities[t.singularity].direction;
  std::size_t pushed = 0;
  for (int used = 0;; ++used) {
    leaf_multisets(types, i + 1, rest, budget, max_leaves, scene, cur, out);
    if (budget < t.weight || cur.size() >= max_leaves) break;
    cur.push_back(t);
    ++pushed;
    rest = rest - step;
    budget -= static_cast<int>(t.weight);
  }
  cur.resize(cur.size() - pushed);
}

}  // namespace detail

/// All trivalent discs of the scene with stop u and class `klass`, built from
/// at most `max_weight` units of singular edge weight. Interior edges may be
/// contracted; discs that differ only by relabelling identical leaves are
/// listed once.
inline std::vector<EnumeratedDisc> enumerate_discs(const Scene& scene, const Point& u, const BoundaryVector& klass,
                                                   int max_weight = 5) {
  for (const auto& s : scene.singularities)
    if (s.pos == u) throw TropicalError("stop " + to_string(u) + " is a singularity");
  std::vector<detail::DiscLeafType> types;
  for (std::size_t s = 0; s < scene.singularities.size(); ++s)
    for (const int sign : {1, -1})
      for (std::int64_t w = 1; w <= max_weight; ++w) types.push_back({s, sign, w});
  std::vector<std::vector<detail::DiscLeafType>> multisets;
  std::vector<detail::DiscLeafType> cur;
  detail::leaf_multisets(types, 0, klass, max_weight, 8, scene, cur, multisets);

  std::vector<EnumeratedDisc> out;
  for (const auto& leaves : multisets) {
    std::int64_t aut = 1;
    for (std::size_t i = 0; i < leaves.size();) {
      std::size_t j = i;
      while (j < leaves.size() && leaves[j] == leaves[i]) ++j;
      for (std::size_t k = 2; k <= j - i; ++k) aut *= static_cast<std::int64_t>(k);
      i = j;
    }
    detail::DiscEnumerator en(scene, leaves);
    std::set<std::string> seen;
    for (const auto& root : en.roots()) {
      if (root->mult == 0) continue;
      // the root edge runs from the top vertex to u with positive length
      const auto [w, dir] = primitive_decompose(root->flow);
      const auto len = detail::edge_length(root->pos, u, dir);
      if (!len || sgn(*len) == 0) continue;
      if (!seen.insert(root->key).second) continue;
      TropicalDisc disc;
      disc.vertices.push_back({0, u, std::nullopt});
      int next_id = 1;
      const int top = detail::build_disc(*root, leaves, disc, next_id);
      disc.edges.push_back({top, 0, w, dir});
      disc.root = 0;
      Rational weight = disc_weight(disc);
      out.push_back({std::move(disc), std::move(weight), aut});
    }
  }
  return out;
}

/// Sum of disc_weight / |Aut| over enumerate_discs.
inline Rational weighted_disc_count(const Scene& scene, const Point& u, const BoundaryVector& klass, int max_weight = 5) {
  Rational total(0);
  for (const auto& d : enumerate_discs(scene, u, klass, max_weight)) total += d.weight / Rational(d.aut);
  return total;
}

}  // namespace kswall
