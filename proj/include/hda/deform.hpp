#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hda/digraph.hpp"
#include "hda/errors.hpp"
#include "hda/util.hpp"

namespace hda {

namespace detail {

inline std::string fresh_node(const DirectedMultigraph& g,
                              const std::string& base) {
  std::string id = base;
  while (g.has_node(id)) id += "+";
  return id;
}

inline std::string fresh_arc(const DirectedMultigraph& g,
                             const std::string& base) {
  std::string id = base;
  while (g.has_arc(id)) id += "+";
  return id;
}

}  // namespace detail

// Replaces an arc by a chain of `parts` arcs through parts-1 fresh unmarked
// nodes. The fresh names derive from the arc's name.
inline DirectedMultigraph subdivide(const DirectedMultigraph& g,
                                    const std::string& arc, int parts) {
  if (!g.has_arc(arc))
    throw std::invalid_argument("unknown arc \"" + arc + "\"");
  if (parts < 2) throw std::invalid_argument("parts must be at least 2");

  DirectedMultigraph out = g;
  std::string src = g.src(arc);
  std::string tgt = g.tgt(arc);
  out.remove_arc(arc);

  std::vector<std::string> chain{src};
  for (int k = 1; k < parts; ++k) {
    std::string node =
        detail::fresh_node(out, arc + ".n" + std::to_string(k));
    out.add_node(node);
    chain.push_back(node);
  }
  chain.push_back(tgt);
  for (int k = 0; k < parts; ++k) {
    std::string id = detail::fresh_arc(out, arc + "." + std::to_string(k + 1));
    out.add_arc(id, chain[k], chain[k + 1]);
  }
  return out;
}

// Undoes subdivision points: repeatedly contracts any node with in-degree 1
// and out-degree 1 that is unmarked and not the base of a loop, merging its
// two arcs (the merged arc keeps the incoming arc's name). The result has
// no contractible nodes; marks are never touched.
inline DirectedMultigraph normalize(const DirectedMultigraph& g) {
  DirectedMultigraph out = g;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& v : out.node_ids()) {
      if (out.is_initial(v) || out.is_final(v)) continue;
      auto in = out.in_arcs(v);
      auto ot = out.out_arcs(v);
      if (in.size() != 1 || ot.size() != 1) continue;
      if (in[0] == ot[0]) continue;  // loop base
      std::string e_in = in[0], e_out = ot[0];
      std::string u = out.src(e_in);
      std::string w = out.tgt(e_out);
      std::string merged = e_in;
      out.remove_arc(e_in);
      out.remove_arc(e_out);
      out.remove_node(v);
      out.add_arc(merged, u, w);
      changed = true;
      break;  // node list changed; rescan from the start
    }
  }
  return out;
}

namespace detail {

struct NodeSignature {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t loops = 0;
  bool initial = false;
  bool final = false;

  bool operator==(const NodeSignature&) const = default;
  auto operator<=>(const NodeSignature&) const = default;
};

inline NodeSignature signature(const DirectedMultigraph& g,
                               const std::string& v) {
  NodeSignature s;
  s.in = g.in_degree(v);
  s.out = g.out_degree(v);
  for (const auto& a : g.out_arcs(v))
    if (g.tgt(a) == v) ++s.loops;
  s.initial = g.is_initial(v);
  s.final = g.is_final(v);
  return s;
}

// Arc multiplicity per ordered node pair.
inline std::map<std::pair<std::string, std::string>, std::size_t>
arc_multiplicities(const DirectedMultigraph& g) {
  std::map<std::pair<std::string, std::string>, std::size_t> m;
  for (const auto& a : g.arc_ids()) ++m[{g.src(a), g.tgt(a)}];
  return m;
}

}  // namespace detail

// Exact isomorphism of marked directed multigraphs: a node bijection
// preserving marks and the number of arcs between every ordered pair.
// Backtracking with per-node signature pruning; fine for small graphs.
inline bool graphs_isomorphic(const DirectedMultigraph& a,
                              const DirectedMultigraph& b) {
  if (a.node_ids().size() != b.node_ids().size()) return false;
  if (a.arc_ids().size() != b.arc_ids().size()) return false;

  std::vector<std::string> an = a.node_ids();
  std::vector<std::string> bn = b.node_ids();

  std::unordered_map<std::string, detail::NodeSignature> asig, bsig;
  for (const auto& v : an) asig[v] = detail::signature(a, v);
  for (const auto& v : bn) bsig[v] = detail::signature(b, v);
  {
    std::vector<detail::NodeSignature> sa, sb;
    for (const auto& v : an) sa.push_back(asig[v]);
    for (const auto& v : bn) sb.push_back(bsig[v]);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  auto amult = detail::arc_multiplicities(a);
  auto bmult = detail::arc_multiplicities(b);

  // Most-constrained first: rarest signature, then highest degree.
  std::sort(an.begin(), an.end(), [&](const std::string& x,
                                      const std::string& y) {
    const auto& sx = asig[x];
    const auto& sy = asig[y];
    if (sx.in + sx.out != sy.in + sy.out)
      return sx.in + sx.out > sy.in + sy.out;
    return x < y;
  });

  std::unordered_map<std::string, std::string> map;   // a -> b
  std::unordered_map<std::string, std::string> used;  // b -> a

  auto consistent = [&](const std::string& va, const std::string& vb) {
    if (asig[va] != bsig[vb]) return false;
    // Multiplicities toward already-mapped nodes must match both ways.
    for (const auto& [wa, wb] : map) {
      auto get = [](const auto& m, const std::string& s,
                    const std::string& t) -> std::size_t {
        auto it = m.find({s, t});
        return it == m.end() ? 0 : it->second;
      };
      if (get(amult, va, wa) != get(bmult, vb, wb)) return false;
      if (get(amult, wa, va) != get(bmult, wb, vb)) return false;
    }
    // Self-loop multiplicities already agree via the signature check.
    return true;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == an.size()) return true;
    const std::string& va = an[k];
    for (const auto& vb : bn) {
      if (used.count(vb)) continue;
      if (!consistent(va, vb)) continue;
      map[va] = vb;
      used[vb] = va;
      if (assign(k + 1)) return true;
      map.erase(va);
      used.erase(vb);
    }
    return false;
  };
  return assign(0);
}

struct TEquivOptions {
  std::size_t max_nodes = 50;
};

// Two 1-complexes are deformation-equivalent exactly when their
// subdivision-free normal forms are isomorphic as marked multigraphs.
inline bool t_equivalent(const DirectedMultigraph& a,
                         const DirectedMultigraph& b,
                         const TEquivOptions& options = {}) {
  DirectedMultigraph na = normalize(a);
  DirectedMultigraph nb = normalize(b);
  if (na.node_ids().size() > options.max_nodes ||
      nb.node_ids().size() > options.max_nodes)
    throw resource_limit_error("normal form exceeds " +
                               std::to_string(options.max_nodes) + " nodes");
  return graphs_isomorphic(na, nb);
}

}  // namespace hda
