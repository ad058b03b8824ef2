#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hda/errors.hpp"
#include "hda/precubical.hpp"
#include "hda/util.hpp"

namespace hda {

// A monotone arc path through the 1-skeleton. Vertices determine the path
// on grid complexes; arcs disambiguate parallel edges on general inputs.
struct Dipath {
  std::vector<std::string> vertices;
  std::vector<std::string> arcs;

  bool operator==(const Dipath&) const = default;
};

// A partition of an enumerated dipath list into deformation classes.
// classes holds indices into dipaths; representatives[k] is the index of
// the lexicographically least member of classes[k].
struct ScheduleClasses {
  std::vector<Dipath> dipaths;
  std::vector<std::vector<int>> classes;
  std::vector<int> representatives;
};

namespace detail {

// Forward and reverse adjacency over the 1-skeleton, out-arcs sorted by
// (target, arc id) in natural order so traversals are deterministic.
struct Adjacency {
  std::vector<std::string> vertices;
  std::unordered_map<std::string, std::vector<std::string>> out;  // arc ids
  std::unordered_map<std::string, std::vector<std::string>> in;
  std::unordered_map<std::string, std::pair<std::string, std::string>> ends;
};

inline Adjacency build_adjacency(const PrecubicalSet& M) {
  Adjacency adj;
  adj.vertices = M.cells(0);
  for (const auto& v : adj.vertices) {
    adj.out[v];
    adj.in[v];
  }
  for (const auto& e : M.cells(1)) {
    auto s = M.face(e, 1, 0);
    auto t = M.face(e, 1, 1);
    if (!s || !t || !M.has_cube(*s) || !M.has_cube(*t))
      throw validation_error("edge \"" + e + "\" has unresolved endpoints");
    adj.ends[e] = {*s, *t};
    adj.out[*s].push_back(e);
    adj.in[*t].push_back(e);
  }
  for (auto& [v, arcs] : adj.out) {
    std::sort(arcs.begin(), arcs.end(),
              [&](const std::string& a, const std::string& b) {
                const auto& ta = adj.ends.at(a).second;
                const auto& tb = adj.ends.at(b).second;
                if (ta != tb) return natural_less(ta, tb);
                return natural_less(a, b);
              });
  }
  return adj;
}

inline std::unordered_set<std::string> forward_closure(
    const Adjacency& adj, const std::string& start) {
  std::unordered_set<std::string> seen{start};
  std::deque<std::string> queue{start};
  while (!queue.empty()) {
    std::string v = queue.front();
    queue.pop_front();
    for (const auto& e : adj.out.at(v)) {
      const auto& t = adj.ends.at(e).second;
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  return seen;
}

inline std::unordered_set<std::string> backward_closure(
    const Adjacency& adj, const std::string& start) {
  std::unordered_set<std::string> seen{start};
  std::deque<std::string> queue{start};
  while (!queue.empty()) {
    std::string v = queue.front();
    queue.pop_front();
    for (const auto& e : adj.in.at(v)) {
      const auto& s = adj.ends.at(e).first;
      if (seen.insert(s).second) queue.push_back(s);
    }
  }
  return seen;
}

inline void require_vertex(const PrecubicalSet& M, const std::string& v) {
  if (!M.has_cube(v) || M.dim(v) != 0)
    throw std::invalid_argument("unknown vertex \"" + v + "\"");
}

}  // namespace detail

// Vertices forward-reachable from start along skeleton arcs, sorted in
// natural order.
inline std::vector<std::string> reachable(const PrecubicalSet& M,
                                          const std::string& start) {
  detail::require_vertex(M, start);
  auto adj = detail::build_adjacency(M);
  auto seen = detail::forward_closure(adj, start);
  std::vector<std::string> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), NaturalLess{});
  return out;
}

inline std::vector<std::string> unreachable_states(const PrecubicalSet& M,
                                                   const std::string& init) {
  detail::require_vertex(M, init);
  auto adj = detail::build_adjacency(M);
  auto seen = detail::forward_closure(adj, init);
  std::vector<std::string> out;
  for (const auto& v : M.cells(0))
    if (!seen.count(v)) out.push_back(v);
  std::sort(out.begin(), out.end(), NaturalLess{});
  return out;
}

// States from which the final vertex cannot be reached.
inline std::vector<std::string> unsafe_states(const PrecubicalSet& M,
                                              const std::string& final_v) {
  detail::require_vertex(M, final_v);
  auto adj = detail::build_adjacency(M);
  auto seen = detail::backward_closure(adj, final_v);
  std::vector<std::string> out;
  for (const auto& v : M.cells(0))
    if (!seen.count(v)) out.push_back(v);
  std::sort(out.begin(), out.end(), NaturalLess{});
  return out;
}

// Non-final states with no enabled forward move.
inline std::vector<std::string> deadlocks(const PrecubicalSet& M,
                                          const std::string& final_v) {
  detail::require_vertex(M, final_v);
  auto adj = detail::build_adjacency(M);
  std::vector<std::string> out;
  for (const auto& v : M.cells(0))
    if (v != final_v && adj.out.at(v).empty()) out.push_back(v);
  std::sort(out.begin(), out.end(), NaturalLess{});
  return out;
}

struct EnumerateOptions {
  std::size_t cap = 1'000'000;
};

// All monotone arc paths init -> final, in lexicographic order of their
// vertex sequences (ties broken by arc ids). Returns an empty list when
// either endpoint is missing from the complex, so callers can report a
// forbidden final state instead of crashing. Exceeding the cap raises
// resource_limit_error, as does a path longer than the skeleton (which can
// only happen on cyclic inputs, where enumeration would not terminate).
inline std::vector<Dipath> enumerate_dipaths(const PrecubicalSet& M,
                                             const std::string& init,
                                             const std::string& final_v,
                                             const EnumerateOptions& options = {}) {
  if (!M.has_cube(init) || M.dim(init) != 0 || !M.has_cube(final_v) ||
      M.dim(final_v) != 0)
    return {};
  auto adj = detail::build_adjacency(M);
  auto useful = detail::backward_closure(adj, final_v);
  if (!useful.count(init)) return {};

  std::vector<Dipath> out;
  std::size_t max_len = M.cells(1).size() + M.cells(0).size();
  Dipath current;
  current.vertices.push_back(init);

  // Iterative depth-first search; frames hold the next out-arc index.
  // Paths stop at their first arrival at final_v.
  struct Frame {
    std::string vertex;
    std::size_t next = 0;
  };
  std::vector<Frame> stack{{init, 0}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    bool advanced = false;
    if (top.vertex == final_v) {
      if (top.next == 0) {
        if (out.size() >= options.cap)
          throw resource_limit_error("more than " +
                                     std::to_string(options.cap) + " dipaths");
        out.push_back(current);
        top.next = 1;  // emit once, then backtrack
      }
    } else {
      const auto& arcs = adj.out.at(top.vertex);
      while (top.next < arcs.size()) {
        const std::string e = arcs[top.next++];
        const std::string& t = adj.ends.at(e).second;
        if (!useful.count(t)) continue;
        if (current.arcs.size() + 1 > max_len)
          throw resource_limit_error(
              "dipath length exceeds skeleton size; cyclic input");
        current.arcs.push_back(e);
        current.vertices.push_back(t);
        stack.push_back(Frame{t, 0});
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      stack.pop_back();
      if (!current.arcs.empty()) {
        current.arcs.pop_back();
        current.vertices.pop_back();
      }
    }
  }
  return out;
}

namespace detail {

// Union-find with path halving.
struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// For every square whose boundary forms two distinct corner-to-corner
// routes, map each route (pair of consecutive arcs) to the other one.
// Built from face structure only, so it is independent of any particular
// face-index convention.
inline std::map<std::pair<std::string, std::string>,
                std::pair<std::string, std::string>>
build_flips(const PrecubicalSet& M, const Adjacency& adj) {
  std::map<std::pair<std::string, std::string>,
           std::pair<std::string, std::string>>
      flips;
  for (const auto& sq : M.cells(2)) {
    std::vector<std::string> edges;
    bool ok = true;
    for (int i = 1; i <= 2 && ok; ++i)
      for (int alpha = 0; alpha <= 1 && ok; ++alpha) {
        auto f = M.face(sq, i, alpha);
        if (!f || !adj.ends.count(*f)) {
          ok = false;
          break;
        }
        edges.push_back(*f);
      }
    if (!ok) continue;
    // Corner-to-corner routes: ordered pairs of distinct boundary edges
    // where the first's target is the second's source. A square in general
    // position has exactly two, over the same corners, using all four
    // edges; anything else (degenerate identifications) induces no move.
    std::vector<std::pair<std::string, std::string>> routes;
    for (const auto& e : edges)
      for (const auto& f : edges) {
        if (e == f) continue;
        if (adj.ends.at(e).second == adj.ends.at(f).first)
          routes.push_back({e, f});
      }
    if (routes.size() != 2) continue;
    const auto& r1 = routes[0];
    const auto& r2 = routes[1];
    if (adj.ends.at(r1.first).first != adj.ends.at(r2.first).first) continue;
    if (adj.ends.at(r1.second).second != adj.ends.at(r2.second).second)
      continue;
    if (r1.first == r2.first || r1.first == r2.second ||
        r1.second == r2.first || r1.second == r2.second)
      continue;
    flips[r1] = r2;
    flips[r2] = r1;
  }
  return flips;
}

}  // namespace detail

// Partition of the enumerated dipaths by the closure of elementary square
// moves: two paths are equivalent when one turns into the other by replacing
// one corner-to-corner route of a present square with the other route.
// Identifications come from 2-cells only; higher cells bound only move
// sequences that the 2-cells already generate.
inline ScheduleClasses dihomotopy_classes(const PrecubicalSet& M,
                                          const std::string& init,
                                          const std::string& final_v,
                                          const EnumerateOptions& options = {}) {
  ScheduleClasses result;
  result.dipaths = enumerate_dipaths(M, init, final_v, options);
  if (result.dipaths.empty()) return result;

  auto adj = detail::build_adjacency(M);
  auto flips = detail::build_flips(M, adj);

  std::unordered_map<std::string, int> index;
  auto key_of = [](const Dipath& p) {
    std::string key;
    for (const auto& a : p.arcs) {
      key += a;
      key += '\x1f';
    }
    return key;
  };
  for (std::size_t k = 0; k < result.dipaths.size(); ++k)
    index[key_of(result.dipaths[k])] = static_cast<int>(k);

  detail::UnionFind uf(result.dipaths.size());
  for (std::size_t k = 0; k < result.dipaths.size(); ++k) {
    const Dipath& p = result.dipaths[k];
    for (std::size_t pos = 0; pos + 1 < p.arcs.size(); ++pos) {
      auto it = flips.find({p.arcs[pos], p.arcs[pos + 1]});
      if (it == flips.end()) continue;
      Dipath q = p;
      q.arcs[pos] = it->second.first;
      q.arcs[pos + 1] = it->second.second;
      q.vertices[pos + 1] = adj.ends.at(it->second.first).second;
      auto found = index.find(key_of(q));
      // The enumeration is exhaustive, so the flipped path is always
      // present; tolerate externally filtered lists anyway.
      if (found != index.end()) uf.unite(static_cast<int>(k), found->second);
    }
  }

  std::map<int, std::vector<int>> groups;
  for (std::size_t k = 0; k < result.dipaths.size(); ++k)
    groups[uf.find(static_cast<int>(k))].push_back(static_cast<int>(k));
  for (auto& [root, members] : groups) {
    int best = members.front();
    for (int m : members)
      if (natural_lex_less(result.dipaths[m].vertices,
                           result.dipaths[best].vertices))
        best = m;
    result.classes.push_back(members);
    result.representatives.push_back(best);
  }
  return result;
}

}  // namespace hda
