#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hda/errors.hpp"
#include "hda/precubical.hpp"
#include "hda/pv.hpp"

namespace hda {

// A cell of the product grid: integer lower corner plus the set of spanned
// directions (0-based process indices, strictly increasing). A vertex spans
// nothing; an n-process cell spans at most n directions.
struct GridCell {
  std::vector<int> lower;
  std::vector<int> spanned;

  bool operator==(const GridCell&) const = default;
};

// Local-time span during which a process holds one unit of a resource.
// Times are action completion times; an unreleased lock holds forever.
struct HoldInterval {
  static constexpr int unbounded = std::numeric_limits<int>::max();

  int lock_time;    // completion time of the P action, >= 1
  int unlock_time;  // completion time of the matching V, or unbounded

  bool operator==(const HoldInterval&) const = default;
};

// Local-time extent of each process axis: a process with k actions runs
// over [0, k+1], so its actions complete strictly inside the axis (action
// j completes at local time j) and both endpoints are action-free.
inline std::vector<int> grid_extents(const PvProgram& prog) {
  std::vector<int> extents;
  extents.reserve(prog.processes.size());
  for (const auto& proc : prog.processes)
    extents.push_back(static_cast<int>(proc.size()) + 1);
  return extents;
}

// Lock/release spans of one process for one resource, paired first-in
// first-out. The pairing does not affect hold_count: the number of spans
// strictly containing t equals #locks before t minus #unlocks at or before t
// for any valid pairing.
inline std::vector<HoldInterval> hold_intervals(const PvProgram& prog,
                                                int process,
                                                const std::string& resource) {
  if (process < 0 ||
      static_cast<std::size_t>(process) >= prog.processes.size())
    throw std::invalid_argument("process index out of range");
  std::vector<HoldInterval> intervals;
  std::vector<std::size_t> open;  // indices into intervals, FIFO
  const auto& proc = prog.processes[process];
  for (std::size_t k = 0; k < proc.size(); ++k) {
    if (proc[k].resource != resource) continue;
    int t = static_cast<int>(k) + 1;
    if (proc[k].kind == ActionKind::Lock) {
      open.push_back(intervals.size());
      intervals.push_back(HoldInterval{t, HoldInterval::unbounded});
    } else {
      if (open.empty())
        throw validation_error("over-release of \"" + resource +
                               "\" in process " + std::to_string(process));
      intervals[open.front()].unlock_time = t;
      open.erase(open.begin());
    }
  }
  return intervals;
}

// Number of units of r held by the process at local time t: spans (p, v)
// with p < t < v, both inequalities strict. Strictness keeps integer grid
// points outside the forbidden region unless a conflict truly surrounds
// them, which is what makes the discretization exact on the grid complexes.
inline int hold_count(const PvProgram& prog, int process,
                      const std::string& resource, double t) {
  int count = 0;
  for (const auto& iv : hold_intervals(prog, process, resource)) {
    double v = iv.unlock_time == HoldInterval::unbounded
                   ? std::numeric_limits<double>::infinity()
                   : static_cast<double>(iv.unlock_time);
    if (static_cast<double>(iv.lock_time) < t && t < v) ++count;
  }
  return count;
}

// Interior representative of a cell: midpoint along spanned directions,
// the lower corner elsewhere.
inline std::vector<double> cell_representative(const GridCell& c) {
  std::vector<double> rep(c.lower.begin(), c.lower.end());
  for (int dir : c.spanned) rep[dir] += 0.5;
  return rep;
}

// A cell survives iff at its interior representative no resource is held
// beyond its capacity, summing over all processes.
inline bool cell_allowed(const PvProgram& prog, const GridCell& c) {
  std::vector<double> rep = cell_representative(c);
  for (const auto& [resource, capacity] : prog.capacities) {
    int total = 0;
    for (std::size_t i = 0; i < prog.processes.size(); ++i)
      total += hold_count(prog, static_cast<int>(i), resource,
                          rep[i]);
    if (total > capacity) return false;
  }
  return true;
}

// Cell naming: vertices "(2,2)", higher cells lower corner plus spanned
// directions 1-based, e.g. "(2,2)|d1d2".
inline std::string cell_id(const GridCell& c) {
  std::string id = "(";
  for (std::size_t k = 0; k < c.lower.size(); ++k) {
    if (k) id += ",";
    id += std::to_string(c.lower[k]);
  }
  id += ")";
  if (!c.spanned.empty()) {
    id += "|";
    for (int dir : c.spanned) id += "d" + std::to_string(dir + 1);
  }
  return id;
}

inline GridCell cell_from_id(const std::string& id) {
  GridCell c;
  std::size_t bar = id.find('|');
  std::string corner = id.substr(0, bar == std::string::npos ? id.size() : bar);
  if (corner.size() < 2 || corner.front() != '(' || corner.back() != ')')
    throw std::invalid_argument("malformed cell id \"" + id + "\"");
  std::size_t p = 1;
  while (p < corner.size() - 1) {
    std::size_t comma = corner.find(',', p);
    std::size_t end = comma == std::string::npos || comma > corner.size() - 1
                          ? corner.size() - 1
                          : comma;
    c.lower.push_back(std::stoi(corner.substr(p, end - p)));
    p = end == comma ? end + 1 : end;
  }
  if (bar != std::string::npos) {
    std::size_t q = bar + 1;
    while (q < id.size()) {
      if (id[q] != 'd')
        throw std::invalid_argument("malformed cell id \"" + id + "\"");
      std::size_t start = ++q;
      while (q < id.size() && std::isdigit(static_cast<unsigned char>(id[q])))
        ++q;
      if (start == q)
        throw std::invalid_argument("malformed cell id \"" + id + "\"");
      c.spanned.push_back(std::stoi(id.substr(start, q - start)) - 1);
    }
  }
  return c;
}

inline std::string vertex_id(const std::vector<int>& coords) {
  return cell_id(GridCell{coords, {}});
}

inline std::string initial_vertex_id(const PvProgram& prog) {
  return vertex_id(std::vector<int>(prog.processes.size(), 0));
}

inline std::string final_vertex_id(const PvProgram& prog) {
  return vertex_id(grid_extents(prog));
}

struct CompileOptions {
  // Cap on the total grid cell count before filtering.
  std::size_t max_cells = 10'000'000;
};

// Compiles a program to its grid complex: all in-bounds cells whose interior
// representative respects every capacity. Cells are emitted per dimension in
// lexicographic (lower corner, spanned set) order.
//
// Face convention: for a cell spanning directions s_1 < ... < s_d, the face
// index i removes the i-th largest spanned direction s_{d-i}; side 0 keeps
// the lower corner, side 1 bumps it along the removed direction. On a
// 2-process square this makes (i=1, side 0/1) the bottom/top edge and
// (i=2, side 0/1) the left/right edge.
inline PrecubicalSet pv_to_precubical(const PvProgram& prog,
                                      const CompileOptions& options = {}) {
  std::vector<int> extents = grid_extents(prog);
  std::size_t n = extents.size();

  std::uint64_t total = 1;
  for (int L : extents) {
    total *= static_cast<std::uint64_t>(2 * L + 1);
    if (total > options.max_cells)
      throw resource_limit_error(
          "grid would have more than " + std::to_string(options.max_cells) +
          " cells");
  }

  PrecubicalSet M;

  // One pass per dimension keeps emission grouped and ordered.
  for (std::size_t d = 0; d <= n; ++d) {
    std::vector<int> lower(n, 0);
    while (true) {
      // Directions that can be spanned from this corner.
      std::vector<int> eligible;
      for (std::size_t i = 0; i < n; ++i)
        if (lower[i] < extents[i]) eligible.push_back(static_cast<int>(i));
      if (eligible.size() >= d) {
        // All size-d subsets of eligible, lexicographically.
        std::vector<std::size_t> pick(d);
        for (std::size_t k = 0; k < d; ++k) pick[k] = k;
        while (true) {
          GridCell c;
          c.lower = lower;
          for (std::size_t k = 0; k < d; ++k)
            c.spanned.push_back(eligible[pick[k]]);
          if (cell_allowed(prog, c))
            M.add_cube(cell_id(c), static_cast<int>(d));
          if (d == 0) break;
          // Next combination.
          std::size_t k = d;
          while (k > 0) {
            --k;
            if (pick[k] + (d - k) < eligible.size()) {
              ++pick[k];
              for (std::size_t m = k + 1; m < d; ++m) pick[m] = pick[m - 1] + 1;
              break;
            }
            if (k == 0) {
              k = d;  // exhausted
              break;
            }
          }
          if (k == d) break;
        }
      }
      // Next lower corner, lexicographic with the last axis fastest.
      std::size_t axis = n;
      while (axis > 0) {
        --axis;
        if (lower[axis] < extents[axis]) {
          ++lower[axis];
          for (std::size_t m = axis + 1; m < n; ++m) lower[m] = 0;
          break;
        }
        if (axis == 0) {
          axis = n;
          break;
        }
      }
      if (axis == n || n == 0) break;
    }
  }

  // Faces; every face of an allowed cell is allowed (the representative of a
  // face never holds more than the interior representative), so targets are
  // always present.
  for (std::size_t d = 1; d <= n; ++d) {
    for (const auto& id : M.cells(static_cast<int>(d))) {
      GridCell c = cell_from_id(id);
      for (int i = 1; i <= static_cast<int>(d); ++i) {
        int removed = c.spanned[d - static_cast<std::size_t>(i)];
        GridCell lo = c;
        lo.spanned.erase(lo.spanned.begin() + (d - i));
        GridCell hi = lo;
        hi.lower[removed] += 1;
        for (int alpha = 0; alpha <= 1; ++alpha) {
          const GridCell& f = alpha == 0 ? lo : hi;
          std::string fid = cell_id(f);
          if (!M.has_cube(fid))
            throw validation_error("face \"" + fid +
                                   "\" of allowed cell \"" + id +
                                   "\" is not allowed");
          M.set_face(id, i, alpha, fid);
        }
      }
    }
  }

  return M;
}

}  // namespace hda
