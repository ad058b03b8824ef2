#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "hda/digraph.hpp"
#include "hda/errors.hpp"
#include "hda/util.hpp"

namespace hda {

// Graded set of named cubes with face maps d^a_i (i in 1..n, a in {0,1}).
// Dimension is stored per cube, ids are opaque strings, and insertion order
// per dimension is preserved for deterministic traversal and serialization.
//
// The structure itself accepts any face assignment; validate() checks the
// two laws that make it a cube complex:
//   * every face slot resolves to an existing cube one dimension down,
//   * d^a_i d^b_j = d^b_{j-1} d^a_i for i < j.
class PrecubicalSet {
 public:
  void add_cube(const std::string& id, int dim) {
    if (dim < 0) throw std::invalid_argument("negative dimension");
    if (dims_.count(id))
      throw std::invalid_argument("duplicate cube id \"" + id + "\"");
    dims_[id] = dim;
    if (static_cast<std::size_t>(dim) >= cells_.size())
      cells_.resize(dim + 1);
    cells_[dim].push_back(id);
    faces_[id].assign(static_cast<std::size_t>(2) * dim, std::nullopt);
  }

  // Overwrites the (i, alpha) face slot of an existing cube. No structural
  // checking happens here; validate() reports inconsistencies.
  void set_face(const std::string& of, int i, int alpha,
                const std::string& to) {
    int d = dim(of);
    if (i < 1 || i > d)
      throw std::invalid_argument("face index " + std::to_string(i) +
                                  " out of range for dimension " +
                                  std::to_string(d));
    if (alpha != 0 && alpha != 1)
      throw std::invalid_argument("face side must be 0 or 1");
    faces_[of][slot(i, alpha)] = to;
  }

  bool has_cube(const std::string& id) const { return dims_.count(id) != 0; }

  int dim(const std::string& id) const {
    auto it = dims_.find(id);
    if (it == dims_.end())
      throw std::invalid_argument("unknown cube \"" + id + "\"");
    return it->second;
  }

  // Highest dimension with at least one cube; -1 for the empty set.
  int max_dim() const {
    for (int d = static_cast<int>(cells_.size()) - 1; d >= 0; --d)
      if (!cells_[d].empty()) return d;
    return -1;
  }

  const std::vector<std::string>& cells(int d) const {
    static const std::vector<std::string> empty;
    if (d < 0 || static_cast<std::size_t>(d) >= cells_.size()) return empty;
    return cells_[d];
  }

  std::size_t cell_count() const {
    std::size_t n = 0;
    for (const auto& layer : cells_) n += layer.size();
    return n;
  }

  std::optional<std::string> face(const std::string& of, int i,
                                  int alpha) const {
    int d = dim(of);
    if (i < 1 || i > d || (alpha != 0 && alpha != 1)) return std::nullopt;
    return faces_.at(of)[slot(i, alpha)];
  }

  bool operator==(const PrecubicalSet& other) const {
    if (dims_ != other.dims_) return false;
    return faces_ == other.faces_;
  }

 private:
  static std::size_t slot(int i, int alpha) {
    return static_cast<std::size_t>(i - 1) * 2 + alpha;
  }

  std::vector<std::vector<std::string>> cells_;
  std::unordered_map<std::string, int> dims_;
  // Per cube: 2*dim optional face targets, indexed by slot(i, alpha).
  std::unordered_map<std::string, std::vector<std::optional<std::string>>>
      faces_;
};

namespace detail {

inline std::string face_name(int i, int alpha, const std::string& of) {
  return "d" + std::to_string(alpha) + "_" + std::to_string(i) + "(" + of + ")";
}

}  // namespace detail

// Returns one message per violated law, in deterministic order (cubes in
// insertion order per dimension, then index order). Empty means valid.
inline std::vector<std::string> validate(const PrecubicalSet& M) {
  std::vector<std::string> report;
  int top = M.max_dim();

  for (int d = 1; d <= top; ++d) {
    for (const auto& c : M.cells(d)) {
      for (int i = 1; i <= d; ++i) {
        for (int alpha = 0; alpha <= 1; ++alpha) {
          auto f = M.face(c, i, alpha);
          if (!f) {
            report.push_back("missing face " + detail::face_name(i, alpha, c));
          } else if (!M.has_cube(*f)) {
            report.push_back("dangling face " + detail::face_name(i, alpha, c) +
                             " -> \"" + *f + "\"");
          } else if (M.dim(*f) != d - 1) {
            report.push_back("face " + detail::face_name(i, alpha, c) +
                             " has dimension " + std::to_string(M.dim(*f)) +
                             ", expected " + std::to_string(d - 1));
          }
        }
      }
    }
  }

  // d^a_i d^b_j = d^b_{j-1} d^a_i for i < j; checked where both composites
  // resolve (unresolved slots were already reported above).
  auto resolved = [&](const std::string& c, int i,
                      int alpha) -> std::optional<std::string> {
    auto f = M.face(c, i, alpha);
    if (!f || !M.has_cube(*f) || M.dim(*f) != M.dim(c) - 1)
      return std::nullopt;
    return f;
  };
  for (int d = 2; d <= top; ++d) {
    for (const auto& c : M.cells(d)) {
      for (int j = 2; j <= d; ++j) {
        for (int i = 1; i < j; ++i) {
          for (int beta = 0; beta <= 1; ++beta) {
            for (int alpha = 0; alpha <= 1; ++alpha) {
              auto fj = resolved(c, j, beta);
              auto fi = resolved(c, i, alpha);
              if (!fj || !fi) continue;
              auto lhs = resolved(*fj, i, alpha);
              auto rhs = resolved(*fi, j - 1, beta);
              if (!lhs || !rhs) continue;
              if (*lhs != *rhs) {
                report.push_back(
                    "cube axiom violated at \"" + c + "\": d" +
                    std::to_string(alpha) + "_" + std::to_string(i) + " d" +
                    std::to_string(beta) + "_" + std::to_string(j) + " = \"" +
                    *lhs + "\" but d" + std::to_string(beta) + "_" +
                    std::to_string(j - 1) + " d" + std::to_string(alpha) +
                    "_" + std::to_string(i) + " = \"" + *rhs + "\"");
              }
            }
          }
        }
      }
    }
  }
  return report;
}

// Keeps cubes of dimension <= n with their faces.
inline PrecubicalSet truncate(const PrecubicalSet& M, int n) {
  if (n < 0) throw std::invalid_argument("negative truncation dimension");
  PrecubicalSet out;
  for (int d = 0; d <= n && d <= M.max_dim(); ++d)
    for (const auto& c : M.cells(d)) out.add_cube(c, d);
  for (int d = 1; d <= n && d <= M.max_dim(); ++d)
    for (const auto& c : M.cells(d))
      for (int i = 1; i <= d; ++i)
        for (int alpha = 0; alpha <= 1; ++alpha)
          if (auto f = M.face(c, i, alpha)) out.set_face(c, i, alpha, *f);
  return out;
}

// The n-cube as a complex: cells in dimension p are the ways of fixing
// n-p of the n coordinates to 0 or 1, giving binomial(n,p)*2^(n-p) cells.
// A cell is named by its coordinate pattern over {'0','1','*'} ('*' free);
// d^a_i fixes the i-th free coordinate (in increasing position order) to a.
inline PrecubicalSet standard_cube(int n) {
  if (n < 0) throw std::invalid_argument("negative dimension");
  if (n > 12) throw resource_limit_error("standard cube dimension too large");

  auto id_of = [](const std::string& pattern) { return "c[" + pattern + "]"; };

  // All 3^n patterns, grouped by dimension, lexicographic within a group.
  std::vector<std::vector<std::string>> by_dim(n + 1);
  {
    std::vector<std::string> work{""};
    for (int k = 0; k < n; ++k) {
      std::vector<std::string> next;
      next.reserve(work.size() * 3);
      for (const auto& w : work)
        for (char c : {'*', '0', '1'}) next.push_back(w + c);
      work = std::move(next);
    }
    for (const auto& w : work) {
      int stars = static_cast<int>(std::count(w.begin(), w.end(), '*'));
      by_dim[stars].push_back(w);
    }
  }

  PrecubicalSet out;
  for (int p = 0; p <= n; ++p)
    for (const auto& w : by_dim[p]) out.add_cube(id_of(w), p);
  for (int p = 1; p <= n; ++p) {
    for (const auto& w : by_dim[p]) {
      int seen = 0;
      for (int pos = 0; pos < n; ++pos) {
        if (w[pos] != '*') continue;
        ++seen;
        for (int alpha = 0; alpha <= 1; ++alpha) {
          std::string f = w;
          f[pos] = static_cast<char>('0' + alpha);
          out.set_face(id_of(w), seen, alpha, id_of(f));
        }
      }
    }
  }
  return out;
}

// A map of precubical sets: one target id per source cube. Dimension
// preservation and face commutation are checked, not assumed.
struct PrecubicalMorphism {
  std::unordered_map<std::string, std::string> cell_map;
};

inline std::vector<std::string> check_morphism(const PrecubicalSet& source,
                                               const PrecubicalSet& target,
                                               const PrecubicalMorphism& f) {
  std::vector<std::string> report;
  for (int d = 0; d <= source.max_dim(); ++d) {
    for (const auto& c : source.cells(d)) {
      auto it = f.cell_map.find(c);
      if (it == f.cell_map.end()) {
        report.push_back("no image for \"" + c + "\"");
        continue;
      }
      const std::string& fc = it->second;
      if (!target.has_cube(fc)) {
        report.push_back("image of \"" + c + "\" is unknown cube \"" + fc +
                         "\"");
        continue;
      }
      if (target.dim(fc) != d) {
        report.push_back("image of \"" + c + "\" has dimension " +
                         std::to_string(target.dim(fc)) + ", expected " +
                         std::to_string(d));
        continue;
      }
      for (int i = 1; i <= d; ++i) {
        for (int alpha = 0; alpha <= 1; ++alpha) {
          auto sf = source.face(c, i, alpha);
          if (!sf) continue;
          auto im = f.cell_map.find(*sf);
          auto tf = target.face(fc, i, alpha);
          if (im == f.cell_map.end()) continue;  // reported at *sf's turn
          if (!tf || im->second != *tf) {
            report.push_back("face mismatch at \"" + c + "\": f(" +
                             detail::face_name(i, alpha, c) + ") = \"" +
                             im->second + "\" but " +
                             detail::face_name(i, alpha, fc) + " = \"" +
                             (tf ? *tf : std::string("<missing>")) + "\"");
          }
        }
      }
    }
  }
  return report;
}

// The 1-skeleton as a directed multigraph: nodes are the 0-cubes, one arc
// per 1-cube from its 0-face to its 1-face.
inline DirectedMultigraph skeleton_graph(const PrecubicalSet& M) {
  DirectedMultigraph g;
  for (const auto& v : M.cells(0)) g.add_node(v);
  for (const auto& e : M.cells(1)) {
    auto s = M.face(e, 1, 0);
    auto t = M.face(e, 1, 1);
    if (!s || !t || !M.has_cube(*s) || !M.has_cube(*t))
      throw validation_error("edge \"" + e + "\" has unresolved endpoints");
    g.add_arc(e, *s, *t);
  }
  return g;
}

inline nlohmann::ordered_json precubical_to_json(const PrecubicalSet& M) {
  nlohmann::ordered_json j;
  j["schema"] = "hda/1";
  j["cells"] = nlohmann::ordered_json::array();
  j["faces"] = nlohmann::ordered_json::array();
  for (int d = 0; d <= M.max_dim(); ++d) {
    for (const auto& c : M.cells(d)) {
      nlohmann::ordered_json cell;
      cell["id"] = c;
      cell["dim"] = d;
      j["cells"].push_back(cell);
    }
  }
  for (int d = 1; d <= M.max_dim(); ++d) {
    for (const auto& c : M.cells(d)) {
      for (int i = 1; i <= d; ++i) {
        for (int alpha = 0; alpha <= 1; ++alpha) {
          auto f = M.face(c, i, alpha);
          if (!f) continue;
          nlohmann::ordered_json rec;
          rec["of"] = c;
          rec["i"] = i;
          rec["alpha"] = alpha;
          rec["to"] = *f;
          j["faces"].push_back(rec);
        }
      }
    }
  }
  return j;
}

// Loads an hda/1 payload and validates it. Invalid input is refused with the
// full violation report unless force is set, in which case everything that
// could be loaded is returned as-is.
inline PrecubicalSet precubical_from_json(const nlohmann::json& j,
                                          bool force = false) {
  if (!j.is_object() || !j.contains("cells") || !j.contains("faces"))
    throw validation_error("precubical JSON must have \"cells\" and \"faces\"");
  if (j.contains("schema") && j["schema"] != "hda/1")
    throw validation_error("unsupported precubical schema");

  PrecubicalSet M;
  std::vector<std::string> load_problems;
  for (const auto& cell : j["cells"]) {
    if (!cell.is_object() || !cell.contains("id") || !cell.contains("dim") ||
        !cell["id"].is_string() || !cell["dim"].is_number_integer()) {
      load_problems.push_back("malformed cell entry");
      continue;
    }
    std::string id = cell["id"].get<std::string>();
    int d = cell["dim"].get<int>();
    if (d < 0) {
      load_problems.push_back("cell \"" + id + "\" has negative dimension");
      continue;
    }
    if (M.has_cube(id)) {
      load_problems.push_back("duplicate cell id \"" + id + "\"");
      continue;
    }
    M.add_cube(id, d);
  }
  for (const auto& rec : j["faces"]) {
    if (!rec.is_object() || !rec.contains("of") || !rec.contains("i") ||
        !rec.contains("alpha") || !rec.contains("to") ||
        !rec["of"].is_string() || !rec["i"].is_number_integer() ||
        !rec["alpha"].is_number_integer() || !rec["to"].is_string()) {
      load_problems.push_back("malformed face entry");
      continue;
    }
    std::string of = rec["of"].get<std::string>();
    int i = rec["i"].get<int>();
    int alpha = rec["alpha"].get<int>();
    std::string to = rec["to"].get<std::string>();
    if (!M.has_cube(of)) {
      load_problems.push_back("face of unknown cube \"" + of + "\"");
      continue;
    }
    if (i < 1 || i > M.dim(of) || (alpha != 0 && alpha != 1)) {
      load_problems.push_back("face of \"" + of + "\" has bad index (i=" +
                              std::to_string(i) + ", alpha=" +
                              std::to_string(alpha) + ")");
      continue;
    }
    M.set_face(of, i, alpha, to);
  }

  std::vector<std::string> report = load_problems;
  for (const auto& v : validate(M)) report.push_back(v);
  if (!report.empty() && !force)
    throw validation_error("invalid precubical set: " + join(report, "; "));
  return M;
}

}  // namespace hda
