#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hda/errors.hpp"
#include "hda/util.hpp"

namespace hda {

// Finite directed multigraph with optional initial/final node marks.
// Insertion order of nodes and arcs is preserved so that serialization and
// traversal are deterministic.
class DirectedMultigraph {
 public:
  struct NodeInfo {
    bool initial = false;
    bool final = false;
  };
  struct ArcInfo {
    std::string src;
    std::string tgt;
  };

  void add_node(const std::string& id, bool initial = false,
                bool final = false) {
    if (nodes_.count(id))
      throw std::invalid_argument("duplicate node id \"" + id + "\"");
    nodes_[id] = NodeInfo{initial, final};
    node_order_.push_back(id);
  }

  void add_arc(const std::string& id, const std::string& src,
               const std::string& tgt) {
    if (arcs_.count(id))
      throw std::invalid_argument("duplicate arc id \"" + id + "\"");
    if (!nodes_.count(src))
      throw std::invalid_argument("arc \"" + id + "\" has unknown source \"" +
                                  src + "\"");
    if (!nodes_.count(tgt))
      throw std::invalid_argument("arc \"" + id + "\" has unknown target \"" +
                                  tgt + "\"");
    arcs_[id] = ArcInfo{src, tgt};
    arc_order_.push_back(id);
  }

  void remove_node(const std::string& id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end())
      throw std::invalid_argument("unknown node \"" + id + "\"");
    for (const auto& a : arc_order_) {
      const ArcInfo& info = arcs_.at(a);
      if (info.src == id || info.tgt == id)
        throw std::invalid_argument("node \"" + id + "\" still has arcs");
    }
    nodes_.erase(it);
    node_order_.erase(
        std::find(node_order_.begin(), node_order_.end(), id));
  }

  void remove_arc(const std::string& id) {
    if (!arcs_.erase(id))
      throw std::invalid_argument("unknown arc \"" + id + "\"");
    arc_order_.erase(std::find(arc_order_.begin(), arc_order_.end(), id));
  }

  bool has_node(const std::string& id) const { return nodes_.count(id) != 0; }
  bool has_arc(const std::string& id) const { return arcs_.count(id) != 0; }

  const std::vector<std::string>& node_ids() const { return node_order_; }
  const std::vector<std::string>& arc_ids() const { return arc_order_; }

  const std::string& src(const std::string& arc) const {
    return arc_info(arc).src;
  }
  const std::string& tgt(const std::string& arc) const {
    return arc_info(arc).tgt;
  }

  bool is_initial(const std::string& node) const {
    return node_info(node).initial;
  }
  bool is_final(const std::string& node) const { return node_info(node).final; }

  std::vector<std::string> out_arcs(const std::string& node) const {
    std::vector<std::string> out;
    for (const auto& a : arc_order_)
      if (arcs_.at(a).src == node) out.push_back(a);
    return out;
  }

  std::vector<std::string> in_arcs(const std::string& node) const {
    std::vector<std::string> in;
    for (const auto& a : arc_order_)
      if (arcs_.at(a).tgt == node) in.push_back(a);
    return in;
  }

  std::size_t out_degree(const std::string& node) const {
    return out_arcs(node).size();
  }
  std::size_t in_degree(const std::string& node) const {
    return in_arcs(node).size();
  }

  // Structural equality; insensitive to insertion order.
  bool operator==(const DirectedMultigraph& other) const {
    if (nodes_.size() != other.nodes_.size() ||
        arcs_.size() != other.arcs_.size())
      return false;
    for (const auto& [id, info] : nodes_) {
      auto it = other.nodes_.find(id);
      if (it == other.nodes_.end() || it->second.initial != info.initial ||
          it->second.final != info.final)
        return false;
    }
    for (const auto& [id, info] : arcs_) {
      auto it = other.arcs_.find(id);
      if (it == other.arcs_.end() || it->second.src != info.src ||
          it->second.tgt != info.tgt)
        return false;
    }
    return true;
  }

 private:
  const NodeInfo& node_info(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end())
      throw std::invalid_argument("unknown node \"" + id + "\"");
    return it->second;
  }
  const ArcInfo& arc_info(const std::string& id) const {
    auto it = arcs_.find(id);
    if (it == arcs_.end())
      throw std::invalid_argument("unknown arc \"" + id + "\"");
    return it->second;
  }

  std::vector<std::string> node_order_;
  std::vector<std::string> arc_order_;
  std::unordered_map<std::string, NodeInfo> nodes_;
  std::unordered_map<std::string, ArcInfo> arcs_;
};

// Mark consistency: an initial node admits no incoming arc, a final node no
// outgoing arc. Returns one message per violation, empty when consistent.
inline std::vector<std::string> validate_graph(const DirectedMultigraph& g) {
  std::vector<std::string> violations;
  for (const auto& n : g.node_ids()) {
    if (g.is_initial(n) && g.in_degree(n) > 0)
      violations.push_back("initial node \"" + n + "\" has incoming arcs");
    if (g.is_final(n) && g.out_degree(n) > 0)
      violations.push_back("final node \"" + n + "\" has outgoing arcs");
  }
  return violations;
}

inline nlohmann::ordered_json graph_to_json(const DirectedMultigraph& g) {
  nlohmann::ordered_json j;
  j["schema"] = "graph/1";
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : g.node_ids()) {
    nlohmann::ordered_json node;
    node["id"] = n;
    node["initial"] = g.is_initial(n);
    node["final"] = g.is_final(n);
    j["nodes"].push_back(node);
  }
  j["arcs"] = nlohmann::ordered_json::array();
  for (const auto& a : g.arc_ids()) {
    nlohmann::ordered_json arc;
    arc["id"] = a;
    arc["src"] = g.src(a);
    arc["tgt"] = g.tgt(a);
    j["arcs"].push_back(arc);
  }
  return j;
}

// Loads a graph/1 payload. Structural problems (dangling endpoints,
// duplicate ids, inconsistent marks) are refused unless force is set, in
// which case whatever could be loaded is returned.
inline DirectedMultigraph graph_from_json(const nlohmann::json& j,
                                          bool force = false) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("arcs"))
    throw validation_error("graph JSON must have \"nodes\" and \"arcs\"");
  if (j.contains("schema") && j["schema"] != "graph/1")
    throw validation_error("unsupported graph schema");

  DirectedMultigraph g;
  std::vector<std::string> violations;
  for (const auto& node : j["nodes"]) {
    if (!node.is_object() || !node.contains("id") || !node["id"].is_string()) {
      violations.push_back("malformed node entry");
      continue;
    }
    std::string id = node["id"].get<std::string>();
    bool initial = node.value("initial", false);
    bool final = node.value("final", false);
    if (g.has_node(id)) {
      violations.push_back("duplicate node id \"" + id + "\"");
      continue;
    }
    g.add_node(id, initial, final);
  }
  for (const auto& arc : j["arcs"]) {
    if (!arc.is_object() || !arc.contains("id") || !arc.contains("src") ||
        !arc.contains("tgt") || !arc["id"].is_string() ||
        !arc["src"].is_string() || !arc["tgt"].is_string()) {
      violations.push_back("malformed arc entry");
      continue;
    }
    std::string id = arc["id"].get<std::string>();
    std::string src = arc["src"].get<std::string>();
    std::string tgt = arc["tgt"].get<std::string>();
    if (g.has_arc(id)) {
      violations.push_back("duplicate arc id \"" + id + "\"");
      continue;
    }
    if (!g.has_node(src) || !g.has_node(tgt)) {
      violations.push_back("arc \"" + id + "\" references unknown nodes");
      continue;
    }
    g.add_arc(id, src, tgt);
  }
  for (const auto& v : validate_graph(g)) violations.push_back(v);
  if (!violations.empty() && !force)
    throw validation_error("invalid graph: " + join(violations, "; "));
  return g;
}

}  // namespace hda
