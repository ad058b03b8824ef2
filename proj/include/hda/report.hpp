#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "hda/analysis.hpp"
#include "hda/precubical.hpp"
#include "hda/pv.hpp"
#include "hda/semantics.hpp"
#include "hda/util.hpp"

namespace hda {

struct AnalysisReport {
  PvProgram program;
  std::vector<int> extents;
  std::map<int, std::size_t> cell_counts;
  std::string initial;
  std::string final;
  std::vector<std::string> deadlocks;    // sinks other than the final vertex
  std::vector<std::string> unsafe;       // final not reachable (⊇ deadlocks)
  std::vector<std::string> unreachable;  // not reachable from the initial
  std::size_t dipath_count = 0;
  std::size_t class_count = 0;
  std::vector<Dipath> representatives;
  std::vector<std::string> notes;
  double timing_ms = -1.0;  // < 0 means "not measured"
};

struct AnalyzeOptions {
  CompileOptions compile;
  EnumerateOptions enumerate;
  bool timing = false;
};

// Full pipeline: compile the program to its cubical model, classify vertices,
// enumerate schedules, and group them into equivalence classes.
inline AnalysisReport analyze_program(const PvProgram& prog,
                                      const AnalyzeOptions& options = {}) {
  auto t0 = std::chrono::steady_clock::now();
  AnalysisReport r;
  r.program = prog;
  r.extents = grid_extents(prog);

  PrecubicalSet M = pv_to_precubical(prog, options.compile);
  for (int d = 0; d <= M.max_dim(); ++d)
    r.cell_counts[d] = M.cells(d).size();

  r.initial = initial_vertex_id(prog);
  r.final = final_vertex_id(prog);
  if (!M.has_cube(r.initial)) {
    r.notes.push_back("initial state is forbidden; nothing can run");
    return r;
  }
  bool final_ok = M.has_cube(r.final);
  r.unreachable = unreachable_states(M, r.initial);
  if (final_ok) {
    r.deadlocks = deadlocks(M, r.final);
    r.unsafe = unsafe_states(M, r.final);
    ScheduleClasses sc =
        dihomotopy_classes(M, r.initial, r.final, options.enumerate);
    r.dipath_count = sc.dipaths.size();
    r.class_count = sc.classes.size();
    for (std::size_t idx : sc.representatives)
      r.representatives.push_back(sc.dipaths[idx]);
  } else {
    r.notes.push_back("final state is forbidden; no schedule can complete");
    // With no final vertex, every sink is a dead end.
    DirectedMultigraph skel = skeleton_graph(M);
    for (const auto& v : skel.node_ids())
      if (skel.out_arcs(v).empty()) r.deadlocks.push_back(v);
    std::sort(r.deadlocks.begin(), r.deadlocks.end(), NaturalLess{});
    r.unsafe = r.deadlocks;
  }

  if (options.timing) {
    auto t1 = std::chrono::steady_clock::now();
    r.timing_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  return r;
}

// Same classification pipeline for a prebuilt complex (no program echo).
// Endpoints default to the numerically least / greatest vertex id.
inline AnalysisReport analyze_complex(const PrecubicalSet& M,
                                      std::string initial = "",
                                      std::string final = "",
                                      const AnalyzeOptions& options = {}) {
  auto t0 = std::chrono::steady_clock::now();
  AnalysisReport r;
  for (int d = 0; d <= M.max_dim(); ++d)
    r.cell_counts[d] = M.cells(d).size();
  const auto& verts = M.cells(0);
  if (verts.empty())
    throw validation_error("complex has no vertices to analyze");
  if (initial.empty())
    initial = *std::min_element(verts.begin(), verts.end(), natural_less);
  if (final.empty())
    final = *std::max_element(verts.begin(), verts.end(), natural_less);
  if (!M.has_cube(initial) || M.dim(initial) != 0)
    throw validation_error("initial vertex \"" + initial +
                           "\" is not a vertex of the complex");
  if (!M.has_cube(final) || M.dim(final) != 0)
    throw validation_error("final vertex \"" + final +
                           "\" is not a vertex of the complex");
  r.initial = initial;
  r.final = final;

  r.deadlocks = deadlocks(M, r.final);
  r.unsafe = unsafe_states(M, r.final);
  r.unreachable = unreachable_states(M, r.initial);

  ScheduleClasses sc =
      dihomotopy_classes(M, r.initial, r.final, options.enumerate);
  r.dipath_count = sc.dipaths.size();
  r.class_count = sc.classes.size();
  for (std::size_t idx : sc.representatives)
    r.representatives.push_back(sc.dipaths[idx]);

  if (options.timing) {
    auto t1 = std::chrono::steady_clock::now();
    r.timing_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  return r;
}

inline nlohmann::json report_to_json(const AnalysisReport& r) {
  nlohmann::json j;
  j["schema"] = "report/1";
  if (!r.program.processes.empty()) {
    nlohmann::json jp;
    nlohmann::json procs = nlohmann::json::array();
    for (const auto& proc : r.program.processes) {
      std::string term;
      for (const auto& a : proc) {
        if (!term.empty()) term += ".";
        term += (a.kind == ActionKind::Lock ? "P" : "V") + a.resource;
      }
      procs.push_back(term);
    }
    jp["processes"] = procs;
    nlohmann::json caps = nlohmann::json::object();
    for (const auto& [name, cap] : r.program.capacities) caps[name] = cap;
    jp["capacities"] = caps;
    j["program"] = jp;
    j["extents"] = r.extents;
  }
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [d, n] : r.cell_counts)
    counts[std::to_string(d)] = n;
  j["cell_counts"] = counts;
  j["initial"] = r.initial;
  j["final"] = r.final;
  j["deadlocks"] = r.deadlocks;
  j["unsafe"] = r.unsafe;
  j["unreachable"] = r.unreachable;
  j["dipaths"] = r.dipath_count;
  nlohmann::json sched;
  sched["count"] = r.class_count;
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& p : r.representatives) reps.push_back(p.vertices);
  sched["representatives"] = reps;
  j["schedules"] = sched;
  j["notes"] = r.notes;
  if (r.timing_ms >= 0.0) j["timing_ms"] = r.timing_ms;
  return j;
}

inline std::string report_to_text(const AnalysisReport& r) {
  std::string out;
  if (!r.program.processes.empty()) {
    out += "program:\n";
    std::string pp = pretty_print(r.program);
    std::size_t pos = 0;
    while (pos < pp.size()) {
      std::size_t nl = pp.find('\n', pos);
      if (nl == std::string::npos) nl = pp.size();
      out += "  " + pp.substr(pos, nl - pos) + "\n";
      pos = nl + 1;
    }
    out += "extents:";
    for (int e : r.extents) out += " " + std::to_string(e);
    out += "\n";
  }
  out += "cells:";
  for (const auto& [d, n] : r.cell_counts)
    out += " dim" + std::to_string(d) + "=" + std::to_string(n);
  out += "\n";
  out += "initial: " + r.initial + "\n";
  out += "final: " + r.final + "\n";
  auto list = [&](const std::string& name,
                  const std::vector<std::string>& v) {
    out += name + ":";
    if (v.empty()) out += " none";
    for (const auto& x : v) out += " " + x;
    out += "\n";
  };
  list("deadlocks", r.deadlocks);
  list("unsafe", r.unsafe);
  list("unreachable", r.unreachable);
  out += "dipaths: " + std::to_string(r.dipath_count) + "\n";
  out += "schedule classes: " + std::to_string(r.class_count) + "\n";
  for (std::size_t k = 0; k < r.representatives.size(); ++k) {
    out += "  class " + std::to_string(k) + ": " +
           join(r.representatives[k].vertices, " -> ") + "\n";
  }
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  if (r.timing_ms >= 0.0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "timing: %.1f ms\n", r.timing_ms);
    out += buf;
  }
  return out;
}

}  // namespace hda
