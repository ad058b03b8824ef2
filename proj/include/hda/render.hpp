#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hda/analysis.hpp"
#include "hda/precubical.hpp"
#include "hda/pv.hpp"
#include "hda/semantics.hpp"

namespace hda {

struct RenderOptions {
  int unit_px = 40;
  int margin_px = 60;
};

struct RenderInput {
  const PvProgram* program = nullptr;
  const PrecubicalSet* complex = nullptr;
  std::vector<std::string> unsafe;       // vertex ids, hatched
  std::vector<std::string> unreachable;  // vertex ids, outlined
  std::vector<Dipath> representatives;   // one polyline per class
};

namespace detail {

inline const char* k_palette[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

inline const char* k_dashes[4] = {"none", "10,4", "3,3", "10,3,2,3"};

}  // namespace detail

// Progress-graph picture of a 2-process program: unit grid (the surviving
// edges), forbidden unit squares in 50% gray, unsafe vertices hatched,
// unreachable vertices outlined, one colored polyline per schedule class,
// and an axis label at each action completion time. The second process runs
// upward. Output is deterministic, integer-coordinate SVG.
inline std::string render_svg(const RenderInput& input,
                              const RenderOptions& options = {}) {
  const PvProgram& prog = *input.program;
  const PrecubicalSet& M = *input.complex;
  if (prog.processes.size() != 2)
    throw std::invalid_argument("rendering requires exactly 2 processes");

  std::vector<int> extents = grid_extents(prog);
  int Lx = extents[0], Ly = extents[1];
  int unit = options.unit_px, margin = options.margin_px;
  int width = 2 * margin + Lx * unit;
  int height = 2 * margin + Ly * unit;

  auto px = [&](int x) { return margin + x * unit; };
  auto py = [&](int y) { return margin + (Ly - y) * unit; };

  std::string svg;
  auto line = [&](const std::string& s) { svg += s + "\n"; };

  line("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       std::to_string(width) + "\" height=\"" + std::to_string(height) +
       "\" viewBox=\"0 0 " + std::to_string(width) + " " +
       std::to_string(height) + "\">");
  line("<defs>");
  line("<pattern id=\"hatch\" width=\"6\" height=\"6\" "
       "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
       "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#b22222\" "
       "stroke-width=\"2\"/></pattern>");
  line("</defs>");
  line("<rect width=\"" + std::to_string(width) + "\" height=\"" +
       std::to_string(height) + "\" fill=\"#ffffff\"/>");

  // Forbidden unit squares: in-bounds squares missing from the complex.
  for (int y = 0; y < Ly; ++y) {
    for (int x = 0; x < Lx; ++x) {
      std::string id = cell_id(GridCell{{x, y}, {0, 1}});
      if (M.has_cube(id)) continue;
      line("<rect class=\"forbidden\" x=\"" + std::to_string(px(x)) +
           "\" y=\"" + std::to_string(py(y + 1)) + "\" width=\"" +
           std::to_string(unit) + "\" height=\"" + std::to_string(unit) +
           "\" fill=\"#7f7f7f\"/>");
    }
  }

  // Surviving grid edges.
  for (const auto& e : M.cells(1)) {
    GridCell c = cell_from_id(e);
    int x0 = c.lower[0], y0 = c.lower[1];
    int x1 = x0 + (c.spanned[0] == 0 ? 1 : 0);
    int y1 = y0 + (c.spanned[0] == 1 ? 1 : 0);
    line("<line class=\"edge\" x1=\"" + std::to_string(px(x0)) + "\" y1=\"" +
         std::to_string(py(y0)) + "\" x2=\"" + std::to_string(px(x1)) +
         "\" y2=\"" + std::to_string(py(y1)) +
         "\" stroke=\"#444444\" stroke-width=\"1\"/>");
  }

  // Schedule-class representatives.
  for (std::size_t k = 0; k < input.representatives.size(); ++k) {
    const Dipath& p = input.representatives[k];
    std::string points;
    for (const auto& v : p.vertices) {
      GridCell c = cell_from_id(v);
      if (!points.empty()) points += " ";
      points += std::to_string(px(c.lower[0])) + "," +
                std::to_string(py(c.lower[1]));
    }
    std::string dash(detail::k_dashes[k % 4]);
    line("<polyline class=\"schedule schedule-" + std::to_string(k) +
         "\" points=\"" + points + "\" fill=\"none\" stroke=\"" +
         detail::k_palette[k % 8] + "\" stroke-width=\"3\"" +
         (dash == "none" ? std::string()
                         : " stroke-dasharray=\"" + dash + "\"") +
         " stroke-opacity=\"0.85\"/>");
  }

  // Unsafe (hatched) and unreachable (outlined) vertices.
  for (const auto& v : input.unsafe) {
    GridCell c = cell_from_id(v);
    line("<circle class=\"unsafe\" cx=\"" + std::to_string(px(c.lower[0])) +
         "\" cy=\"" + std::to_string(py(c.lower[1])) +
         "\" r=\"7\" fill=\"url(#hatch)\" stroke=\"#b22222\" "
         "stroke-width=\"1\"/>");
  }
  for (const auto& v : input.unreachable) {
    GridCell c = cell_from_id(v);
    line("<circle class=\"unreachable\" cx=\"" +
         std::to_string(px(c.lower[0])) + "\" cy=\"" +
         std::to_string(py(c.lower[1])) +
         "\" r=\"9\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" "
         "stroke-dasharray=\"3,2\"/>");
  }

  // Axes with action labels at completion times.
  line("<line class=\"axis\" x1=\"" + std::to_string(px(0)) + "\" y1=\"" +
       std::to_string(py(0)) + "\" x2=\"" + std::to_string(px(Lx) + 14) +
       "\" y2=\"" + std::to_string(py(0)) +
       "\" stroke=\"#000000\" stroke-width=\"1\"/>");
  line("<line class=\"axis\" x1=\"" + std::to_string(px(0)) + "\" y1=\"" +
       std::to_string(py(0)) + "\" x2=\"" + std::to_string(px(0)) +
       "\" y2=\"" + std::to_string(py(Ly) - 14) +
       "\" stroke=\"#000000\" stroke-width=\"1\"/>");
  auto action_text = [](const Action& a) {
    return (a.kind == ActionKind::Lock ? "P" : "V") + a.resource;
  };
  for (std::size_t k = 0; k < prog.processes[0].size(); ++k) {
    line("<text class=\"label\" x=\"" +
         std::to_string(px(static_cast<int>(k) + 1)) + "\" y=\"" +
         std::to_string(py(0) + 24) +
         "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\" fill=\"#000000\">" +
         action_text(prog.processes[0][k]) + "</text>");
  }
  for (std::size_t k = 0; k < prog.processes[1].size(); ++k) {
    line("<text class=\"label\" x=\"" + std::to_string(px(0) - 24) +
         "\" y=\"" + std::to_string(py(static_cast<int>(k) + 1) + 5) +
         "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\" fill=\"#000000\">" +
         action_text(prog.processes[1][k]) + "</text>");
  }
  line("<text class=\"label\" x=\"" + std::to_string(px(0) - 12) + "\" y=\"" +
       std::to_string(py(0) + 20) +
       "\" font-family=\"sans-serif\" font-size=\"13\" "
       "text-anchor=\"middle\" fill=\"#000000\">0</text>");

  line("</svg>");
  return svg;
}

}  // namespace hda
