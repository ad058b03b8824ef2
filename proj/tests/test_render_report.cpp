#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "hda/hda.hpp"
#include "test_support.hpp"

using Catch::Matchers::ContainsSubstring;
using hda::AnalysisReport;
using hda::analyze_complex;
using hda::analyze_program;
using hda::AnalyzeOptions;
using hda::parse_pv;
using hda::PrecubicalSet;
using hda::pv_to_precubical;
using hda::PvProgram;
using hda::render_svg;
using hda::RenderInput;
using hda::RenderOptions;
using hda::report_to_json;
using hda::report_to_text;

namespace {

const char* kCrossing = "Pa.Pb.Vb.Va | Pb.Pa.Va.Vb";

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

std::string render_program(const char* text) {
  PvProgram prog = parse_pv(text);
  AnalysisReport r = analyze_program(prog);
  PrecubicalSet M = pv_to_precubical(prog);
  RenderInput in;
  in.program = &prog;
  in.complex = &M;
  in.unsafe = r.unsafe;
  in.unreachable = r.unreachable;
  in.representatives = r.representatives;
  return render_svg(in);
}

}  // namespace

TEST_CASE("progress graph picture of the crossing sections", "[render]") {
  std::string svg = render_program(kCrossing);
  REQUIRE(svg.rfind("<svg ", 0) == 0);
  REQUIRE(count_of(svg, "class=\"forbidden\"") == 5);
  REQUIRE(count_of(svg, "<polyline") == 2);
  REQUIRE(count_of(svg, "class=\"unsafe\"") == 1);
  REQUIRE(count_of(svg, "class=\"unreachable\"") == 1);
  // 4 + 4 action labels plus the origin.
  REQUIRE(count_of(svg, "<text") == 9);
  REQUIRE_THAT(svg, ContainsSubstring(">Pa</text>"));
  REQUIRE_THAT(svg, ContainsSubstring(">Vb</text>"));
  REQUIRE_THAT(svg, ContainsSubstring(">0</text>"));

  // Default geometry: 40px cells, 60px margin, second process upward. The
  // first blocked square has lower corner (2,1), so it is drawn at
  // x = 60 + 2*40 and y = 60 + (5-2)*40.
  REQUIRE_THAT(svg,
               ContainsSubstring(
                   "<rect class=\"forbidden\" x=\"140\" y=\"180\""));
  // The blocked state (2,2) is hatched at (140, 180); the pocket state
  // (3,3) is outlined at (180, 140).
  REQUIRE_THAT(svg, ContainsSubstring(
                        "<circle class=\"unsafe\" cx=\"140\" cy=\"180\""));
  REQUIRE_THAT(svg, ContainsSubstring(
                        "<circle class=\"unreachable\" cx=\"180\" cy=\"140\""));
  // The first class representative starts at the origin and moves up.
  REQUIRE_THAT(svg, ContainsSubstring("points=\"60,260 60,220"));
  // Distinct classes get distinct stroke styles.
  REQUIRE_THAT(svg, ContainsSubstring("stroke=\"#1f77b4\""));
  REQUIRE_THAT(svg, ContainsSubstring("stroke=\"#d62728\""));
  REQUIRE_THAT(svg, ContainsSubstring("stroke-dasharray=\"10,4\""));

  // Deterministic output.
  REQUIRE(svg == render_program(kCrossing));
}

TEST_CASE("conflict-free programs draw a clean grid", "[render]") {
  std::string svg = render_program("Pa.Va | Pb.Vb");
  REQUIRE(count_of(svg, "class=\"forbidden\"") == 0);
  REQUIRE(count_of(svg, "<polyline") == 1);
  REQUIRE(count_of(svg, "class=\"unsafe\"") == 0);
  REQUIRE(count_of(svg, "class=\"unreachable\"") == 0);
  // All 24 surviving grid edges are drawn, plus the two axis lines.
  REQUIRE(count_of(svg, "class=\"edge\"") == 24);
  REQUIRE(count_of(svg, "class=\"axis\"") == 2);
}

TEST_CASE("one polyline per schedule class", "[render]") {
  std::string svg = render_program("Pb.Vb.Pa.Va | Pa.Va.Pb.Vb");
  REQUIRE(count_of(svg, "<polyline") == 3);
  REQUIRE_THAT(svg, ContainsSubstring("schedule-0"));
  REQUIRE_THAT(svg, ContainsSubstring("schedule-1"));
  REQUIRE_THAT(svg, ContainsSubstring("schedule-2"));
  REQUIRE_THAT(svg, ContainsSubstring("stroke-dasharray=\"3,3\""));
}

TEST_CASE("rendering is defined for exactly two processes", "[render]") {
  for (const char* text : {"Pa.Va", "Pa.Va | Pa.Va | Pa.Va"}) {
    PvProgram prog = parse_pv(text);
    PrecubicalSet M = pv_to_precubical(prog);
    RenderInput in;
    in.program = &prog;
    in.complex = &M;
    REQUIRE_THROWS_AS(render_svg(in), std::invalid_argument);
  }
}

TEST_CASE("render geometry follows the options", "[render]") {
  PvProgram prog = parse_pv(kCrossing);
  PrecubicalSet M = pv_to_precubical(prog);
  RenderInput in;
  in.program = &prog;
  in.complex = &M;
  RenderOptions opt;
  opt.unit_px = 10;
  opt.margin_px = 5;
  std::string svg = render_svg(in, opt);
  // 2*5 + 5*10 on both sides.
  REQUIRE_THAT(svg, ContainsSubstring("width=\"60\" height=\"60\""));
  REQUIRE_THAT(svg, ContainsSubstring("viewBox=\"0 0 60 60\""));
}

TEST_CASE("full analysis of the crossing sections", "[report]") {
  AnalysisReport r = analyze_program(parse_pv(kCrossing));
  REQUIRE(r.extents == std::vector<int>{5, 5});
  REQUIRE(r.cell_counts ==
          std::map<int, std::size_t>{{0, 36}, {1, 56}, {2, 20}});
  REQUIRE(r.initial == "(0,0)");
  REQUIRE(r.final == "(5,5)");
  REQUIRE(r.deadlocks == std::vector<std::string>{"(2,2)"});
  REQUIRE(r.unsafe == std::vector<std::string>{"(2,2)"});
  REQUIRE(r.unreachable == std::vector<std::string>{"(3,3)"});
  REQUIRE(r.dipath_count == 84);
  REQUIRE(r.class_count == 2);
  REQUIRE(r.representatives.size() == 2);
  REQUIRE(r.representatives[0].vertices.front() == "(0,0)");
  REQUIRE(r.representatives[0].vertices.back() == "(5,5)");
  REQUIRE(r.notes.empty());
  REQUIRE(r.timing_ms < 0.0);

  AnalyzeOptions timed;
  timed.timing = true;
  REQUIRE(analyze_program(parse_pv(kCrossing), timed).timing_ms >= 0.0);
}

TEST_CASE("a program that cannot finish reports every dead end", "[report]") {
  AnalysisReport r = analyze_program(parse_pv("Pa | Pa"));
  REQUIRE(r.cell_counts ==
          std::map<int, std::size_t>{{0, 8}, {1, 10}, {2, 3}});
  REQUIRE(r.final == "(2,2)");
  REQUIRE(r.notes ==
          std::vector<std::string>{
              "final state is forbidden; no schedule can complete"});
  REQUIRE(r.deadlocks == std::vector<std::string>{"(1,2)", "(2,1)"});
  REQUIRE(r.unsafe == r.deadlocks);
  REQUIRE(r.dipath_count == 0);
  REQUIRE(r.class_count == 0);
  REQUIRE(r.representatives.empty());
}

TEST_CASE("analysis limits propagate", "[report]") {
  AnalyzeOptions tight_cells;
  tight_cells.compile.max_cells = 10;
  REQUIRE_THROWS_AS(analyze_program(parse_pv(kCrossing), tight_cells),
                    hda::resource_limit_error);
  AnalyzeOptions tight_paths;
  tight_paths.enumerate.cap = 3;
  REQUIRE_THROWS_AS(analyze_program(parse_pv(kCrossing), tight_paths),
                    hda::resource_limit_error);
}

TEST_CASE("analysis of a prebuilt complex", "[report]") {
  PrecubicalSet M = pv_to_precubical(parse_pv(kCrossing));
  AnalysisReport r = analyze_complex(M);
  // Endpoints default to the numerically least and greatest vertices.
  REQUIRE(r.initial == "(0,0)");
  REQUIRE(r.final == "(5,5)");
  REQUIRE(r.deadlocks == std::vector<std::string>{"(2,2)"});
  REQUIRE(r.unreachable == std::vector<std::string>{"(3,3)"});
  REQUIRE(r.dipath_count == 84);
  REQUIRE(r.class_count == 2);
  REQUIRE(r.program.processes.empty());

  AnalysisReport mid = analyze_complex(M, "(2,2)", "(5,5)");
  REQUIRE(mid.dipath_count == 0);

  REQUIRE_THROWS_AS(analyze_complex(M, "(9,9)", ""), hda::validation_error);
  REQUIRE_THROWS_AS(analyze_complex(M, "", "(0,0)|d1"),
                    hda::validation_error);
  REQUIRE_THROWS_AS(analyze_complex(PrecubicalSet{}), hda::validation_error);
}

TEST_CASE("report JSON shape", "[report]") {
  AnalysisReport r = analyze_program(parse_pv(kCrossing));
  nlohmann::json j = report_to_json(r);
  REQUIRE(j["schema"] == "report/1");
  REQUIRE(j["program"]["processes"] ==
          nlohmann::json({"Pa.Pb.Vb.Va", "Pb.Pa.Va.Vb"}));
  REQUIRE(j["program"]["capacities"]["a"] == 1);
  REQUIRE(j["program"]["capacities"]["b"] == 1);
  REQUIRE(j["extents"] == nlohmann::json({5, 5}));
  REQUIRE(j["cell_counts"]["0"] == 36);
  REQUIRE(j["cell_counts"]["1"] == 56);
  REQUIRE(j["cell_counts"]["2"] == 20);
  REQUIRE(j["initial"] == "(0,0)");
  REQUIRE(j["final"] == "(5,5)");
  REQUIRE(j["deadlocks"] == nlohmann::json({"(2,2)"}));
  REQUIRE(j["unreachable"] == nlohmann::json({"(3,3)"}));
  REQUIRE(j["dipaths"] == 84);
  REQUIRE(j["schedules"]["count"] == 2);
  REQUIRE(j["schedules"]["representatives"].size() == 2);
  REQUIRE(j["schedules"]["representatives"][0][0] == "(0,0)");
  REQUIRE(j["notes"].is_array());
  REQUIRE(j["notes"].empty());
  REQUIRE_FALSE(j.contains("timing_ms"));

  AnalyzeOptions timed;
  timed.timing = true;
  nlohmann::json jt =
      report_to_json(analyze_program(parse_pv(kCrossing), timed));
  REQUIRE(jt.contains("timing_ms"));
  REQUIRE(jt["timing_ms"].get<double>() >= 0.0);

  // A complex-only report omits the program echo.
  nlohmann::json jc =
      report_to_json(analyze_complex(pv_to_precubical(parse_pv(kCrossing))));
  REQUIRE_FALSE(jc.contains("program"));
  REQUIRE_FALSE(jc.contains("extents"));

  // Serialization is deterministic.
  REQUIRE(report_to_json(r).dump() == j.dump());
}

TEST_CASE("report text shape", "[report]") {
  std::string text = report_to_text(analyze_program(parse_pv(kCrossing)));
  REQUIRE_THAT(text, ContainsSubstring("program:\n"));
  REQUIRE_THAT(text, ContainsSubstring("extents: 5 5\n"));
  REQUIRE_THAT(text, ContainsSubstring("cells: dim0=36 dim1=56 dim2=20\n"));
  REQUIRE_THAT(text, ContainsSubstring("initial: (0,0)\n"));
  REQUIRE_THAT(text, ContainsSubstring("final: (5,5)\n"));
  REQUIRE_THAT(text, ContainsSubstring("deadlocks: (2,2)\n"));
  REQUIRE_THAT(text, ContainsSubstring("unsafe: (2,2)\n"));
  REQUIRE_THAT(text, ContainsSubstring("unreachable: (3,3)\n"));
  REQUIRE_THAT(text, ContainsSubstring("dipaths: 84\n"));
  REQUIRE_THAT(text, ContainsSubstring("schedule classes: 2\n"));
  REQUIRE_THAT(text, ContainsSubstring("class 0: (0,0) -> (0,1)"));
  REQUIRE_THAT(text, ContainsSubstring("class 1: "));

  std::string clean = report_to_text(analyze_program(parse_pv("Pa.Va | Pb.Vb")));
  REQUIRE_THAT(clean, ContainsSubstring("deadlocks: none\n"));
  REQUIRE_THAT(clean, ContainsSubstring("unsafe: none\n"));
  REQUIRE_THAT(clean, ContainsSubstring("unreachable: none\n"));

  std::string noted = report_to_text(analyze_program(parse_pv("Pa | Pa")));
  REQUIRE_THAT(noted, ContainsSubstring(
                          "note: final state is forbidden; no schedule can "
                          "complete\n"));

  AnalyzeOptions timed;
  timed.timing = true;
  std::string with_time =
      report_to_text(analyze_program(parse_pv(kCrossing), timed));
  REQUIRE_THAT(with_time, ContainsSubstring("timing: "));
  REQUIRE_THAT(with_time, ContainsSubstring(" ms\n"));
}
