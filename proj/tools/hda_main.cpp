// Command-line driver: parse -> compile -> analyze -> report, plus SVG
// rendering, file validation, globe-path checking, and graph deformation.
//
// Exit codes: 0 ok / no deadlock, 1 parse error, 2 negative verdict
// (deadlocks found, paths rejected, graphs inequivalent), 3 validation
// error, 4 cap exceeded, 5 I/O error, 64 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hda/hda.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hda::io_error("cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw hda::io_error("read failure on \"" + path + "\"");
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hda::io_error("cannot write \"" + path + "\"");
  out << content;
  out.flush();
  if (!out.good()) throw hda::io_error("write failure on \"" + path + "\"");
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw hda::parse_error(std::string("invalid JSON: ") + e.what());
  }
}

bool is_json_path(const std::string& path) {
  return path.size() >= 5 && path.ends_with(".json");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

struct AnalyzeArgs {
  std::string input;
  std::string output;
  std::string format = "text";
  std::string initial;
  std::string final;
  std::size_t cap = hda::CompileOptions{}.max_cells;
  std::size_t dipath_cap = hda::EnumerateOptions{}.cap;
  bool timing = false;
  bool force = false;
};

hda::AnalysisReport run_analysis(const AnalyzeArgs& a) {
  hda::AnalyzeOptions opts;
  opts.compile.max_cells = a.cap;
  opts.enumerate.cap = a.dipath_cap;
  opts.timing = a.timing;
  if (is_json_path(a.input)) {
    nlohmann::json j = parse_json(read_file(a.input));
    hda::PrecubicalSet M = hda::precubical_from_json(j, a.force);
    return hda::analyze_complex(M, a.initial, a.final, opts);
  }
  if (!a.initial.empty() || !a.final.empty())
    throw hda::validation_error(
        "--init/--final apply only to complex (JSON) inputs");
  hda::PvProgram prog = hda::parse_pv(read_file(a.input));
  return hda::analyze_program(prog, opts);
}

int cmd_analyze(const AnalyzeArgs& a) {
  hda::AnalysisReport r = run_analysis(a);
  std::string text = a.format == "json"
                         ? hda::report_to_json(r).dump(2) + "\n"
                         : hda::report_to_text(r);
  write_output(a.output, text);
  return r.deadlocks.empty() ? 0 : 2;
}

int cmd_render(const AnalyzeArgs& a) {
  if (is_json_path(a.input))
    throw hda::validation_error("rendering requires a program, not a complex");
  hda::PvProgram prog = hda::parse_pv(read_file(a.input));
  if (prog.processes.size() != 2)
    throw hda::validation_error("rendering requires exactly 2 processes, got " +
                                std::to_string(prog.processes.size()));
  hda::AnalyzeOptions opts;
  opts.compile.max_cells = a.cap;
  opts.enumerate.cap = a.dipath_cap;
  hda::AnalysisReport r = hda::analyze_program(prog, opts);
  hda::PrecubicalSet M = hda::pv_to_precubical(prog, opts.compile);
  hda::RenderInput in;
  in.program = &prog;
  in.complex = &M;
  in.unsafe = r.unsafe;
  in.unreachable = r.unreachable;
  in.representatives = r.representatives;
  write_output(a.output, hda::render_svg(in));
  return 0;
}

int cmd_validate(const std::string& input, bool force) {
  if (is_json_path(input)) {
    nlohmann::json j = parse_json(read_file(input));
    std::string schema = j.is_object() && j.contains("schema") &&
                                 j["schema"].is_string()
                             ? j["schema"].get<std::string>()
                             : "";
    if (schema == "graph/1") {
      hda::DirectedMultigraph g = hda::graph_from_json(j, force);
      std::cout << "ok: graph with " << g.node_ids().size() << " nodes, "
                << g.arc_ids().size() << " arcs\n";
      return 0;
    }
    hda::PrecubicalSet M = hda::precubical_from_json(j, force);
    std::cout << "ok: complex with " << M.cell_count() << " cells up to "
              << "dimension " << M.max_dim() << "\n";
    return 0;
  }
  hda::PvProgram prog = hda::parse_pv(read_file(input));
  std::cout << "ok: program with " << prog.processes.size()
            << " processes, " << prog.capacities.size() << " semaphores\n";
  return 0;
}

int cmd_globe_check(const std::string& input, bool non_constant) {
  nlohmann::json j = parse_json(read_file(input));
  if (!j.is_object() || j.value("schema", "") != "globe-paths/1")
    throw hda::parse_error("expected {\"schema\": \"globe-paths/1\", ...}");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw hda::parse_error("missing integer field \"n\"");
  int n = j["n"].get<int>();
  if (n < 2) throw hda::parse_error("\"n\" must be at least 2");
  if (!j.contains("paths") || !j["paths"].is_array())
    throw hda::parse_error("missing array field \"paths\"");

  auto sample_to_point = [&](const nlohmann::json& s) -> hda::GlobePoint {
    if (s.is_array()) {
      hda::CubePoint t;
      for (const auto& c : s) {
        if (!c.is_number()) throw hda::parse_error("cube sample entries must be numbers");
        t.push_back(c.get<double>());
      }
      if (static_cast<int>(t.size()) != n)
        throw hda::parse_error("cube sample has " +
                               std::to_string(t.size()) + " coordinates, expected " +
                               std::to_string(n));
      return hda::cube_to_globe(t);
    }
    if (s.is_object() && s.contains("tag")) {
      std::string tag = s.value("tag", "");
      if (tag == "iota") return hda::GlobePoint::iota();
      if (tag == "sigma") return hda::GlobePoint::sigma();
      if (tag == "interior") {
        if (!s.contains("base") || !s["base"].is_array() ||
            !s.contains("time") || !s["time"].is_number())
          throw hda::parse_error("interior sample needs \"base\" and \"time\"");
        std::vector<double> base;
        for (const auto& c : s["base"]) base.push_back(c.get<double>());
        if (static_cast<int>(base.size()) != n - 1)
          throw hda::parse_error("interior base has " +
                                 std::to_string(base.size()) +
                                 " coordinates, expected " +
                                 std::to_string(n - 1));
        return hda::GlobePoint::interior(base, s["time"].get<double>());
      }
      throw hda::parse_error("unknown sample tag \"" + tag + "\"");
    }
    throw hda::parse_error("sample must be a coordinate array or a tagged object");
  };

  std::size_t rejected = 0;
  std::size_t index = 0;
  std::string out;
  for (const auto& jp : j["paths"]) {
    if (!jp.is_array() || jp.empty())
      throw hda::parse_error("each path must be a non-empty sample array");
    std::vector<hda::GlobePoint> pts;
    for (const auto& s : jp) pts.push_back(sample_to_point(s));

    bool monotone = true;
    std::size_t bad_at = 0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      if (!hda::globe_leq(pts[k], pts[k + 1])) {
        monotone = false;
        bad_at = k + 1;
        break;
      }
    }
    bool constant = monotone;
    if (monotone) {
      for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        constant = constant && hda::globe_leq(pts[k + 1], pts[k]);
    }

    std::string label = "path " + std::to_string(index);
    if (!monotone) {
      out += label + ": non-monotone at sample " + std::to_string(bad_at) + "\n";
      ++rejected;
    } else if (non_constant && constant) {
      out += label + ": constant (rejected: directed paths must be "
             "non-contracting)\n";
      ++rejected;
    } else {
      out += label + ": monotone\n";
      bool applicable = pts.front().tag == hda::GlobeTag::Iota &&
                        pts.back().tag == hda::GlobeTag::Sigma;
      if (applicable) {
        try {
          std::vector<double> base = hda::underlying_point(pts);
          std::string coords;
          for (double b : base) {
            if (!coords.empty()) coords += ", ";
            coords += format_double(b);
          }
          out += label + ": underlying point = (" + coords + ")\n";
        } catch (const std::invalid_argument&) {
          // No single underlying point (bases vary or no interior sample).
        }
      }
    }
    ++index;
  }
  out += "checked " + std::to_string(index) + " paths: " +
         std::to_string(index - rejected) + " ok, " +
         std::to_string(rejected) + " rejected\n";
  std::cout << out;
  return rejected == 0 ? 0 : 2;
}

hda::DirectedMultigraph load_graph(const std::string& path, bool force) {
  return hda::graph_from_json(parse_json(read_file(path)), force);
}

int cmd_deform_subdivide(const std::string& input, const std::string& arc,
                         int parts, const std::string& output, bool force) {
  hda::DirectedMultigraph g = load_graph(input, force);
  hda::DirectedMultigraph h = hda::subdivide(g, arc, parts);
  write_output(output, hda::graph_to_json(h).dump(2) + "\n");
  return 0;
}

int cmd_deform_normalize(const std::string& input, const std::string& output,
                         bool force) {
  hda::DirectedMultigraph g = load_graph(input, force);
  hda::DirectedMultigraph h = hda::normalize(g);
  write_output(output, hda::graph_to_json(h).dump(2) + "\n");
  return 0;
}

int cmd_deform_t_equivalent(const std::string& input1,
                            const std::string& input2, bool force) {
  hda::DirectedMultigraph g1 = load_graph(input1, force);
  hda::DirectedMultigraph g2 = load_graph(input2, force);
  if (hda::t_equivalent(g1, g2)) {
    std::cout << "equivalent\n";
    return 0;
  }
  std::cout << "not equivalent\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concurrent-program analysis via directed topology"};
  app.require_subcommand(1);

  AnalyzeArgs aa;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Compile a program (or load a complex) and report "
                 "deadlocks, unsafe/unreachable states, and schedule classes");
  analyze->add_option("input", aa.input, "PV program (.pv) or complex (.json)")
      ->required();
  analyze->add_option("-o,--output", aa.output, "write report to this file");
  analyze->add_option("--format", aa.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("--cap", aa.cap, "maximum number of cells to compile");
  analyze->add_option("--dipath-cap", aa.dipath_cap,
                      "maximum number of dipaths to enumerate");
  analyze->add_option("--init", aa.initial,
                      "start vertex id (JSON inputs only)");
  analyze->add_option("--final", aa.final, "end vertex id (JSON inputs only)");
  analyze->add_flag("--timing", aa.timing, "include elapsed time in the report");
  analyze->add_flag("--force", aa.force, "skip validation on load");

  AnalyzeArgs ra;
  CLI::App* render = app.add_subcommand(
      "render", "Draw a 2-process program's progress graph as SVG");
  render->add_option("input", ra.input, "PV program (.pv)")->required();
  render->add_option("-o,--output", ra.output, "write SVG to this file");
  render->add_option("--cap", ra.cap, "maximum number of cells to compile");
  render->add_option("--dipath-cap", ra.dipath_cap,
                     "maximum number of dipaths to enumerate");

  std::string v_input;
  bool v_force = false;
  CLI::App* validate = app.add_subcommand(
      "validate", "Check a .pv, complex-JSON, or graph-JSON file");
  validate->add_option("input", v_input, "file to check")->required();
  validate->add_flag("--force", v_force, "tolerate violations on load");

  std::string g_input;
  bool g_non_constant = false;
  CLI::App* globe = app.add_subcommand(
      "globe-check", "Check sampled globe paths for monotonicity");
  globe->add_option("input", g_input, "sampled paths (.json)")->required();
  globe->add_flag("--non-constant", g_non_constant,
                  "reject constant paths (non-contracting requirement)");

  CLI::App* deform = app.add_subcommand(
      "deform", "Subdivide, normalize, or compare marked graphs");
  deform->require_subcommand(1);

  std::string ds_input, ds_arc, ds_output;
  int ds_parts = 2;
  bool ds_force = false;
  CLI::App* dsub = deform->add_subcommand(
      "subdivide", "Replace an arc by a chain of equal parts");
  dsub->add_option("input", ds_input, "graph (.json)")->required();
  dsub->add_option("--arc", ds_arc, "arc id to subdivide")->required();
  dsub->add_option("--parts", ds_parts, "number of parts (at least 2)")
      ->required();
  dsub->add_option("-o,--output", ds_output, "write graph to this file");
  dsub->add_flag("--force", ds_force, "skip validation on load");

  std::string dn_input, dn_output;
  bool dn_force = false;
  CLI::App* dnorm = deform->add_subcommand(
      "normalize", "Contract all unmarked pass-through nodes");
  dnorm->add_option("input", dn_input, "graph (.json)")->required();
  dnorm->add_option("-o,--output", dn_output, "write graph to this file");
  dnorm->add_flag("--force", dn_force, "skip validation on load");

  std::string dt_input1, dt_input2;
  bool dt_force = false;
  CLI::App* dteq = deform->add_subcommand(
      "t-equivalent", "Decide subdivision-invariant equivalence");
  dteq->add_option("first", dt_input1, "graph (.json)")->required();
  dteq->add_option("second", dt_input2, "graph (.json)")->required();
  dteq->add_flag("--force", dt_force, "skip validation on load");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(aa);
    if (app.got_subcommand(render)) return cmd_render(ra);
    if (app.got_subcommand(validate)) return cmd_validate(v_input, v_force);
    if (app.got_subcommand(globe)) return cmd_globe_check(g_input, g_non_constant);
    if (app.got_subcommand(deform)) {
      if (deform->got_subcommand(dsub))
        return cmd_deform_subdivide(ds_input, ds_arc, ds_parts, ds_output,
                                    ds_force);
      if (deform->got_subcommand(dnorm))
        return cmd_deform_normalize(dn_input, dn_output, dn_force);
      if (deform->got_subcommand(dteq))
        return cmd_deform_t_equivalent(dt_input1, dt_input2, dt_force);
    }
  } catch (const hda::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const hda::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const hda::resource_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const hda::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
