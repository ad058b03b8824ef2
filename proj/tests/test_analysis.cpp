#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hda/hda.hpp"
#include "test_support.hpp"

using hda::deadlocks;
using hda::dihomotopy_classes;
using hda::Dipath;
using hda::enumerate_dipaths;
using hda::EnumerateOptions;
using hda::parse_pv;
using hda::PrecubicalSet;
using hda::pv_to_precubical;
using hda::PvProgram;
using hda::reachable;
using hda::ScheduleClasses;
using hda::unreachable_states;
using hda::unsafe_states;

namespace {

const char* kCrossing = "Pa.Pb.Vb.Va | Pb.Pa.Va.Vb";

PrecubicalSet crossing_complex() { return pv_to_precubical(parse_pv(kCrossing)); }

// A bare square: four vertices, four edges, optionally the filling 2-cell.
PrecubicalSet square_complex(bool filled) {
  PrecubicalSet M;
  for (const char* v : {"a", "b", "c", "d"}) M.add_cube(v, 0);
  M.add_cube("ab", 1);
  M.add_cube("cd", 1);
  M.add_cube("ac", 1);
  M.add_cube("bd", 1);
  auto arc = [&](const std::string& e, const std::string& s,
                 const std::string& t) {
    M.set_face(e, 1, 0, s);
    M.set_face(e, 1, 1, t);
  };
  arc("ab", "a", "b");
  arc("cd", "c", "d");
  arc("ac", "a", "c");
  arc("bd", "b", "d");
  if (filled) {
    M.add_cube("X", 2);
    M.set_face("X", 1, 0, "ab");
    M.set_face("X", 1, 1, "cd");
    M.set_face("X", 2, 0, "ac");
    M.set_face("X", 2, 1, "bd");
  }
  REQUIRE(hda::validate(M).empty());
  return M;
}

void check_partition(const ScheduleClasses& sc) {
  std::set<int> seen;
  REQUIRE(sc.classes.size() == sc.representatives.size());
  for (std::size_t k = 0; k < sc.classes.size(); ++k) {
    REQUIRE_FALSE(sc.classes[k].empty());
    bool rep_in_class = false;
    for (int m : sc.classes[k]) {
      REQUIRE(m >= 0);
      REQUIRE(static_cast<std::size_t>(m) < sc.dipaths.size());
      REQUIRE(seen.insert(m).second);  // classes are disjoint
      rep_in_class = rep_in_class || m == sc.representatives[k];
      // The representative is the least member.
      REQUIRE_FALSE(hda::natural_lex_less(
          sc.dipaths[static_cast<std::size_t>(m)].vertices,
          sc.dipaths[static_cast<std::size_t>(sc.representatives[k])]
              .vertices));
    }
    REQUIRE(rep_in_class);
  }
  REQUIRE(seen.size() == sc.dipaths.size());  // classes are exhaustive
}

}  // namespace

TEST_CASE("reachability over the skeleton", "[analysis]") {
  PrecubicalSet M = crossing_complex();
  std::vector<std::string> r = reachable(M, "(0,0)");
  REQUIRE(r.size() == 35);  // every vertex except the pocket behind the hole
  REQUIRE(std::count(r.begin(), r.end(), "(3,3)") == 0);
  REQUIRE(std::count(r.begin(), r.end(), "(0,0)") == 1);
  REQUIRE(std::count(r.begin(), r.end(), "(5,5)") == 1);
  REQUIRE(std::is_sorted(r.begin(), r.end(), hda::NaturalLess{}));

  // From a later state, only the upper-right cone is reachable.
  std::vector<std::string> late = reachable(M, "(5,4)");
  REQUIRE(late == std::vector<std::string>{"(5,4)", "(5,5)"});

  PrecubicalSet dot = hda::standard_cube(0);
  REQUIRE(reachable(dot, "c[]") == std::vector<std::string>{"c[]"});

  REQUIRE_THROWS_AS(reachable(M, "bogus"), std::invalid_argument);
  REQUIRE_THROWS_AS(reachable(M, "(0,0)|d1"), std::invalid_argument);
}

TEST_CASE("blocked, doomed, and unreachable states of crossing sections",
          "[analysis]") {
  PrecubicalSet M = crossing_complex();
  REQUIRE(deadlocks(M, "(5,5)") == std::vector<std::string>{"(2,2)"});
  REQUIRE(unsafe_states(M, "(5,5)") == std::vector<std::string>{"(2,2)"});
  REQUIRE(unreachable_states(M, "(0,0)") == std::vector<std::string>{"(3,3)"});

  // Without contention nothing is blocked or cut off.
  PrecubicalSet indep = pv_to_precubical(parse_pv("Pa.Va | Pb.Vb"));
  REQUIRE(deadlocks(indep, "(3,3)").empty());
  REQUIRE(unsafe_states(indep, "(3,3)").empty());
  REQUIRE(unreachable_states(indep, "(0,0)").empty());

  // Sequential re-acquisition in the same order deadlocks nowhere either.
  PrecubicalSet seq = pv_to_precubical(parse_pv("Pa.Va.Pb.Vb | Pa.Va.Pb.Vb"));
  REQUIRE(deadlocks(seq, "(5,5)").empty());
  REQUIRE(unsafe_states(seq, "(5,5)").empty());

  REQUIRE_THROWS_AS(deadlocks(M, "nope"), std::invalid_argument);
  REQUIRE_THROWS_AS(unsafe_states(M, "nope"), std::invalid_argument);
  REQUIRE_THROWS_AS(unreachable_states(M, "nope"), std::invalid_argument);
}

TEST_CASE("three processes locking in a cycle jam at the center",
          "[analysis]") {
  PrecubicalSet M = pv_to_precubical(
      parse_pv("#sem a 1\n#sem b 1\n#sem c 1\n"
               "Pa.Pb.Vb.Va | Pb.Pc.Vc.Vb | Pc.Pa.Va.Vc"));
  REQUIRE(M.cells(0).size() == 216);
  REQUIRE(M.cells(1).size() == 504);
  REQUIRE(M.cells(2).size() == 372);
  REQUIRE(M.cells(3).size() == 88);
  REQUIRE(deadlocks(M, "(5,5,5)") == std::vector<std::string>{"(2,2,2)"});
  REQUIRE(unreachable_states(M, "(0,0,0)") ==
          std::vector<std::string>{"(3,3,3)"});
  std::vector<std::string> unsafe = unsafe_states(M, "(5,5,5)");
  REQUIRE(std::count(unsafe.begin(), unsafe.end(), "(2,2,2)") == 1);
}

TEST_CASE("monotone path enumeration", "[analysis]") {
  // Independent processes: binomial(6, 3) interleavings of 3 + 3 steps.
  PrecubicalSet indep = pv_to_precubical(parse_pv("Pa.Va | Pb.Vb"));
  auto paths = enumerate_dipaths(indep, "(0,0)", "(3,3)");
  REQUIRE(paths.size() == 20);
  REQUIRE(paths.size() ==
          static_cast<std::size_t>(
              testutil::dp_path_count(parse_pv("Pa.Va | Pb.Vb"))));
  REQUIRE(paths.front().vertices ==
          std::vector<std::string>{"(0,0)", "(0,1)", "(0,2)", "(0,3)", "(1,3)",
                                   "(2,3)", "(3,3)"});
  REQUIRE(paths.back().vertices ==
          std::vector<std::string>{"(0,0)", "(1,0)", "(2,0)", "(3,0)", "(3,1)",
                                   "(3,2)", "(3,3)"});
  for (const Dipath& p : paths) {
    REQUIRE(p.vertices.size() == p.arcs.size() + 1);
    REQUIRE(p.vertices.front() == "(0,0)");
    REQUIRE(p.vertices.back() == "(3,3)");
  }
  auto lex = [](const Dipath& x, const Dipath& y) {
    return hda::natural_lex_less(x.vertices, y.vertices);
  };
  REQUIRE(std::is_sorted(paths.begin(), paths.end(), lex));

  // The crossing-sections complex: the hole and the blocked pocket prune
  // the count below the free binomial(10, 5) = 252.
  PrecubicalSet M = crossing_complex();
  auto cpaths = enumerate_dipaths(M, "(0,0)", "(5,5)");
  REQUIRE(cpaths.size() == 84);
  REQUIRE(cpaths.size() ==
          static_cast<std::size_t>(testutil::dp_path_count(parse_pv(kCrossing))));
  for (const Dipath& p : cpaths) {
    // Complete schedules never visit the blocked state or the pocket.
    for (const auto& v : p.vertices) {
      REQUIRE(v != "(2,2)");
      REQUIRE(v != "(3,3)");
    }
    REQUIRE(std::count(p.vertices.begin(), p.vertices.end(), "(5,5)") == 1);
  }

  // One process: a single path through its own timeline.
  PrecubicalSet line = pv_to_precubical(parse_pv("Pa.Va"));
  auto lpaths = enumerate_dipaths(line, "(0)", "(3)");
  REQUIRE(lpaths.size() == 1);
  REQUIRE(lpaths.front().vertices ==
          std::vector<std::string>{"(0)", "(1)", "(2)", "(3)"});

  // Start equal to finish: the empty schedule.
  auto trivial = enumerate_dipaths(indep, "(0,0)", "(0,0)");
  REQUIRE(trivial.size() == 1);
  REQUIRE(trivial.front().arcs.empty());
}

TEST_CASE("path enumeration edge cases and limits", "[analysis]") {
  PrecubicalSet M = crossing_complex();
  // Missing endpoints yield an empty list rather than an error.
  REQUIRE(enumerate_dipaths(M, "(0,0)", "(9,9)").empty());
  REQUIRE(enumerate_dipaths(M, "(9,9)", "(5,5)").empty());
  // A present but unreachable target yields no paths.
  REQUIRE(enumerate_dipaths(M, "(0,0)", "(3,3)").empty());
  REQUIRE(enumerate_dipaths(M, "(2,2)", "(5,5)").empty());

  EnumerateOptions tight;
  tight.cap = 5;
  REQUIRE_THROWS_AS(enumerate_dipaths(M, "(0,0)", "(5,5)", tight),
                    hda::resource_limit_error);

  // A cycle between start and finish would enumerate forever; the skeleton
  // length bound cuts it off.
  PrecubicalSet loop;
  for (const char* v : {"u", "v", "f"}) loop.add_cube(v, 0);
  loop.add_cube("uv", 1);
  loop.add_cube("vu", 1);
  loop.add_cube("vf", 1);
  loop.set_face("uv", 1, 0, "u");
  loop.set_face("uv", 1, 1, "v");
  loop.set_face("vu", 1, 0, "v");
  loop.set_face("vu", 1, 1, "u");
  loop.set_face("vf", 1, 0, "v");
  loop.set_face("vf", 1, 1, "f");
  REQUIRE_THROWS_AS(enumerate_dipaths(loop, "u", "f"),
                    hda::resource_limit_error);
}

TEST_CASE("a filled square merges its two routes", "[analysis]") {
  ScheduleClasses open_sq =
      dihomotopy_classes(square_complex(false), "a", "d");
  REQUIRE(open_sq.dipaths.size() == 2);
  REQUIRE(open_sq.classes.size() == 2);

  ScheduleClasses filled = dihomotopy_classes(square_complex(true), "a", "d");
  REQUIRE(filled.dipaths.size() == 2);
  REQUIRE(filled.classes.size() == 1);

  // Parallel arcs with no filler stay distinct.
  PrecubicalSet par;
  par.add_cube("s", 0);
  par.add_cube("t", 0);
  par.add_cube("e1", 1);
  par.add_cube("e2", 1);
  par.set_face("e1", 1, 0, "s");
  par.set_face("e1", 1, 1, "t");
  par.set_face("e2", 1, 0, "s");
  par.set_face("e2", 1, 1, "t");
  ScheduleClasses pc = dihomotopy_classes(par, "s", "t");
  REQUIRE(pc.dipaths.size() == 2);
  REQUIRE(pc.classes.size() == 2);
}

TEST_CASE("deformation classes of the standard examples", "[analysis]") {
  auto classes_of = [](const char* text) {
    PvProgram prog = parse_pv(text);
    PrecubicalSet M = pv_to_precubical(prog);
    ScheduleClasses sc = dihomotopy_classes(M, hda::initial_vertex_id(prog),
                                            hda::final_vertex_id(prog));
    check_partition(sc);
    return sc.classes.size();
  };

  REQUIRE(classes_of("Pa.Va | Pb.Vb") == 1);     // no obstruction
  REQUIRE(classes_of("Pa.Va | Pa.Va") == 2);     // one hole: left or right
  REQUIRE(classes_of(kCrossing) == 2);           // hole plus blocked pocket
  REQUIRE(classes_of("Pa.Va.Pb.Vb | Pa.Va.Pb.Vb") == 4);
  REQUIRE(classes_of("Pb.Vb.Pa.Va | Pa.Va.Pb.Vb") == 3);
  // k sequential holes give 2^k classes: each hole is passed on one side.
  REQUIRE(classes_of("Pa.Va.Pb.Vb.Pc.Vc | Pa.Va.Pb.Vb.Pc.Vc") == 8);
}

TEST_CASE("representatives are the least members and partitions are exact",
          "[analysis]") {
  PrecubicalSet M = crossing_complex();
  ScheduleClasses sc = dihomotopy_classes(M, "(0,0)", "(5,5)");
  REQUIRE(sc.dipaths.size() == 84);
  REQUIRE(sc.classes.size() == 2);
  check_partition(sc);
  // The overall least path is the representative of its class.
  bool index0_repped = false;
  for (int r : sc.representatives) index0_repped = index0_repped || r == 0;
  REQUIRE(index0_repped);
}

TEST_CASE("removing a filler from the full grid splits the classes",
          "[analysis]") {
  PrecubicalSet M = pv_to_precubical(parse_pv("Pa.Va | Pb.Vb"));
  REQUIRE(dihomotopy_classes(M, "(0,0)", "(3,3)").classes.size() == 1);

  // Drop the central square (its edges stay) by round-tripping the JSON
  // form without that cell.
  nlohmann::ordered_json j = hda::precubical_to_json(M);
  nlohmann::ordered_json pruned = j;
  pruned["cells"] = nlohmann::ordered_json::array();
  pruned["faces"] = nlohmann::ordered_json::array();
  for (const auto& cell : j["cells"])
    if (cell["id"] != "(1,1)|d1d2") pruned["cells"].push_back(cell);
  for (const auto& face : j["faces"])
    if (face["of"] != "(1,1)|d1d2") pruned["faces"].push_back(face);
  PrecubicalSet holed = hda::precubical_from_json(pruned);
  REQUIRE(holed.cells(2).size() == 8);
  ScheduleClasses sc = dihomotopy_classes(holed, "(0,0)", "(3,3)");
  REQUIRE(sc.dipaths.size() == 20);
  REQUIRE(sc.classes.size() == 2);
}

TEST_CASE("random programs satisfy the structural invariants", "[analysis]") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 30; ++trial) {
    PvProgram prog = testutil::random_program(rng, 2, 3, 3, 3, 2);
    PrecubicalSet M = pv_to_precubical(prog);
    std::string init = hda::initial_vertex_id(prog);
    std::string fin = hda::final_vertex_id(prog);
    REQUIRE(M.has_cube(init));  // nothing is held before any action

    std::vector<std::string> reach = reachable(M, init);
    std::vector<std::string> unre = unreachable_states(M, init);
    REQUIRE(reach.size() + unre.size() == M.cells(0).size());
    for (const auto& v : unre)
      REQUIRE(std::count(reach.begin(), reach.end(), v) == 0);

    if (M.has_cube(fin)) {
      std::vector<std::string> dead = deadlocks(M, fin);
      std::vector<std::string> unsafe = unsafe_states(M, fin);
      for (const auto& v : dead) {
        REQUIRE(v != fin);
        REQUIRE(std::count(unsafe.begin(), unsafe.end(), v) == 1);
      }
      auto paths = enumerate_dipaths(M, init, fin);
      REQUIRE(paths.size() ==
              static_cast<std::size_t>(testutil::dp_path_count(prog)));
    }
  }
}

TEST_CASE("flip closure agrees with exhaustive swap search", "[analysis]") {
  std::mt19937 rng(987654);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    PvProgram prog = testutil::random_program(rng, 2, 2, 5, 3, 2);
    PrecubicalSet M = pv_to_precubical(prog);
    std::string init = hda::initial_vertex_id(prog);
    std::string fin = hda::final_vertex_id(prog);
    std::size_t expected = testutil::bfs_class_count(prog);
    if (!M.has_cube(fin)) {
      REQUIRE(expected == 0);
      continue;
    }
    ScheduleClasses sc = dihomotopy_classes(M, init, fin);
    check_partition(sc);
    REQUIRE(sc.classes.size() == expected);
    ++compared;
  }
  REQUIRE(compared >= 10);  // the generator must exercise the real cases
}
