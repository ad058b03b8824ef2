#pragma once

// Umbrella header: concurrent-program analysis via directed topology.
//
//   pv.hpp         lock/unlock programs over counting semaphores
//   digraph.hpp    directed multigraphs with marked endpoints
//   precubical.hpp graded cube complexes, faces, morphisms, validation
//   semantics.hpp  program -> cube complex compilation (progress graphs)
//   analysis.hpp   reachability, deadlocks, unsafe states, schedule classes
//   globegeo.hpp   round-globe coordinates for cube boundaries
//   deform.hpp     subdivision-invariant equivalence of marked graphs
//   render.hpp     SVG pictures of 2-process progress graphs
//   report.hpp     end-to-end analysis reports (JSON / text)

#include "hda/errors.hpp"
#include "hda/util.hpp"
#include "hda/pv.hpp"
#include "hda/digraph.hpp"
#include "hda/precubical.hpp"
#include "hda/semantics.hpp"
#include "hda/analysis.hpp"
#include "hda/globegeo.hpp"
#include "hda/deform.hpp"
#include "hda/render.hpp"
#include "hda/report.hpp"
