#pragma once

#include <vector>

#include "vanamo/ray.hpp"
#include "vanamo/world.hpp"

namespace vanamo {

// One sighting of a movable object: shapes are known up front, so any labeled
// hit reveals the full pose.
struct ObjectSighting {
    int id = -1;
    Footprint footprint;
    Cell anchor;
    Heading heading;
    bool pickable = false;
};

struct Observation {
    CellSet viewed;            // unoccupied cells with clear line of sight
    std::vector<RayHit> hits;  // occupied cells with clear line of sight
    std::vector<ObjectSighting> sightings;

    uint64_t digest() const;
};

// A cell is visible from the camera at `camera` iff its center lies within
// the 90 degree cone about `heading`, within `range` (cell units), and the
// segment from the camera cell center to the cell center touches no occupied
// cell square other than the endpoints. The camera's own cell always counts.

// In-cone test, exact in integers, boundaries inclusive.
bool in_view_cone(Cell camera, Heading heading, Cell target);

// Clear-line test against a blocker set (endpoint cells excluded).
bool line_clear(const CellSet& blockers, Cell from, Cell to);

// Visible unoccupied cells; `blockers` both occlude and are excluded from the
// result. Extra cells (the viewer's own body) are added by callers.
CellSet visible_free_cells(const CellSet& blockers, Cell camera, Heading heading, double range);

// Ground-truth sensing from configuration q. The robot's body cells are
// always viewed; the carried object (if any) occludes like any other object.
Observation observe(const WorldState& world, const Configuration& q);

}  // namespace vanamo
