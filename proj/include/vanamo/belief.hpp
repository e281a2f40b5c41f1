#pragma once

#include <map>
#include <vector>

#include "vanamo/observe.hpp"

namespace vanamo {

struct BeliefObject {
    Footprint footprint;
    Cell anchor;
    Heading heading;
    bool pickable = false;

    std::vector<Cell> cells() const { return footprint.cells_at(anchor, heading); }
};

// Accumulated agent knowledge: viewed cells, known static occupancy, and the
// latest known pose per sighted object. `viewed` only grows.
struct BeliefGrids {
    GridDims dims;
    CellSet viewed;
    CellSet statics;
    std::map<int, BeliefObject> objects;
    // Optimistic view predictions reality has already contradicted, keyed by
    // the configuration state index they were made from. Cleared whenever an
    // object pose changes (occlusion shifts make old evidence moot).
    std::map<int, CellSet> refuted_views;
    Footprint robot_footprint;
    double sensing_range = 0.0;

    BeliefGrids() = default;
    BeliefGrids(GridDims d, Footprint robot_fp, double range)
        : dims(d),
          viewed(d),
          statics(d),
          robot_footprint(std::move(robot_fp)),
          sensing_range(range) {}

    double effective_sensing_range() const;
    CellSet object_cells(const std::vector<int>& excluded = {}) const;
    // Known occupancy: statics plus believed object cells.
    CellSet occupancy(const std::vector<int>& excluded = {}) const;
    int state_index(const Configuration& q) const {
        return (q.cell.y * dims.width + q.cell.x) * 8 + q.heading.idx;
    }
    uint64_t digest() const;
};

// Fold one observation into the belief. Static hits accumulate; sightings
// overwrite object poses (latest wins); objects seen to have vacated their
// believed cells are dropped until re-sighted. A hit cell that is also in the
// observation's viewed set is a contradiction and raises a domain error.
BeliefGrids update_belief(const BeliefGrids& belief, const Observation& obs);

// Simulated sensing against known occupancy only: rays are blocked by known
// statics and believed objects (minus `ignored`), and by the attached
// object's own cells; everything else is optimistically transparent and
// viewable. The robot body cells always count as viewed.
CellSet sim_observe(const BeliefGrids& belief, const Configuration& q,
                    const std::vector<int>& ignored = {});

}  // namespace vanamo
