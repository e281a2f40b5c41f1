#pragma once

#include <functional>
#include <span>

#include "vanamo/belief.hpp"
#include "vanamo/scalar_field.hpp"

namespace vanamo {

// Relaxation switches for one search. Forbidden cells are enforced in every
// mode; known statics always collide.
struct SearchMode {
    bool enforce_visibility = true;
    bool enforce_movables = true;
    CellSet forbidden;
    std::vector<int> ignored_objects;  // carried or scheduled objects
    // Strafe/backward step cost. Planners that ignore visibility use 2 so
    // their routes lead with the camera instead of drifting sideways blind.
    int lateral_cost = 1;

    static SearchMode enforced(GridDims dims) { return SearchMode{true, true, CellSet(dims), {}}; }
};

struct GoalSpec {
    enum class Kind { CellIn, ViewIntersect, Exact };

    Kind kind = Kind::CellIn;
    CellSet region;        // CellIn / ViewIntersect
    Cell cell;             // Exact
    Heading heading;       // Exact

    static GoalSpec cell_in(CellSet cells) {
        GoalSpec g;
        g.kind = Kind::CellIn;
        g.region = std::move(cells);
        return g;
    }
    static GoalSpec view_of(CellSet cells) {
        GoalSpec g;
        g.kind = Kind::ViewIntersect;
        g.region = std::move(cells);
        return g;
    }
    static GoalSpec exact(Cell c, Heading h) {
        GoalSpec g;
        g.kind = Kind::Exact;
        g.cell = c;
        g.heading = h;
        return g;
    }

    // A viewpoint goal requires seeing a region cell beyond the robot's own
    // body; merely standing inside the region does not count.
    bool accept(const Configuration& q, const CellSet& vis,
                std::span<const Cell> body = {}) const {
        switch (kind) {
            case Kind::CellIn: return region.test(q.cell);
            case Kind::ViewIntersect: {
                CellSet seen = vis & region;
                for (Cell c : body)
                    if (seen.test(c)) seen.reset(c);
                return seen.any();
            }
            case Kind::Exact: return q.cell == cell && q.heading == heading;
        }
        return false;
    }
    uint64_t signature() const {
        uint64_t h = static_cast<uint64_t>(kind) + 1;
        if (kind == Kind::Exact) {
            h = hash_mix(h, static_cast<uint64_t>(cell.x) << 32 | static_cast<uint32_t>(cell.y));
            h = hash_mix(h, static_cast<uint64_t>(heading.idx));
        } else {
            h = hash_mix(h, region.hash64());
        }
        return h;
    }
};

// Estimate over (configuration, inherited visibility), in action-cost units.
using HeuristicFn = std::function<int(const Configuration&, const CellSet&)>;

// Lower bound on moves to reach the goal: Chebyshev distance to the nearest
// accepting cell (consistent under unit-cost 8-connected motion).
HeuristicFn goal_distance_heuristic(const GoalSpec& goal, GridDims dims);

// min over the state's accumulated view of F; zero when the view touches the
// field's zero set, max finite F + 1 when the view only covers unreachable
// cells.
HeuristicFn field_heuristic(const ScalarField& field);

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

struct SearchResult {
    SearchStatus status = SearchStatus::Exhausted;
    std::vector<Action> actions;
    Configuration final_config;
    CellSet final_vis;
    int cost = 0;
    int expansions = 0;
};

// Best-first search over (cell, heading) with the attachment fixed from the
// start configuration. The first expansion of a state freezes its path and
// its inherited visibility (later arrivals are discarded); neighbors must be
// collision-free under the mode, and under enforced visibility every newly
// occupied cell must already lie in the parent's inherited view. Ties on f
// are broken by insertion order.
SearchResult va_star(const Configuration& start, const GoalSpec& goal,
                     const BeliefGrids& belief, const SearchMode& mode, const HeuristicFn& h,
                     int node_budget);

// Same search, but collects up to `max_results` accepting states in expansion
// order instead of stopping at the first.
std::vector<SearchResult> va_star_enumerate(const Configuration& start, const GoalSpec& goal,
                                            const BeliefGrids& belief, const SearchMode& mode,
                                            const HeuristicFn& h, int node_budget,
                                            int max_results);

// Validity of one navigation action under a mode; `vis` may be null to skip
// the visibility clause. Returns the successor configuration when admissible.
std::optional<Configuration> nav_transition(const BeliefGrids& belief, const SearchMode& mode,
                                            const Configuration& q, const Action& a,
                                            const CellSet* vis);

// Union of simulated views along a configuration path.
CellSet path_vision(std::span<const Configuration> path, const BeliefGrids& belief,
                    const std::vector<int>& ignored = {});

}  // namespace vanamo
