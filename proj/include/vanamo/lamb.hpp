#pragma once

#include "vanamo/plan.hpp"

namespace vanamo {

struct PlannerConfig {
    int recursion_depth = 6;
    int node_budget = 200000;        // expansions per va_star call
    int push_max_distance = 4;       // K
    int placement_radius = 8;        // ring radius for place sampling
    int placements_per_side = 12;
    int viewpoint_candidates = 32;   // states enumerated per view subgoal search
    int viewpoint_legs = 8;          // view legs per backchain
    int manip_candidates_cap = 64;
    long total_expansion_budget = 4000000;  // per planner invocation
    bool allow_manipulation = true;         // false: direct + view branches only
    bool require_viewed_placements = true;  // false: may place into unviewed space
    bool prefer_carry = false;              // order pick-carry-place before pushes
};

struct PlanRequest {
    Configuration start;
    GoalSpec goal;
    BeliefGrids belief;
    CellSet forbidden;
    std::vector<int> excluded;  // objects already scheduled for manipulation
    int depth = 0;
};

enum class PlanFail { None, Unsolvable, DepthExhausted, BudgetExhausted };

struct PlanStats {
    long expansions = 0;
    int searches = 0;
    int deepest_recursion = 0;
};

struct LambOutcome {
    std::optional<LambPlan> plan;
    PlanFail fail = PlanFail::None;
    PlanStats stats;
};

// One way of displacing an object: a push line or a pick-carry-place with a
// fixed grasp side and placement pose.
struct ManipCandidate {
    enum class Kind { Push, PickPlace };

    int object_id = -1;
    Kind kind = Kind::Push;
    Configuration q_pre;   // contact stance, unattached
    Configuration q_post;  // stance after the manipulation completes
    int push_distance = 0;
    Cell place_anchor;     // pick: target object anchor
    Heading place_heading;
    Cell q_place_cell;     // pick: robot cell when placing (heading = q_pre's)
    Cell result_anchor;
    Heading result_heading;
    CellSet object_swept;  // object cells over its motion (pick: both poses)
    int displacement = 0;   // ordering key
    int unseen_cells = 0;   // placement cells outside the viewed set
};

// Deterministically ordered manipulation candidates for one known object.
// Approach stances blocked by other movables are kept (recursion may clear
// them); stances in statics or forbidden cells are not. Placements must not
// re-block `relaxed_swept` and, when configured, must lie in viewed space.
std::vector<ManipCandidate> sample_manip(int object_id, const BeliefGrids& belief,
                                         const PlanRequest& req, const CellSet& relaxed_swept,
                                         const PlannerConfig& cfg);

// First known movable whose cells intersect the plan's incremental swept
// cells, walking the plan step by step; smallest id on same-step ties.
std::optional<int> first_collision(const std::vector<Action>& actions,
                                   const Configuration& start, const BeliefGrids& belief);

// Belief copy with one object moved; overlap or out-of-bounds poses raise.
BeliefGrids update_pose(const BeliefGrids& belief, int object_id, Cell anchor,
                        Heading heading);

// The recursive planner: direct, then visibility-relaxed viewpoint
// backchaining, then collision-relaxed manipulation backchaining.
LambOutcome lamb_plan(const PlanRequest& req, const PlannerConfig& cfg);

}  // namespace vanamo
