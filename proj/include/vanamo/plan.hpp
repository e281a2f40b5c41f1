#pragma once

#include <span>

#include "vanamo/search.hpp"

namespace vanamo {

// Segment annotation carried by every planned action. Nested recursion tags
// survive concatenation: wrapping a leg only upgrades plain Navigate tags.
enum class SegKind { Navigate, ViewSubgoal, ManipPre, ManipMid, ManipPost };

std::string seg_kind_name(SegKind k);

struct TaggedAction {
    Action action;
    SegKind seg = SegKind::Navigate;
    int seg_object = -1;
    int seg_depth = 0;
};

struct LambPlan {
    std::vector<TaggedAction> actions;

    bool empty() const { return actions.empty(); }
    size_t size() const { return actions.size(); }
    void append(const LambPlan& other) {
        actions.insert(actions.end(), other.actions.begin(), other.actions.end());
    }
    std::vector<Action> raw_actions() const {
        std::vector<Action> out;
        out.reserve(actions.size());
        for (const TaggedAction& t : actions) out.push_back(t.action);
        return out;
    }
};

LambPlan tag_navigation(const std::vector<Action>& actions, int depth);
// Upgrade Navigate-tagged actions in place; non-Navigate tags are preserved.
void upgrade_tags(LambPlan& plan, SegKind seg, int object_id);

// Cells newly occupied by an action (robot body, carried object, pushed
// object), paired with the cells those movers occupied before the action.
struct TransitionCells {
    std::vector<Cell> before;
    std::vector<Cell> after;
};

TransitionCells transition_cells(const Footprint& robot_fp, const Configuration& q,
                                 const Action& a, const Footprint* pushed_fp,
                                 Cell pushed_anchor, Heading pushed_heading);

// Belief-side plan execution: validates each action against known occupancy,
// applies pick/place/push effects to the believed objects, and accumulates
// simulated views. With `enforce_visibility`, every newly occupied cell must
// be viewed (or vacated this step by the moved bodies) at execution time.
struct ReplayState {
    BeliefGrids belief;
    Configuration config;
};

struct ReplayOptions {
    bool enforce_visibility = true;
    bool accumulate_views = true;  // union sim_observe into belief.viewed per step
    CellSet forbidden;             // optional; empty means none
};

std::optional<ReplayState> replay_on_belief(const BeliefGrids& belief,
                                            const Configuration& start,
                                            std::span<const Action> actions,
                                            const ReplayOptions& opts);

}  // namespace vanamo
