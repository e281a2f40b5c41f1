#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vanamo/geometry.hpp"
#include "vanamo/grid.hpp"

namespace vanamo {

// Rigid attachment created by pick. The anchor offset of the carried object
// is precomputed per robot heading from the pick-time relative transform, so
// the object pose is a pure function of the robot configuration.
struct Attachment {
    int object_id = -1;
    Footprint footprint;
    std::array<Offset, 8> anchor_offset{};  // object anchor relative to robot cell
    int heading_offset = 0;                 // object heading minus robot heading

    Cell object_anchor(Cell robot_cell, Heading robot_heading) const {
        return robot_cell + anchor_offset[robot_heading.idx];
    }
    Heading object_heading(Heading robot_heading) const {
        return robot_heading.rotated(heading_offset);
    }
    std::vector<Cell> object_cells(Cell robot_cell, Heading robot_heading) const {
        return footprint.cells_at(object_anchor(robot_cell, robot_heading),
                                  object_heading(robot_heading));
    }

    bool operator==(const Attachment& o) const {
        return object_id == o.object_id && anchor_offset == o.anchor_offset &&
               heading_offset == o.heading_offset;
    }
};

struct Configuration {
    Cell cell;
    Heading heading;
    std::optional<Attachment> attachment;

    bool same_pose(const Configuration& o) const {
        return cell == o.cell && heading == o.heading;
    }
    bool operator==(const Configuration& o) const {
        if (!same_pose(o)) return false;
        if (attachment.has_value() != o.attachment.has_value()) return false;
        return !attachment || *attachment == *o.attachment;
    }
};

struct MovableObject {
    int id = -1;
    std::string name;
    Footprint footprint;
    Cell anchor;
    Heading heading;
    bool pickable = false;  // derived: base bounding box fits 2x2

    std::vector<Cell> cells() const { return footprint.cells_at(anchor, heading); }
};

inline bool derive_pickable(const Footprint& fp) {
    auto [w, h] = fp.base_bbox();
    return w <= 2 && h <= 2;
}

struct GoalRegion {
    CellSet cells;
};

enum class ActionKind {
    MoveForward,
    MoveBack,
    StrafeLeft,
    StrafeRight,
    RotateLeft,   // +45 deg
    RotateRight,  // -45 deg
    Pick,
    Place,
    Push,
};

struct Action {
    ActionKind kind = ActionKind::MoveForward;
    int object_id = -1;  // Pick only

    bool operator==(const Action& o) const {
        return kind == o.kind && object_id == o.object_id;
    }
};

std::string action_token(const Action& a);
std::optional<Action> parse_action_token(const std::string& token);

bool is_nav_action(ActionKind k);
// In-place rotations approximate a round base spinning: collision checked,
// but never treated as motion through unseen space.
inline bool is_rotation_action(ActionKind k) {
    return k == ActionKind::RotateLeft || k == ActionKind::RotateRight;
}
// Pose update for navigation actions; identity pose change for manipulations.
Configuration apply_nav_action(const Configuration& q, const Action& a);

enum class RejectReason {
    None,
    Collision,
    NoContact,
    NotPickable,
    NothingAttached,
    OutOfBounds,
    AlreadyAttached,
};

std::string reject_reason_name(RejectReason r);

struct WorldState {
    GridDims dims;
    CellSet static_cells;
    std::vector<MovableObject> movables;
    Footprint robot_footprint;
    Configuration robot;
    GoalRegion goal;
    double sensing_range = 0.0;  // cells; <=0 means grid diagonal

    double effective_sensing_range() const;
    const MovableObject* find_object(int id) const;
    MovableObject* find_object(int id);
    CellSet movable_cells(int excluded_id = -1) const;
    std::vector<Cell> robot_cells() const;
    std::vector<Cell> robot_cells(const Configuration& q) const;
    bool at_goal() const { return goal.cells.test(robot.cell); }

    // Checks the structural invariants (occupancy disjointness, bounds).
    void validate() const;
};

struct StepOutcome {
    std::optional<WorldState> next;
    RejectReason reject = RejectReason::None;

    bool ok() const { return next.has_value(); }
};

// Ground-truth dynamics. Deterministic, total over well-formed actions;
// visibility plays no role here.
StepOutcome step(const WorldState& world, const Action& action);

// Union of footprint cells over a configuration path, including cells of any
// attached object at its derived pose. Throws if any cell leaves the grid.
CellSet swept_cells(const Footprint& footprint, std::span<const Configuration> path,
                    GridDims dims);

}  // namespace vanamo
