#include "vanamo/world.hpp"

#include <algorithm>
#include <cmath>

namespace vanamo {

std::string action_token(const Action& a) {
    switch (a.kind) {
        case ActionKind::MoveForward: return "MF";
        case ActionKind::MoveBack: return "MB";
        case ActionKind::StrafeLeft: return "SL";
        case ActionKind::StrafeRight: return "SR";
        case ActionKind::RotateLeft: return "RL";
        case ActionKind::RotateRight: return "RR";
        case ActionKind::Pick: return "PK" + std::to_string(a.object_id);
        case ActionKind::Place: return "PL";
        case ActionKind::Push: return "PS";
    }
    return "??";
}

std::optional<Action> parse_action_token(const std::string& token) {
    if (token == "MF") return Action{ActionKind::MoveForward};
    if (token == "MB") return Action{ActionKind::MoveBack};
    if (token == "SL") return Action{ActionKind::StrafeLeft};
    if (token == "SR") return Action{ActionKind::StrafeRight};
    if (token == "RL") return Action{ActionKind::RotateLeft};
    if (token == "RR") return Action{ActionKind::RotateRight};
    if (token == "PL") return Action{ActionKind::Place};
    if (token == "PS") return Action{ActionKind::Push};
    if (token.size() > 2 && token.compare(0, 2, "PK") == 0) {
        try {
            return Action{ActionKind::Pick, std::stoi(token.substr(2))};
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

bool is_nav_action(ActionKind k) {
    switch (k) {
        case ActionKind::MoveForward:
        case ActionKind::MoveBack:
        case ActionKind::StrafeLeft:
        case ActionKind::StrafeRight:
        case ActionKind::RotateLeft:
        case ActionKind::RotateRight: return true;
        default: return false;
    }
}

Configuration apply_nav_action(const Configuration& q, const Action& a) {
    Configuration n = q;
    switch (a.kind) {
        case ActionKind::MoveForward: n.cell = q.cell + q.heading.unit(); break;
        case ActionKind::MoveBack: n.cell = q.cell + q.heading.rotated(4).unit(); break;
        case ActionKind::StrafeLeft: n.cell = q.cell + q.heading.rotated(2).unit(); break;
        case ActionKind::StrafeRight: n.cell = q.cell + q.heading.rotated(-2).unit(); break;
        case ActionKind::RotateLeft: n.heading = q.heading.rotated(1); break;
        case ActionKind::RotateRight: n.heading = q.heading.rotated(-1); break;
        default: break;
    }
    return n;
}

std::string reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::None: return "none";
        case RejectReason::Collision: return "collision";
        case RejectReason::NoContact: return "no-contact";
        case RejectReason::NotPickable: return "not-pickable";
        case RejectReason::NothingAttached: return "nothing-attached";
        case RejectReason::OutOfBounds: return "out-of-bounds";
        case RejectReason::AlreadyAttached: return "already-attached";
    }
    return "?";
}

double WorldState::effective_sensing_range() const {
    if (sensing_range > 0.0) return sensing_range;
    return std::hypot(static_cast<double>(dims.width), static_cast<double>(dims.height));
}

const MovableObject* WorldState::find_object(int id) const {
    for (const auto& m : movables)
        if (m.id == id) return &m;
    return nullptr;
}

MovableObject* WorldState::find_object(int id) {
    for (auto& m : movables)
        if (m.id == id) return &m;
    return nullptr;
}

CellSet WorldState::movable_cells(int excluded_id) const {
    CellSet s(dims);
    for (const auto& m : movables) {
        if (m.id == excluded_id) continue;
        for (Cell c : m.cells()) s.set(c);
    }
    return s;
}

std::vector<Cell> WorldState::robot_cells() const { return robot_cells(robot); }

std::vector<Cell> WorldState::robot_cells(const Configuration& q) const {
    std::vector<Cell> cells = robot_footprint.cells_at(q.cell, q.heading);
    if (q.attachment) {
        auto obj = q.attachment->object_cells(q.cell, q.heading);
        cells.insert(cells.end(), obj.begin(), obj.end());
    }
    return cells;
}

void WorldState::validate() const {
    CellSet occupied = static_cells;
    for (const auto& m : movables) {
        for (Cell c : m.cells()) {
            if (!occupied.in_bounds(c))
                throw std::domain_error("WorldState: object out of bounds: " + m.name);
            if (occupied.test(c))
                throw std::domain_error("WorldState: overlapping occupants at object " + m.name);
            occupied.set(c);
        }
    }
    for (Cell c : robot_cells()) {
        if (!occupied.in_bounds(c)) throw std::domain_error("WorldState: robot out of bounds");
        int carried = robot.attachment ? robot.attachment->object_id : -1;
        bool on_carried = false;
        if (carried >= 0)
            if (const auto* m = find_object(carried))
                for (Cell oc : m->cells()) on_carried |= (oc == c);
        if (!on_carried && occupied.test(c))
            throw std::domain_error("WorldState: robot overlaps occupant");
    }
    if (goal.cells.none()) throw std::domain_error("WorldState: empty goal region");
}

namespace {

bool all_in_bounds(const GridDims& dims, const std::vector<Cell>& cells) {
    for (Cell c : cells)
        if (c.x < 0 || c.y < 0 || c.x >= dims.width || c.y >= dims.height) return false;
    return true;
}

bool overlaps(const CellSet& set, const std::vector<Cell>& cells) {
    for (Cell c : cells)
        if (set.test(c)) return true;
    return false;
}

// Collision test for the robot (+ carried object) at configuration q.
RejectReason placement_reject(const WorldState& w, const Configuration& q) {
    std::vector<Cell> body = w.robot_footprint.cells_at(q.cell, q.heading);
    if (!all_in_bounds(w.dims, body)) return RejectReason::OutOfBounds;
    int carried = q.attachment ? q.attachment->object_id : -1;
    CellSet obstacles = w.static_cells | w.movable_cells(carried);
    if (overlaps(obstacles, body)) return RejectReason::Collision;
    if (q.attachment) {
        std::vector<Cell> obj = q.attachment->object_cells(q.cell, q.heading);
        if (!all_in_bounds(w.dims, obj)) return RejectReason::OutOfBounds;
        if (overlaps(obstacles, obj)) return RejectReason::Collision;
        for (Cell c : obj)
            for (Cell b : body)
                if (c == b) return RejectReason::Collision;
    }
    return RejectReason::None;
}

StepOutcome reject(RejectReason r) { return StepOutcome{std::nullopt, r}; }

StepOutcome do_nav(const WorldState& w, const Action& a) {
    Configuration next = apply_nav_action(w.robot, a);
    RejectReason r = placement_reject(w, next);
    if (r != RejectReason::None) return reject(r);
    WorldState out = w;
    out.robot = next;
    if (next.attachment) {
        MovableObject* obj = out.find_object(next.attachment->object_id);
        obj->anchor = next.attachment->object_anchor(next.cell, next.heading);
        obj->heading = next.attachment->object_heading(next.heading);
    }
    return StepOutcome{std::move(out), RejectReason::None};
}

StepOutcome do_pick(const WorldState& w, const Action& a) {
    if (w.robot.attachment) return reject(RejectReason::AlreadyAttached);
    const MovableObject* obj = w.find_object(a.object_id);
    if (!obj) return reject(RejectReason::NoContact);
    if (!obj->pickable) return reject(RejectReason::NotPickable);
    // Contact: some object cell in one of the three front sectors, adjacent
    // to the robot cell.
    bool contact = false;
    for (int s = -1; s <= 1 && !contact; ++s) {
        Cell front = w.robot.cell + w.robot.heading.rotated(s).unit();
        for (Cell c : obj->cells()) contact |= (c == front);
    }
    if (!contact) return reject(RejectReason::NoContact);

    Attachment att;
    att.object_id = obj->id;
    att.footprint = obj->footprint;
    att.heading_offset = Heading(obj->heading.idx - w.robot.heading.idx).idx;
    Offset delta0 = obj->anchor - w.robot.cell;
    for (int h = 0; h < 8; ++h)
        att.anchor_offset[h] = rotate_offset(delta0, h - w.robot.heading.idx);

    WorldState out = w;
    out.robot.attachment = att;
    return StepOutcome{std::move(out), RejectReason::None};
}

StepOutcome do_place(const WorldState& w) {
    if (!w.robot.attachment) return reject(RejectReason::NothingAttached);
    WorldState out = w;
    out.robot.attachment.reset();
    return StepOutcome{std::move(out), RejectReason::None};
}

StepOutcome do_push(const WorldState& w) {
    if (w.robot.attachment) return reject(RejectReason::AlreadyAttached);
    Cell faced = w.robot.cell + w.robot.heading.unit();
    const MovableObject* target = nullptr;
    for (const auto& m : w.movables)
        for (Cell c : m.cells())
            if (c == faced) target = &m;
    if (!target) return reject(RejectReason::NoContact);

    Offset d = w.robot.heading.unit();
    std::vector<Cell> new_obj = target->footprint.cells_at(target->anchor + d, target->heading);
    std::vector<Cell> new_body =
        w.robot_footprint.cells_at(w.robot.cell + d, w.robot.heading);
    if (!all_in_bounds(w.dims, new_obj) || !all_in_bounds(w.dims, new_body))
        return reject(RejectReason::OutOfBounds);

    CellSet obstacles = w.static_cells | w.movable_cells(target->id);
    if (overlaps(obstacles, new_obj) || overlaps(obstacles, new_body))
        return reject(RejectReason::Collision);
    for (Cell b : new_body)
        for (Cell o : new_obj)
            if (b == o) return reject(RejectReason::Collision);

    WorldState out = w;
    out.find_object(target->id)->anchor = target->anchor + d;
    out.robot.cell = w.robot.cell + d;
    return StepOutcome{std::move(out), RejectReason::None};
}

}  // namespace

StepOutcome step(const WorldState& world, const Action& action) {
    switch (action.kind) {
        case ActionKind::Pick: return do_pick(world, action);
        case ActionKind::Place: return do_place(world);
        case ActionKind::Push: return do_push(world);
        default: return do_nav(world, action);
    }
}

CellSet swept_cells(const Footprint& footprint, std::span<const Configuration> path,
                    GridDims dims) {
    if (path.empty()) throw std::domain_error("swept_cells: empty path");
    CellSet swept(dims);
    for (const Configuration& q : path) {
        for (Cell c : footprint.cells_at(q.cell, q.heading)) {
            if (!swept.in_bounds(c)) throw std::domain_error("swept_cells: cell out of bounds");
            swept.set(c);
        }
        if (q.attachment) {
            for (Cell c : q.attachment->object_cells(q.cell, q.heading)) {
                if (!swept.in_bounds(c))
                    throw std::domain_error("swept_cells: attached cell out of bounds");
                swept.set(c);
            }
        }
    }
    return swept;
}

}  // namespace vanamo
