#include "vanamo/plan.hpp"

#include <algorithm>

namespace vanamo {

std::string seg_kind_name(SegKind k) {
    switch (k) {
        case SegKind::Navigate: return "navigate";
        case SegKind::ViewSubgoal: return "view-subgoal";
        case SegKind::ManipPre: return "manip-pre";
        case SegKind::ManipMid: return "manip-mid";
        case SegKind::ManipPost: return "manip-post";
    }
    return "?";
}

LambPlan tag_navigation(const std::vector<Action>& actions, int depth) {
    LambPlan plan;
    plan.actions.reserve(actions.size());
    for (const Action& a : actions)
        plan.actions.push_back(TaggedAction{a, SegKind::Navigate, -1, depth});
    return plan;
}

void upgrade_tags(LambPlan& plan, SegKind seg, int object_id) {
    for (TaggedAction& t : plan.actions) {
        if (t.seg == SegKind::Navigate) {
            t.seg = seg;
            t.seg_object = object_id;
        }
    }
}

TransitionCells transition_cells(const Footprint& robot_fp, const Configuration& q,
                                 const Action& a, const Footprint* pushed_fp,
                                 Cell pushed_anchor, Heading pushed_heading) {
    TransitionCells tc;
    auto add = [](std::vector<Cell>& v, const std::vector<Cell>& cells) {
        v.insert(v.end(), cells.begin(), cells.end());
    };
    add(tc.before, robot_fp.cells_at(q.cell, q.heading));
    if (q.attachment) add(tc.before, q.attachment->object_cells(q.cell, q.heading));

    if (is_nav_action(a.kind)) {
        Configuration n = apply_nav_action(q, a);
        add(tc.after, robot_fp.cells_at(n.cell, n.heading));
        if (n.attachment) add(tc.after, n.attachment->object_cells(n.cell, n.heading));
    } else if (a.kind == ActionKind::Push && pushed_fp) {
        add(tc.before, pushed_fp->cells_at(pushed_anchor, pushed_heading));
        Offset d = q.heading.unit();
        add(tc.after, robot_fp.cells_at(q.cell + d, q.heading));
        add(tc.after, pushed_fp->cells_at(pushed_anchor + d, pushed_heading));
    } else {
        tc.after = tc.before;  // pick/place move nothing
    }
    return tc;
}

namespace {

bool cells_ok(const BeliefGrids& belief, const std::vector<Cell>& cells,
              const CellSet& obstacles) {
    for (Cell c : cells) {
        if (!belief.viewed.in_bounds(c)) return false;
        if (obstacles.test(c)) return false;
    }
    return true;
}

bool visibility_ok(const BeliefGrids& belief, const TransitionCells& tc) {
    for (Cell c : tc.after) {
        bool vacated = false;
        for (Cell b : tc.before) vacated |= (b == c);
        if (!vacated && !belief.viewed.test(c)) return false;
    }
    return true;
}

}  // namespace

std::optional<ReplayState> replay_on_belief(const BeliefGrids& belief,
                                            const Configuration& start,
                                            std::span<const Action> actions,
                                            const ReplayOptions& opts) {
    ReplayState st{belief, start};
    bool has_forbidden = opts.forbidden.dims() == belief.dims;
    if (opts.accumulate_views) st.belief.viewed |= sim_observe(st.belief, st.config);

    for (const Action& a : actions) {
        const BeliefGrids& b = st.belief;
        int carried = st.config.attachment ? st.config.attachment->object_id : -1;

        if (is_nav_action(a.kind)) {
            Configuration next = apply_nav_action(st.config, a);
            std::vector<Cell> cells = b.robot_footprint.cells_at(next.cell, next.heading);
            if (next.attachment) {
                auto oc = next.attachment->object_cells(next.cell, next.heading);
                cells.insert(cells.end(), oc.begin(), oc.end());
            }
            CellSet obstacles = b.occupancy({carried});
            if (has_forbidden) obstacles |= opts.forbidden;
            if (!cells_ok(b, cells, obstacles)) return std::nullopt;
            if (opts.enforce_visibility && !is_rotation_action(a.kind)) {
                TransitionCells tc =
                    transition_cells(b.robot_footprint, st.config, a, nullptr, Cell{}, Heading{});
                if (!visibility_ok(b, tc)) return std::nullopt;
            }
            st.config = next;
        } else if (a.kind == ActionKind::Pick) {
            if (st.config.attachment) return std::nullopt;
            auto it = st.belief.objects.find(a.object_id);
            if (it == st.belief.objects.end() || !it->second.pickable) return std::nullopt;
            const BeliefObject& obj = it->second;
            bool contact = false;
            for (int s = -1; s <= 1 && !contact; ++s) {
                Cell front = st.config.cell + st.config.heading.rotated(s).unit();
                for (Cell c : obj.cells()) contact |= (c == front);
            }
            if (!contact) return std::nullopt;
            Attachment att;
            att.object_id = a.object_id;
            att.footprint = obj.footprint;
            att.heading_offset = Heading(obj.heading.idx - st.config.heading.idx).idx;
            Offset delta0 = obj.anchor - st.config.cell;
            for (int h = 0; h < 8; ++h)
                att.anchor_offset[h] = rotate_offset(delta0, h - st.config.heading.idx);
            st.config.attachment = att;
            st.belief.objects.erase(a.object_id);  // carried: cells travel with the robot
            st.belief.refuted_views.clear();
        } else if (a.kind == ActionKind::Place) {
            if (!st.config.attachment) return std::nullopt;
            const Attachment& att = *st.config.attachment;
            BeliefObject obj;
            obj.footprint = att.footprint;
            obj.anchor = att.object_anchor(st.config.cell, st.config.heading);
            obj.heading = att.object_heading(st.config.heading);
            obj.pickable = derive_pickable(att.footprint);
            st.belief.objects[att.object_id] = obj;
            st.belief.refuted_views.clear();
            st.config.attachment.reset();
        } else if (a.kind == ActionKind::Push) {
            if (st.config.attachment) return std::nullopt;
            Cell faced = st.config.cell + st.config.heading.unit();
            int target = -1;
            for (const auto& [id, obj] : b.objects)
                for (Cell c : obj.cells())
                    if (c == faced) target = id;
            if (target < 0) return std::nullopt;
            BeliefObject obj = b.objects.at(target);
            Offset d = st.config.heading.unit();
            std::vector<Cell> new_obj = obj.footprint.cells_at(obj.anchor + d, obj.heading);
            std::vector<Cell> new_body =
                b.robot_footprint.cells_at(st.config.cell + d, st.config.heading);
            CellSet obstacles = b.occupancy({target});
            if (has_forbidden) obstacles |= opts.forbidden;
            if (!cells_ok(b, new_obj, obstacles) || !cells_ok(b, new_body, obstacles))
                return std::nullopt;
            for (Cell bc : new_body)
                for (Cell oc : new_obj)
                    if (bc == oc) return std::nullopt;
            if (opts.enforce_visibility) {
                TransitionCells tc = transition_cells(b.robot_footprint, st.config, a,
                                                      &obj.footprint, obj.anchor, obj.heading);
                if (!visibility_ok(b, tc)) return std::nullopt;
            }
            st.belief.objects[target].anchor = obj.anchor + d;
            st.belief.refuted_views.clear();
            st.config.cell = st.config.cell + d;
        }

        if (opts.accumulate_views) st.belief.viewed |= sim_observe(st.belief, st.config);
    }
    return st;
}

}  // namespace vanamo
