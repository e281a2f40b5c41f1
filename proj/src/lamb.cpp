#include "vanamo/lamb.hpp"

#include <algorithm>
#include <unordered_map>

namespace vanamo {

namespace {

struct Ctx {
    const PlannerConfig& cfg;
    PlanStats stats;
    std::unordered_map<uint64_t, int> failed;  // request key -> max depth failed at
    bool budget_hit = false;
    bool depth_hit = false;
};

uint64_t request_key(const PlanRequest& req) {
    uint64_t h = req.belief.digest();
    h = hash_mix(h, static_cast<uint64_t>(req.start.cell.x) << 32 |
                        static_cast<uint32_t>(req.start.cell.y));
    h = hash_mix(h, static_cast<uint64_t>(req.start.heading.idx));
    if (req.start.attachment) {
        h = hash_mix(h, static_cast<uint64_t>(req.start.attachment->object_id) + 101);
        h = hash_mix(h, static_cast<uint64_t>(req.start.attachment->heading_offset));
    }
    h = hash_mix(h, req.goal.signature());
    h = hash_mix(h, req.forbidden.hash64());
    std::vector<int> ex = req.excluded;
    std::sort(ex.begin(), ex.end());
    for (int id : ex) h = hash_mix(h, static_cast<uint64_t>(id) + 7);
    return h;
}

SearchResult run_search(Ctx& ctx, const Configuration& start, const GoalSpec& goal,
                        const BeliefGrids& belief, const SearchMode& mode,
                        const HeuristicFn& h) {
    if (ctx.stats.expansions >= ctx.cfg.total_expansion_budget) {
        ctx.budget_hit = true;
        SearchResult r;
        r.status = SearchStatus::BudgetExceeded;
        r.final_vis = CellSet(belief.dims);
        return r;
    }
    SearchResult r = va_star(start, goal, belief, mode, h, ctx.cfg.node_budget);
    ctx.stats.expansions += r.expansions;
    ctx.stats.searches += 1;
    if (r.status == SearchStatus::BudgetExceeded) ctx.budget_hit = true;
    return r;
}

std::vector<Configuration> configs_along(const Configuration& start,
                                         const std::vector<Action>& actions) {
    std::vector<Configuration> out;
    out.reserve(actions.size() + 1);
    out.push_back(start);
    Configuration q = start;
    for (const Action& a : actions) {
        if (is_nav_action(a.kind)) q = apply_nav_action(q, a);
        out.push_back(q);
    }
    return out;
}

CellSet robot_swept(const BeliefGrids& belief, const Configuration& start,
                    const std::vector<Action>& actions) {
    auto configs = configs_along(start, actions);
    return swept_cells(belief.robot_footprint, configs, belief.dims);
}

Attachment make_attachment(const Configuration& q, int object_id, const BeliefObject& obj) {
    Attachment att;
    att.object_id = object_id;
    att.footprint = obj.footprint;
    att.heading_offset = Heading(obj.heading.idx - q.heading.idx).idx;
    Offset delta0 = obj.anchor - q.cell;
    for (int h = 0; h < 8; ++h) att.anchor_offset[h] = rotate_offset(delta0, h - q.heading.idx);
    return att;
}

struct BackchainResult {
    LambPlan legs;
    Configuration config;
    BeliefGrids belief;
};

std::optional<LambPlan> lamb_rec(Ctx& ctx, const PlanRequest& req);

std::vector<Cell> body_cells(const BeliefGrids& belief, const Configuration& q) {
    std::vector<Cell> cells = belief.robot_footprint.cells_at(q.cell, q.heading);
    if (q.attachment) {
        auto oc = q.attachment->object_cells(q.cell, q.heading);
        cells.insert(cells.end(), oc.begin(), oc.end());
    }
    return cells;
}

// Repeatedly pick a viewpoint whose simulated view intersects the remaining
// target cells (fully relaxed search under the distance-field heuristic),
// plan a full-constraint leg to it, and shrink the target by the leg's
// predicted views.
std::optional<BackchainResult> backchain_views(Ctx& ctx, const PlanRequest& base,
                                               const Configuration& from,
                                               const BeliefGrids& belief, const CellSet& vsg) {
    BackchainResult res{LambPlan{}, from, belief};
    CellSet remaining = vsg - belief.viewed;
    for (int iter = 0; iter < ctx.cfg.viewpoint_legs; ++iter) {
        if (remaining.none()) return res;
        ScalarField field = distance_field(CellSet::full(belief.dims), remaining);
        HeuristicFn hf = field_heuristic(field);
        bool progressed = false;
        // First look for viewpoints reachable under the visibility constraint;
        // fall back to fully relaxed ones (a leg may have to clear obstacles
        // out of the way first).
        for (int relax = 0; relax < 2 && !progressed; ++relax) {
            SearchMode view_mode{relax == 0, false, base.forbidden, {}};
            if (ctx.stats.expansions >= ctx.cfg.total_expansion_budget) {
                ctx.budget_hit = true;
                return std::nullopt;
            }
            auto viewpoints =
                va_star_enumerate(res.config, GoalSpec::view_of(remaining), res.belief,
                                  view_mode, hf, ctx.cfg.node_budget,
                                  ctx.cfg.viewpoint_candidates);
            if (!viewpoints.empty()) {
                ctx.stats.expansions += viewpoints.back().expansions;
                ctx.stats.searches += 1;
            }
            for (const SearchResult& vp : viewpoints) {
                PlanRequest leg_req{
                    res.config,
                    GoalSpec::exact(vp.final_config.cell, vp.final_config.heading),
                    res.belief,
                    base.forbidden,
                    base.excluded,
                    base.depth - 1};
                auto leg = lamb_rec(ctx, leg_req);
                if (!leg) continue;
                ReplayOptions opts;
                opts.enforce_visibility = true;
                opts.forbidden = base.forbidden;
                auto rs = replay_on_belief(res.belief, res.config, leg->raw_actions(), opts);
                if (!rs) continue;
                CellSet next_remaining = remaining - rs->belief.viewed;
                if (next_remaining.count() >= remaining.count()) continue;
                upgrade_tags(*leg, SegKind::ViewSubgoal, -1);
                res.legs.append(*leg);
                res.config = rs->config;
                res.belief = std::move(rs->belief);
                remaining = std::move(next_remaining);
                progressed = true;
                break;
            }
        }
        if (!progressed) return std::nullopt;
    }
    return std::nullopt;
}

// Cells the object occupies over the course of the mid actions, starting
// from its believed pose; used as the locked corridor for the pre leg.
CellSet object_corridor(const BeliefGrids& belief, int object_id, const Configuration& q_pre,
                        const std::vector<Action>& mid_actions) {
    CellSet corridor(belief.dims);
    BeliefObject obj = belief.objects.at(object_id);
    Configuration q = q_pre;
    bool attached = false;
    Attachment att;
    auto mark = [&](const std::vector<Cell>& cells) {
        for (Cell c : cells)
            if (corridor.in_bounds(c)) corridor.set(c);
    };
    mark(obj.cells());
    for (const Action& a : mid_actions) {
        if (is_nav_action(a.kind)) {
            q = apply_nav_action(q, a);
            if (attached) {
                obj.anchor = att.object_anchor(q.cell, q.heading);
                obj.heading = att.object_heading(q.heading);
                mark(obj.cells());
            }
        } else if (a.kind == ActionKind::Pick && a.object_id == object_id) {
            att = make_attachment(q, object_id, obj);
            attached = true;
        } else if (a.kind == ActionKind::Place) {
            attached = false;
        } else if (a.kind == ActionKind::Push) {
            Offset d = q.heading.unit();
            obj.anchor = obj.anchor + d;
            q.cell = q.cell + d;
            mark(obj.cells());
        }
    }
    return corridor;
}

// Cells a push sequence requires to be viewed before execution: everything
// the object or robot newly occupies, minus cells the movers vacate.
CellSet push_required_viewed(const BeliefGrids& belief, const ManipCandidate& cand) {
    CellSet required(belief.dims);
    BeliefObject obj = belief.objects.at(cand.object_id);
    Configuration q = cand.q_pre;
    for (int i = 0; i < cand.push_distance; ++i) {
        TransitionCells tc = transition_cells(belief.robot_footprint, q, Action{ActionKind::Push},
                                              &obj.footprint, obj.anchor, obj.heading);
        for (Cell c : tc.after) {
            bool vacated = false;
            for (Cell b : tc.before) vacated |= (b == c);
            if (!vacated && required.in_bounds(c)) required.set(c);
        }
        Offset d = q.heading.unit();
        obj.anchor = obj.anchor + d;
        q.cell = q.cell + d;
    }
    return required;
}

std::optional<LambPlan> plan_manip_mid(Ctx& ctx, const PlanRequest& req,
                                       const ManipCandidate& cand) {
    std::vector<int> excluded = req.excluded;
    excluded.push_back(cand.object_id);

    if (cand.kind == ManipCandidate::Kind::Push) {
        std::vector<TaggedAction> pushes(static_cast<size_t>(cand.push_distance),
                                         TaggedAction{Action{ActionKind::Push}, SegKind::ManipMid,
                                                      cand.object_id, req.depth});
        CellSet required = push_required_viewed(req.belief, cand);
        CellSet unmet = required - req.belief.viewed;
        if (unmet.none()) {
            LambPlan mid;
            mid.actions = std::move(pushes);
            return mid;
        }
        if (req.depth <= 0) return std::nullopt;
        PlanRequest view_base = req;
        view_base.forbidden = req.forbidden | cand.object_swept;
        for (Cell c : body_cells(req.belief, cand.q_pre))
            if (view_base.forbidden.in_bounds(c)) view_base.forbidden.reset(c);
        view_base.excluded = excluded;
        auto bc = backchain_views(ctx, view_base, cand.q_pre, req.belief, unmet);
        if (!bc) return std::nullopt;
        PlanRequest back_req{bc->config,
                             GoalSpec::exact(cand.q_pre.cell, cand.q_pre.heading),
                             bc->belief,
                             view_base.forbidden,
                             excluded,
                             req.depth - 1};
        auto back = lamb_rec(ctx, back_req);
        if (!back) return std::nullopt;
        ReplayOptions opts;
        opts.forbidden = view_base.forbidden;
        auto rs = replay_on_belief(bc->belief, bc->config, back->raw_actions(), opts);
        if (!rs) return std::nullopt;
        if ((required - rs->belief.viewed).any()) return std::nullopt;
        LambPlan mid = bc->legs;
        mid.append(*back);
        for (const TaggedAction& p : pushes) mid.actions.push_back(p);
        return mid;
    }

    // Pick-carry-place: the carried object stops being an obstacle; the carry
    // leg is planned recursively so its own constraints can spawn subgoals.
    auto it = req.belief.objects.find(cand.object_id);
    if (it == req.belief.objects.end()) return std::nullopt;
    Attachment att = make_attachment(cand.q_pre, cand.object_id, it->second);
    Configuration q_attach = cand.q_pre;
    q_attach.attachment = att;
    BeliefGrids carry_belief = req.belief;
    carry_belief.objects.erase(cand.object_id);
    if (req.depth <= 0) return std::nullopt;
    PlanRequest carry_req{q_attach,
                          GoalSpec::exact(cand.q_place_cell, cand.q_pre.heading),
                          carry_belief,
                          req.forbidden,
                          excluded,
                          req.depth - 1};
    auto carry = lamb_rec(ctx, carry_req);
    if (!carry) return std::nullopt;
    LambPlan mid;
    mid.actions.push_back(TaggedAction{Action{ActionKind::Pick, cand.object_id},
                                       SegKind::ManipMid, cand.object_id, req.depth});
    mid.append(*carry);
    mid.actions.push_back(
        TaggedAction{Action{ActionKind::Place}, SegKind::ManipMid, cand.object_id, req.depth});
    return mid;
}

std::optional<LambPlan> plan_candidate(Ctx& ctx, const PlanRequest& req,
                                       const ManipCandidate& cand) {
    auto mid = plan_manip_mid(ctx, req, cand);
    if (!mid) return std::nullopt;

    std::vector<int> excluded = req.excluded;
    excluded.push_back(cand.object_id);

    // Pre leg: walk to the contact stance with the object's whole motion
    // corridor locked, so nothing else gets moved into it. The stance's own
    // body cells stay open: the robot occupies them before the motion starts.
    CellSet corridor = object_corridor(req.belief, cand.object_id, cand.q_pre,
                                       mid->raw_actions());
    for (Cell c : body_cells(req.belief, cand.q_pre))
        if (corridor.in_bounds(c)) corridor.reset(c);
    BeliefGrids pre_belief = req.belief;
    pre_belief.objects.erase(cand.object_id);
    PlanRequest pre_req{req.start,
                        GoalSpec::exact(cand.q_pre.cell, cand.q_pre.heading),
                        pre_belief,
                        req.forbidden | corridor,
                        excluded,
                        req.depth - 1};
    auto pre = lamb_rec(ctx, pre_req);
    if (!pre) return std::nullopt;

    // Thread the optimistic belief through pre and mid to plan post.
    ReplayOptions opts;
    opts.forbidden = req.forbidden;
    auto rs_pre = replay_on_belief(req.belief, req.start, pre->raw_actions(), opts);
    if (!rs_pre) return std::nullopt;
    auto rs_mid = replay_on_belief(rs_pre->belief, rs_pre->config, mid->raw_actions(), opts);
    if (!rs_mid) return std::nullopt;
    if (!rs_mid->config.same_pose(cand.q_post)) return std::nullopt;

    PlanRequest post_req{rs_mid->config, req.goal,       rs_mid->belief,
                         req.forbidden,  excluded,       req.depth - 1};
    auto post = lamb_rec(ctx, post_req);
    if (!post) return std::nullopt;

    upgrade_tags(*pre, SegKind::ManipPre, cand.object_id);
    upgrade_tags(*mid, SegKind::ManipMid, cand.object_id);
    upgrade_tags(*post, SegKind::ManipPost, cand.object_id);
    LambPlan plan = *pre;
    plan.append(*mid);
    plan.append(*post);
    return plan;
}

std::optional<LambPlan> lamb_rec(Ctx& ctx, const PlanRequest& req) {
    uint64_t key = request_key(req);
    if (auto it = ctx.failed.find(key); it != ctx.failed.end() && it->second >= req.depth)
        return std::nullopt;
    int depth_used = ctx.cfg.recursion_depth - req.depth;
    ctx.stats.deepest_recursion = std::max(ctx.stats.deepest_recursion, depth_used);

    CellSet start_vis = req.belief.viewed | sim_observe(req.belief, req.start);
    if (req.goal.accept(req.start, start_vis, body_cells(req.belief, req.start)))
        return LambPlan{};

    HeuristicFn h_goal = goal_distance_heuristic(req.goal, req.belief.dims);

    SearchMode direct_mode{true, true, req.forbidden, {}};
    SearchResult direct = run_search(ctx, req.start, req.goal, req.belief, direct_mode, h_goal);
    if (direct.status == SearchStatus::Found)
        return tag_navigation(direct.actions, req.depth);

    if (req.depth <= 0) {
        ctx.depth_hit = true;
        ctx.failed[key] = std::max(ctx.failed[key], req.depth);
        return std::nullopt;
    }

    // Visibility-relaxed: find what would need to be seen, then look at it.
    SearchMode vr_mode{false, true, req.forbidden, {}};
    SearchResult vr = run_search(ctx, req.start, req.goal, req.belief, vr_mode, h_goal);
    if (vr.status == SearchStatus::Found) {
        CellSet swept = robot_swept(req.belief, req.start, vr.actions);
        CellSet vsg = swept - req.belief.viewed;
        if (vsg.none()) {
            // The relaxed plan is already visibility-clean.
            return tag_navigation(vr.actions, req.depth);
        }
        auto bc = backchain_views(ctx, req, req.start, req.belief, vsg);
        if (bc) {
            PlanRequest final_req{bc->config,    req.goal, bc->belief, req.forbidden,
                                  req.excluded, req.depth - 1};
            auto final_leg = lamb_rec(ctx, final_req);
            if (final_leg) {
                LambPlan plan = bc->legs;
                plan.append(*final_leg);
                return plan;
            }
        }
    }

    // Collision-relaxed: plan through movables, move the first one hit.
    if (ctx.cfg.allow_manipulation) {
        SearchMode cr_mode{false, false, req.forbidden, {}};
        SearchResult cr = run_search(ctx, req.start, req.goal, req.belief, cr_mode, h_goal);
        if (cr.status == SearchStatus::Found) {
            auto obj = first_collision(cr.actions, req.start, req.belief);
            bool excluded_hit =
                obj && std::find(req.excluded.begin(), req.excluded.end(), *obj) !=
                           req.excluded.end();
            if (obj && !excluded_hit) {
                CellSet relaxed_swept = robot_swept(req.belief, req.start, cr.actions);
                auto cands = sample_manip(*obj, req.belief, req, relaxed_swept, ctx.cfg);
                for (const ManipCandidate& cand : cands) {
                    if (ctx.stats.expansions >= ctx.cfg.total_expansion_budget) {
                        ctx.budget_hit = true;
                        break;
                    }
                    auto plan = plan_candidate(ctx, req, cand);
                    if (plan) return plan;
                }
            }
        }
    }

    ctx.failed[key] = std::max(ctx.failed[key], req.depth);
    return std::nullopt;
}

}  // namespace

std::vector<ManipCandidate> sample_manip(int object_id, const BeliefGrids& belief,
                                         const PlanRequest& req, const CellSet& relaxed_swept,
                                         const PlannerConfig& cfg) {
    std::vector<ManipCandidate> out;
    auto it = belief.objects.find(object_id);
    if (it == belief.objects.end()) return out;
    const BeliefObject& obj = it->second;
    std::vector<Cell> obj_cells = obj.cells();
    CellSet obj_set(belief.dims);
    for (Cell c : obj_cells) obj_set.set(c);
    CellSet hard = belief.statics | req.forbidden;  // never usable
    CellSet others = belief.object_cells({object_id});

    auto body_ok = [&](Cell anchor, Heading h, bool allow_movables) {
        for (const Offset& o : belief.robot_footprint.offsets(h)) {
            Cell c = anchor + o;
            if (!belief.viewed.in_bounds(c)) return false;
            if (hard.test(c) || obj_set.test(c)) return false;
            if (!allow_movables && others.test(c)) return false;
        }
        return true;
    };

    static const int kCardinals[4] = {0, 2, 4, 6};
    for (int dir : kCardinals) {
        Heading h(dir);
        Offset u = h.unit();
        for (Cell c : obj_cells) {
            Cell a{c.x - u.dx, c.y - u.dy};
            if (obj_set.test(a)) continue;  // interior face
            // Approach stance: statics and forbidden disqualify; movables may
            // be cleared by the recursion that plans the pre leg.
            if (!body_ok(a, h, true)) continue;
            Configuration q_pre{a, h, std::nullopt};

            // Push candidates.
            for (int d = 1; d <= cfg.push_max_distance; ++d) {
                bool legal = true;
                for (int i = 1; i <= d && legal; ++i) {
                    Offset shift{u.dx * i, u.dy * i};
                    for (Cell oc : obj_cells) {
                        Cell nc = oc + shift;
                        if (!belief.viewed.in_bounds(nc) || hard.test(nc) || others.test(nc)) {
                            legal = false;
                            break;
                        }
                    }
                    if (!legal) break;
                    Cell ra{a.x + shift.dx, a.y + shift.dy};
                    for (const Offset& o : belief.robot_footprint.offsets(h)) {
                        Cell rc = ra + o;
                        if (!belief.viewed.in_bounds(rc) || hard.test(rc) || others.test(rc)) {
                            legal = false;
                            break;
                        }
                        // Robot may not share a cell with the shifted object.
                        for (Cell oc : obj_cells) {
                            Cell nc = oc + shift;
                            if (nc == rc) legal = false;
                        }
                        if (!legal) break;
                    }
                }
                if (!legal) break;
                ManipCandidate cand;
                cand.object_id = object_id;
                cand.kind = ManipCandidate::Kind::Push;
                cand.q_pre = q_pre;
                cand.q_post = Configuration{Cell{a.x + u.dx * d, a.y + u.dy * d}, h, std::nullopt};
                cand.push_distance = d;
                cand.result_anchor = Cell{obj.anchor.x + u.dx * d, obj.anchor.y + u.dy * d};
                cand.result_heading = obj.heading;
                cand.object_swept = CellSet(belief.dims);
                for (int i = 0; i <= d; ++i)
                    for (Cell oc : obj_cells)
                        cand.object_swept.set(Cell{oc.x + u.dx * i, oc.y + u.dy * i});
                cand.displacement = d + chebyshev(req.start.cell, a);
                out.push_back(std::move(cand));
            }

            // Pick-carry-place candidates.
            if (!obj.pickable) continue;
            Offset delta0 = obj.anchor - a;
            int placements = 0;
            for (int r = 1; r <= cfg.placement_radius && placements < cfg.placements_per_side;
                 ++r) {
                for (int dy = -r; dy <= r && placements < cfg.placements_per_side; ++dy) {
                    for (int dx = -r; dx <= r && placements < cfg.placements_per_side; ++dx) {
                        if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
                        Cell p{obj.anchor.x + dx, obj.anchor.y + dy};
                        bool ok = true;
                        for (const Offset& o : obj.footprint.offsets(obj.heading)) {
                            Cell oc = p + o;
                            if (!belief.viewed.in_bounds(oc) || hard.test(oc) ||
                                others.test(oc) || relaxed_swept.test(oc) ||
                                (cfg.require_viewed_placements && !belief.viewed.test(oc))) {
                                ok = false;
                                break;
                            }
                        }
                        if (!ok) continue;
                        Cell rp{p.x - delta0.dx, p.y - delta0.dy};
                        for (const Offset& o : belief.robot_footprint.offsets(h)) {
                            Cell rc = rp + o;
                            if (!belief.viewed.in_bounds(rc) || hard.test(rc) ||
                                others.test(rc)) {
                                ok = false;
                                break;
                            }
                            for (const Offset& oo : obj.footprint.offsets(obj.heading))
                                if (p + oo == rc) ok = false;
                            if (!ok) break;
                        }
                        if (!ok) continue;
                        ManipCandidate cand;
                        cand.object_id = object_id;
                        cand.kind = ManipCandidate::Kind::PickPlace;
                        cand.q_pre = q_pre;
                        cand.q_post = Configuration{rp, h, std::nullopt};
                        cand.place_anchor = p;
                        cand.place_heading = obj.heading;
                        cand.q_place_cell = rp;
                        cand.result_anchor = p;
                        cand.result_heading = obj.heading;
                        cand.object_swept = CellSet(belief.dims);
                        for (Cell oc : obj_cells) cand.object_swept.set(oc);
                        for (const Offset& o : obj.footprint.offsets(obj.heading))
                            cand.object_swept.set(p + o);
                        cand.displacement =
                            chebyshev(p, obj.anchor) + chebyshev(req.start.cell, a);
                        for (const Offset& o : obj.footprint.offsets(obj.heading))
                            if (!belief.viewed.test(p + o)) ++cand.unseen_cells;
                        out.push_back(std::move(cand));
                        ++placements;
                    }
                }
            }
        }
    }

    std::stable_sort(out.begin(), out.end(),
                     [&cfg](const ManipCandidate& a, const ManipCandidate& b) {
                         if (cfg.prefer_carry && a.kind != b.kind)
                             return a.kind == ManipCandidate::Kind::PickPlace;
                         // Placements in already-seen space come first; only
                         // planners that allow unseen placements ever differ.
                         if (a.unseen_cells != b.unseen_cells)
                             return a.unseen_cells < b.unseen_cells;
                         if (a.displacement != b.displacement)
                             return a.displacement < b.displacement;
                         // Carrying wins ties: it never has to move the object
                         // through space the robot cannot already see past.
                         if (a.kind != b.kind)
                             return a.kind == ManipCandidate::Kind::PickPlace;
                         if (!(a.q_pre.cell == b.q_pre.cell)) return a.q_pre.cell < b.q_pre.cell;
                         return a.q_pre.heading.idx < b.q_pre.heading.idx;
                     });
    if (static_cast<int>(out.size()) > cfg.manip_candidates_cap)
        out.resize(static_cast<size_t>(cfg.manip_candidates_cap));
    return out;
}

std::optional<int> first_collision(const std::vector<Action>& actions,
                                   const Configuration& start, const BeliefGrids& belief) {
    Configuration q = start;
    std::vector<Configuration> configs;
    configs.push_back(q);
    for (const Action& a : actions) {
        if (is_nav_action(a.kind)) q = apply_nav_action(q, a);
        configs.push_back(q);
    }
    for (const Configuration& c : configs) {
        std::vector<Cell> cells = belief.robot_footprint.cells_at(c.cell, c.heading);
        if (c.attachment) {
            auto oc = c.attachment->object_cells(c.cell, c.heading);
            cells.insert(cells.end(), oc.begin(), oc.end());
        }
        int best = -1;
        for (const auto& [id, obj] : belief.objects) {
            for (Cell ocell : obj.cells())
                for (Cell rc : cells)
                    if (ocell == rc && (best < 0 || id < best)) best = id;
        }
        if (best >= 0) return best;
    }
    return std::nullopt;
}

BeliefGrids update_pose(const BeliefGrids& belief, int object_id, Cell anchor, Heading heading) {
    auto it = belief.objects.find(object_id);
    if (it == belief.objects.end()) throw std::domain_error("update_pose: unknown object");
    BeliefGrids out = belief;
    out.refuted_views.clear();
    BeliefObject& obj = out.objects.at(object_id);
    obj.anchor = anchor;
    obj.heading = heading;
    CellSet occupied = out.statics | out.object_cells({object_id});
    for (Cell c : obj.cells()) {
        if (!occupied.in_bounds(c)) throw std::domain_error("update_pose: pose out of bounds");
        if (occupied.test(c)) throw std::domain_error("update_pose: pose overlaps occupancy");
    }
    return out;
}

LambOutcome lamb_plan(const PlanRequest& req, const PlannerConfig& cfg) {
    Ctx ctx{cfg, {}, {}, false, false};
    PlanRequest top = req;
    top.depth = cfg.recursion_depth;
    if (top.forbidden.dims() != top.belief.dims) top.forbidden = CellSet(top.belief.dims);
    LambOutcome out;
    out.plan = lamb_rec(ctx, top);
    out.stats = ctx.stats;
    if (out.plan)
        out.fail = PlanFail::None;
    else if (ctx.budget_hit)
        out.fail = PlanFail::BudgetExhausted;
    else if (ctx.depth_hit)
        out.fail = PlanFail::DepthExhausted;
    else
        out.fail = PlanFail::Unsolvable;
    return out;
}

}  // namespace vanamo
