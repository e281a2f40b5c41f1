#include "vanamo/baselines.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>

namespace vanamo {

std::string planner_name(PlannerKind k) {
    switch (k) {
        case PlannerKind::VaStarOnly: return "vastar";
        case PlannerKind::FoNamo: return "fonamo";
        case PlannerKind::ConstrainedNamo: return "namo";
        case PlannerKind::Vamp: return "vamp";
        case PlannerKind::Lamb: return "lamb";
    }
    return "?";
}

std::optional<PlannerKind> parse_planner(const std::string& name) {
    if (name == "vastar") return PlannerKind::VaStarOnly;
    if (name == "fonamo") return PlannerKind::FoNamo;
    if (name == "namo") return PlannerKind::ConstrainedNamo;
    if (name == "vamp") return PlannerKind::Vamp;
    if (name == "lamb") return PlannerKind::Lamb;
    return std::nullopt;
}

bool planner_respects_visibility(PlannerKind k) { return k != PlannerKind::FoNamo; }

namespace {

struct SearchBudget {
    PlanStats* stats;
    long cap;

    bool spent() const { return stats->expansions >= cap; }
    void add(const SearchResult& r) {
        stats->expansions += r.expansions;
        stats->searches += 1;
    }
};

SearchResult search(SearchBudget& b, const Configuration& start, const GoalSpec& goal,
                    const BeliefGrids& belief, const SearchMode& mode, const HeuristicFn& h,
                    int node_budget) {
    if (b.spent()) {
        SearchResult r;
        r.status = SearchStatus::BudgetExceeded;
        r.final_vis = CellSet(belief.dims);
        return r;
    }
    SearchResult r = va_star(start, goal, belief, mode, h, node_budget);
    b.add(r);
    return r;
}

CellSet plan_swept(const BeliefGrids& belief, const Configuration& start,
                   const std::vector<Action>& actions) {
    std::vector<Configuration> configs;
    configs.push_back(start);
    Configuration q = start;
    for (const Action& a : actions) {
        if (is_nav_action(a.kind)) q = apply_nav_action(q, a);
        configs.push_back(q);
    }
    return swept_cells(belief.robot_footprint, configs, belief.dims);
}

bool body_free_of_movables(const BeliefGrids& belief, const Configuration& q,
                           const CellSet& others) {
    for (const Offset& o : belief.robot_footprint.offsets(q.heading))
        if (others.test(q.cell + o)) return false;
    return true;
}

Attachment attachment_for(const Configuration& q, int id, const BeliefObject& obj) {
    Attachment att;
    att.object_id = id;
    att.footprint = obj.footprint;
    att.heading_offset = Heading(obj.heading.idx - q.heading.idx).idx;
    Offset delta0 = obj.anchor - q.cell;
    for (int h = 0; h < 8; ++h) att.anchor_offset[h] = rotate_offset(delta0, h - q.heading.idx);
    return att;
}

// Non-recursive pre+mid legs for one candidate: plain searches only, used by
// the NAMO-style baselines. Returns the combined plan ending at cand.q_post.
std::optional<LambPlan> direct_manip(SearchBudget& budget, const Configuration& start,
                                     const ManipCandidate& cand, const BeliefGrids& belief,
                                     const CellSet& forbidden, const PlannerConfig& cfg,
                                     bool enforce_visibility) {
    const bool trace = std::getenv("VANAMO_TRACE_EPISODE") != nullptr;
    CellSet others = belief.object_cells({cand.object_id});
    if (!body_free_of_movables(belief, cand.q_pre, others)) {
        if (trace) std::cerr << "[cand qpre-blocked]\n";
        return std::nullopt;
    }

    SearchMode mode{enforce_visibility, true, forbidden, {}, enforce_visibility ? 1 : 2};
    GoalSpec pre_goal = GoalSpec::exact(cand.q_pre.cell, cand.q_pre.heading);
    SearchResult pre = search(budget, start, pre_goal, belief, mode,
                              goal_distance_heuristic(pre_goal, belief.dims), cfg.node_budget);
    if (pre.status != SearchStatus::Found) {
        if (trace)
            std::cerr << "[cand pre-fail " << (cand.kind == ManipCandidate::Kind::Push ? "push" : "pick")
                      << " qpre=(" << cand.q_pre.cell.x << "," << cand.q_pre.cell.y << ",h"
                      << cand.q_pre.heading.idx << ") place=(" << cand.place_anchor.x << ","
                      << cand.place_anchor.y << ") unseen=" << cand.unseen_cells
                      << " status=" << (pre.status == SearchStatus::BudgetExceeded ? "budget" : "exhausted")
                      << "]\n";
        return std::nullopt;
    }

    LambPlan plan = tag_navigation(pre.actions, 0);
    upgrade_tags(plan, SegKind::ManipPre, cand.object_id);

    if (cand.kind == ManipCandidate::Kind::Push) {
        if (enforce_visibility) {
            // Direct planners cannot schedule views: the push corridor must
            // already be known space.
            BeliefGrids after_pre = belief;
            after_pre.viewed = pre.final_vis;
            CellSet required(belief.dims);
            BeliefObject obj = belief.objects.at(cand.object_id);
            Configuration q = cand.q_pre;
            for (int i = 0; i < cand.push_distance; ++i) {
                TransitionCells tc =
                    transition_cells(belief.robot_footprint, q, Action{ActionKind::Push},
                                     &obj.footprint, obj.anchor, obj.heading);
                for (Cell c : tc.after) {
                    bool vacated = false;
                    for (Cell b : tc.before) vacated |= (b == c);
                    if (!vacated) required.set(c);
                }
                Offset d = q.heading.unit();
                obj.anchor = obj.anchor + d;
                q.cell = q.cell + d;
            }
            if ((required - after_pre.viewed).any()) return std::nullopt;
        }
        for (int i = 0; i < cand.push_distance; ++i)
            plan.actions.push_back(TaggedAction{Action{ActionKind::Push}, SegKind::ManipMid,
                                                cand.object_id, 0});
        return plan;
    }

    // Pick-carry-place with a plain carry search.
    auto it = belief.objects.find(cand.object_id);
    if (it == belief.objects.end()) return std::nullopt;
    Configuration q_attach = cand.q_pre;
    q_attach.attachment = attachment_for(cand.q_pre, cand.object_id, it->second);
    BeliefGrids carry_belief = belief;
    carry_belief.objects.erase(cand.object_id);
    carry_belief.viewed = pre.final_vis;
    GoalSpec carry_goal = GoalSpec::exact(cand.q_place_cell, cand.q_pre.heading);
    SearchMode carry_mode{enforce_visibility, true, forbidden, {},
                          enforce_visibility ? 1 : 2};
    SearchResult carry =
        search(budget, q_attach, carry_goal, carry_belief, carry_mode,
               goal_distance_heuristic(carry_goal, belief.dims), cfg.node_budget);
    if (carry.status != SearchStatus::Found) {
        if (trace)
            std::cerr << "[cand carry-fail place=(" << cand.place_anchor.x << ","
                      << cand.place_anchor.y << ") qplace=(" << cand.q_place_cell.x << ","
                      << cand.q_place_cell.y << ")]\n";
        return std::nullopt;
    }

    plan.actions.push_back(TaggedAction{Action{ActionKind::Pick, cand.object_id},
                                        SegKind::ManipMid, cand.object_id, 0});
    LambPlan carry_plan = tag_navigation(carry.actions, 0);
    upgrade_tags(carry_plan, SegKind::ManipMid, cand.object_id);
    plan.append(carry_plan);
    plan.actions.push_back(
        TaggedAction{Action{ActionKind::Place}, SegKind::ManipMid, cand.object_id, 0});
    return plan;
}

std::vector<int> ordered_collisions(const std::vector<Action>& actions,
                                    const Configuration& start, const BeliefGrids& belief) {
    std::vector<int> order;
    Configuration q = start;
    std::vector<Configuration> configs{start};
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
        for (const auto& [id, obj] : belief.objects) {
            if (std::find(order.begin(), order.end(), id) != order.end()) continue;
            bool hit = false;
            for (Cell ocell : obj.cells())
                for (Cell rc : cells) hit |= (ocell == rc);
            if (hit) order.push_back(id);
        }
    }
    return order;
}

}  // namespace

LambOutcome plan_va_star_only(const PlanRequest& req, const PlannerConfig& cfg) {
    LambOutcome out;
    SearchBudget budget{&out.stats, cfg.total_expansion_budget};
    CellSet forbidden =
        req.forbidden.dims() == req.belief.dims ? req.forbidden : CellSet(req.belief.dims);
    CellSet start_vis = req.belief.viewed | sim_observe(req.belief, req.start);
    if (req.goal.accept(req.start, start_vis)) {
        out.plan = LambPlan{};
        return out;
    }
    SearchMode mode{true, true, forbidden, {}};
    SearchResult r = search(budget, req.start, req.goal, req.belief, mode,
                            goal_distance_heuristic(req.goal, req.belief.dims), cfg.node_budget);
    if (r.status == SearchStatus::Found) {
        out.plan = tag_navigation(r.actions, 0);
        out.fail = PlanFail::None;
    } else {
        out.fail = r.status == SearchStatus::BudgetExceeded ? PlanFail::BudgetExhausted
                                                            : PlanFail::Unsolvable;
    }
    return out;
}

LambOutcome plan_constrained_namo(const PlanRequest& req, const PlannerConfig& cfg) {
    LambOutcome out;
    SearchBudget budget{&out.stats, cfg.total_expansion_budget};
    CellSet forbidden =
        req.forbidden.dims() == req.belief.dims ? req.forbidden : CellSet(req.belief.dims);
    HeuristicFn h_goal = goal_distance_heuristic(req.goal, req.belief.dims);

    BeliefGrids cur = req.belief;
    Configuration pos = req.start;
    LambPlan acc;
    int max_iters = static_cast<int>(cur.objects.size()) * 2 + 2;

    for (int iter = 0; iter < max_iters; ++iter) {
        CellSet pos_vis = cur.viewed | sim_observe(cur, pos);
        if (req.goal.accept(pos, pos_vis)) {
            out.plan = acc;
            return out;
        }
        SearchMode mode{true, true, forbidden, {}};
        SearchResult direct =
            search(budget, pos, req.goal, cur, mode, h_goal, cfg.node_budget);
        if (direct.status == SearchStatus::Found) {
            acc.append(tag_navigation(direct.actions, 0));
            out.plan = acc;
            return out;
        }

        bool moved = false;
        for (const auto& [id, obj] : cur.objects) {
            BeliefGrids without = cur;
            without.objects.erase(id);
            SearchResult test =
                search(budget, pos, req.goal, without, mode, h_goal, cfg.node_budget);
            // Strict improvement: newly feasible counts; ties never do.
            if (test.status != SearchStatus::Found) continue;

            PlanRequest sample_req{pos, req.goal, cur, forbidden, {}, 0};
            CellSet improved_swept = plan_swept(without, pos, test.actions);
            PlannerConfig sample_cfg = cfg;
            sample_cfg.require_viewed_placements = true;
            auto cands = sample_manip(id, cur, sample_req, improved_swept, sample_cfg);
            for (const ManipCandidate& cand : cands) {
                if (budget.spent()) break;
                auto legs = direct_manip(budget, pos, cand, cur, forbidden, cfg, true);
                if (!legs) continue;
                ReplayOptions opts;
                opts.forbidden = forbidden;
                auto rs = replay_on_belief(cur, pos, legs->raw_actions(), opts);
                if (!rs) continue;
                acc.append(*legs);
                pos = rs->config;
                cur = rs->belief;
                moved = true;
                break;
            }
            if (moved) break;
        }
        if (!moved) {
            out.fail =
                budget.spent() ? PlanFail::BudgetExhausted : PlanFail::Unsolvable;
            return out;
        }
    }
    out.fail = PlanFail::Unsolvable;
    return out;
}

namespace {

std::optional<LambPlan> fo_namo_rec(SearchBudget& budget, const Configuration& pos,
                                    const GoalSpec& goal, const BeliefGrids& belief,
                                    const CellSet& forbidden, const PlannerConfig& cfg,
                                    int guard) {
    HeuristicFn h_goal = goal_distance_heuristic(goal, belief.dims);
    SearchMode direct_mode{false, true, forbidden, {}, 2};
    SearchResult direct = search(budget, pos, goal, belief, direct_mode, h_goal, cfg.node_budget);
    if (direct.status == SearchStatus::Found) return tag_navigation(direct.actions, 0);
    if (guard <= 0 || budget.spent()) return std::nullopt;

    SearchMode relaxed_mode{false, false, forbidden, {}, 2};
    SearchResult relaxed =
        search(budget, pos, goal, belief, relaxed_mode, h_goal, cfg.node_budget);
    if (relaxed.status != SearchStatus::Found) return std::nullopt;

    std::vector<int> collisions = ordered_collisions(relaxed.actions, pos, belief);
    CellSet relaxed_swept = plan_swept(belief, pos, relaxed.actions);
    // Reverse collision order from the goal; depth-first over candidates.
    for (auto it = collisions.rbegin(); it != collisions.rend(); ++it) {
        PlanRequest sample_req{pos, goal, belief, forbidden, {}, 0};
        PlannerConfig sample_cfg = cfg;
        sample_cfg.require_viewed_placements = false;  // unviewed space assumed free
        sample_cfg.prefer_carry = true;
        auto cands = sample_manip(*it, belief, sample_req, relaxed_swept, sample_cfg);
        for (const ManipCandidate& cand : cands) {
            if (budget.spent()) return std::nullopt;
            auto legs = direct_manip(budget, pos, cand, belief, forbidden, cfg, false);
            if (!legs) continue;
            ReplayOptions opts;
            opts.enforce_visibility = false;
            opts.forbidden = forbidden;
            auto rs = replay_on_belief(belief, pos, legs->raw_actions(), opts);
            if (!rs) {
                if (std::getenv("VANAMO_TRACE_EPISODE"))
                    std::cerr << "[cand replay-fail place=(" << cand.place_anchor.x << ","
                              << cand.place_anchor.y << ")]\n";
                continue;
            }
            // The vacated corridor is the keyhole the move opened; transit
            // through it stays legal for the rest of the depth-first search.
            auto post = fo_namo_rec(budget, rs->config, goal, rs->belief, forbidden,
                                    cfg, guard - 1);
            if (!post && std::getenv("VANAMO_TRACE_EPISODE"))
                std::cerr << "[cand post-fail place=(" << cand.place_anchor.x << ","
                          << cand.place_anchor.y << ")]\n";
            if (post) {
                LambPlan plan = *legs;
                plan.append(*post);
                return plan;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

LambOutcome plan_fo_namo(const PlanRequest& req, const PlannerConfig& cfg) {
    LambOutcome out;
    SearchBudget budget{&out.stats, cfg.total_expansion_budget};
    CellSet forbidden =
        req.forbidden.dims() == req.belief.dims ? req.forbidden : CellSet(req.belief.dims);
    CellSet start_vis = req.belief.viewed | sim_observe(req.belief, req.start);
    if (req.goal.accept(req.start, start_vis)) {
        out.plan = LambPlan{};
        return out;
    }
    int guard = static_cast<int>(req.belief.objects.size()) + 1;
    out.plan = fo_namo_rec(budget, req.start, req.goal, req.belief, forbidden, cfg, guard);
    if (!out.plan)
        out.fail = budget.spent() ? PlanFail::BudgetExhausted : PlanFail::Unsolvable;
    return out;
}

LambOutcome plan_vamp(const PlanRequest& req, const PlannerConfig& cfg) {
    PlannerConfig vamp_cfg = cfg;
    vamp_cfg.allow_manipulation = false;
    return lamb_plan(req, vamp_cfg);
}

LambOutcome plan_with(PlannerKind kind, const PlanRequest& req, const PlannerConfig& cfg) {
    switch (kind) {
        case PlannerKind::VaStarOnly: return plan_va_star_only(req, cfg);
        case PlannerKind::FoNamo: return plan_fo_namo(req, cfg);
        case PlannerKind::ConstrainedNamo: return plan_constrained_namo(req, cfg);
        case PlannerKind::Vamp: return plan_vamp(req, cfg);
        case PlannerKind::Lamb: return lamb_plan(req, cfg);
    }
    return LambOutcome{};
}

}  // namespace vanamo
