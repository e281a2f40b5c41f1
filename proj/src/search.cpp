#include "vanamo/search.hpp"

#include <algorithm>
#include <memory>
#include <queue>

namespace vanamo {

HeuristicFn goal_distance_heuristic(const GoalSpec& goal, GridDims dims) {
    if (goal.kind == GoalSpec::Kind::Exact) {
        Cell target = goal.cell;
        return [target](const Configuration& q, const CellSet&) {
            return chebyshev(q.cell, target);
        };
    }
    CellSet sources = goal.region;
    auto field = std::make_shared<ScalarField>(distance_field(CellSet::full(dims), sources));
    return [field](const Configuration& q, const CellSet&) {
        int32_t v = field->value(q.cell);
        return v == ScalarField::kUnreachable ? 0 : static_cast<int>(v);
    };
}

HeuristicFn field_heuristic(const ScalarField& field) {
    auto f = std::make_shared<ScalarField>(field);
    int32_t fallback = f->max_finite() + 1;
    return [f, fallback](const Configuration&, const CellSet& vis) {
        int32_t best = ScalarField::kUnreachable;
        vis.for_each([&](Cell c) {
            int32_t v = f->value(c);
            if (v < best) best = v;
        });
        return best == ScalarField::kUnreachable ? static_cast<int>(fallback)
                                                 : static_cast<int>(best);
    };
}

namespace {

void config_cells(const BeliefGrids& belief, const Configuration& q, std::vector<Cell>& out) {
    out.clear();
    for (const Offset& o : belief.robot_footprint.offsets(q.heading)) out.push_back(q.cell + o);
    if (q.attachment)
        for (Cell c : q.attachment->object_cells(q.cell, q.heading)) out.push_back(c);
}

}  // namespace

std::optional<Configuration> nav_transition(const BeliefGrids& belief, const SearchMode& mode,
                                            const Configuration& q, const Action& a,
                                            const CellSet* vis) {
    Configuration next = apply_nav_action(q, a);
    std::vector<Cell> new_cells, old_cells;
    config_cells(belief, next, new_cells);
    CellSet obstacles = belief.statics;  // statics and forbidden always bind
    obstacles |= mode.forbidden;
    CellSet movables = belief.object_cells(mode.ignored_objects);
    for (Cell c : new_cells) {
        if (!belief.viewed.in_bounds(c)) return std::nullopt;
        if (obstacles.test(c)) return std::nullopt;
        if (mode.enforce_movables && movables.test(c)) return std::nullopt;
    }
    if (mode.enforce_visibility && vis && !is_rotation_action(a.kind)) {
        config_cells(belief, q, old_cells);
        for (Cell c : new_cells) {
            bool vacated = false;
            for (Cell o : old_cells) vacated |= (o == c);
            if (!vacated && !vis->test(c)) return std::nullopt;
        }
    }
    return next;
}

CellSet path_vision(std::span<const Configuration> path, const BeliefGrids& belief,
                    const std::vector<int>& ignored) {
    CellSet vis(belief.dims);
    for (const Configuration& q : path) vis |= sim_observe(belief, q, ignored);
    return vis;
}

namespace {

constexpr ActionKind kNavActions[6] = {ActionKind::MoveForward, ActionKind::MoveBack,
                                       ActionKind::StrafeLeft,  ActionKind::StrafeRight,
                                       ActionKind::RotateLeft,  ActionKind::RotateRight};

struct QueueEntry {
    int f;
    int64_t seq;
    int state;
    int parent;      // -1 for root
    int8_t action;   // index into kNavActions
    int g;
};

struct EntryOrder {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        return a.seq > b.seq;
    }
};

class Searcher {
  public:
    Searcher(const Configuration& start, const GoalSpec& goal, const BeliefGrids& belief,
             const SearchMode& mode, const HeuristicFn& h, int node_budget)
        : start_(start),
          goal_(goal),
          belief_(belief),
          mode_(mode),
          h_(h),
          budget_(node_budget),
          n_states_(belief.dims.cell_count() * 8),
          closed_(n_states_, 0),
          vis_(n_states_),
          g_(n_states_, 0),
          parent_(n_states_, -1),
          parent_action_(n_states_, -1),
          view_cache_(n_states_),
          view_cached_(n_states_, 0) {}

    std::vector<SearchResult> run(int max_results) {
        std::vector<SearchResult> results;
        {
            std::vector<Cell> cells;
            config_cells(belief_, start_, cells);
            CellSet blocked = belief_.statics | mode_.forbidden;
            for (Cell c : cells) {
                if (!belief_.viewed.in_bounds(c))
                    throw std::domain_error("va_star: start out of bounds");
                if (mode_.forbidden.test(c))
                    throw std::domain_error("va_star: start violates forbidden cells");
            }
        }
        int root = state_id(start_.cell, start_.heading);
        open_.push(QueueEntry{0, seq_++, root, -1, -1, 0});

        while (!open_.empty()) {
            QueueEntry e = open_.top();
            open_.pop();
            if (closed_[e.state]) continue;
            if (expansions_ >= budget_) {
                status_ = SearchStatus::BudgetExceeded;
                break;
            }
            ++expansions_;
            closed_[e.state] = 1;
            g_[e.state] = e.g;
            parent_[e.state] = e.parent;
            parent_action_[e.state] = e.action;
            Configuration q = config_of(e.state);
            vis_[e.state] = e.parent < 0 ? (belief_.viewed | sim_view(e.state))
                                         : (vis_[e.parent] | sim_view(e.state));

            config_cells(belief_, q, scratch_cells_);
            if (goal_.accept(q, vis_[e.state], scratch_cells_)) {
                results.push_back(make_result(e.state));
                if (static_cast<int>(results.size()) >= max_results) {
                    status_ = SearchStatus::Found;
                    return results;
                }
            }

            for (int ai = 0; ai < 6; ++ai) {
                Action a{kNavActions[ai]};
                auto next = nav_transition(belief_, mode_, q, a, &vis_[e.state]);
                if (!next) continue;
                int ns = state_id(next->cell, next->heading);
                if (closed_[ns]) continue;
                bool lateral = a.kind == ActionKind::StrafeLeft ||
                               a.kind == ActionKind::StrafeRight ||
                               a.kind == ActionKind::MoveBack;
                int ng = e.g + (lateral ? mode_.lateral_cost : 1);
                CellSet child_vis = vis_[e.state] | sim_view(ns);
                int nh = h_(*next, child_vis);
                open_.push(QueueEntry{ng + nh, seq_++, ns, e.state, static_cast<int8_t>(ai), ng});
            }
        }
        if (status_ != SearchStatus::BudgetExceeded) status_ = SearchStatus::Exhausted;
        if (!results.empty()) status_ = SearchStatus::Found;
        for (auto& r : results) r.status = SearchStatus::Found;
        return results;
    }

    SearchStatus status() const { return status_; }
    int expansions() const { return expansions_; }

  private:
    int state_id(Cell c, Heading h) const {
        return (c.y * belief_.dims.width + c.x) * 8 + h.idx;
    }
    Configuration config_of(int state) const {
        Configuration q;
        q.heading = Heading(state & 7);
        int cell = state >> 3;
        q.cell = Cell{cell % belief_.dims.width, cell / belief_.dims.width};
        q.attachment = start_.attachment;
        return q;
    }
    const CellSet& sim_view(int state) {
        if (!view_cached_[state]) {
            view_cache_[state] = sim_observe(belief_, config_of(state), mode_.ignored_objects);
            view_cached_[state] = 1;
        }
        return view_cache_[state];
    }
    SearchResult make_result(int state) const {
        SearchResult r;
        r.status = SearchStatus::Found;
        r.final_config = config_of(state);
        r.final_vis = vis_[state];
        r.cost = g_[state];
        r.expansions = expansions_;
        std::vector<Action> rev;
        for (int s = state; parent_[s] >= 0; s = parent_[s])
            rev.push_back(Action{kNavActions[parent_action_[s]]});
        r.actions.assign(rev.rbegin(), rev.rend());
        return r;
    }

    Configuration start_;
    const GoalSpec& goal_;
    const BeliefGrids& belief_;
    const SearchMode& mode_;
    const HeuristicFn& h_;
    int budget_;
    int n_states_;
    std::vector<uint8_t> closed_;
    std::vector<CellSet> vis_;
    std::vector<int> g_;
    std::vector<int> parent_;
    std::vector<int8_t> parent_action_;
    std::vector<CellSet> view_cache_;
    std::vector<uint8_t> view_cached_;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, EntryOrder> open_;
    std::vector<Cell> scratch_cells_;
    int64_t seq_ = 0;
    int expansions_ = 0;
    SearchStatus status_ = SearchStatus::Exhausted;
};

}  // namespace

SearchResult va_star(const Configuration& start, const GoalSpec& goal, const BeliefGrids& belief,
                     const SearchMode& mode, const HeuristicFn& h, int node_budget) {
    Searcher s(start, goal, belief, mode, h, node_budget);
    auto results = s.run(1);
    if (!results.empty()) return results.front();
    SearchResult r;
    r.status = s.status();
    r.expansions = s.expansions();
    r.final_vis = CellSet(belief.dims);
    return r;
}

std::vector<SearchResult> va_star_enumerate(const Configuration& start, const GoalSpec& goal,
                                            const BeliefGrids& belief, const SearchMode& mode,
                                            const HeuristicFn& h, int node_budget,
                                            int max_results) {
    Searcher s(start, goal, belief, mode, h, node_budget);
    return s.run(max_results);
}

}  // namespace vanamo
