#include <cmath>

#include "vanamo/harness.hpp"

namespace vanamo {

namespace {

struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int range(int lo, int hi) {  // inclusive
        if (hi <= lo) return lo;
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};

struct BuildFail : std::runtime_error {
    explicit BuildFail(const std::string& what) : std::runtime_error(what) {}
};

Footprint wide_body() { return Footprint::from_base({Offset{0, 0}, Offset{0, 1}}); }

void add_border(Scenario& s) {
    for (int x = 0; x < s.dims.width; ++x) {
        s.statics.set(Cell{x, 0});
        s.statics.set(Cell{x, s.dims.height - 1});
    }
    for (int y = 0; y < s.dims.height; ++y) {
        s.statics.set(Cell{0, y});
        s.statics.set(Cell{s.dims.width - 1, y});
    }
}

Scenario base_scenario(Category cat, uint64_t seed, GridDims dims) {
    Scenario s;
    s.dims = dims;
    s.category = cat;
    s.seed = seed;
    s.statics = CellSet(dims);
    s.robot_shape = wide_body();
    add_border(s);
    return s;
}

bool cells_free(const Scenario& s, const std::vector<Cell>& cells) {
    CellSet occupied = s.statics;
    for (const auto& m : s.movables)
        for (Cell c : m.cells()) occupied.set(c);
    for (Cell c : cells) {
        if (!occupied.in_bounds(c)) return false;
        if (occupied.test(c)) return false;
    }
    return true;
}

bool robot_fits(const Scenario& s, Cell anchor, Heading h) {
    return cells_free(s, s.robot_shape.cells_at(anchor, h));
}

BeliefGrids omniscient_belief(const WorldState& w) {
    BeliefGrids b(w.dims, w.robot_footprint, w.sensing_range);
    b.viewed = CellSet::full(w.dims);
    b.statics = w.static_cells;
    for (const auto& m : w.movables)
        b.objects[m.id] = BeliefObject{m.footprint, m.anchor, m.heading, m.pickable};
    return b;
}

BeliefGrids initial_belief(const WorldState& w) {
    BeliefGrids b(w.dims, w.robot_footprint, w.sensing_range);
    return update_belief(b, observe(w, w.robot));
}

// Ground-truth navigation (visibility plays no role); used for witnesses.
std::optional<std::vector<Action>> truth_nav(const WorldState& w, const Configuration& from,
                                             const GoalSpec& goal) {
    BeliefGrids b = omniscient_belief(w);
    SearchMode mode{false, true, CellSet(w.dims), {}};
    SearchResult r =
        va_star(from, goal, b, mode, goal_distance_heuristic(goal, w.dims), 400000);
    if (r.status != SearchStatus::Found) return std::nullopt;
    return r.actions;
}

// Navigation feasibility with full knowledge; movables enforced. When this
// fails, no planner can reach the goal without manipulation.
bool nav_only_reachable(const WorldState& w) {
    BeliefGrids b = omniscient_belief(w);
    SearchMode mode{false, true, CellSet(w.dims), {}};
    GoalSpec goal = GoalSpec::cell_in(w.goal.cells);
    SearchResult r =
        va_star(w.robot, goal, b, mode, goal_distance_heuristic(goal, w.dims), 400000);
    return r.status == SearchStatus::Found;
}

// Direct visibility-enforced search from the initial observation.
bool direct_plan_feasible(const WorldState& w, const BeliefGrids& belief) {
    SearchMode mode{true, true, CellSet(w.dims), {}};
    GoalSpec goal = GoalSpec::cell_in(w.goal.cells);
    SearchResult r =
        va_star(w.robot, goal, belief, mode, goal_distance_heuristic(goal, w.dims), 400000);
    return r.status == SearchStatus::Found;
}

bool witness_reaches_goal(const Scenario& s) {
    if (s.witness.empty()) return false;
    WorldState w = s.to_world();
    for (const Action& a : s.witness) {
        StepOutcome out = step(w, a);
        if (!out.ok()) return false;
        w = *out.next;
    }
    return w.at_goal();
}

EpisodeConfig check_episode_config() {
    EpisodeConfig cfg;
    cfg.step_budget = 600;
    cfg.time_budget_s = 90.0;
    return cfg;
}

bool episode_succeeds(const Scenario& s, PlannerKind k) {
    return run_episode(s, k, check_episode_config()).first.success;
}

void apply_actions(WorldState& w, const std::vector<Action>& actions,
                   std::vector<Action>& witness) {
    for (const Action& a : actions) {
        StepOutcome out = step(w, a);
        if (!out.ok()) throw BuildFail("witness action rejected");
        w = *out.next;
        witness.push_back(a);
    }
}

void append_truth_nav(WorldState& w, const GoalSpec& goal, std::vector<Action>& witness) {
    auto legs = truth_nav(w, w.robot, goal);
    if (!legs) throw BuildFail("witness navigation infeasible");
    apply_actions(w, *legs, witness);
}

// ---------------------------------------------------------------- simple ---

Scenario build_simple_navigation(Rng& rng, uint64_t seed, GridDims dims) {
    Scenario s = base_scenario(Category::SimpleNavigation, seed, dims);
    const int W = dims.width, H = dims.height;

    s.robot_cell = Cell{rng.range(2, W / 3), rng.range(3, H - 5)};
    s.robot_heading = Heading(0);
    int gx = rng.range(2 * W / 3, W - 4);
    int gy = rng.range(3, H - 5);
    s.goal_rects.push_back({gx, gy, gx + 1, gy + 1});

    int pillars = rng.range(2, 4);
    for (int i = 0; i < pillars; ++i) {
        for (int tries = 0; tries < 20; ++tries) {
            Cell p{rng.range(4, W - 5), rng.range(3, H - 4)};
            if (chebyshev(p, s.robot_cell) < 3 || chebyshev(p, Cell{gx, gy}) < 3) continue;
            if (s.statics.test(p)) continue;
            s.statics.set(p);
            if (rng.range(0, 1)) {
                Cell q{p.x + 1, p.y};
                if (!s.statics.test(q) && chebyshev(q, Cell{gx, gy}) >= 3 &&
                    chebyshev(q, s.robot_cell) >= 3)
                    s.statics.set(q);
            }
            break;
        }
    }
    // One decorative movable off to the side.
    Cell box{rng.range(W / 3, 2 * W / 3), rng.range(3, H - 4)};
    if (cells_free(s, {box}) && chebyshev(box, s.robot_cell) >= 4 &&
        chebyshev(box, Cell{gx, gy}) >= 4) {
        MovableObject m;
        m.id = 1;
        m.name = "crate";
        m.footprint = Footprint::single();
        m.anchor = box;
        m.heading = Heading(0);
        m.pickable = derive_pickable(m.footprint);
        s.movables.push_back(m);
    }
    if (!robot_fits(s, s.robot_cell, s.robot_heading)) throw BuildFail("start blocked");

    WorldState w = s.to_world();
    std::vector<Action> witness;
    append_truth_nav(w, GoalSpec::cell_in(w.goal.cells), witness);
    s.witness = witness;
    return s;
}

bool check_simple_navigation(const Scenario& s) {
    WorldState w = s.to_world();
    // Omniscient-visibility direct run must be solvable, and both the plain
    // searcher and the blind-space baseline must carry their live episodes.
    BeliefGrids omni = omniscient_belief(w);
    SearchMode mode{true, true, CellSet(w.dims), {}};
    GoalSpec goal = GoalSpec::cell_in(w.goal.cells);
    if (va_star(w.robot, goal, omni, mode, goal_distance_heuristic(goal, w.dims), 400000)
            .status != SearchStatus::Found)
        return false;
    if (!witness_reaches_goal(s)) return false;
    if (!episode_succeeds(s, PlannerKind::VaStarOnly)) return false;
    if (!episode_succeeds(s, PlannerKind::FoNamo)) return false;
    return true;
}

// ------------------------------------------------------------ visibility ---

// A one-cell-tall corridor traversable only sideways: the body can never
// stand upright inside it, so the camera faces the wall while strafing
// through. No stance along the entry lane can face down the corridor (the
// cells north of the lane are walled), so the interior is observable only
// from a dead-end periscope shaft that drops through the north wall into the
// corridor's first cell. First-path-wins search cannot use the shaft (looking
// requires backing out through already-expanded states), and optimistic
// search has no reason to enter a dead end, so the plain searcher fails while
// the view-subgoal planners drive around through the north strip, look down
// the corridor, come back, and strafe through.
struct VisibilityGeometry {
    int cr;  // corridor row
    int vx;  // periscope shaft column
};

VisibilityGeometry lay_visibility_core(Scenario& s, Rng& rng) {
    const int W = s.dims.width, H = s.dims.height;
    int cr = rng.range(6, H - 7);
    // The shaft sits two cells past the last corridor cell observable from
    // the south-west through the lane window, so no stance beside it is
    // reachable before its view has been scheduled.
    int vx = 7;
    for (int x = 5; x <= W - 2; ++x) s.statics.set(Cell{x, cr - 1});    // south wall
    for (int x = 2; x <= W - 2; ++x)
        if (x != vx) s.statics.set(Cell{x, cr + 1});                    // north wall
    s.statics.set(Cell{2, cr});  // pillar: kills the long east view from column 1
    s.goal_rects.push_back({W - 3, cr, W - 2, cr});
    return {cr, vx};
}

void place_visibility_start(Scenario& s, Rng& rng, const VisibilityGeometry& g) {
    const int W = s.dims.width;
    for (int tries = 0; tries < 50; ++tries) {
        int sy = rng.range(2, g.cr - 4);
        int sx = rng.range(3, W - 4);
        Heading h(rng.range(0, 7));
        if (!robot_fits(s, Cell{sx, sy}, h)) continue;
        s.robot_cell = Cell{sx, sy};
        s.robot_heading = h;
        return;
    }
    throw BuildFail("no start placement");
}

Scenario build_visibility(Rng& rng, uint64_t seed, GridDims dims) {
    Scenario s = base_scenario(Category::Visibility, seed, dims);
    VisibilityGeometry g = lay_visibility_core(s, rng);
    place_visibility_start(s, rng, g);

    WorldState w = s.to_world();
    std::vector<Action> witness;
    append_truth_nav(w, GoalSpec::cell_in(w.goal.cells), witness);
    s.witness = witness;
    return s;
}

// Direct search with the map fully known but only the initially observed
// cells viewed: optimism about unknown statics cannot mask the defeat.
bool direct_with_map_fails(const WorldState& w) {
    BeliefGrids belief = omniscient_belief(w);
    belief.viewed = initial_belief(w).viewed;
    SearchMode mode{true, true, CellSet(w.dims), {}};
    GoalSpec goal = GoalSpec::cell_in(w.goal.cells);
    return va_star(w.robot, goal, belief, mode, goal_distance_heuristic(goal, w.dims), 400000)
               .status != SearchStatus::Found;
}

bool check_visibility_core(const Scenario& s) {
    WorldState w = s.to_world();
    if (!direct_with_map_fails(w)) return false;
    // Relaxed variant must stay feasible.
    BeliefGrids belief = initial_belief(w);
    SearchMode relaxed{false, true, CellSet(w.dims), {}};
    GoalSpec goal = GoalSpec::cell_in(w.goal.cells);
    if (va_star(w.robot, goal, belief, relaxed, goal_distance_heuristic(goal, w.dims), 400000)
            .status != SearchStatus::Found)
        return false;
    return witness_reaches_goal(s);
}

bool check_visibility(const Scenario& s) {
    if (!check_visibility_core(s)) return false;
    if (!episode_succeeds(s, PlannerKind::Vamp)) return false;
    if (episode_succeeds(s, PlannerKind::VaStarOnly)) return false;
    if (episode_succeeds(s, PlannerKind::FoNamo)) return false;
    return true;
}

// -------------------------------------------------- obstructed visibility ---

Scenario build_obstructed_visibility(Rng& rng, uint64_t seed, GridDims dims) {
    Scenario s = base_scenario(Category::ObstructedVisibility, seed, dims);
    VisibilityGeometry g = lay_visibility_core(s, rng);

    // A chair on the corridor's only entry pivot: looking is possible (the
    // shaft is clear) but entering needs the chair gone first.
    MovableObject chair;
    chair.id = 1;
    chair.name = "chair";
    chair.footprint = Footprint::single();
    chair.anchor = Cell{4, g.cr};
    chair.heading = Heading(0);
    chair.pickable = derive_pickable(chair.footprint);
    s.movables.push_back(chair);

    place_visibility_start(s, rng, g);

    // Witness: lift the chair off the pivot, park it, then drive the lane.
    WorldState w = s.to_world();
    std::vector<Action> witness;
    auto legs = truth_nav(w, w.robot, GoalSpec::exact(Cell{4, g.cr - 1}, Heading(2)));
    if (!legs) throw BuildFail("witness cannot reach the chair");
    apply_actions(w, *legs, witness);
    apply_actions(w, {Action{ActionKind::Pick, 1}}, witness);
    auto carry = truth_nav(w, w.robot, GoalSpec::exact(Cell{6, g.cr - 3}, Heading(2)));
    if (!carry) throw BuildFail("witness cannot park the chair");
    apply_actions(w, *carry, witness);
    apply_actions(w, {Action{ActionKind::Place}}, witness);
    append_truth_nav(w, GoalSpec::cell_in(w.goal.cells), witness);
    s.witness = witness;
    return s;
}

bool check_obstructed_visibility(const Scenario& s) {
    if (!check_visibility_core(s)) return false;
    // Removing any single movable must not make the map-aware direct search
    // feasible (the corridor still has to be looked at first).
    WorldState w = s.to_world();
    BeliefGrids map_belief = omniscient_belief(w);
    map_belief.viewed = initial_belief(w).viewed;
    GoalSpec goal = GoalSpec::cell_in(w.goal.cells);
    for (const auto& m : s.movables) {
        BeliefGrids without = map_belief;
        without.objects.erase(m.id);
        SearchMode mode{true, true, CellSet(w.dims), {}};
        if (va_star(w.robot, goal, without, mode, goal_distance_heuristic(goal, w.dims),
                    400000)
                .status == SearchStatus::Found)
            return false;
    }
    if (episode_succeeds(s, PlannerKind::Vamp)) return false;
    if (episode_succeeds(s, PlannerKind::FoNamo)) return false;
    if (!episode_succeeds(s, PlannerKind::Lamb)) return false;
    return true;
}

// ------------------------------------------------------ movable obstacles ---

Scenario build_movable_obstacles(Rng& rng, uint64_t seed, GridDims dims) {
    Scenario s = base_scenario(Category::MovableObstacles, seed, dims);
    const int W = dims.width, H = dims.height;
    int wx = rng.range(W / 2 - 2, W / 2 + 3);
    int dy = rng.range(4, H - 7);
    for (int y = 1; y <= H - 2; ++y)
        if (y != dy && y != dy + 1) s.statics.set(Cell{wx, y});

    MovableObject plug;
    plug.id = 1;
    plug.name = "crate";
    plug.footprint = Footprint::rect(1, 2);
    plug.anchor = Cell{wx, dy};
    plug.heading = Heading(0);
    plug.pickable = derive_pickable(plug.footprint);
    s.movables.push_back(plug);

    s.robot_cell = Cell{rng.range(2, wx - 4), dy + rng.range(-2, 1)};
    if (s.robot_cell.y < 2) s.robot_cell.y = 2;
    if (s.robot_cell.y > H - 4) s.robot_cell.y = H - 4;
    s.robot_heading = Heading(0);  // facing the doorway: the plug is sighted
    if (!robot_fits(s, s.robot_cell, s.robot_heading)) throw BuildFail("start blocked");

    int gx = rng.range(wx + 3, W - 4);
    s.goal_rects.push_back({gx, dy, gx + 1, dy + 1});

    // A couple of decorative pillars on the start side, clear of the lane.
    for (int i = 0; i < rng.range(1, 2); ++i) {
        Cell p{rng.range(3, wx - 3), rng.range(2, H - 3)};
        if (std::abs(p.y - dy) < 3 || chebyshev(p, s.robot_cell) < 3) continue;
        if (cells_free(s, {p})) s.statics.set(p);
    }

    // Witness: shove the plug clear of the doorway, then walk through.
    WorldState w = s.to_world();
    std::vector<Action> witness;
    auto legs = truth_nav(w, w.robot, GoalSpec::exact(Cell{wx - 1, dy}, Heading(0)));
    if (!legs) throw BuildFail("witness cannot reach the plug");
    apply_actions(w, *legs, witness);
    apply_actions(w, {Action{ActionKind::Push}, Action{ActionKind::Push}}, witness);
    append_truth_nav(w, GoalSpec::cell_in(w.goal.cells), witness);
    s.witness = witness;
    return s;
}

bool check_movable_obstacles(const Scenario& s) {
    WorldState w = s.to_world();
    Observation first = observe(w, w.robot);
    if (first.sightings.size() != s.movables.size()) return false;  // fully visible
    if (nav_only_reachable(w)) return false;                        // direct path blocked
    if (!witness_reaches_goal(s)) return false;
    if (!episode_succeeds(s, PlannerKind::ConstrainedNamo)) return false;
    if (!episode_succeeds(s, PlannerKind::FoNamo)) return false;
    if (!episode_succeeds(s, PlannerKind::Lamb)) return false;
    return true;
}

// ----------------------------------------------------- occluding obstacles ---

// Wide box plugging a doorway; the region it must be pushed into is occluded
// by the box itself and observable only through a one-cell periscope slit in
// the wall, which a small box blocks.
struct OccludingGeometry {
    int wr;  // wall row
    int b;   // doorway west column (doorway spans b..b+2)
    int vx;  // periscope slit column
};

Scenario build_occluding_obstacles(Rng& rng, uint64_t seed, GridDims dims) {
    Scenario s = base_scenario(Category::OccludingObstacles, seed, dims);
    const int W = dims.width, H = dims.height;
    int wr = rng.range(H / 2 - 2, H / 2 + 2);
    int b = rng.range(4, W - 12);
    int vx = b + 4 + rng.range(1, std::min(3, W - 4 - (b + 4)));

    for (int x = 1; x <= W - 2; ++x)
        if (x < b || (x > b + 2 && x != vx)) s.statics.set(Cell{x, wr});
    s.statics.set(Cell{vx, wr + 2});  // seals the periscope slit

    MovableObject wide;
    wide.id = 1;
    wide.name = "widebox";
    wide.footprint = Footprint::rect(3, 1);
    wide.anchor = Cell{b, wr};
    wide.heading = Heading(0);
    wide.pickable = derive_pickable(wide.footprint);
    s.movables.push_back(wide);

    MovableObject small;
    small.id = 2;
    small.name = "smallbox";
    small.footprint = Footprint::single();
    small.anchor = Cell{vx, wr};
    small.heading = Heading(0);
    small.pickable = derive_pickable(small.footprint);
    s.movables.push_back(small);

    s.robot_cell = Cell{rng.range(b + 1, b + 3), rng.range(3, std::max(3, wr - 6))};
    s.robot_heading = Heading(2);  // facing the wall: both boxes sighted
    if (!robot_fits(s, s.robot_cell, s.robot_heading)) throw BuildFail("start blocked");

    // Goal in the north room, clear of the push landing zone and the slit.
    for (int tries = 0; tries < 60; ++tries) {
        int gx = rng.range(2, W - 4);
        int gy = rng.range(wr + 4, H - 4);
        if (gx >= b - 1 && gx <= b + 4 && gy <= wr + 4) continue;
        if (std::abs(gx - vx) < 2 && gy <= wr + 4) continue;
        s.goal_rects.push_back({gx, gy, gx + 1, gy + 1});
        break;
    }
    if (s.goal_rects.empty()) throw BuildFail("no goal placement");

    // Witness: two pushes clear the doorway, then drive around the box.
    WorldState w = s.to_world();
    std::vector<Action> witness;
    auto legs = truth_nav(w, w.robot, GoalSpec::exact(Cell{b + 1, wr - 1}, Heading(2)));
    if (!legs) throw BuildFail("witness cannot reach the push stance");
    apply_actions(w, *legs, witness);
    apply_actions(w, {Action{ActionKind::Push}, Action{ActionKind::Push}}, witness);
    append_truth_nav(w, GoalSpec::cell_in(w.goal.cells), witness);
    s.witness = witness;
    return s;
}

bool lamb_plan_shape_ok(const Scenario& s) {
    WorldState w = s.to_world();
    BeliefGrids belief = initial_belief(w);
    PlanRequest req{w.robot, GoalSpec::cell_in(w.goal.cells), belief, CellSet(w.dims), {}, 0};
    LambOutcome out = lamb_plan(req, PlannerConfig{});
    if (!out.plan) return false;
    // Small-box manipulation, then a view leg, then the wide push, then
    // plain driving.
    int phase = 0;
    for (const TaggedAction& t : out.plan->actions) {
        if (phase == 0 && t.seg == SegKind::ManipMid && t.seg_object == 2 &&
            t.action.kind == ActionKind::Pick)
            phase = 1;
        else if (phase == 1 && t.seg == SegKind::ViewSubgoal)
            phase = 2;
        else if (phase == 2 && t.seg == SegKind::ManipMid && t.seg_object == 1 &&
                 t.action.kind == ActionKind::Push)
            phase = 3;
        else if (phase == 3 && (t.seg == SegKind::Navigate || t.seg == SegKind::ManipPost))
            phase = 4;
    }
    return phase == 4;
}

bool check_occluding_obstacles(const Scenario& s) {
    WorldState w = s.to_world();
    Observation first = observe(w, w.robot);
    if (first.sightings.size() != 2) return false;
    if (nav_only_reachable(w)) return false;

    // The push shadow must be hidden from every contact stance.
    const MovableObject* wide = w.find_object(1);
    CellSet shadow(w.dims);
    for (int i = 1; i <= 2; ++i)
        for (Cell c : wide->cells()) shadow.set(Cell{c.x, c.y + i});
    for (Cell c : wide->cells()) {
        Configuration stance{Cell{c.x, c.y - 1}, Heading(2), std::nullopt};
        std::vector<Cell> body = w.robot_footprint.cells_at(stance.cell, stance.heading);
        if (!cells_free(s, body)) continue;
        Observation obs = observe(w, stance);
        if (obs.viewed.intersects(shadow)) return false;
    }

    if (!witness_reaches_goal(s)) return false;
    if (episode_succeeds(s, PlannerKind::ConstrainedNamo)) return false;
    if (episode_succeeds(s, PlannerKind::FoNamo)) return false;
    if (!lamb_plan_shape_ok(s)) return false;
    if (!episode_succeeds(s, PlannerKind::Lamb)) return false;
    return true;
}

// --------------------------------------------------- obstructed affordance ---

// North-south wall with a tall opening: a 1x3 box plugs the middle, a chair
// sits on the only viable push stance, and the push destination slots are
// observable only from aligned lanes in the west room.
struct AffordanceGeometry {
    int ox;  // wall column
    int pr;  // box south row (box rows pr..pr+2)
};

Scenario build_obstructed_affordance(Rng& rng, uint64_t seed, GridDims dims) {
    Scenario s = base_scenario(Category::ObstructedAffordance, seed, dims);
    const int W = dims.width, H = dims.height;
    int ox = rng.range(W / 2, W - 8);
    int pr = rng.range(6, H - 9);

    for (int y = 1; y <= H - 2; ++y)
        if (y < pr - 1 || y > pr + 4) s.statics.set(Cell{ox, y});
    // East corridor spans rows pr..pr+2 only.
    for (int x = ox + 1; x <= W - 2; ++x) {
        s.statics.set(Cell{x, pr - 1});
        s.statics.set(Cell{x, pr + 3});
        if (pr + 4 <= H - 2) s.statics.set(Cell{x, pr + 4});
    }

    MovableObject box;
    box.id = 1;
    box.name = "box";
    box.footprint = Footprint::rect(1, 3);
    box.anchor = Cell{ox, pr};
    box.heading = Heading(0);
    box.pickable = derive_pickable(box.footprint);
    s.movables.push_back(box);

    MovableObject chair;
    chair.id = 2;
    chair.name = "chair";
    chair.footprint = Footprint::single();
    chair.anchor = Cell{ox, pr - 1};
    chair.heading = Heading(0);
    chair.pickable = derive_pickable(chair.footprint);
    s.movables.push_back(chair);

    s.robot_cell = Cell{rng.range(3, ox - 4), rng.range(2, pr - 3)};
    s.robot_heading = Heading(1);  // north-east: wall and objects in view
    if (!robot_fits(s, s.robot_cell, s.robot_heading)) throw BuildFail("start blocked");

    s.goal_rects.push_back({W - 4, pr, W - 3, pr + 1});

    // Witness: move the chair off the stance, push the box north twice, walk
    // through the opened rows into the corridor.
    WorldState w = s.to_world();
    std::vector<Action> witness;
    auto legs = truth_nav(w, w.robot, GoalSpec::exact(Cell{ox - 1, pr - 1}, Heading(0)));
    if (!legs) throw BuildFail("witness cannot reach the chair");
    apply_actions(w, *legs, witness);
    apply_actions(w, {Action{ActionKind::Pick, 2}}, witness);
    auto park = truth_nav(w, w.robot, GoalSpec::exact(Cell{ox - 3, pr - 3}, Heading(0)));
    if (!park) throw BuildFail("witness cannot park the chair");
    apply_actions(w, *park, witness);
    apply_actions(w, {Action{ActionKind::Place}}, witness);
    auto stance = truth_nav(w, w.robot, GoalSpec::exact(Cell{ox, pr - 1}, Heading(2)));
    if (!stance) throw BuildFail("witness cannot reach the push stance");
    apply_actions(w, *stance, witness);
    apply_actions(w, {Action{ActionKind::Push}, Action{ActionKind::Push}}, witness);
    append_truth_nav(w, GoalSpec::cell_in(w.goal.cells), witness);
    s.witness = witness;
    return s;
}

bool check_obstructed_affordance(const Scenario& s) {
    WorldState w = s.to_world();
    if (nav_only_reachable(w)) return false;
    Observation first = observe(w, w.robot);
    if (first.sightings.empty()) return false;  // at least the wall furniture

    // Every manipulation stance of the key object is blocked by a movable or
    // fails when attempted with plain searches; at least one stance overlaps
    // a movable.
    BeliefGrids omni = omniscient_belief(w);
    PlanRequest req{w.robot, GoalSpec::cell_in(w.goal.cells), omni, CellSet(w.dims), {}, 0};
    auto cands = sample_manip(1, omni, req, CellSet(w.dims), PlannerConfig{});
    if (cands.empty()) return false;
    bool any_blocked = false;
    CellSet movable_cells = omni.object_cells({1});
    for (const ManipCandidate& cand : cands) {
        for (const Offset& o : w.robot_footprint.offsets(cand.q_pre.heading))
            if (movable_cells.test(cand.q_pre.cell + o)) any_blocked = true;
    }
    if (!any_blocked) return false;

    if (!witness_reaches_goal(s)) return false;
    if (episode_succeeds(s, PlannerKind::ConstrainedNamo)) return false;
    if (episode_succeeds(s, PlannerKind::FoNamo)) return false;
    if (!episode_succeeds(s, PlannerKind::Lamb)) return false;
    return true;
}

}  // namespace

GridDims category_min_dims(Category c) {
    switch (c) {
        case Category::SimpleNavigation: return GridDims(16, 16);
        case Category::MovableObstacles: return GridDims(16, 16);
        default: return GridDims(20, 20);
    }
}

Scenario generate(Category category, uint64_t seed, GridDims dims) {
    GridDims min = category_min_dims(category);
    if (dims.width < min.width || dims.height < min.height)
        throw std::domain_error("generate: dims below category minimum");

    std::string last_failure = "construction";
    for (int attempt = 0; attempt < 40; ++attempt) {
        uint64_t sub = hash_mix(hash_mix(static_cast<uint64_t>(category) + 1, seed),
                                static_cast<uint64_t>(attempt));
        Rng rng(sub);
        try {
            Scenario s;
            bool ok = false;
            switch (category) {
                case Category::SimpleNavigation:
                    s = build_simple_navigation(rng, seed, dims);
                    ok = check_simple_navigation(s);
                    last_failure = "simple-navigation post-check";
                    break;
                case Category::Visibility:
                    s = build_visibility(rng, seed, dims);
                    ok = check_visibility(s);
                    last_failure = "visibility post-check";
                    break;
                case Category::MovableObstacles:
                    s = build_movable_obstacles(rng, seed, dims);
                    ok = check_movable_obstacles(s);
                    last_failure = "movable-obstacles post-check";
                    break;
                case Category::ObstructedVisibility:
                    s = build_obstructed_visibility(rng, seed, dims);
                    ok = check_obstructed_visibility(s);
                    last_failure = "obstructed-visibility post-check";
                    break;
                case Category::OccludingObstacles:
                    s = build_occluding_obstacles(rng, seed, dims);
                    ok = check_occluding_obstacles(s);
                    last_failure = "occluding-obstacles post-check";
                    break;
                case Category::ObstructedAffordance:
                    s = build_obstructed_affordance(rng, seed, dims);
                    ok = check_obstructed_affordance(s);
                    last_failure = "obstructed-affordance post-check";
                    break;
            }
            if (ok) return s;
        } catch (const BuildFail& e) {
            last_failure = e.what();
        }
    }
    throw std::runtime_error("generate: retries exhausted for " + category_name(category) +
                             " (last failure: " + last_failure + ")");
}

}  // namespace vanamo
