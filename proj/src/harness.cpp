#include "vanamo/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

namespace vanamo {

std::string failure_reason_name(FailureReason r) {
    switch (r) {
        case FailureReason::None: return "none";
        case FailureReason::Timeout: return "timeout";
        case FailureReason::PlannerNone: return "planner-none";
        case FailureReason::SafetyViolation: return "safety-violation";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Ground-truth cells newly occupied by this action, with the cells the moved
// bodies occupied before it (robot, carried object, pushed object).
TransitionCells world_transition(const WorldState& world, const Action& a) {
    const Footprint* pushed_fp = nullptr;
    Cell pushed_anchor{};
    Heading pushed_heading{};
    if (a.kind == ActionKind::Push) {
        Cell faced = world.robot.cell + world.robot.heading.unit();
        for (const auto& m : world.movables)
            for (Cell c : m.cells())
                if (c == faced) {
                    pushed_fp = &m.footprint;
                    pushed_anchor = m.anchor;
                    pushed_heading = m.heading;
                }
    }
    return transition_cells(world.robot_footprint, world.robot, a, pushed_fp, pushed_anchor,
                            pushed_heading);
}

bool motion_viewed(const CellSet& viewed, const TransitionCells& tc) {
    for (Cell c : tc.after) {
        bool vacated = false;
        for (Cell b : tc.before) vacated |= (b == c);
        if (!vacated && !viewed.test(c)) return false;
    }
    return true;
}

// Cached plans stay valid while the remaining tail replays against current
// occupancy with the visibility constraint satisfiable under the plan's own
// observation schedule (optimistic accumulation). The action about to execute
// is additionally gated against views that really exist right now.
bool plan_revalidates(const BeliefGrids& belief, const Configuration& q,
                      std::span<const Action> remaining, bool respect_visibility,
                      const CellSet& probe_blocked) {
    ReplayOptions opts;
    opts.enforce_visibility = respect_visibility;
    opts.accumulate_views = true;
    opts.forbidden = probe_blocked;
    return replay_on_belief(belief, q, remaining, opts).has_value();
}

bool next_action_executable(const BeliefGrids& belief, const Configuration& q,
                            const Action& action, bool respect_visibility,
                            const CellSet& probe_blocked) {
    ReplayOptions opts;
    opts.enforce_visibility = respect_visibility;
    opts.accumulate_views = false;
    opts.forbidden = probe_blocked;
    return replay_on_belief(belief, q, std::span(&action, 1), opts).has_value();
}

// Cells this action would newly occupy, per the belief's object poses.
std::vector<Cell> belief_new_cells(const BeliefGrids& belief, const Configuration& q,
                                   const Action& a) {
    const Footprint* pushed_fp = nullptr;
    Cell pushed_anchor{};
    Heading pushed_heading{};
    if (a.kind == ActionKind::Push) {
        Cell faced = q.cell + q.heading.unit();
        for (const auto& [id, obj] : belief.objects)
            for (Cell c : obj.cells())
                if (c == faced) {
                    pushed_fp = &obj.footprint;
                    pushed_anchor = obj.anchor;
                    pushed_heading = obj.heading;
                }
    }
    TransitionCells tc = transition_cells(belief.robot_footprint, q, a, pushed_fp,
                                          pushed_anchor, pushed_heading);
    std::vector<Cell> out;
    for (Cell c : tc.after) {
        bool vacated = false;
        for (Cell b : tc.before) vacated |= (b == c);
        if (!vacated) out.push_back(c);
    }
    return out;
}

}  // namespace

std::pair<EpisodeResult, Trace> run_episode(const Scenario& scenario, PlannerKind planner,
                                            const EpisodeConfig& cfg) {
    WorldState world = scenario.to_world();
    BeliefGrids belief(world.dims, world.robot_footprint, world.sensing_range);
    GoalSpec goal = GoalSpec::cell_in(scenario.goal_cells());
    const bool respect_vis = planner_respects_visibility(planner);

    EpisodeResult result;
    Trace trace;
    trace.start = world.robot;

    std::optional<LambPlan> plan;
    size_t next_idx = 0;
    bool plan_is_fresh = false;
    int failed_fresh_plans = 0;
    int consecutive_rejections = 0;
    // Unviewed cells the gate has already refused to enter: off limits for
    // planning until actually observed, so refuted optimism is not retried.
    CellSet probe_blocked(world.dims);
    auto t0 = Clock::now();

    while (true) {
        if (world.goal.cells.test(world.robot.cell)) {
            result.success = true;
            result.failure = FailureReason::None;
            break;
        }
        if (result.steps >= cfg.step_budget ||
            ms_since(t0) > cfg.time_budget_s * 1000.0) {
            result.failure = FailureReason::Timeout;
            break;
        }

        Observation obs = observe(world, world.robot);
        // Optimistic view claims for this stance that the real sensor did not
        // deliver are remembered as refuted, so plans stop leaning on them.
        CellSet predicted = sim_observe(belief, world.robot);
        belief = update_belief(belief, obs);
        CellSet refuted = predicted - obs.viewed;
        refuted -= belief.occupancy();
        if (refuted.any()) {
            auto [it, inserted] =
                belief.refuted_views.try_emplace(belief.state_index(world.robot), refuted);
            if (!inserted) it->second |= refuted;
        }
        probe_blocked -= belief.viewed;

        long plan_expansions = 0;
        int plan_depth = 0;
        double plan_ms = 0.0;
        bool need_replan = cfg.replan_every_step || !plan || next_idx >= plan->size();
        if (!need_replan) {
            std::vector<Action> remaining;
            for (size_t i = next_idx; i < plan->size(); ++i)
                remaining.push_back(plan->actions[i].action);
            need_replan =
                !plan_revalidates(belief, world.robot, remaining, respect_vis, probe_blocked);
        }
        if (need_replan) {
            auto tp = Clock::now();
            PlanRequest req{world.robot, goal, belief, probe_blocked, {}, 0};
            LambOutcome outcome = plan_with(planner, req, cfg.planner);
            if (std::getenv("VANAMO_TRACE_EPISODE")) {
                std::cerr << "[replan step " << result.steps << " at (" << world.robot.cell.x
                          << "," << world.robot.cell.y << "," << world.robot.heading.idx
                          << ") blocked=" << probe_blocked.count() << "]";
                if (outcome.plan)
                    for (const TaggedAction& t : outcome.plan->actions)
                        std::cerr << " " << action_token(t.action);
                std::cerr << "\n";
            }
            plan_ms = ms_since(tp);
            result.plan_time_ms += plan_ms;
            plan_expansions = outcome.stats.expansions;
            plan_depth = outcome.stats.deepest_recursion;
            if (!outcome.plan || outcome.plan->empty()) {
                result.failure = FailureReason::PlannerNone;
                break;
            }
            plan = std::move(outcome.plan);
            next_idx = 0;
            plan_is_fresh = true;
        }

        const Action action = plan->actions[next_idx].action;
        // The action about to run must be executable against real views; a
        // fresh plan that cannot even start means the planner is stuck.
        if (!next_action_executable(belief, world.robot, action, respect_vis,
                                    probe_blocked)) {
            if (respect_vis)
                for (Cell c : belief_new_cells(belief, world.robot, action))
                    if (probe_blocked.in_bounds(c) && !belief.viewed.test(c))
                        probe_blocked.set(c);
            if (plan_is_fresh && ++failed_fresh_plans >= 2) {
                result.failure = FailureReason::PlannerNone;
                break;
            }
            plan.reset();
            continue;
        }
        plan_is_fresh = false;
        failed_fresh_plans = 0;

        TransitionCells motion = world_transition(world, action);
        bool violation =
            !is_rotation_action(action.kind) && !motion_viewed(belief.viewed, motion);

        StepOutcome outcome = step(world, action);
        if (!outcome.ok()) {
            // Ground truth disagreed with the belief: a bump. Whatever
            // unknown cells the action tried to occupy stay off limits until
            // actually observed, so replans route around them.
            if (std::getenv("VANAMO_TRACE_EPISODE"))
                std::cerr << "[bump step " << result.steps << " " << action_token(action)
                          << "]\n";
            for (Cell c : belief_new_cells(belief, world.robot, action))
                if (probe_blocked.in_bounds(c) && !belief.viewed.test(c))
                    probe_blocked.set(c);
            plan.reset();
            if (++consecutive_rejections >= 3) {
                result.failure = FailureReason::PlannerNone;
                break;
            }
            continue;
        }
        consecutive_rejections = 0;
        world = *outcome.next;
        ++result.steps;
        ++next_idx;
        trace.steps.push_back(TraceStep{action, world.robot, obs.digest(), plan_expansions,
                                        plan_depth, plan_ms});
        if (violation) {
            ++result.safety_violations;
            result.failure = FailureReason::SafetyViolation;
            break;
        }
    }
    return {result, trace};
}

BenchConfig default_bench_config() {
    BenchConfig cfg;
    cfg.dims = 24;
    for (Category c : all_categories()) cfg.categories.push_back(c);
    cfg.seeds = {0, 1, 2, 3, 4};
    cfg.planners = {PlannerKind::VaStarOnly, PlannerKind::ConstrainedNamo, PlannerKind::FoNamo,
                    PlannerKind::Vamp, PlannerKind::Lamb};
    return cfg;
}

BenchConfig parse_bench_config(const std::string& text) {
    BenchConfig cfg = default_bench_config();
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = line.substr(0, line.find('#'));
        auto eq = stripped.find('=');
        bool blank = stripped.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        if (eq == std::string::npos)
            throw std::runtime_error("bench config line " + std::to_string(line_no) +
                                     ": expected key = value");
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        auto split = [&](const std::string& v) {
            std::vector<std::string> parts;
            std::stringstream ss(v);
            std::string p;
            while (std::getline(ss, p, ',')) parts.push_back(trim(p));
            return parts;
        };
        if (key == "dims") {
            cfg.dims = std::stoi(value);
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const auto& p : split(value)) cfg.seeds.push_back(std::stoull(p));
        } else if (key == "categories") {
            cfg.categories.clear();
            for (const auto& p : split(value)) {
                auto c = parse_category(p);
                if (!c)
                    throw std::runtime_error("bench config line " + std::to_string(line_no) +
                                             ": unknown category '" + p + "'");
                cfg.categories.push_back(*c);
            }
        } else if (key == "planners") {
            cfg.planners.clear();
            for (const auto& p : split(value)) {
                auto k = parse_planner(p);
                if (!k)
                    throw std::runtime_error("bench config line " + std::to_string(line_no) +
                                             ": unknown planner '" + p + "'");
                cfg.planners.push_back(*k);
            }
        } else if (key == "step_budget") {
            cfg.episode.step_budget = std::stoi(value);
        } else if (key == "time_budget_s") {
            cfg.episode.time_budget_s = std::stod(value);
        } else if (key == "replan_every_step") {
            cfg.episode.replan_every_step = (value == "1" || value == "true");
        } else if (key == "zero_times") {
            cfg.zero_times = (value == "1" || value == "true");
        } else if (key == "jobs") {
            cfg.jobs = std::max(1, std::stoi(value));
        } else {
            throw std::runtime_error("bench config line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

std::string BenchResults::csv() const {
    std::ostringstream out;
    out << "planner,category,seed,success,steps,plan_time_ms,failure_reason\n";
    for (const BenchRow& r : rows) {
        long ms = config.zero_times ? 0 : std::lround(r.result.plan_time_ms);
        out << planner_name(r.planner) << "," << category_name(r.category) << "," << r.seed
            << "," << (r.result.success ? 1 : 0) << "," << r.result.steps << "," << ms << ","
            << failure_reason_name(r.result.failure) << "\n";
    }
    return out.str();
}

int BenchResults::successes(PlannerKind p, Category c) const {
    int n = 0;
    for (const BenchRow& r : rows)
        if (r.planner == p && r.category == c && r.result.success) ++n;
    return n;
}

std::string BenchResults::table() const {
    auto pretty = [](Category c) -> std::string {
        switch (c) {
            case Category::SimpleNavigation: return "Simple Navigation";
            case Category::Visibility: return "Visibility";
            case Category::MovableObstacles: return "Movable Obstacles";
            case Category::ObstructedVisibility: return "Obstructed Visibility";
            case Category::OccludingObstacles: return "Occluding Obstacles";
            case Category::ObstructedAffordance: return "Obstructed Affordance";
        }
        return "?";
    };
    size_t name_w = 8;
    for (PlannerKind p : config.planners) name_w = std::max(name_w, planner_name(p).size());
    std::ostringstream out;
    out << std::string(name_w, ' ');
    std::vector<size_t> col_w;
    for (Category c : config.categories) {
        std::string head = pretty(c);
        col_w.push_back(head.size() + 2);
        out << "  " << head;
    }
    out << "\n";
    int per_cell = static_cast<int>(config.seeds.size());
    for (PlannerKind p : config.planners) {
        std::string name = planner_name(p);
        out << name << std::string(name_w - name.size(), ' ');
        for (size_t i = 0; i < config.categories.size(); ++i) {
            std::string cell =
                std::to_string(successes(p, config.categories[i])) + "/" +
                std::to_string(per_cell);
            size_t w = col_w[i];
            size_t pad = w > cell.size() ? w - cell.size() : 1;
            out << std::string(pad, ' ') << cell;
        }
        out << "\n";
    }
    return out.str();
}

BenchResults run_benchmark(const BenchConfig& cfg) {
    BenchResults results;
    results.config = cfg;

    GridDims dims(cfg.dims, cfg.dims);
    std::map<std::pair<int, uint64_t>, Scenario> scenarios;
    for (Category c : cfg.categories)
        for (uint64_t s : cfg.seeds)
            scenarios.emplace(std::make_pair(static_cast<int>(c), s), generate(c, s, dims));

    struct Job {
        PlannerKind planner;
        Category category;
        uint64_t seed;
    };
    std::vector<Job> jobs;
    for (PlannerKind p : cfg.planners)
        for (Category c : cfg.categories)
            for (uint64_t s : cfg.seeds) jobs.push_back(Job{p, c, s});

    std::vector<BenchRow> rows(jobs.size());
    size_t i = 0;
    while (i < jobs.size()) {
        size_t batch = std::min<size_t>(static_cast<size_t>(cfg.jobs), jobs.size() - i);
        std::vector<std::future<EpisodeResult>> futs;
        for (size_t b = 0; b < batch; ++b) {
            const Job& j = jobs[i + b];
            const Scenario& sc = scenarios.at({static_cast<int>(j.category), j.seed});
            futs.push_back(std::async(std::launch::async, [&sc, &j, &cfg]() {
                return run_episode(sc, j.planner, cfg.episode).first;
            }));
        }
        for (size_t b = 0; b < batch; ++b) {
            const Job& j = jobs[i + b];
            rows[i + b] = BenchRow{j.planner, j.category, j.seed, futs[b].get()};
        }
        i += batch;
    }
    results.rows = std::move(rows);
    return results;
}

}  // namespace vanamo
