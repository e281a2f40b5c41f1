#pragma once

#include "vanamo/baselines.hpp"
#include "vanamo/scenario.hpp"

namespace vanamo {

struct TraceStep {
    Action action;
    Configuration config;    // after the action
    uint64_t obs_digest = 0; // observation folded in before the action
    long plan_expansions = 0;  // planning event this step (0 on cache hits)
    int plan_depth = 0;
    double plan_ms = 0.0;
};

struct Trace {
    Configuration start;
    std::vector<TraceStep> steps;
};

enum class FailureReason { None, Timeout, PlannerNone, SafetyViolation };

std::string failure_reason_name(FailureReason r);

struct EpisodeResult {
    bool success = false;
    int steps = 0;
    double plan_time_ms = 0.0;
    FailureReason failure = FailureReason::None;
    int safety_violations = 0;
};

struct EpisodeConfig {
    int step_budget = 1000;
    double time_budget_s = 120.0;
    bool replan_every_step = false;
    PlannerConfig planner;
};

// The sense-plan-act loop: observe, fold into belief, reuse the cached plan
// while it replays cleanly against the updated belief (occupancy plus the
// visibility constraint for planners that respect it), execute one action.
// Any executed motion whose newly occupied cells were unviewed at execution
// time fails the episode as a safety violation.
std::pair<EpisodeResult, Trace> run_episode(const Scenario& scenario, PlannerKind planner,
                                            const EpisodeConfig& cfg);

struct BenchConfig {
    int dims = 24;
    std::vector<Category> categories;
    std::vector<uint64_t> seeds;
    std::vector<PlannerKind> planners;
    EpisodeConfig episode;
    bool zero_times = false;  // write 0 in the plan_time_ms column
    int jobs = 1;
};

// key = value lines; lists are comma separated. Unknown keys are errors.
BenchConfig parse_bench_config(const std::string& text);
BenchConfig default_bench_config();

struct BenchRow {
    PlannerKind planner;
    Category category;
    uint64_t seed = 0;
    EpisodeResult result;
};

struct BenchResults {
    BenchConfig config;
    std::vector<BenchRow> rows;

    std::string csv() const;
    std::string table() const;
    int successes(PlannerKind p, Category c) const;
};

BenchResults run_benchmark(const BenchConfig& cfg);

// Frame-per-step renderings of a trace replay: unviewed space, observed
// statics, observed movables, robot, and goal layers.
std::string render_trace_ascii(const Trace& trace, const Scenario& scenario);
std::string render_trace_svg(const Trace& trace, const Scenario& scenario);

}  // namespace vanamo
