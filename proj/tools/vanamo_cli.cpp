#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vanamo/harness.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid-world simulator and planners for visibility-aware navigation among "
                 "movable obstacles"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run one episode on a scenario file");
    std::string run_scenario, run_planner = "lamb", run_render;
    uint64_t run_seed = 0;
    bool run_replan_every = false;
    bool run_ascii = false;
    run->add_option("--scenario", run_scenario, "scenario file (.vanamo)")->required();
    run->add_option("--planner", run_planner, "lamb|vastar|namo|fonamo|vamp");
    run->add_option("--seed", run_seed, "override the scenario's recorded seed");
    run->add_flag("--replan-every-step", run_replan_every, "replan after every action");
    run->add_option("--render", run_render, "write an SVG replay to this path");
    run->add_flag("--render-ascii", run_ascii, "print ASCII frames to stdout");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the benchmark sweep");
    std::string bench_config, bench_out = "results.csv";
    bool bench_zero_times = false;
    int bench_jobs = 0;
    bench->add_option("--config", bench_config, "bench config file (key = value lines)");
    bench->add_option("--out", bench_out, "CSV output path");
    bench->add_flag("--zero-times", bench_zero_times,
                    "write 0 in the plan_time_ms column (reproducible output)");
    bench->add_option("--jobs", bench_jobs, "episodes run in parallel");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a scenario");
    std::string gen_category, gen_out;
    uint64_t gen_seed = 0;
    int gen_dims = 24;
    gen->add_option("--category", gen_category, "task category")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--dims", gen_dims, "square grid side");
    gen->add_option("--out", gen_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto kind = vanamo::parse_planner(run_planner);
            if (!kind) {
                std::cerr << "unknown planner: " << run_planner << "\n";
                return 2;
            }
            vanamo::Scenario scenario = vanamo::load_scenario(run_scenario);
            if (run->count("--seed")) scenario.seed = run_seed;
            vanamo::EpisodeConfig cfg;
            cfg.replan_every_step = run_replan_every;
            auto [result, trace] = vanamo::run_episode(scenario, *kind, cfg);
            std::cout << "planner=" << vanamo::planner_name(*kind)
                      << " category=" << vanamo::category_name(scenario.category)
                      << " seed=" << scenario.seed
                      << " success=" << (result.success ? 1 : 0)
                      << " steps=" << result.steps
                      << " plan_time_ms=" << static_cast<long>(result.plan_time_ms)
                      << " failure=" << vanamo::failure_reason_name(result.failure) << "\n";
            if (!run_render.empty())
                write_file(run_render, vanamo::render_trace_svg(trace, scenario));
            if (run_ascii) std::cout << vanamo::render_trace_ascii(trace, scenario);
            return result.success ? 0 : 1;
        }
        if (*bench) {
            vanamo::BenchConfig cfg;
            if (!bench_config.empty()) {
                std::ifstream in(bench_config);
                if (!in) throw std::runtime_error("cannot read " + bench_config);
                std::ostringstream buf;
                buf << in.rdbuf();
                cfg = vanamo::parse_bench_config(buf.str());
            } else {
                cfg = vanamo::default_bench_config();
            }
            if (bench_zero_times) cfg.zero_times = true;
            if (bench_jobs > 0) cfg.jobs = bench_jobs;
            vanamo::BenchResults results = vanamo::run_benchmark(cfg);
            write_file(bench_out, results.csv());
            std::cout << results.table();
            return 0;
        }
        if (*gen) {
            auto cat = vanamo::parse_category(gen_category);
            if (!cat) {
                std::cerr << "unknown category: " << gen_category << "\n";
                return 2;
            }
            vanamo::Scenario s =
                vanamo::generate(*cat, gen_seed, vanamo::GridDims(gen_dims, gen_dims));
            vanamo::save_scenario(s, gen_out);
            std::cout << "wrote " << gen_out << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
