#include <sstream>

#include "vanamo/harness.hpp"

namespace vanamo {

namespace {

struct Frame {
    CellSet viewed;
    CellSet known_statics;
    CellSet known_movables;
    std::vector<Cell> robot;
    Cell robot_anchor;
    std::string label;
};

// Replay the trace through the simulator, accumulating belief layers.
std::vector<Frame> replay_frames(const Trace& trace, const Scenario& scenario) {
    WorldState world = scenario.to_world();
    if (!(world.robot.cell == trace.start.cell) ||
        world.robot.heading != trace.start.heading)
        throw std::runtime_error("render_trace: trace does not start at the scenario start");
    BeliefGrids belief(world.dims, world.robot_footprint, world.sensing_range);

    std::vector<Frame> frames;
    auto snapshot = [&](const std::string& label) {
        Observation obs = observe(world, world.robot);
        belief = update_belief(belief, obs);
        Frame f{belief.viewed, belief.statics, belief.object_cells(), world.robot_cells(),
                world.robot.cell, label};
        frames.push_back(std::move(f));
    };
    snapshot("start");
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        StepOutcome out = step(world, trace.steps[i].action);
        if (!out.ok()) throw std::runtime_error("render_trace: trace action rejected at step " +
                                                std::to_string(i));
        world = *out.next;
        if (!(world.robot.cell == trace.steps[i].config.cell))
            throw std::runtime_error("render_trace: trace diverges at step " +
                                     std::to_string(i));
        snapshot("step " + std::to_string(i + 1) + " " +
                 action_token(trace.steps[i].action));
    }
    return frames;
}

}  // namespace

std::string render_trace_ascii(const Trace& trace, const Scenario& scenario) {
    std::vector<Frame> frames = replay_frames(trace, scenario);
    CellSet goal = scenario.goal_cells();
    std::ostringstream out;
    out << "legend: ~ unviewed, ' ' viewed free, # known static, a-z known movable, "
           "R robot anchor, r robot body, G goal\n";
    for (const Frame& f : frames) {
        out << "-- " << f.label << " (unviewed " << f.viewed.complement().count() << ")\n";
        for (int y = 0; y < scenario.dims.height; ++y) {
            for (int x = 0; x < scenario.dims.width; ++x) {
                Cell c{x, y};
                char ch = f.viewed.test(c) ? ' ' : '~';
                if (goal.test(c)) ch = 'G';
                if (f.known_statics.test(c)) ch = '#';
                if (f.known_movables.test(c)) ch = 'a';
                for (Cell rc : f.robot)
                    if (rc == c) ch = 'r';
                if (f.robot_anchor == c) ch = 'R';
                out << ch;
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string render_trace_svg(const Trace& trace, const Scenario& scenario) {
    std::vector<Frame> frames = replay_frames(trace, scenario);
    CellSet goal = scenario.goal_cells();
    const int cell_px = 16;
    const int pad = 8;
    const int frame_h = scenario.dims.height * cell_px + pad + 16;
    const int width = scenario.dims.width * cell_px + 2 * pad;
    const int height = static_cast<int>(frames.size()) * frame_h + pad;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    int oy = pad;
    for (const Frame& f : frames) {
        out << "<g>\n";
        out << "<text x=\"" << pad << "\" y=\"" << oy + 12 << "\" font-size=\"12\">" << f.label
            << " | unviewed " << f.viewed.complement().count() << "</text>\n";
        int top = oy + 16;
        for (int y = 0; y < scenario.dims.height; ++y) {
            for (int x = 0; x < scenario.dims.width; ++x) {
                Cell c{x, y};
                const char* fill = "#ffffff";
                if (!f.viewed.test(c)) fill = "#9db8e8";   // unviewed: blue
                if (f.known_statics.test(c)) fill = "#d9534f";   // static: red
                if (f.known_movables.test(c)) fill = "#f2c14e";  // movable: yellow
                out << "<rect x=\"" << pad + x * cell_px << "\" y=\"" << top + y * cell_px
                    << "\" width=\"" << cell_px << "\" height=\"" << cell_px << "\" fill=\""
                    << fill << "\" stroke=\"#dddddd\"/>\n";
            }
        }
        for (const auto& r : scenario.goal_rects) {
            out << "<rect x=\"" << pad + r[0] * cell_px << "\" y=\"" << top + r[1] * cell_px
                << "\" width=\"" << (r[2] - r[0] + 1) * cell_px << "\" height=\""
                << (r[3] - r[1] + 1) * cell_px
                << "\" fill=\"none\" stroke=\"#2e8b57\" stroke-width=\"2\"/>\n";
        }
        for (Cell rc : f.robot) {
            const char* fill = rc == f.robot_anchor ? "#222222" : "#555555";
            out << "<rect x=\"" << pad + rc.x * cell_px + 3 << "\" y=\""
                << top + rc.y * cell_px + 3 << "\" width=\"" << cell_px - 6 << "\" height=\""
                << cell_px - 6 << "\" fill=\"" << fill << "\"/>\n";
        }
        out << "</g>\n";
        oy += frame_h;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace vanamo
