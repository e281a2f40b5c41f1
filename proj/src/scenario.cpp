#include "vanamo/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vanamo {

std::string category_name(Category c) {
    switch (c) {
        case Category::SimpleNavigation: return "simple_navigation";
        case Category::Visibility: return "visibility";
        case Category::MovableObstacles: return "movable_obstacles";
        case Category::ObstructedVisibility: return "obstructed_visibility";
        case Category::OccludingObstacles: return "occluding_obstacles";
        case Category::ObstructedAffordance: return "obstructed_affordance";
    }
    return "?";
}

std::optional<Category> parse_category(const std::string& name) {
    for (Category c : all_categories())
        if (category_name(c) == name) return c;
    return std::nullopt;
}

std::array<Category, kCategoryCount> all_categories() {
    return {Category::SimpleNavigation,     Category::Visibility,
            Category::MovableObstacles,     Category::ObstructedVisibility,
            Category::OccludingObstacles,   Category::ObstructedAffordance};
}

CellSet Scenario::goal_cells() const {
    CellSet cells(dims);
    for (const auto& r : goal_rects)
        for (int y = r[1]; y <= r[3]; ++y)
            for (int x = r[0]; x <= r[2]; ++x) cells.set(Cell{x, y});
    return cells;
}

WorldState Scenario::to_world() const {
    WorldState w;
    w.dims = dims;
    w.static_cells = statics;
    w.movables = movables;
    w.robot_footprint = robot_shape;
    w.robot = Configuration{robot_cell, robot_heading, std::nullopt};
    w.goal = GoalRegion{goal_cells()};
    w.sensing_range = sensing_range;
    w.validate();
    return w;
}

namespace {

std::string format_offsets(const std::vector<Offset>& offsets) {
    std::string out;
    for (size_t i = 0; i < offsets.size(); ++i) {
        if (i) out += ";";
        out += std::to_string(offsets[i].dx) + "," + std::to_string(offsets[i].dy);
    }
    return out;
}

std::vector<Offset> parse_offsets(const std::string& text, int line_no) {
    std::vector<Offset> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        size_t comma = part.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("scenario line " + std::to_string(line_no) +
                                     ": bad offset list '" + text + "'");
        out.push_back(Offset{std::stoi(part.substr(0, comma)), std::stoi(part.substr(comma + 1))});
    }
    if (out.empty())
        throw std::runtime_error("scenario line " + std::to_string(line_no) +
                                 ": empty offset list");
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "vanamo 1\n";
    out << "category " << category_name(s.category) << "\n";
    out << "seed " << s.seed << "\n";
    out << "width " << s.dims.width << "\n";
    out << "height " << s.dims.height << "\n";
    out << "resolution " << format_double(s.dims.resolution) << "\n";
    if (s.sensing_range > 0.0) out << "sensing_range " << format_double(s.sensing_range) << "\n";
    out << "robot " << s.robot_cell.x << " " << s.robot_cell.y << " " << s.robot_heading.idx
        << "\n";
    out << "robot_shape " << format_offsets(s.robot_shape.base()) << "\n";
    out << "map\n";
    for (int y = 0; y < s.dims.height; ++y) {
        for (int x = 0; x < s.dims.width; ++x) out << (s.statics.test(Cell{x, y}) ? '#' : '.');
        out << "\n";
    }
    out << "endmap\n";
    for (const MovableObject& m : s.movables) {
        out << "object " << m.id << " " << m.name << " " << m.anchor.x << " " << m.anchor.y
            << " " << m.heading.idx << " " << (m.pickable ? 1 : 0) << " "
            << format_offsets(m.footprint.base()) << "\n";
    }
    for (const auto& r : s.goal_rects)
        out << "goal " << r[0] << " " << r[1] << " " << r[2] << " " << r[3] << "\n";
    if (!s.witness.empty()) {
        out << "witness";
        for (const Action& a : s.witness) out << " " << action_token(a);
        out << "\n";
    }
    out << "end\n";
    return out.str();
}

Scenario parse_scenario(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& msg) -> std::runtime_error {
        return std::runtime_error("scenario line " + std::to_string(line_no) + ": " + msg);
    };
    auto next_line = [&](bool required) {
        if (!std::getline(in, line)) {
            if (required) throw fail("unexpected end of file");
            return false;
        }
        ++line_no;
        return true;
    };

    Scenario s;
    int width = -1, height = -1;
    double resolution = 0.1;
    bool saw_map = false, saw_robot = false, saw_shape = false, saw_end = false;

    if (!next_line(true) || line != "vanamo 1") throw fail("expected header 'vanamo 1'");

    while (next_line(false)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "category") {
            std::string name;
            ls >> name;
            auto c = parse_category(name);
            if (!c) throw fail("unknown category '" + name + "'");
            s.category = *c;
        } else if (key == "seed") {
            ls >> s.seed;
        } else if (key == "width") {
            ls >> width;
        } else if (key == "height") {
            ls >> height;
        } else if (key == "resolution") {
            ls >> resolution;
        } else if (key == "sensing_range") {
            ls >> s.sensing_range;
        } else if (key == "robot") {
            int h = 0;
            ls >> s.robot_cell.x >> s.robot_cell.y >> h;
            if (ls.fail()) throw fail("bad robot line");
            s.robot_heading = Heading(h);
            saw_robot = true;
        } else if (key == "robot_shape") {
            std::string rest;
            ls >> rest;
            s.robot_shape = Footprint::from_base(parse_offsets(rest, line_no));
            saw_shape = true;
        } else if (key == "map") {
            if (width < 1 || height < 1) throw fail("map before width/height");
            s.dims = GridDims(width, height, resolution);
            s.statics = CellSet(s.dims);
            for (int y = 0; y < height; ++y) {
                if (!next_line(false)) throw fail("truncated map section");
                if (static_cast<int>(line.size()) != width)
                    throw fail("map row has wrong width");
                for (int x = 0; x < width; ++x) {
                    if (line[static_cast<size_t>(x)] == '#')
                        s.statics.set(Cell{x, y});
                    else if (line[static_cast<size_t>(x)] != '.')
                        throw fail("map cell must be '#' or '.'");
                }
            }
            if (!next_line(false) || line != "endmap") throw fail("missing endmap");
            saw_map = true;
        } else if (key == "object") {
            MovableObject m;
            int h = 0, pickable = 0;
            std::string offsets;
            ls >> m.id >> m.name >> m.anchor.x >> m.anchor.y >> h >> pickable >> offsets;
            if (ls.fail()) throw fail("bad object line");
            m.heading = Heading(h);
            m.footprint = Footprint::from_base(parse_offsets(offsets, line_no));
            m.pickable = derive_pickable(m.footprint);
            if (m.pickable != (pickable != 0))
                throw fail("object pickable flag disagrees with its shape");
            s.movables.push_back(std::move(m));
        } else if (key == "goal") {
            std::array<int, 4> r{};
            ls >> r[0] >> r[1] >> r[2] >> r[3];
            if (ls.fail()) throw fail("bad goal line");
            s.goal_rects.push_back(r);
        } else if (key == "witness") {
            std::string token;
            while (ls >> token) {
                auto a = parse_action_token(token);
                if (!a) throw fail("unknown action token '" + token + "'");
                s.witness.push_back(*a);
            }
        } else if (key == "end") {
            saw_end = true;
            break;
        } else {
            throw fail("unknown key '" + key + "'");
        }
    }
    if (!saw_map) throw std::runtime_error("scenario: missing map section");
    if (!saw_robot) throw std::runtime_error("scenario: missing robot line");
    if (!saw_shape) throw std::runtime_error("scenario: missing robot_shape line");
    if (!saw_end) throw std::runtime_error("scenario: missing end line");
    if (s.goal_rects.empty()) throw std::runtime_error("scenario: missing goal region");
    return s;
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << serialize_scenario(s);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace vanamo
