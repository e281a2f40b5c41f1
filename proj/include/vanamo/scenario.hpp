#pragma once

#include <array>
#include <iosfwd>

#include "vanamo/world.hpp"

namespace vanamo {

enum class Category {
    SimpleNavigation,
    Visibility,
    MovableObstacles,
    ObstructedVisibility,
    OccludingObstacles,
    ObstructedAffordance,
};

constexpr int kCategoryCount = 6;
std::string category_name(Category c);
std::optional<Category> parse_category(const std::string& name);
std::array<Category, kCategoryCount> all_categories();

// A complete problem instance plus a hand-scripted witness action sequence
// proving it solvable in the simulator.
struct Scenario {
    GridDims dims;
    Category category = Category::SimpleNavigation;
    uint64_t seed = 0;
    CellSet statics;
    std::vector<MovableObject> movables;
    Footprint robot_shape;
    Cell robot_cell;
    Heading robot_heading;
    std::vector<std::array<int, 4>> goal_rects;  // x0 y0 x1 y1, inclusive
    double sensing_range = 0.0;                  // <=0: grid diagonal
    std::vector<Action> witness;

    CellSet goal_cells() const;
    WorldState to_world() const;
};

// Versioned plain-text `.vanamo` form; save(load(f)) is byte-identical for
// files produced by save.
std::string serialize_scenario(const Scenario& s);
Scenario parse_scenario(const std::string& text);
void save_scenario(const Scenario& s, const std::string& path);
Scenario load_scenario(const std::string& path);

// Deterministic seeded generation with per-category executable post-checks;
// instances failing a check are regenerated from derived sub-seeds. Throws
// after bounded retries, naming the violated check.
Scenario generate(Category category, uint64_t seed, GridDims dims);

// Smallest workable grid per category.
GridDims category_min_dims(Category c);

}  // namespace vanamo
