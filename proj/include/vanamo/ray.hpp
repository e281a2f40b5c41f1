#pragma once

#include <optional>
#include <vector>

#include "vanamo/grid.hpp"

namespace vanamo {

enum class OccupantKind { Static, Movable };

struct RayHit {
    Cell cell;
    OccupantKind kind;
};

struct RayResult {
    std::vector<Cell> traversed;  // in traversal order, includes the hit cell
    std::optional<RayHit> hit;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 cell_center(Cell c) { return Vec2{c.x + 0.5, c.y + 0.5}; }

// Every cell whose closed unit square the segment between the two cell
// centers touches, in order from `a` to `b`. A pass through a cell corner
// emits both side cells (x-side first) before the diagonal cell, so a ray
// cannot slip between two diagonally adjacent occupied cells. Exact integer
// arithmetic; no floating point.
std::vector<Cell> supercover_cells(Cell a, Cell b);

// Allocation-free variant: fn(Cell) -> bool, return true to stop early.
template <typename Fn>
void walk_supercover(Cell a, Cell b, Fn&& fn) {
    int dx = b.x - a.x, dy = b.y - a.y;
    int sx = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
    int sy = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
    int64_t nx = dx > 0 ? dx : -dx;
    int64_t ny = dy > 0 ? dy : -dy;
    int cx = a.x, cy = a.y;
    if (fn(Cell{cx, cy})) return;
    int64_t j = 1, k = 1;
    while (j <= nx || k <= ny) {
        if (k > ny || (j <= nx && (2 * j - 1) * ny < (2 * k - 1) * nx)) {
            cx += sx;
            if (fn(Cell{cx, cy})) return;
            ++j;
        } else if (j > nx || (2 * j - 1) * ny > (2 * k - 1) * nx) {
            cy += sy;
            if (fn(Cell{cx, cy})) return;
            ++k;
        } else {
            if (fn(Cell{cx + sx, cy})) return;
            if (fn(Cell{cx, cy + sy})) return;
            cx += sx;
            cy += sy;
            if (fn(Cell{cx, cy})) return;
            ++j;
            ++k;
        }
    }
}

// Supercover traversal of an angle-directed ray from a continuous in-bounds
// origin, stopping at the first occupied cell (included, reported as `hit`),
// the grid boundary, or `max_range` (in cell units; <=0 means unbounded).
RayResult raycast(const CellSet& static_cells, const CellSet& movable_cells, Vec2 origin,
                  double direction, double max_range = 0.0);

}  // namespace vanamo
