#include "vanamo/ray.hpp"

#include <cmath>

namespace vanamo {

std::vector<Cell> supercover_cells(Cell a, Cell b) {
    std::vector<Cell> out;
    out.reserve(static_cast<size_t>(std::abs(b.x - a.x) + std::abs(b.y - a.y) + 1));
    walk_supercover(a, b, [&](Cell c) {
        out.push_back(c);
        return false;
    });
    return out;
}

namespace {

std::optional<RayHit> classify(const CellSet& statics, const CellSet& movables, Cell c) {
    if (statics.test(c)) return RayHit{c, OccupantKind::Static};
    if (movables.test(c)) return RayHit{c, OccupantKind::Movable};
    return std::nullopt;
}

}  // namespace

RayResult raycast(const CellSet& static_cells, const CellSet& movable_cells, Vec2 origin,
                  double direction, double max_range) {
    const GridDims dims = static_cells.dims();
    if (movable_cells.dims() != dims) throw std::domain_error("raycast: dims mismatch");
    if (origin.x < 0.0 || origin.y < 0.0 || origin.x > dims.width || origin.y > dims.height)
        throw std::domain_error("raycast: origin out of bounds");

    RayResult res;
    const double dx = std::cos(direction), dy = std::sin(direction);
    int cx = static_cast<int>(std::floor(origin.x));
    int cy = static_cast<int>(std::floor(origin.y));
    cx = std::min(std::max(cx, 0), dims.width - 1);
    cy = std::min(std::max(cy, 0), dims.height - 1);

    auto visit = [&](Cell c) -> bool {  // true = stop
        res.traversed.push_back(c);
        if (auto h = classify(static_cells, movable_cells, c)) {
            res.hit = h;
            return true;
        }
        return false;
    };
    auto in_bounds = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < dims.width && y < dims.height;
    };

    if (visit(Cell{cx, cy})) return res;

    const double kInf = std::numeric_limits<double>::infinity();
    const double kCornerEps = 1e-12;
    int sx = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
    int sy = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
    double t_max_x = kInf, t_max_y = kInf, t_dx = kInf, t_dy = kInf;
    if (sx != 0) {
        double bx = sx > 0 ? std::floor(origin.x) + 1.0 : std::floor(origin.x);
        if (bx == origin.x) bx += sx;  // origin on a boundary
        t_max_x = (bx - origin.x) / dx;
        t_dx = 1.0 / std::abs(dx);
    }
    if (sy != 0) {
        double by = sy > 0 ? std::floor(origin.y) + 1.0 : std::floor(origin.y);
        if (by == origin.y) by += sy;
        t_max_y = (by - origin.y) / dy;
        t_dy = 1.0 / std::abs(dy);
    }

    while (true) {
        double t = std::min(t_max_x, t_max_y);
        if (t == kInf) return res;
        if (max_range > 0.0 && t > max_range) return res;
        if (t_max_x < t_max_y - kCornerEps) {
            cx += sx;
            if (!in_bounds(cx, cy)) return res;
            if (visit(Cell{cx, cy})) return res;
            t_max_x += t_dx;
        } else if (t_max_y < t_max_x - kCornerEps) {
            cy += sy;
            if (!in_bounds(cx, cy)) return res;
            if (visit(Cell{cx, cy})) return res;
            t_max_y += t_dy;
        } else {
            // Corner pass: both side cells block, x side checked first.
            if (in_bounds(cx + sx, cy) && visit(Cell{cx + sx, cy})) return res;
            if (in_bounds(cx, cy + sy) && visit(Cell{cx, cy + sy})) return res;
            cx += sx;
            cy += sy;
            if (!in_bounds(cx, cy)) return res;
            if (visit(Cell{cx, cy})) return res;
            t_max_x += t_dx;
            t_max_y += t_dy;
        }
    }
}

}  // namespace vanamo
