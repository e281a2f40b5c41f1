#include "vanamo/observe.hpp"

#include <algorithm>
#include <cmath>

namespace vanamo {

uint64_t Observation::digest() const {
    uint64_t h = viewed.hash64();
    for (const RayHit& hit : hits) {
        h = hash_mix(h, static_cast<uint64_t>(hit.cell.x) << 32 |
                            static_cast<uint32_t>(hit.cell.y));
        h = hash_mix(h, hit.kind == OccupantKind::Static ? 1 : 2);
    }
    for (const ObjectSighting& s : sightings) {
        h = hash_mix(h, static_cast<uint64_t>(s.id));
        h = hash_mix(h, static_cast<uint64_t>(s.anchor.x) << 32 |
                            static_cast<uint32_t>(s.anchor.y));
        h = hash_mix(h, static_cast<uint64_t>(s.heading.idx));
    }
    return h;
}

bool in_view_cone(Cell camera, Heading heading, Cell target) {
    int dx = target.x - camera.x;
    int dy = target.y - camera.y;
    if (dx == 0 && dy == 0) return true;
    // Rotate the delta by -heading. Odd headings use the sqrt(2)-scaled exact
    // rotation; scaling does not affect the sign tests.
    int h = heading.idx;
    if (h & 1) {
        int rx = dx + dy, ry = dy - dx;  // -45 deg, scaled
        dx = rx;
        dy = ry;
        h -= 1;
    }
    for (int i = 0; i < h / 2; ++i) {  // -90 deg steps
        int rx = dy, ry = -dx;
        dx = rx;
        dy = ry;
    }
    return dx >= std::abs(dy);
}

bool line_clear(const CellSet& blockers, Cell from, Cell to) {
    bool blocked = false;
    walk_supercover(from, to, [&](Cell c) {
        if (c == from || c == to) return false;
        if (blockers.test(c)) {
            blocked = true;
            return true;
        }
        return false;
    });
    return !blocked;
}

namespace {

bool in_range(Cell camera, Cell target, double range) {
    double dx = target.x - camera.x, dy = target.y - camera.y;
    return dx * dx + dy * dy <= range * range + 1e-9;
}

}  // namespace

CellSet visible_free_cells(const CellSet& blockers, Cell camera, Heading heading,
                           double range) {
    const GridDims dims = blockers.dims();
    CellSet viewed(dims);
    int r = static_cast<int>(std::ceil(range));
    int x0 = std::max(0, camera.x - r), x1 = std::min(dims.width - 1, camera.x + r);
    int y0 = std::max(0, camera.y - r), y1 = std::min(dims.height - 1, camera.y + r);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            Cell c{x, y};
            if (blockers.test(c)) continue;
            if (!in_range(camera, c, range)) continue;
            if (!in_view_cone(camera, heading, c)) continue;
            if (!line_clear(blockers, camera, c)) continue;
            viewed.set(c);
        }
    }
    viewed.set(camera);
    return viewed;
}

Observation observe(const WorldState& world, const Configuration& q) {
    const GridDims dims = world.dims;
    const double range = world.effective_sensing_range();
    CellSet movables = world.movable_cells();
    CellSet blockers = world.static_cells | movables;

    Observation obs;
    obs.viewed = visible_free_cells(blockers, q.cell, q.heading, range);
    for (Cell c : world.robot_cells(q))
        if (obs.viewed.in_bounds(c) && !blockers.test(c)) obs.viewed.set(c);

    // Occupied cells with a clear line of sight become labeled hits.
    std::vector<int> sighted;
    int r = static_cast<int>(std::ceil(range));
    int x0 = std::max(0, q.cell.x - r), x1 = std::min(dims.width - 1, q.cell.x + r);
    int y0 = std::max(0, q.cell.y - r), y1 = std::min(dims.height - 1, q.cell.y + r);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            Cell c{x, y};
            if (!blockers.test(c)) continue;
            if (!in_range(q.cell, c, range)) continue;
            if (!in_view_cone(q.cell, q.heading, c)) continue;
            if (!line_clear(blockers, q.cell, c)) continue;
            if (world.static_cells.test(c)) {
                obs.hits.push_back(RayHit{c, OccupantKind::Static});
            } else {
                obs.hits.push_back(RayHit{c, OccupantKind::Movable});
                for (const auto& m : world.movables)
                    for (Cell oc : m.cells())
                        if (oc == c && std::find(sighted.begin(), sighted.end(), m.id) ==
                                           sighted.end())
                            sighted.push_back(m.id);
            }
        }
    }
    std::sort(sighted.begin(), sighted.end());
    for (int id : sighted) {
        const MovableObject* m = world.find_object(id);
        obs.sightings.push_back(
            ObjectSighting{m->id, m->footprint, m->anchor, m->heading, m->pickable});
    }
    return obs;
}

}  // namespace vanamo
