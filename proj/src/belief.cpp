#include "vanamo/belief.hpp"

#include <algorithm>
#include <cmath>

namespace vanamo {

double BeliefGrids::effective_sensing_range() const {
    if (sensing_range > 0.0) return sensing_range;
    return std::hypot(static_cast<double>(dims.width), static_cast<double>(dims.height));
}

CellSet BeliefGrids::object_cells(const std::vector<int>& excluded) const {
    CellSet s(dims);
    for (const auto& [id, obj] : objects) {
        if (std::find(excluded.begin(), excluded.end(), id) != excluded.end()) continue;
        for (Cell c : obj.cells()) s.set(c);
    }
    return s;
}

CellSet BeliefGrids::occupancy(const std::vector<int>& excluded) const {
    return statics | object_cells(excluded);
}

uint64_t BeliefGrids::digest() const {
    uint64_t h = viewed.hash64();
    h = hash_mix(h, statics.hash64());
    for (const auto& [id, obj] : objects) {
        h = hash_mix(h, static_cast<uint64_t>(id));
        h = hash_mix(h, static_cast<uint64_t>(obj.anchor.x) << 32 |
                            static_cast<uint32_t>(obj.anchor.y));
        h = hash_mix(h, static_cast<uint64_t>(obj.heading.idx));
    }
    for (const auto& [state, cells] : refuted_views) {
        h = hash_mix(h, static_cast<uint64_t>(state) + 31);
        h = hash_mix(h, cells.hash64());
    }
    return h;
}

BeliefGrids update_belief(const BeliefGrids& belief, const Observation& obs) {
    if (obs.viewed.dims() != belief.dims)
        throw std::domain_error("update_belief: dims mismatch");
    for (const RayHit& h : obs.hits)
        if (obs.viewed.test(h.cell))
            throw std::domain_error("update_belief: hit cell also reported viewed");

    BeliefGrids out = belief;
    out.viewed |= obs.viewed;
    for (const RayHit& h : obs.hits)
        if (h.kind == OccupantKind::Static) out.statics.set(h.cell);
    bool poses_changed = false;
    for (const ObjectSighting& s : obs.sightings) {
        auto it = out.objects.find(s.id);
        if (it == out.objects.end() || !(it->second.anchor == s.anchor) ||
            it->second.heading != s.heading)
            poses_changed = true;
        out.objects[s.id] = BeliefObject{s.footprint, s.anchor, s.heading, s.pickable};
    }

    // Drop stale poses: an object believed to occupy a cell we just saw free
    // is no longer where we thought, unless this very observation re-sighted it.
    std::vector<int> stale;
    for (const auto& [id, obj] : out.objects) {
        bool resighted = false;
        for (const ObjectSighting& s : obs.sightings) resighted |= (s.id == id);
        if (resighted) continue;
        for (Cell c : obj.cells())
            if (obs.viewed.test(c)) stale.push_back(id);
    }
    for (int id : stale) out.objects.erase(id);
    if (poses_changed || !stale.empty()) out.refuted_views.clear();
    return out;
}

CellSet sim_observe(const BeliefGrids& belief, const Configuration& q,
                    const std::vector<int>& ignored) {
    CellSet blockers = belief.occupancy(ignored);
    if (q.attachment)
        for (Cell c : q.attachment->object_cells(q.cell, q.heading))
            if (blockers.in_bounds(c)) blockers.set(c);

    CellSet viewed =
        visible_free_cells(blockers, q.cell, q.heading, belief.effective_sensing_range());
    if (auto it = belief.refuted_views.find(belief.state_index(q));
        it != belief.refuted_views.end())
        viewed -= it->second;
    for (Cell c : belief.robot_footprint.cells_at(q.cell, q.heading))
        if (viewed.in_bounds(c) && !blockers.test(c)) viewed.set(c);
    return viewed;
}

}  // namespace vanamo
