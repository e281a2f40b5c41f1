#pragma once

#include <array>
#include <vector>

#include "vanamo/grid.hpp"

namespace vanamo {

// Discrete orientation, multiples of 45 degrees CCW from +x.
struct Heading {
    int idx = 0;  // 0..7

    Heading() = default;
    explicit Heading(int i) : idx(((i % 8) + 8) % 8) {}

    Heading rotated(int steps) const { return Heading(idx + steps); }
    double radians() const;
    Offset unit() const;

    bool operator==(const Heading& o) const { return idx == o.idx; }
    bool operator!=(const Heading& o) const { return idx != o.idx; }
};

// Rotate an offset by steps*45deg CCW, rounding to the nearest cell. Exact at
// multiples of 90deg.
Offset rotate_offset(Offset o, int steps);

// Shape over cells, anchored at offset (0,0), with one rasterization per
// heading derived by rotating the base (heading 0) offsets.
class Footprint {
  public:
    Footprint() = default;

    static Footprint single();
    // Axis-aligned base shape spanning dx in [0,w) and dy in [0,h).
    static Footprint rect(int w, int h);
    static Footprint from_base(std::vector<Offset> base);

    const std::vector<Offset>& offsets(Heading h) const { return per_heading_[h.idx]; }
    const std::vector<Offset>& base() const { return per_heading_[0]; }
    size_t cell_count() const { return per_heading_[0].size(); }

    std::vector<Cell> cells_at(Cell anchor, Heading h) const {
        std::vector<Cell> out;
        out.reserve(per_heading_[h.idx].size());
        for (const Offset& o : per_heading_[h.idx]) out.push_back(anchor + o);
        return out;
    }

    // Bounding box of the base orientation, (width, height).
    std::pair<int, int> base_bbox() const;

    bool operator==(const Footprint& o) const { return per_heading_ == o.per_heading_; }

  private:
    std::array<std::vector<Offset>, 8> per_heading_;
};

}  // namespace vanamo
