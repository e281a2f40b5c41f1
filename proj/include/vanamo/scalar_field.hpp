#pragma once

#include <cstdint>
#include <limits>

#include "vanamo/grid.hpp"

namespace vanamo {

// Non-negative cell distances with an explicit unreachable sentinel. The
// sentinel sorts above every finite value.
class ScalarField {
  public:
    static constexpr int32_t kUnreachable = std::numeric_limits<int32_t>::max();

    ScalarField() = default;
    explicit ScalarField(GridDims dims) : grid_(dims, kUnreachable) {}

    const GridDims& dims() const { return grid_.dims(); }
    int32_t value(Cell c) const { return grid_.at(c); }
    void set_value(Cell c, int32_t v) { grid_.at(c) = v; }
    bool reachable(Cell c) const { return grid_.at(c) != kUnreachable; }

    int32_t max_finite() const {
        int32_t m = 0;
        for (int y = 0; y < dims().height; ++y)
            for (int x = 0; x < dims().width; ++x) {
                int32_t v = value(Cell{x, y});
                if (v != kUnreachable && v > m) m = v;
            }
        return m;
    }

  private:
    Grid2<int32_t> grid_;
};

// Multi-source BFS over 8-connected adjacency. Sources always get value 0;
// expansion proceeds through cells in `free_cells` (sources are treated as
// traversable even when not listed free). Unreachable cells keep the sentinel.
// An empty source set yields an all-unreachable field.
ScalarField distance_field(const CellSet& free_cells, const CellSet& sources);

}  // namespace vanamo
