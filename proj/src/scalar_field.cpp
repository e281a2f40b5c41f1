#include "vanamo/scalar_field.hpp"

#include <queue>

namespace vanamo {

ScalarField distance_field(const CellSet& free_cells, const CellSet& sources) {
    if (free_cells.dims() != sources.dims())
        throw std::domain_error("distance_field: dims mismatch");
    const GridDims dims = free_cells.dims();
    ScalarField field(dims);

    std::queue<Cell> frontier;
    sources.for_each([&](Cell c) {
        field.set_value(c, 0);
        frontier.push(c);
    });

    static const Offset kNeighbors[8] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                         {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
    while (!frontier.empty()) {
        Cell c = frontier.front();
        frontier.pop();
        int32_t d = field.value(c);
        for (const Offset& o : kNeighbors) {
            Cell n = c + o;
            if (!free_cells.in_bounds(n)) continue;
            if (!free_cells.test(n) && !sources.test(n)) continue;
            if (field.value(n) != ScalarField::kUnreachable) continue;
            field.set_value(n, d + 1);
            frontier.push(n);
        }
    }
    return field;
}

}  // namespace vanamo
