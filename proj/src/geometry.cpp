#include "vanamo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vanamo {

namespace {
constexpr double kQuarterPi = 0.78539816339744830961;
}

double Heading::radians() const { return idx * kQuarterPi; }

Offset Heading::unit() const {
    static const Offset kUnits[8] = {{1, 0},  {1, 1},   {0, 1},  {-1, 1},
                                     {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    return kUnits[idx];
}

Offset rotate_offset(Offset o, int steps) {
    int k = ((steps % 8) + 8) % 8;
    double c = std::cos(k * kQuarterPi);
    double s = std::sin(k * kQuarterPi);
    return Offset{static_cast<int>(std::lround(o.dx * c - o.dy * s)),
                  static_cast<int>(std::lround(o.dx * s + o.dy * c))};
}

Footprint Footprint::single() { return from_base({Offset{0, 0}}); }

Footprint Footprint::rect(int w, int h) {
    if (w < 1 || h < 1) throw std::domain_error("Footprint::rect: degenerate shape");
    std::vector<Offset> base;
    base.reserve(static_cast<size_t>(w * h));
    for (int dy = 0; dy < h; ++dy)
        for (int dx = 0; dx < w; ++dx) base.push_back(Offset{dx, dy});
    return from_base(std::move(base));
}

Footprint Footprint::from_base(std::vector<Offset> base) {
    if (base.empty()) throw std::domain_error("Footprint: empty shape");
    if (std::find(base.begin(), base.end(), Offset{0, 0}) == base.end())
        throw std::domain_error("Footprint: must contain the anchor offset");
    Footprint fp;
    for (int h = 0; h < 8; ++h) {
        std::vector<Offset> rotated;
        rotated.reserve(base.size());
        for (const Offset& o : base) rotated.push_back(rotate_offset(o, h));
        std::sort(rotated.begin(), rotated.end());
        rotated.erase(std::unique(rotated.begin(), rotated.end()), rotated.end());
        fp.per_heading_[h] = std::move(rotated);
    }
    return fp;
}

std::pair<int, int> Footprint::base_bbox() const {
    int min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (const Offset& o : per_heading_[0]) {
        min_x = std::min(min_x, o.dx);
        max_x = std::max(max_x, o.dx);
        min_y = std::min(min_y, o.dy);
        max_y = std::max(max_y, o.dy);
    }
    return {max_x - min_x + 1, max_y - min_y + 1};
}

}  // namespace vanamo
