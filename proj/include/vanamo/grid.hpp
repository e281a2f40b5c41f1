#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace vanamo {

// Dense 2D cell lattice metadata. `resolution` is meters per cell and is
// carried as metadata only; all geometry below works in cell units.
struct GridDims {
    int width = 0;
    int height = 0;
    double resolution = 0.1;

    GridDims() = default;
    GridDims(int w, int h, double res = 0.1) : width(w), height(h), resolution(res) {
        if (w < 1 || h < 1) throw std::domain_error("GridDims: width/height must be >= 1");
        if (res <= 0.0) throw std::domain_error("GridDims: resolution must be > 0");
    }

    int cell_count() const { return width * height; }
    bool operator==(const GridDims& o) const {
        return width == o.width && height == o.height;
    }
    bool operator!=(const GridDims& o) const { return !(*this == o); }
};

struct Cell {
    int x = 0;
    int y = 0;

    bool operator==(const Cell& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Cell& o) const { return !(*this == o); }
    bool operator<(const Cell& o) const { return y != o.y ? y < o.y : x < o.x; }
};

struct Offset {
    int dx = 0;
    int dy = 0;

    bool operator==(const Offset& o) const { return dx == o.dx && dy == o.dy; }
    bool operator<(const Offset& o) const { return dy != o.dy ? dy < o.dy : dx < o.dx; }
};

inline Cell operator+(Cell c, Offset o) { return Cell{c.x + o.dx, c.y + o.dy}; }
inline Offset operator-(Cell a, Cell b) { return Offset{a.x - b.x, a.y - b.y}; }

inline int chebyshev(Cell a, Cell b) {
    int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx > dy ? dx : dy;
}

// Membership bitset over a GridDims. All binary set operations require both
// operands to share dims.
class CellSet {
  public:
    CellSet() = default;
    explicit CellSet(GridDims dims)
        : dims_(dims), words_((static_cast<size_t>(dims.cell_count()) + 63) / 64, 0) {}

    static CellSet full(GridDims dims) {
        CellSet s(dims);
        for (auto& w : s.words_) w = ~0ULL;
        s.trim();
        return s;
    }

    const GridDims& dims() const { return dims_; }
    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.y >= 0 && c.x < dims_.width && c.y < dims_.height;
    }

    bool test(Cell c) const {
        if (!in_bounds(c)) return false;
        size_t i = index(c);
        return (words_[i >> 6] >> (i & 63)) & 1ULL;
    }
    void set(Cell c) {
        check_bounds(c);
        size_t i = index(c);
        words_[i >> 6] |= 1ULL << (i & 63);
    }
    void reset(Cell c) {
        check_bounds(c);
        size_t i = index(c);
        words_[i >> 6] &= ~(1ULL << (i & 63));
    }

    int count() const {
        int n = 0;
        for (uint64_t w : words_) n += __builtin_popcountll(w);
        return n;
    }
    bool any() const {
        for (uint64_t w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    CellSet& operator|=(const CellSet& o) {
        check_dims(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    CellSet& operator&=(const CellSet& o) {
        check_dims(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    CellSet& operator-=(const CellSet& o) {
        check_dims(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
    friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }
    friend CellSet operator-(CellSet a, const CellSet& b) { return a -= b; }

    CellSet complement() const {
        CellSet r = *this;
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    bool intersects(const CellSet& o) const {
        check_dims(o);
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool contains(const CellSet& o) const {
        check_dims(o);
        for (size_t i = 0; i < words_.size(); ++i)
            if (o.words_[i] & ~words_[i]) return false;
        return true;
    }

    bool operator==(const CellSet& o) const {
        return dims_ == o.dims_ && words_ == o.words_;
    }
    bool operator!=(const CellSet& o) const { return !(*this == o); }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                int b = __builtin_ctzll(w);
                w &= w - 1;
                size_t i = (wi << 6) + static_cast<size_t>(b);
                fn(Cell{static_cast<int>(i) % dims_.width, static_cast<int>(i) / dims_.width});
            }
        }
    }

    std::vector<Cell> cells() const {
        std::vector<Cell> out;
        out.reserve(static_cast<size_t>(count()));
        for_each([&](Cell c) { out.push_back(c); });
        return out;
    }

    uint64_t hash64() const {
        uint64_t h = 1469598103934665603ULL;
        for (uint64_t w : words_) {
            h ^= w;
            h *= 1099511628211ULL;
        }
        return h;
    }

  private:
    size_t index(Cell c) const {
        return static_cast<size_t>(c.y) * static_cast<size_t>(dims_.width) +
               static_cast<size_t>(c.x);
    }
    void check_bounds(Cell c) const {
        if (!in_bounds(c)) throw std::domain_error("CellSet: cell out of bounds");
    }
    void check_dims(const CellSet& o) const {
        if (dims_ != o.dims_) throw std::domain_error("CellSet: dims mismatch");
    }
    void trim() {
        int n = dims_.cell_count();
        if (words_.empty()) return;
        int used = n & 63;
        if (used) words_.back() &= (1ULL << used) - 1;
    }

    GridDims dims_;
    std::vector<uint64_t> words_;
};

// Dense grid of payloads, row-major.
template <typename Payload>
class Grid2 {
  public:
    Grid2() = default;
    Grid2(GridDims dims, Payload init = Payload{})
        : dims_(dims), cells_(static_cast<size_t>(dims.cell_count()), init) {}

    const GridDims& dims() const { return dims_; }
    Payload& at(Cell c) { return cells_[index(c)]; }
    const Payload& at(Cell c) const { return cells_[index(c)]; }
    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.y >= 0 && c.x < dims_.width && c.y < dims_.height;
    }

  private:
    size_t index(Cell c) const {
        if (!in_bounds(c)) throw std::domain_error("Grid2: cell out of bounds");
        return static_cast<size_t>(c.y) * static_cast<size_t>(dims_.width) +
               static_cast<size_t>(c.x);
    }

    GridDims dims_;
    std::vector<Payload> cells_;
};

inline uint64_t hash_mix(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace vanamo
