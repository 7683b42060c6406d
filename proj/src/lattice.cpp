#include "nano/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace nano {

namespace {

int wrap(int v, int extent) {
    const int m = v % extent;
    return m < 0 ? m + extent : m;
}

}  // namespace

Layer::Layer(LatticeKind lattice, int width, int height, ArenaKind arena,
             BoundaryKind boundary)
    : lattice_(lattice),
      width_(width),
      height_(height),
      arena_(arena),
      boundary_(boundary) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("layer extents must be positive");
    grid_.assign(
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x)
            if (in_arena(Coord{x, y})) ++arena_size_;
    if (arena_size_ == 0) throw std::invalid_argument("arena is empty");
}

bool Layer::in_arena(Coord c) const {
    if (!in_bounds(c)) return false;
    if (arena_ == ArenaKind::Rectangular) return true;
    // Hexagonal ball on axial coordinates, centered on the grid. The
    // radius fits the shorter extent.
    const int cx = (width_ - 1) / 2;
    const int cy = (height_ - 1) / 2;
    const int r = (std::min(width_, height_) - 1) / 2;
    const int u = c.x - cx;
    const int v = c.y - cy;
    return std::max({std::abs(u), std::abs(v), std::abs(u + v)}) <= r;
}

std::vector<NeighborTarget> Layer::neighbors(Coord c) const {
    std::vector<Coord> raw;
    raw.reserve(6);
    raw.push_back({c.x + 1, c.y});
    raw.push_back({c.x - 1, c.y});
    switch (lattice_) {
        case LatticeKind::Rectangular:
            raw.push_back({c.x, c.y + 1});
            raw.push_back({c.x, c.y - 1});
            break;
        case LatticeKind::Triangular:
            raw.push_back({c.x, c.y + 1});
            raw.push_back({c.x, c.y - 1});
            raw.push_back({c.x + 1, c.y - 1});
            raw.push_back({c.x - 1, c.y + 1});
            break;
        case LatticeKind::Hexagonal:
            raw.push_back(((c.x + c.y) % 2 == 0) ? Coord{c.x, c.y + 1}
                                                 : Coord{c.x, c.y - 1});
            break;
    }
    std::vector<NeighborTarget> out;
    out.reserve(raw.size());
    for (Coord t : raw) {
        if (in_arena(t)) {
            out.push_back({t, false});
        } else if (boundary_ == BoundaryKind::Periodic) {
            const Coord wrapped{wrap(t.x, width_), wrap(t.y, height_)};
            // A periodic boundary needs the full index grid inside the
            // arena; the registry forbids the hexagonal arena here.
            if (!in_arena(wrapped))
                throw std::logic_error("periodic wrap left the arena");
            out.push_back({wrapped, false});
        } else {
            out.push_back({t, true});
        }
    }
    return out;
}

std::uint32_t Layer::occupant(Coord c) const {
    if (!in_arena(c)) return 0;
    return grid_[index(c)];
}

bool Layer::vacant(Coord c) const { return in_arena(c) && grid_[index(c)] == 0; }

void Layer::place(std::uint32_t id, Coord c) {
    if (id == 0) throw std::logic_error("agent ids start at 1");
    if (!vacant(c)) throw std::logic_error("place onto an occupied site");
    if (positions_.count(id)) throw std::logic_error("agent already placed");
    grid_[index(c)] = id;
    positions_[id] = c;
    notify(c, id);
}

void Layer::move(std::uint32_t id, Coord from, Coord to) {
    auto it = positions_.find(id);
    if (it == positions_.end() || !(it->second == from))
        throw std::logic_error("move from a site the agent does not hold");
    if (!vacant(to)) throw std::logic_error("move onto an occupied site");
    grid_[index(from)] = 0;
    grid_[index(to)] = id;
    it->second = to;
    notify(from, id);
    notify(to, id);
}

void Layer::remove(std::uint32_t id, Coord c) {
    auto it = positions_.find(id);
    if (it == positions_.end() || !(it->second == c))
        throw std::logic_error("remove from a site the agent does not hold");
    grid_[index(c)] = 0;
    positions_.erase(it);
    notify(c, id);
}

Coord Layer::position_of(std::uint32_t id) const {
    auto it = positions_.find(id);
    if (it == positions_.end())
        throw std::logic_error("agent " + std::to_string(id) + " is not placed");
    return it->second;
}

std::vector<Coord> Layer::vacant_sites() const {
    std::vector<Coord> out;
    out.reserve(arena_size_ - positions_.size());
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x) {
            const Coord c{x, y};
            if (in_arena(c) && grid_[index(c)] == 0) out.push_back(c);
        }
    return out;
}

}  // namespace nano
