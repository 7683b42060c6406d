#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nano {

enum class LatticeKind { Rectangular, Triangular, Hexagonal };
enum class ArenaKind { Rectangular, Hexagonal };
enum class BoundaryKind { Absorbing, Periodic };

struct Coord {
    int x = 0;
    int y = 0;
    bool operator==(const Coord&) const = default;
};

/// A neighbor slot of a site. off_arena marks targets beyond the arena
/// under an absorbing boundary; an agent moving there leaves the model.
struct NeighborTarget {
    Coord coord;
    bool off_arena = false;
};

/// One spatial layer: a lattice topology, an arena mask over the index
/// grid, a boundary rule, and the occupancy of each site. Occupancy is a
/// bijection between live agent ids and coordinates.
///
/// Stencils on the index grid:
///   rectangular: (+-1,0), (0,+-1)
///   triangular:  the rectangular four plus (+1,-1) and (-1,+1), the six
///                neighbors of a triangular tiling in axial coordinates
///   hexagonal:   (+-1,0) plus (0,+1) on even parity of x+y, (0,-1) on
///                odd; every site has the three neighbors of a honeycomb
class Layer {
public:
    Layer(LatticeKind lattice, int width, int height, ArenaKind arena,
          BoundaryKind boundary);

    int width() const { return width_; }
    int height() const { return height_; }
    LatticeKind lattice() const { return lattice_; }
    ArenaKind arena() const { return arena_; }
    BoundaryKind boundary() const { return boundary_; }

    bool in_arena(Coord c) const;
    /// All stencil targets of c, boundary rule applied: periodic targets
    /// arrive wrapped, absorbing targets beyond the arena arrive flagged.
    std::vector<NeighborTarget> neighbors(Coord c) const;

    std::uint32_t occupant(Coord c) const;  // 0 means vacant or off-arena
    bool vacant(Coord c) const;             // in the arena and unoccupied

    void place(std::uint32_t id, Coord c);
    void move(std::uint32_t id, Coord from, Coord to);
    void remove(std::uint32_t id, Coord c);
    Coord position_of(std::uint32_t id) const;
    bool tracks(std::uint32_t id) const { return positions_.count(id) > 0; }

    std::size_t occupied_count() const { return positions_.size(); }
    std::size_t arena_size() const { return arena_size_; }
    /// Vacant arena sites in row-major order (y outer, x inner).
    std::vector<Coord> vacant_sites() const;
    const std::unordered_map<std::uint32_t, Coord>& positions() const {
        return positions_;
    }

    /// Invoked with every coordinate whose occupancy changes and the id
    /// of the agent that caused it; a move reports both endpoints.
    /// Drives neighborhood-change reactions.
    void set_change_listener(std::function<void(Coord, std::uint32_t)> listener) {
        listener_ = std::move(listener);
    }

private:
    std::size_t index(Coord c) const {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.x);
    }
    bool in_bounds(Coord c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    void notify(Coord c, std::uint32_t cause) {
        if (listener_) listener_(c, cause);
    }

    LatticeKind lattice_;
    int width_;
    int height_;
    ArenaKind arena_;
    BoundaryKind boundary_;
    std::vector<std::uint32_t> grid_;
    std::unordered_map<std::uint32_t, Coord> positions_;
    std::size_t arena_size_ = 0;
    std::function<void(Coord, std::uint32_t)> listener_;
};

}  // namespace nano
