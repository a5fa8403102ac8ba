#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace sphlab {

enum class Provenance { RegularLattice, Jittered };

// Particle positions on the unit square with uniform per-particle volume.
// Sets are immutable after construction and safe to share across threads.
struct ParticleSet {
    std::vector<double> x;
    std::vector<double> y;
    double volume = 0.0;  // 1/N for every particle
    Provenance provenance = Provenance::RegularLattice;
    double jitter_fraction = 0.0;
    std::uint64_t seed = 0;

    std::size_t size() const { return x.size(); }
};

// s x s lattice at cell centers, position(i, j) = ((i+0.5)/s, (j+0.5)/s),
// listed with x varying fastest.  count must be a perfect square s^2, s >= 2.
ParticleSet generate_regular(std::size_t count);

// Regular lattice perturbed per axis by an independent uniform offset in
// [-a*spacing, +a*spacing], clamped to the unit square.  Deterministic for a
// fixed seed (splitmix64 stream; the mapping is part of the set's contract).
ParticleSet generate_irregular(std::size_t count, double amplitude_fraction,
                               std::uint64_t seed);

// Positions as CSV with header `x,y`, 17 significant digits.
void write_positions_csv(const ParticleSet& particles, std::ostream& out);

// Compact adjacency built on a uniform cell grid.  b is listed as a neighbor
// of a iff |x_a - x_b| < radius; every particle is its own neighbor.  Each
// particle's neighbors are listed in ascending index order, so the ordering
// is a deterministic function of (particles, radius) alone.
struct NeighborList {
    double radius = 0.0;
    std::vector<std::uint64_t> offsets;  // size N+1
    std::vector<std::uint32_t> indices;  // flat neighbor indices
    double mean_neighbors = 0.0;         // indices.size() / N

    std::span<const std::uint32_t> neighbors(std::size_t a) const {
        return {indices.data() + offsets[a],
                static_cast<std::size_t>(offsets[a + 1] - offsets[a])};
    }
};

NeighborList build_neighbor_list(const ParticleSet& particles, double radius,
                                 int threads = 0);

// Mean neighbor count over particles whose distance to every domain edge
// exceeds the radius; nullopt when no particle qualifies.
std::optional<double> mean_interior_neighbors(const ParticleSet& particles,
                                              double radius, int threads = 0);

namespace detail {

// splitmix64; fixed here because jittered sets are a reproducibility contract.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

}  // namespace detail

}  // namespace sphlab
