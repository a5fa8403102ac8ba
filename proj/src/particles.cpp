#include "sphlab/particles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "sphlab/parallel.hpp"

namespace sphlab {

namespace {

std::size_t lattice_side(std::size_t count) {
    const auto s = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
    if (s < 2 || s * s != count)
        throw std::invalid_argument("particle count must be a perfect square s^2 with s >= 2");
    return s;
}

// Uniform cell grid with side >= radius; neighbor candidates come from the
// 3x3 stencil around a particle's cell.  Particles are binned in index order
// so candidate enumeration is deterministic.
struct CellGrid {
    int cells = 1;
    std::vector<std::uint32_t> cell_start;  // cells*cells + 1
    std::vector<std::uint32_t> items;       // particle indices grouped by cell

    CellGrid(const ParticleSet& p, double radius) {
        // cell side stays >= radius; the resolution cap only enlarges cells
        const int by_radius = static_cast<int>(std::floor(1.0 / radius));
        const int by_count =
            2 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p.size())))) + 1;
        cells = std::clamp(std::min(by_radius, by_count), 1, 1 << 15);
        const std::size_t n = p.size();
        const std::size_t ncells = static_cast<std::size_t>(cells) * cells;
        cell_start.assign(ncells + 1, 0);
        std::vector<std::uint32_t> cell_of(n);
        for (std::size_t a = 0; a < n; ++a) {
            const int cx = cell_index(p.x[a]);
            const int cy = cell_index(p.y[a]);
            cell_of[a] = static_cast<std::uint32_t>(cy * cells + cx);
            ++cell_start[cell_of[a] + 1];
        }
        std::partial_sum(cell_start.begin(), cell_start.end(), cell_start.begin());
        items.resize(n);
        std::vector<std::uint32_t> cursor(cell_start.begin(), cell_start.end() - 1);
        for (std::size_t a = 0; a < n; ++a) items[cursor[cell_of[a]]++] = static_cast<std::uint32_t>(a);
    }

    int cell_index(double coord) const {
        int c = static_cast<int>(coord * cells);
        return std::clamp(c, 0, cells - 1);
    }

    // Calls visit(b) for every particle b with |x_a - x_b| < radius, in a
    // fixed stencil-then-bin order.
    template <typename Visit>
    void for_neighbors(const ParticleSet& p, std::size_t a, double radius, Visit&& visit) const {
        const double ax = p.x[a];
        const double ay = p.y[a];
        const double r2 = radius * radius;
        const int cx = cell_index(ax);
        const int cy = cell_index(ay);
        const int y0 = std::max(0, cy - 1), y1 = std::min(cells - 1, cy + 1);
        const int x0 = std::max(0, cx - 1), x1 = std::min(cells - 1, cx + 1);
        for (int gy = y0; gy <= y1; ++gy) {
            for (int gx = x0; gx <= x1; ++gx) {
                const std::size_t c = static_cast<std::size_t>(gy) * cells + gx;
                for (std::uint32_t i = cell_start[c]; i < cell_start[c + 1]; ++i) {
                    const std::uint32_t b = items[i];
                    const double dx = p.x[b] - ax;
                    const double dy = p.y[b] - ay;
                    if (dx * dx + dy * dy < r2) visit(b);
                }
            }
        }
    }
};

void require_radius(double radius) {
    if (!(radius > 0.0) || !(radius <= 1.0))
        throw std::invalid_argument("neighbor radius must satisfy 0 < radius <= 1");
}

}  // namespace

ParticleSet generate_regular(std::size_t count) {
    const std::size_t s = lattice_side(count);
    ParticleSet p;
    p.x.reserve(count);
    p.y.reserve(count);
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t i = 0; i < s; ++i) {
            p.x.push_back((static_cast<double>(i) + 0.5) / static_cast<double>(s));
            p.y.push_back((static_cast<double>(j) + 0.5) / static_cast<double>(s));
        }
    }
    p.volume = 1.0 / static_cast<double>(count);
    p.provenance = Provenance::RegularLattice;
    return p;
}

ParticleSet generate_irregular(std::size_t count, double amplitude_fraction,
                               std::uint64_t seed) {
    if (!(amplitude_fraction >= 0.0) || !(amplitude_fraction < 0.5))
        throw std::invalid_argument("jitter amplitude fraction must lie in [0, 0.5)");
    ParticleSet p = generate_regular(count);
    const double spacing = 1.0 / std::sqrt(static_cast<double>(count));
    const double amp = amplitude_fraction * spacing;
    std::uint64_t state = seed;
    for (std::size_t a = 0; a < count; ++a) {
        const double ux = detail::unit_double(detail::splitmix64_next(state));
        const double uy = detail::unit_double(detail::splitmix64_next(state));
        p.x[a] = std::clamp(p.x[a] + amp * (2.0 * ux - 1.0), 0.0, 1.0);
        p.y[a] = std::clamp(p.y[a] + amp * (2.0 * uy - 1.0), 0.0, 1.0);
    }
    p.provenance = Provenance::Jittered;
    p.jitter_fraction = amplitude_fraction;
    p.seed = seed;
    return p;
}

void write_positions_csv(const ParticleSet& particles, std::ostream& out) {
    out << "x,y\n";
    char buf[64];
    for (std::size_t a = 0; a < particles.size(); ++a) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", particles.x[a], particles.y[a]);
        out << buf;
    }
}

NeighborList build_neighbor_list(const ParticleSet& particles, double radius, int threads) {
    require_radius(radius);
    const std::size_t n = particles.size();
    const CellGrid grid(particles, radius);

    NeighborList list;
    list.radius = radius;
    list.offsets.assign(n + 1, 0);

    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            std::uint64_t count = 0;
            grid.for_neighbors(particles, a, radius, [&](std::uint32_t) { ++count; });
            list.offsets[a + 1] = count;
        }
    });
    std::partial_sum(list.offsets.begin(), list.offsets.end(), list.offsets.begin());

    list.indices.resize(list.offsets[n]);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            std::uint64_t w = list.offsets[a];
            grid.for_neighbors(particles, a, radius,
                               [&](std::uint32_t b) { list.indices[w++] = b; });
            // ascending index order: scheme sums then run in the same order
            // as a plain 0..N-1 loop, and memory access stays sequential
            std::sort(list.indices.begin() + static_cast<std::ptrdiff_t>(list.offsets[a]),
                      list.indices.begin() + static_cast<std::ptrdiff_t>(w));
        }
    });

    list.mean_neighbors = static_cast<double>(list.indices.size()) / static_cast<double>(n);
    return list;
}

std::optional<double> mean_interior_neighbors(const ParticleSet& particles, double radius,
                                              int threads) {
    require_radius(radius);
    const std::size_t n = particles.size();
    const CellGrid grid(particles, radius);

    std::vector<std::uint64_t> counts(n, 0);
    std::vector<std::uint8_t> interior(n, 0);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            const double x = particles.x[a];
            const double y = particles.y[a];
            if (!(x > radius && 1.0 - x > radius && y > radius && 1.0 - y > radius)) continue;
            interior[a] = 1;
            std::uint64_t c = 0;
            grid.for_neighbors(particles, a, radius, [&](std::uint32_t) { ++c; });
            counts[a] = c;
        }
    });

    std::uint64_t total = 0;
    std::size_t interior_count = 0;
    for (std::size_t a = 0; a < n; ++a) {
        if (interior[a]) {
            total += counts[a];
            ++interior_count;
        }
    }
    if (interior_count == 0) return std::nullopt;
    return static_cast<double>(total) / static_cast<double>(interior_count);
}

}  // namespace sphlab
