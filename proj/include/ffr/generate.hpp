#pragma once

#include <cstdint>
#include <vector>

#include "ffr/grid.hpp"
#include "ffr/incidence.hpp"
#include "ffr/paraboloid.hpp"
#include "ffr/regular.hpp"
#include "ffr/rng.hpp"

namespace ffr {

// Seeded generators for experiment inputs.  Everything here is
// deterministic in (field, parameters, seed).

// Nonempty random subset of surface ranks.
std::vector<std::uint64_t> gen_surface_subset(const Paraboloid& s, Rng& rng,
                                              std::uint64_t maxSize = 0);

// Random points and lines in F^2.
PointLineConfig gen_random_config(const Field& f, std::uint64_t nPoints, std::uint64_t nLines,
                                  Rng& rng);

struct PlantedGrid {
    PointLineConfig config;
    std::vector<felem> coordSetA, coordSetB;  // the planted cosets
    felem scaleA, shiftA, scaleB, shiftB;
    std::uint64_t subfieldOrder;
};
// P = (x G + tau) x (x' G + tau') for a subfield G, with the |G|^2 lines of
// subfield slope and intercept carried onto the coset grid; every line meets
// the grid in exactly |G| points.
PlantedGrid gen_subfield_grid(const Field& f, std::uint64_t subfieldOrder, Rng& rng);

// Regular set with sliceCount slices of exactly sliceSize points each, and
// values with |v| in [1/2, 1].
RegularPiece gen_regular_piece(const Field& f, std::uint64_t sliceCount, std::uint64_t sliceSize,
                               Rng& rng);

// Random function on F^3 with about `support` nonzero values, magnitudes
// log-uniform across dyadic scales to exercise the level decomposition.
GridFn gen_grid_fn(const Field& f, std::uint64_t support, Rng& rng);

// Hypothesis-satisfying validator inputs.
GridFn gen_bounded_fn(const Field& f, Rng& rng);                    // ||f||_inf <= 1
GridFn gen_supported_fn(const Field& f, Rng& rng);                  // |f| in [1, 2] on support
GridFn gen_halfopen_fn(const Field& f, Rng& rng, std::uint64_t minSupport);  // |f| in [1/2, 1]

// Random slice on one hyperplane with values in {-1, 0, +1}.
SliceFn gen_slice(const Field& f, Rng& rng);

}  // namespace ffr
