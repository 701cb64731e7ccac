#pragma once

#include <cstdint>
#include <vector>

#include "ffr/grid.hpp"

namespace ffr {

// One dyadic level of a function on F^3: values scaled so 1/2 < |v| <= 1,
// with the power-of-two factor kept aside.  Scaling by powers of two is
// exact in binary floating point, so recombination reproduces the input
// bit for bit.
struct LevelPiece {
    int level = 0;        // piece covers (2^{-level-1}, 2^{-level}] after scaling
    double scale = 1.0;   // multiply values by this to recover the original
    std::vector<std::uint64_t> support;  // grid indices, sorted
    std::vector<cplx> values;            // aligned with support, 1/2 < |v| <= 1
};

struct LevelDecomposition {
    double norm_scale = 1.0;   // power of two with ||f||_inf * norm_scale in (1/2, 1]
    double tail_threshold = 0; // q^{-10} * ||f||_inf
    std::vector<LevelPiece> pieces;
    std::vector<std::uint64_t> tail_support;  // points with |f| <= threshold
    std::vector<cplx> tail_values;            // original values there
};

// f = sum of scaled pieces + tail, supports disjoint, reconstruction exact.
LevelDecomposition dyadic_levels(const GridFn& f);

// Piece of a regular function: support in F^3 whose nonempty horizontal
// slices (fixed x3) have size within a factor 2 of each other.  The
// exponents gamma, s, t are carried as the integer counts themselves;
// logarithms are derived views.
struct RegularPiece {
    Field field;
    std::vector<std::uint64_t> support;  // grid indices, sorted
    std::vector<cplx> values;            // 1/2 <= |v| <= 1
    std::uint64_t support_size = 0;
    std::uint64_t slice_count = 0;
    std::uint64_t slice_floor = 0;       // min nonempty slice size
};

// Splits one level piece by the dyadic class of its slice sizes.
std::vector<RegularPiece> slice_regular_decompose(const Field& f, const LevelPiece& piece);

struct RegularityStats {
    double gamma, s, t;     // log_q of the integer counts
    double ratio;           // max/min nonempty slice size, <= 2
    std::uint64_t min_slice, max_slice;
};
// Recomputes every invariant from scratch; throws naming the failing slice.
RegularityStats regularity_stats(const RegularPiece& piece);

// Builds a GridFn (counting measure) out of a regular piece.
GridFn piece_to_grid(const RegularPiece& piece);

}  // namespace ffr
