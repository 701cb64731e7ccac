#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffr/field.hpp"
#include "ffr/paraboloid.hpp"

namespace ffr {

// Line ax + by = c in canonical form: the first nonzero coordinate among
// (a, b) is scaled to 1, so equality of triples is equality of lines.
struct Line {
    felem a, b, c;
    bool operator==(const Line&) const = default;
    auto operator<=>(const Line&) const = default;
};

Line make_line(const Field& f, felem a, felem b, felem c);
bool on_line(const Field& f, const Line& l, felem x, felem y);

// Chart form x = c y + d as a canonical triple.
Line line_from_chart(const Field& f, felem c, felem d);

// Planar point (x, y) packed as x + y*q for hashing and sorting.
inline std::uint64_t pack_point(const Field& f, felem x, felem y) {
    return x + f.q() * std::uint64_t(y);
}

// Points and lines in F^2 with cached per-line counts.  Duplicates are
// removed at construction.
class PointLineConfig {
public:
    PointLineConfig(Field f, std::vector<std::uint64_t> packedPoints, std::vector<Line> lines);

    const Field& field() const { return field_; }
    const std::vector<std::uint64_t>& points() const { return points_; }
    const std::vector<Line>& lines() const { return lines_; }

    // Exact |{(x, l) : x in l}|; per-line walk with a hashed point set.
    std::uint64_t count_incidences() const;
    const std::vector<std::uint64_t>& per_line_counts() const;

private:
    Field field_;
    std::vector<std::uint64_t> points_;
    std::vector<Line> lines_;
    mutable std::vector<std::uint64_t> perLine_;
    mutable std::optional<std::uint64_t> total_;
};

// Independent O(|P| |L|) double loop; oracle for count_incidences.
std::uint64_t count_incidences_naive(const PointLineConfig& cfg);

struct TrivialBoundReport {
    double bound;  // min(|P|^{1/2}|L| + |P|, |P||L|^{1/2} + |L|)
    bool holds;    // exact integer comparison of I against both forms
};
TrivialBoundReport trivial_bound(const PointLineConfig& cfg);

// ---- additive energy on the paraboloid -----------------------------------

// E is a set of surface ranks.  Lambda(E) = #{(a,b,c,d) in E^4 : a+b = c+d},
// sums taken in F^3.
std::uint64_t additive_quadruples(const Paraboloid& s, const std::vector<std::uint64_t>& ranks);
// Second route: O(|E|^3) loop resolving d = a + b - c by membership.
std::uint64_t additive_quadruples_cubic(const Paraboloid& s, const std::vector<std::uint64_t>& ranks);

struct L4IdentityReport {
    double analytic;  // q^3 Lambda / q^8
    double direct;    // ||(1_E dsigma)^||_4^4 by direct summation
    double rel_err;
    std::uint64_t lambda;
};
L4IdentityReport l4_identity_check(const Paraboloid& s, const std::vector<std::uint64_t>& ranks);

// ---- the quadruple -> incidence reduction ---------------------------------

struct GalileanReductionReport {
    std::uint64_t lhs;  // #{(a,d,c) in E x E x P : a - d = c - b}
    std::uint64_t rhs;  // #{(a',d') in E' x E' : a' - d' in P}, E' = g_{-nu}(E)
    bool equal;
};
GalileanReductionReport galilean_reduction_check(const Paraboloid& s,
                                                 const std::vector<std::uint64_t>& ranks,
                                                 std::uint64_t bRank);

// l(y) = {x : y.x = y.y} for y != 0.
Line line_map(const Field& f, felem y1, felem y2);

struct LineMapInjectivity {
    bool injective;  // over all y != 0; holds iff -1 is a non-square
    std::optional<std::pair<std::pair<felem, felem>, std::pair<felem, felem>>> witness;
};
LineMapInjectivity line_map_injectivity(const Field& f);

struct EnergyIncidenceReport {
    std::uint64_t shifted_count;   // #{(a',d') in (E'\0)^2 : a' - d' in P}
    std::uint64_t incidences;      // I(X_{E'}, L_{E'})
    bool counts_equal;             // the two above, exactly
    std::uint64_t x_size;          // |X_{E'}|
    std::uint64_t lambda;          // Lambda(E)
    bool chain_holds;              // Lambda(E) <= |E| (|E| + I)
    std::uint64_t b_rank;          // shift used
};
// Runs the reduction at a given b in P.  Requires -1 non-square (distinct
// lines); the error message carries a collision witness otherwise.
EnergyIncidenceReport incidence_from_energy(const Paraboloid& s,
                                            const std::vector<std::uint64_t>& ranks,
                                            std::uint64_t bRank);

struct WorstShift {
    std::uint64_t bestInE = 0, valueInE = 0;  // argmax/max over b in E
    std::uint64_t bestInP = 0, valueInP = 0;  // argmax/max over b in P
};
// The proof bounds the max over b in E by the max over all of P; both maxima
// are computed so reports can show the gap.
WorstShift worst_shift(const Paraboloid& s, const std::vector<std::uint64_t>& ranks);

}  // namespace ffr
