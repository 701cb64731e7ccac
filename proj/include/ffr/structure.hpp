#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffr/field.hpp"
#include "ffr/incidence.hpp"
#include "ffr/rng.hpp"

namespace ffr {

// Invertible 3x3 matrix over F acting on homogeneous coordinates (row-major).
struct ProjTransform {
    std::array<felem, 9> m;
};

ProjTransform proj_identity();
ProjTransform proj_multiply(const Field& f, const ProjTransform& a, const ProjTransform& b);
felem proj_det(const Field& f, const ProjTransform& t);
ProjTransform proj_inverse(const Field& f, const ProjTransform& t);  // throws if singular

struct ApplyResult {
    std::vector<std::uint64_t> points;  // packed images, one entry per surviving input point
    std::uint64_t lost_at_infinity;
};
// Embed (x,y) -> (x,y,1), apply t, drop images with last coordinate 0,
// de-homogenize.  Throws on a singular matrix.
ApplyResult apply_projective(const Field& f, const ProjTransform& t,
                             const std::vector<std::uint64_t>& packedPoints);

struct JointTransformResult {
    std::vector<std::uint64_t> points;
    std::vector<Line> lines;
    std::uint64_t lost_points;
    std::uint64_t lost_lines;
    std::uint64_t lost_incidences;  // incidences involving a lost point
};
// Lines transform by the inverse-transpose action; incidences are preserved
// for surviving point-line pairs.
JointTransformResult apply_projective_joint(const PointLineConfig& cfg, const ProjTransform& t);

struct PruneReport {
    std::vector<std::uint64_t> points;  // P1
    std::vector<Line> lines;            // L2
    double line_lo, line_hi;            // [K^-2 sqrt(N), K^2 sqrt(N)]
    double point_lo, point_hi;          // [K^-C8 sqrt(N), K^C8 sqrt(N)]
    double c8;
    std::uint64_t retained_incidences;
};
PruneReport prune(const PointLineConfig& cfg, double lossK, double c8 = 2.0);

// U(p): every point of the config sharing at least one line with p.
std::vector<std::uint64_t> bush(const PointLineConfig& cfg, std::uint64_t packedPoint);

struct BestPair {
    std::uint64_t p0 = 0, q0 = 0;
    std::uint64_t overlap = 0;  // |U(p0) cap U(q0)|
    bool exhaustive = false;
    bool found = false;
};
// Maximizes |U(p) cap U(q)| over distinct pairs; exhaustive when the pair
// count fits the budget, otherwise a seeded sample.
BestPair best_pair(const PointLineConfig& cfg, std::uint64_t budget, std::uint64_t seed);

// T with T(p0) ~ (1,0,0) and T(q0) ~ (0,1,0); lines through p0 become
// horizontal and lines through q0 vertical.  The frame is completed with a
// third configuration point when one is supplied and usable.
ProjTransform normalize_pair(const Field& f, std::uint64_t p0, std::uint64_t q0,
                             const std::vector<std::uint64_t>& frameHints = {});

struct GridWitness {
    ProjTransform transform;
    std::vector<felem> A, B;                 // coordinate shadows of the image
    std::vector<std::uint64_t> p_prime;      // original-coordinate points (the bush core W)
    std::vector<Line> l_prime;               // retained lines, original coordinates
    std::uint64_t lost_at_infinity = 0;
    std::uint64_t image_in_grid = 0;         // |T(P') cap A x B|
    std::uint64_t retained_incidences = 0;   // I(T(P') images, T(L'))
    std::string flag;                        // "", "degenerate", "low-incidence"
};
GridWitness extract_grid(const PointLineConfig& cfg, double lossK, std::uint64_t budget,
                         std::uint64_t seed);

// #{(y, x0, x1) in B x A x A : (1-y) x0 + y x1 in A, y != 0, 1}
std::uint64_t collinear_energy(const Field& f, const std::vector<felem>& A,
                               const std::vector<felem>& B);

struct GrowthStats {
    std::uint64_t sum_size, diff_size, prod_size;
    double sum_ratio, diff_ratio, prod_ratio;  // vs |A|
};
GrowthStats growth_stats(const Field& f, const std::vector<felem>& A);

struct BsgResult {
    std::vector<felem> a_prime, b_prime;
    std::uint64_t diff_size;       // |A' - B'|
    double ratio_vs_bound;         // diff_size / (K^4 |A|)
    std::uint64_t popular_edges;   // edges kept by the popular-sum filter
};
// Constructive refinement: popular-sum edge filter, then degree/path scoring.
// Guarantees |A'| >= |A|/K and |B'| >= |B|/K; the difference set size is
// measured, not asserted.
BsgResult bsg_refine(const Field& f, const std::vector<felem>& A, const std::vector<felem>& B,
                     const std::vector<std::pair<felem, felem>>& G, double lossK);

struct SubfieldWitness {
    std::uint32_t subfield_degree;
    std::uint64_t subfield_order;
    felem scale;  // x != 0
    felem shift;  // tau
    std::vector<felem> exceptional;  // X = A \ (x G + tau)
    std::uint64_t covered;
};
struct SubfieldDetectParams {
    double lossK = 1.0;
    double capC = 4.0;        // subfield size cap K^C |A|
    std::size_t topDiffs = 20;
    std::size_t anchors = 20;
    double minCoverage = 0.5;
};
// Searches affine subfield cosets x*G + tau covering A.  Scale candidates
// come from popular differences of A (and their quotients); shift candidates
// from anchor elements of A.  Minimizes |X|, ties broken toward smaller G.
std::optional<SubfieldWitness> subfield_detect(const Field& f, const std::vector<felem>& A,
                                               const SubfieldDetectParams& params = {});

struct PipelineReport {
    bool hypothesis_met = false;   // I >= K^{-1} N^{3/2}
    std::uint64_t n = 0;
    std::uint64_t incidences = 0;
    double threshold = 0.0;
    GridWitness grid;
    std::uint64_t energy = 0;      // collinear energy of (A, B)
    std::optional<SubfieldWitness> witness_a, witness_b;
};
PipelineReport incidence_structure_pipeline(const PointLineConfig& cfg, double lossK,
                                            std::uint64_t budget, std::uint64_t seed,
                                            const SubfieldDetectParams& sf = {});

}  // namespace ffr
