#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "ffr/field.hpp"
#include "ffr/grid.hpp"

namespace ffr {

// Point on the surface: (g1, g2, tau) with tau = g1^2 + g2^2.
struct SurfacePoint {
    felem g1, g2, tau;
    bool operator==(const SurfacePoint&) const = default;
};

// The paraboloid {(w, w.w) : w in F^2} inside F^3.  Surface points are
// ranked r = w1 + w2*q, so a SurfaceFn aligns with functions on F^2.
class Paraboloid {
public:
    explicit Paraboloid(Field f);

    const Field& field() const { return field_; }
    std::uint64_t surface_size() const { return size_; }  // q^2

    SurfacePoint point(std::uint64_t rank) const;
    std::uint64_t grid_index(std::uint64_t rank) const;  // F^3 index of point(rank)

    bool on_surface(felem x1, felem x2, felem x3) const;
    std::optional<std::uint64_t> rank_of(felem x1, felem x2, felem x3) const;

private:
    Field field_;
    std::uint64_t size_;
};

// g d(sigma) data: one value per surface rank.
struct SurfaceFn {
    Paraboloid surface;
    std::vector<cplx> values;

    SurfaceFn(Paraboloid s, std::vector<cplx> v);
    static SurfaceFn constant(const Paraboloid& s, cplx c = 1.0);
    static SurfaceFn indicator(const Paraboloid& s, const std::vector<std::uint64_t>& ranks);
};

// ||g||_{L^p(S, dsigma)} with dsigma giving mass |S|^{-1} per point.
double surface_lp_norm(const SurfaceFn& g, double p);

// (g dsigma)^(x) = |S|^{-1} sum_{xi in S} g(xi) e(x.xi), all q^3 points.
GridFn extension(const SurfaceFn& g, int threads = 1);

// fhat restricted to the surface: fhat(xi) for xi in S, f counting measure.
SurfaceFn fourier_restrict(const Paraboloid& s, const GridFn& f);

struct FdimReport {
    double max_abs;           // max over x != 0 of |(dsigma)^(x)|
    std::uint64_t argmax;     // attaining grid index
    double plane_max;         // max over {x3 = 0, xbar != 0}; orthogonality gives 0
};
FdimReport fourier_dimension_report(const Paraboloid& s, int threads = 1);

// S(a) = sum_xi e(a xi^2); S(0) = q and |S(a)|^2 = q for a != 0.
cplx gauss_sum(const Field& f, felem a);

// K = (dsigma)^ - delta_0.
GridFn bochner_riesz_kernel(const Paraboloid& s, int threads = 1);

struct KernelCheck {
    double max_dev;    // closed form vs definition over x3 != 0
    double plane_max;  // |K| over x3 = 0 (exactly 0)
};
// Closed form q^{-2} S(x3)^2 e(-xbar.xbar / 4x3), division taken in F.
KernelCheck kernel_formula_check(const Paraboloid& s);

// g_delta(gamma, tau) = (gamma + delta, tau + 2 gamma.delta + delta.delta);
// a bijection of the surface for each delta.  Throws if the input is off it.
SurfacePoint galilean(const Paraboloid& s, felem d1, felem d2, const SurfacePoint& pt);

// Function on one hyperplane {x3 = z}, stored on F^2 (index w1 + w2*q).
struct SliceFn {
    Field field;
    felem z = 0;
    std::vector<cplx> values;
};

struct PseudoConformalReport {
    double lhs;      // ||h0 * K||_{L^4, x3 != 0}
    double rhs;      // q * ( sum_{u, v != 0} |(h0 dsigma)^(u,v)|^4 )^{1/4}
    double rel_err;
};
// The change of variables t = 1/(4 x3), z = -xbar/(2 x3) turns the slice
// convolution with K into the extension operator of h0 carried to the
// surface; both sides are evaluated by direct summation.
PseudoConformalReport pseudo_conformal_identity(const Paraboloid& s, const SliceFn& h0);

}  // namespace ffr
