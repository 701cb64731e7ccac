#include "ffr/paraboloid.hpp"

#include <cmath>
#include <stdexcept>

#include "ffr/kernels.hpp"
#include "ffr/util.hpp"

namespace ffr {

Paraboloid::Paraboloid(Field f) : field_(std::move(f)), size_(field_.q() * field_.q()) {
    if (field_.q() > 256)
        throw std::invalid_argument("paraboloid: q > 256 is outside the enumeration design point");
}

SurfacePoint Paraboloid::point(std::uint64_t rank) const {
    const felem w1 = static_cast<felem>(rank % field_.q());
    const felem w2 = static_cast<felem>(rank / field_.q());
    const felem tau = field_.add(field_.mul(w1, w1), field_.mul(w2, w2));
    return {w1, w2, tau};
}

std::uint64_t Paraboloid::grid_index(std::uint64_t rank) const {
    const SurfacePoint pt = point(rank);
    const std::uint64_t q = field_.q();
    return pt.g1 + q * (pt.g2 + q * std::uint64_t(pt.tau));
}

bool Paraboloid::on_surface(felem x1, felem x2, felem x3) const {
    return field_.add(field_.mul(x1, x1), field_.mul(x2, x2)) == x3;
}

std::optional<std::uint64_t> Paraboloid::rank_of(felem x1, felem x2, felem x3) const {
    if (!on_surface(x1, x2, x3)) return std::nullopt;
    return x1 + field_.q() * std::uint64_t(x2);
}

SurfaceFn::SurfaceFn(Paraboloid s, std::vector<cplx> v) : surface(std::move(s)), values(std::move(v)) {
    if (values.size() != surface.surface_size())
        throw std::invalid_argument("surface_fn: values length != q^2");
}

SurfaceFn SurfaceFn::constant(const Paraboloid& s, cplx c) {
    return SurfaceFn(s, std::vector<cplx>(s.surface_size(), c));
}

SurfaceFn SurfaceFn::indicator(const Paraboloid& s, const std::vector<std::uint64_t>& ranks) {
    std::vector<cplx> v(s.surface_size(), 0.0);
    for (auto r : ranks) v.at(r) = 1.0;
    return SurfaceFn(s, std::move(v));
}

double surface_lp_norm(const SurfaceFn& g, double p) {
    const auto& v = g.values;
    if (std::isinf(p)) {
        double m = 0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    }
    if (p <= 0) throw std::invalid_argument("surface_lp_norm: exponent must be positive");
    double sum;
    if (p == 2.0)
        sum = kernels::abs2_sum(v.data(), v.size());
    else if (p == 4.0)
        sum = kernels::abs4_sum(v.data(), v.size());
    else
        sum = kernels::abs_pow_sum(v.data(), v.size(), p);
    return std::pow(sum / static_cast<double>(v.size()), 1.0 / p);
}

namespace {

// Surface coordinate arrays for the prime-field kernel path.
struct SurfaceCoords {
    std::vector<std::uint16_t> w1, w2, s;
};

SurfaceCoords surface_coords(const Paraboloid& sp) {
    const std::uint64_t n = sp.surface_size();
    SurfaceCoords c;
    c.w1.resize(n);
    c.w2.resize(n);
    c.s.resize(n);
    for (std::uint64_t r = 0; r < n; ++r) {
        const SurfacePoint pt = sp.point(r);
        c.w1[r] = static_cast<std::uint16_t>(pt.g1);
        c.w2[r] = static_cast<std::uint16_t>(pt.g2);
        c.s[r] = static_cast<std::uint16_t>(pt.tau);
    }
    return c;
}

}  // namespace

GridFn extension(const SurfaceFn& g, int threads) {
    const Paraboloid& sp = g.surface;
    const Field& f = sp.field();
    const std::uint64_t q = f.q();
    const std::uint64_t n2 = sp.surface_size();
    const double scale = 1.0 / static_cast<double>(n2);
    GridFn out(f, 3, Measure::counting);
    cplx* ov = out.values().data();

    if (f.k() == 1) {
        // e(x.xi) indices stay inside [0, p) integer arithmetic.
        const SurfaceCoords sc = surface_coords(sp);
        const cplx* table = f.unity_table();
        const std::uint32_t p = f.p();
        const cplx* w = g.values.data();
        bool unitWeights = true;
        for (const auto& z : g.values)
            if (z != cplx(1.0)) {
                unitWeights = false;
                break;
            }
        parallel_for(q * q * q, threads, [&](std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t x = lo; x < hi; ++x) {
                const std::uint32_t x1 = static_cast<std::uint32_t>(x % q);
                const std::uint32_t x2 = static_cast<std::uint32_t>((x / q) % q);
                const std::uint32_t x3 = static_cast<std::uint32_t>(x / (q * q));
                ov[x] = scale * kernels::phase_mac3(p, x1, x2, x3, sc.w1.data(), sc.w2.data(),
                                                    sc.s.data(), unitWeights ? nullptr : w, table, n2);
            }
        });
        return out;
    }

    // Extension fields: generic character path.
    parallel_for(q * q * q, threads, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t x = lo; x < hi; ++x) {
            const felem x1 = static_cast<felem>(x % q);
            const felem x2 = static_cast<felem>((x / q) % q);
            const felem x3 = static_cast<felem>(x / (q * q));
            cplx acc = 0;
            for (std::uint64_t r = 0; r < n2; ++r) {
                if (g.values[r] == cplx(0)) continue;
                const SurfacePoint pt = sp.point(r);
                felem dot = f.add(f.add(f.mul(x1, pt.g1), f.mul(x2, pt.g2)), f.mul(x3, pt.tau));
                acc += g.values[r] * f.character(dot);
            }
            ov[x] = scale * acc;
        }
    });
    return out;
}

SurfaceFn fourier_restrict(const Paraboloid& s, const GridFn& f) {
    if (f.n() != 3 || f.measure() != Measure::counting)
        throw std::invalid_argument("fourier_restrict: expects counting measure on F^3");
    const GridFn fh = fourier_transform(f);
    std::vector<cplx> v(s.surface_size());
    for (std::uint64_t r = 0; r < v.size(); ++r) v[r] = fh.at(s.grid_index(r));
    return SurfaceFn(s, std::move(v));
}

FdimReport fourier_dimension_report(const Paraboloid& s, int threads) {
    const GridFn e = extension(SurfaceFn::constant(s), threads);
    const std::uint64_t q = s.field().q();
    FdimReport rep{0.0, 0, 0.0};
    for (std::uint64_t x = 1; x < e.size(); ++x) {
        const double a = std::abs(e.at(x));
        if (a > rep.max_abs) {
            rep.max_abs = a;
            rep.argmax = x;
        }
        if (x < q * q) rep.plane_max = std::max(rep.plane_max, a);
    }
    return rep;
}

cplx gauss_sum(const Field& f, felem a) {
    cplx acc = 0;
    for (felem x = 0; x < f.q(); ++x) acc += f.character(f.mul(a, f.mul(x, x)));
    return acc;
}

GridFn bochner_riesz_kernel(const Paraboloid& s, int threads) {
    GridFn k = extension(SurfaceFn::constant(s), threads);
    k.set(0, k.at(0) - 1.0);
    return k;
}

KernelCheck kernel_formula_check(const Paraboloid& s) {
    const Field& f = s.field();
    const std::uint64_t q = f.q();
    const GridFn k = bochner_riesz_kernel(s);

    std::vector<cplx> gaussSq(q);
    for (felem a = 0; a < q; ++a) {
        const cplx g = gauss_sum(f, a);
        gaussSq[a] = g * g;
    }
    const double scale = 1.0 / static_cast<double>(q * q);
    const felem four = f.from_int(4);

    KernelCheck out{0.0, 0.0};
    for (std::uint64_t x = 0; x < k.size(); ++x) {
        const felem x1 = static_cast<felem>(x % q);
        const felem x2 = static_cast<felem>((x / q) % q);
        const felem x3 = static_cast<felem>(x / (q * q));
        if (x3 == 0) {
            out.plane_max = std::max(out.plane_max, std::abs(k.at(x)));
            continue;
        }
        const felem xx = f.add(f.mul(x1, x1), f.mul(x2, x2));
        const felem phase = f.mul(xx, f.inv(f.mul(four, x3)));
        const cplx closed = scale * gaussSq[x3] * f.character_neg(phase);
        out.max_dev = std::max(out.max_dev, std::abs(closed - k.at(x)));
    }
    return out;
}

SurfacePoint galilean(const Paraboloid& s, felem d1, felem d2, const SurfacePoint& pt) {
    const Field& f = s.field();
    if (!s.on_surface(pt.g1, pt.g2, pt.tau))
        throw std::invalid_argument("galilean: input point is off the paraboloid");
    const felem two = f.from_int(2);
    const felem dot = f.add(f.mul(pt.g1, d1), f.mul(pt.g2, d2));
    const felem dd = f.add(f.mul(d1, d1), f.mul(d2, d2));
    SurfacePoint img;
    img.g1 = f.add(pt.g1, d1);
    img.g2 = f.add(pt.g2, d2);
    img.tau = f.add(pt.tau, f.add(f.mul(two, dot), dd));
    return img;
}

PseudoConformalReport pseudo_conformal_identity(const Paraboloid& s, const SliceFn& h0) {
    const Field& f = s.field();
    const std::uint64_t q = f.q();
    if (h0.values.size() != q * q || !(h0.field == f))
        throw std::invalid_argument("pseudo_conformal: slice must live on F^2 over the same field");
    if (h0.field.p() == 2) throw std::invalid_argument("pseudo_conformal: even characteristic");

    // Left side: || h0 * K ||_{L^4} over x3 != 0, by direct convolution.
    // The slice height translates away, so the slice is treated at z = 0.
    const GridFn k = bochner_riesz_kernel(s);
    double lhsSum = 0.0;
    for (std::uint64_t x = q * q; x < k.size(); ++x) {  // skip the x3 = 0 plane
        const felem x1 = static_cast<felem>(x % q);
        const felem x2 = static_cast<felem>((x / q) % q);
        const felem x3 = static_cast<felem>(x / (q * q));
        cplx acc = 0;
        for (std::uint64_t y = 0; y < q * q; ++y) {
            if (h0.values[y] == cplx(0)) continue;
            const felem y1 = static_cast<felem>(y % q);
            const felem y2 = static_cast<felem>(y / q);
            const std::uint64_t kx = f.sub(x1, y1) + q * (f.sub(x2, y2) + q * std::uint64_t(x3));
            acc += h0.values[y] * k.at(kx);
        }
        const double m2 = std::norm(acc);
        lhsSum += m2 * m2;
    }
    const double lhs = std::pow(lhsSum, 0.25);

    // Right side: carry h0 to the surface along w -> (w, w.w) and take the
    // extension; sum |.|^4 over (u, v) with v != 0.
    const SurfaceFn g(s, h0.values);
    const GridFn ext = extension(g);
    double rhsSum = 0.0;
    for (std::uint64_t x = q * q; x < ext.size(); ++x) {
        const double m2 = std::norm(ext.at(x));
        rhsSum += m2 * m2;
    }
    const double rhs = static_cast<double>(q) * std::pow(rhsSum, 0.25);

    const double den = std::max(lhs, rhs);
    return {lhs, rhs, den == 0 ? 0.0 : std::abs(lhs - rhs) / den};
}

}  // namespace ffr
