#include "ffr/generate.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ffr {

std::vector<std::uint64_t> gen_surface_subset(const Paraboloid& s, Rng& rng,
                                              std::uint64_t maxSize) {
    const std::uint64_t n2 = s.surface_size();
    const std::uint64_t cap = maxSize == 0 ? n2 : std::min(maxSize, n2);
    const std::uint64_t size = 1 + rng.below(cap);
    return rng.sample(n2, size);
}

PointLineConfig gen_random_config(const Field& f, std::uint64_t nPoints, std::uint64_t nLines,
                                  Rng& rng) {
    const std::uint64_t q = f.q();
    std::vector<std::uint64_t> pts = rng.sample(q * q, std::min(nPoints, q * q));
    const std::uint64_t lineCount = q * q + q;  // q^2 lines with a=1, q vertical-free b=1 forms
    std::vector<Line> lines;
    for (auto code : rng.sample(lineCount, std::min(nLines, lineCount))) {
        if (code < q * q) {
            lines.push_back({1, static_cast<felem>(code % q), static_cast<felem>(code / q)});
        } else {
            lines.push_back({0, 1, static_cast<felem>(code - q * q)});
        }
    }
    return PointLineConfig(f, std::move(pts), std::move(lines));
}

PlantedGrid gen_subfield_grid(const Field& f, std::uint64_t subfieldOrder, Rng& rng) {
    const auto subs = f.subfields();
    const Subfield* g = nullptr;
    for (const auto& sf : subs)
        if (sf.order == subfieldOrder) g = &sf;
    if (!g) throw std::invalid_argument("gen_subfield_grid: no subfield of that order");

    std::unordered_set<felem> inG(g->elements.begin(), g->elements.end());
    auto pickScale = [&] {
        // prefer a scale outside G so the coset is not the subfield itself
        for (int tries = 0; tries < 64; ++tries) {
            const felem x = static_cast<felem>(1 + rng.below(f.q() - 1));
            if (!inG.count(x) || subfieldOrder == f.q()) return x;
        }
        return felem(1);
    };
    PlantedGrid out{PointLineConfig(f, {}, {}), {}, {}, 0, 0, 0, 0, subfieldOrder};
    out.scaleA = pickScale();
    out.scaleB = pickScale();
    out.shiftA = static_cast<felem>(rng.below(f.q()));
    out.shiftB = static_cast<felem>(rng.below(f.q()));

    for (felem e : g->elements) {
        out.coordSetA.push_back(f.add(f.mul(out.scaleA, e), out.shiftA));
        out.coordSetB.push_back(f.add(f.mul(out.scaleB, e), out.shiftB));
    }
    std::sort(out.coordSetA.begin(), out.coordSetA.end());
    std::sort(out.coordSetB.begin(), out.coordSetB.end());

    std::vector<std::uint64_t> pts;
    for (felem a : out.coordSetA)
        for (felem b : out.coordSetB) pts.push_back(pack_point(f, a, b));

    // Lines v = M u + C meeting the coset grid in |G| points: in subfield
    // coordinates they have slope and intercept in G.
    std::vector<Line> lines;
    const felem xAinv = f.inv(out.scaleA);
    for (felem m : g->elements)
        for (felem c : g->elements) {
            const felem M = f.mul(f.mul(out.scaleB, m), xAinv);
            const felem C = f.add(f.sub(f.mul(out.scaleB, c), f.mul(M, out.shiftA)), out.shiftB);
            // v = M u + C  ->  -M u + v = C
            lines.push_back(make_line(f, f.neg(M), 1, C));
        }
    out.config = PointLineConfig(f, std::move(pts), std::move(lines));
    return out;
}

RegularPiece gen_regular_piece(const Field& f, std::uint64_t sliceCount, std::uint64_t sliceSize,
                               Rng& rng) {
    const std::uint64_t q = f.q();
    if (sliceCount > q || sliceSize > q * q)
        throw std::invalid_argument("gen_regular_piece: slice profile exceeds the field");
    RegularPiece rp{f, {}, {}, 0, 0, 0};
    const auto heights = rng.sample(q, sliceCount);
    for (auto z : heights) {
        for (auto planeIdx : rng.sample(q * q, sliceSize))
            rp.support.push_back(planeIdx + z * q * q);
    }
    std::sort(rp.support.begin(), rp.support.end());
    rp.values.reserve(rp.support.size());
    for (std::size_t i = 0; i < rp.support.size(); ++i) {
        const double mag = rng.real(0.5, 1.0);
        const double ang = rng.real(0.0, 6.283185307179586);
        rp.values.push_back(cplx(mag * std::cos(ang), mag * std::sin(ang)));
    }
    rp.support_size = rp.support.size();
    rp.slice_count = sliceCount;
    rp.slice_floor = sliceSize;
    return rp;
}

GridFn gen_grid_fn(const Field& f, std::uint64_t support, Rng& rng) {
    GridFn g(f, 3, Measure::counting);
    const std::uint64_t n = g.size();
    for (auto idx : rng.sample(n, std::min(support, n))) {
        // magnitudes spread across dyadic levels, occasionally tiny
        const int level = static_cast<int>(rng.below(14));
        const double mag = std::ldexp(rng.real(0.5, 1.0), -level);
        const double ang = rng.real(0.0, 6.283185307179586);
        g.set(idx, cplx(mag * std::cos(ang), mag * std::sin(ang)));
    }
    return g;
}

GridFn gen_bounded_fn(const Field& f, Rng& rng) {
    GridFn g(f, 3, Measure::counting);
    const std::uint64_t n = g.size();
    const std::uint64_t support = 1 + rng.below(n);
    for (auto idx : rng.sample(n, support)) {
        const double mag = rng.real(0.0, 1.0);
        const double ang = rng.real(0.0, 6.283185307179586);
        g.set(idx, cplx(mag * std::cos(ang), mag * std::sin(ang)));
    }
    return g;
}

GridFn gen_supported_fn(const Field& f, Rng& rng) {
    GridFn g(f, 3, Measure::counting);
    const std::uint64_t n = g.size();
    const std::uint64_t support = 1 + rng.below(n);
    for (auto idx : rng.sample(n, support)) {
        const double mag = rng.real(1.0, 2.0);
        const double ang = rng.real(0.0, 6.283185307179586);
        g.set(idx, cplx(mag * std::cos(ang), mag * std::sin(ang)));
    }
    return g;
}

GridFn gen_halfopen_fn(const Field& f, Rng& rng, std::uint64_t minSupport) {
    GridFn g(f, 3, Measure::counting);
    const std::uint64_t n = g.size();
    const std::uint64_t lo = std::min(minSupport, n);
    const std::uint64_t support = lo + rng.below(n - lo + 1);
    for (auto idx : rng.sample(n, std::max<std::uint64_t>(support, 1))) {
        const double mag = rng.real(0.5, 1.0);
        const double ang = rng.real(0.0, 6.283185307179586);
        g.set(idx, cplx(mag * std::cos(ang), mag * std::sin(ang)));
    }
    return g;
}

SliceFn gen_slice(const Field& f, Rng& rng) {
    SliceFn s{f, static_cast<felem>(rng.below(f.q())), {}};
    s.values.resize(f.q() * f.q(), 0.0);
    for (auto& v : s.values) {
        const auto roll = rng.below(3);
        v = roll == 0 ? cplx(0.0) : (roll == 1 ? cplx(1.0) : cplx(-1.0));
    }
    return s;
}

}  // namespace ffr
