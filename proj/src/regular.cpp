#include "ffr/regular.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace ffr {
namespace {

// Dyadic bucket of v in (0, 1]: the i >= 0 with 2^{-i-1} < v <= 2^{-i},
// computed exactly from the binary exponent.
int dyadic_bucket(double v) {
    int e;
    const double m = std::frexp(v, &e);  // v = m * 2^e, m in [0.5, 1)
    return m == 0.5 ? -(e - 1) : -e;
}

}  // namespace

LevelDecomposition dyadic_levels(const GridFn& f) {
    LevelDecomposition out;
    double maxAbs = 0;
    for (const auto& z : f.values()) maxAbs = std::max(maxAbs, std::abs(z));
    if (maxAbs == 0) return out;

    // scale ||f||_inf into (1/2, 1] with an exact power of two
    {
        int e;
        const double m = std::frexp(maxAbs, &e);
        out.norm_scale = std::ldexp(1.0, m == 0.5 ? -(e - 1) : -e);
    }
    out.tail_threshold = std::pow(double(f.field().q()), -10.0) * maxAbs;

    std::map<int, LevelPiece> buckets;
    for (std::uint64_t i = 0; i < f.size(); ++i) {
        const cplx z = f.at(i);
        const double a = std::abs(z);
        if (a == 0) continue;
        if (a <= out.tail_threshold) {
            out.tail_support.push_back(i);
            out.tail_values.push_back(z);
            continue;
        }
        const int bucket = dyadic_bucket(a * out.norm_scale);
        LevelPiece& piece = buckets[bucket];
        piece.level = bucket;
        piece.support.push_back(i);
        // scaled value in (1/2, 1]; the inverse scale restores it exactly
        piece.values.push_back(z * out.norm_scale * std::ldexp(1.0, bucket));
    }
    for (auto& [bucket, piece] : buckets) {
        piece.scale = std::ldexp(1.0, -bucket) / out.norm_scale;
        out.pieces.push_back(std::move(piece));
    }
    return out;
}

std::vector<RegularPiece> slice_regular_decompose(const Field& f, const LevelPiece& piece) {
    const std::uint64_t q = f.q();
    const std::uint64_t planeSize = q * q;

    // slice sizes by height
    std::map<felem, std::uint64_t> sliceSize;
    for (auto idx : piece.support) sliceSize[static_cast<felem>(idx / planeSize)] += 1;

    // dyadic class c: 2^c <= |A_z| < 2^{c+1}
    auto classOf = [](std::uint64_t n) {
        int c = 0;
        while ((2ULL << c) <= n) ++c;
        return c;
    };
    std::map<felem, int> zClass;
    std::map<int, std::vector<std::size_t>> members;
    for (const auto& [z, n] : sliceSize) zClass[z] = classOf(n);
    for (std::size_t i = 0; i < piece.support.size(); ++i)
        members[zClass[static_cast<felem>(piece.support[i] / planeSize)]].push_back(i);

    std::vector<RegularPiece> out;
    for (const auto& [c, idxs] : members) {
        RegularPiece rp{f, {}, {}, 0, 0, 0};
        for (auto i : idxs) {
            rp.support.push_back(piece.support[i]);
            rp.values.push_back(piece.values[i]);
        }
        rp.support_size = rp.support.size();
        std::uint64_t minSlice = 0, count = 0;
        for (const auto& [z, n] : sliceSize) {
            if (zClass[z] != c) continue;
            ++count;
            if (minSlice == 0 || n < minSlice) minSlice = n;
        }
        rp.slice_count = count;
        rp.slice_floor = minSlice;
        out.push_back(std::move(rp));
    }
    return out;
}

RegularityStats regularity_stats(const RegularPiece& piece) {
    const Field& f = piece.field;
    const std::uint64_t q = f.q();
    const std::uint64_t planeSize = q * q;
    if (piece.support.size() != piece.values.size())
        throw std::invalid_argument("regular: support/values length mismatch");
    if (piece.support.empty()) throw std::invalid_argument("regular: empty piece");

    std::map<felem, std::uint64_t> sliceSize;
    for (std::size_t i = 0; i < piece.support.size(); ++i) {
        const double a = std::abs(piece.values[i]);
        if (a < 0.5 - 1e-12 || a > 1.0 + 1e-12)
            throw std::invalid_argument("regular: |value| outside [1/2, 1] at index " +
                                        std::to_string(piece.support[i]));
        sliceSize[static_cast<felem>(piece.support[i] / planeSize)] += 1;
    }

    std::uint64_t minSlice = 0, maxSlice = 0;
    felem failing = 0;
    for (const auto& [z, n] : sliceSize) {
        if (minSlice == 0 || n < minSlice) minSlice = n;
        if (n > maxSlice) {
            maxSlice = n;
            failing = z;
        }
    }
    if (maxSlice > 2 * minSlice)
        throw std::invalid_argument("regular: slice at z=" + std::to_string(failing) + " has size " +
                                    std::to_string(maxSlice) + " > 2 * " + std::to_string(minSlice));
    if (piece.support_size != piece.support.size())
        throw std::invalid_argument("regular: stored support size is stale");
    if (piece.slice_count != sliceSize.size())
        throw std::invalid_argument("regular: stored slice count is stale");
    if (piece.slice_floor != minSlice)
        throw std::invalid_argument("regular: stored slice floor is stale");
    // gamma = s + t in integer form: floor * count <= support <= 2 floor * count
    if (piece.support_size < piece.slice_floor * piece.slice_count ||
        piece.support_size > 2 * piece.slice_floor * piece.slice_count)
        throw std::invalid_argument("regular: support size incompatible with slice profile");

    const double lq = std::log(double(q));
    RegularityStats st;
    st.gamma = std::log(double(piece.support_size)) / lq;
    st.s = std::log(double(piece.slice_floor)) / lq;
    st.t = std::log(double(piece.slice_count)) / lq;
    st.ratio = double(maxSlice) / double(minSlice);
    st.min_slice = minSlice;
    st.max_slice = maxSlice;
    return st;
}

GridFn piece_to_grid(const RegularPiece& piece) {
    GridFn g(piece.field, 3, Measure::counting);
    for (std::size_t i = 0; i < piece.support.size(); ++i) g.set(piece.support[i], piece.values[i]);
    return g;
}

}  // namespace ffr
