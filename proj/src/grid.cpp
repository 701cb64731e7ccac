#include "ffr/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ffr/kernels.hpp"

namespace ffr {
namespace {

std::uint64_t grid_size(const Field& f, int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("grid: dimension must be 1..3");
    std::uint64_t s = 1;
    for (int i = 0; i < n; ++i) {
        s *= f.q();
        if (s > (1ULL << 24)) throw std::invalid_argument("grid: q^n too large to enumerate");
    }
    return s;
}

}  // namespace

GridFn::GridFn(Field f, int n, Measure m)
    : field_(std::move(f)), n_(n), measure_(m), values_(grid_size(field_, n)) {}

GridFn::GridFn(Field f, int n, Measure m, std::vector<cplx> values)
    : field_(std::move(f)), n_(n), measure_(m), values_(std::move(values)) {
    if (values_.size() != grid_size(field_, n)) throw std::invalid_argument("grid: values length != q^n");
}

std::uint64_t GridFn::index_of(const std::vector<felem>& coords) const {
    std::uint64_t idx = 0;
    for (std::size_t i = coords.size(); i-- > 0;) idx = idx * field_.q() + coords[i];
    return idx;
}

std::vector<felem> GridFn::coords_of(std::uint64_t idx) const {
    std::vector<felem> c(n_);
    for (int i = 0; i < n_; ++i) {
        c[i] = static_cast<felem>(idx % field_.q());
        idx /= field_.q();
    }
    return c;
}

bool GridFn::operator==(const GridFn& other) const {
    return field_ == other.field_ && n_ == other.n_ && measure_ == other.measure_ &&
           values_ == other.values_;
}

namespace {

// Apply the 1-D transform W[j][a] = e(-j*a) along every axis in turn.  The
// q x q character matrix is precomputed when it fits comfortably in memory.
void tensor_transform(const Field& f, int n, std::vector<cplx>& v, bool conjugate) {
    const std::uint64_t q = f.q();
    std::vector<cplx> w;
    if (q <= 1024) {
        w.resize(q * q);
        for (felem j = 0; j < q; ++j)
            for (felem a = 0; a < q; ++a) {
                const cplx c = f.character_neg(f.mul(j, a));
                w[j * q + a] = conjugate ? std::conj(c) : c;
            }
    }
    std::vector<cplx> fiber(q), out(q);
    std::uint64_t stride = 1;
    for (int axis = 0; axis < n; ++axis) {
        const std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < v.size(); base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (std::uint64_t a = 0; a < q; ++a) fiber[a] = v[base + off + a * stride];
                for (std::uint64_t j = 0; j < q; ++j) {
                    cplx acc = 0;
                    if (!w.empty()) {
                        const cplx* row = w.data() + j * q;
                        for (std::uint64_t a = 0; a < q; ++a) acc += row[a] * fiber[a];
                    } else {
                        for (std::uint64_t a = 0; a < q; ++a) {
                            cplx c = f.character_neg(f.mul(static_cast<felem>(j), static_cast<felem>(a)));
                            acc += (conjugate ? std::conj(c) : c) * fiber[a];
                        }
                    }
                    out[j] = acc;
                }
                for (std::uint64_t j = 0; j < q; ++j) v[base + off + j * stride] = out[j];
            }
        }
        stride *= q;
    }
}

}  // namespace

GridFn fourier_transform(const GridFn& f) {
    if (f.measure() != Measure::counting)
        throw std::invalid_argument("fourier_transform: expects counting measure");
    std::vector<cplx> v = f.values();
    tensor_transform(f.field(), f.n(), v, /*conjugate=*/false);
    return GridFn(f.field(), f.n(), Measure::normalized, std::move(v));
}

GridFn fourier_transform_direct(const GridFn& f) {
    if (f.measure() != Measure::counting)
        throw std::invalid_argument("fourier_transform: expects counting measure");
    const Field& F = f.field();
    GridFn out(F, f.n(), Measure::normalized);
    const std::uint64_t N = f.size();
    for (std::uint64_t xi = 0; xi < N; ++xi) {
        const auto xiC = f.coords_of(xi);
        cplx acc = 0;
        for (std::uint64_t x = 0; x < N; ++x) {
            if (f.at(x) == cplx(0)) continue;
            const auto xC = f.coords_of(x);
            felem dot = 0;
            for (int i = 0; i < f.n(); ++i) dot = F.add(dot, F.mul(xC[i], xiC[i]));
            acc += f.at(x) * F.character_neg(dot);
        }
        out.set(xi, acc);
    }
    return out;
}

GridFn inverse_transform(const GridFn& F) {
    if (F.measure() != Measure::normalized)
        throw std::invalid_argument("inverse_transform: expects normalized measure");
    std::vector<cplx> v = F.values();
    tensor_transform(F.field(), F.n(), v, /*conjugate=*/true);
    const double scale = 1.0 / static_cast<double>(F.size());
    for (auto& z : v) z *= scale;
    return GridFn(F.field(), F.n(), Measure::counting, std::move(v));
}

double lp_norm(const GridFn& f, double p) {
    const auto& v = f.values();
    if (std::isinf(p)) {
        double m = 0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    }
    if (p <= 0) throw std::invalid_argument("lp_norm: exponent must be positive");
    double sum;
    if (p == 2.0)
        sum = kernels::abs2_sum(v.data(), v.size());
    else if (p == 4.0)
        sum = kernels::abs4_sum(v.data(), v.size());
    else
        sum = kernels::abs_pow_sum(v.data(), v.size(), p);
    if (f.measure() == Measure::normalized) sum /= static_cast<double>(f.size());
    return std::pow(sum, 1.0 / p);
}

cplx pairing(const GridFn& f, const GridFn& g) {
    if (f.size() != g.size() || f.measure() != g.measure())
        throw std::invalid_argument("pairing: mismatched functions");
    cplx s = kernels::dot_conj(f.values().data(), g.values().data(), f.size());
    if (f.measure() == Measure::normalized) s /= static_cast<double>(f.size());
    return s;
}

PlancherelReport plancherel_check(const GridFn& f) {
    const GridFn fh = fourier_transform(f);
    const double lhs = lp_norm(fh, 2.0);
    const double rhs = lp_norm(f, 2.0);
    const double den = std::max(lhs, rhs);
    return {lhs, rhs, den == 0 ? 0 : std::abs(lhs - rhs) / den};
}

GridFn convolve(const GridFn& f, const GridFn& g) {
    if (f.measure() != Measure::counting || g.measure() != Measure::counting)
        throw std::invalid_argument("convolve: expects counting measure");
    if (f.size() != g.size()) throw std::invalid_argument("convolve: size mismatch");
    GridFn fh = fourier_transform(f);
    const GridFn gh = fourier_transform(g);
    for (std::uint64_t i = 0; i < fh.size(); ++i) fh.set(i, fh.at(i) * gh.at(i));
    return inverse_transform(fh);
}

GridFn translate(const GridFn& f, std::uint64_t aIdx) {
    const Field& F = f.field();
    const auto a = f.coords_of(aIdx);
    GridFn out(F, f.n(), f.measure());
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        auto c = f.coords_of(x);
        for (int i = 0; i < f.n(); ++i) c[i] = F.sub(c[i], a[i]);
        out.set(x, f.at(f.index_of(c)));
    }
    return out;
}

}  // namespace ffr
