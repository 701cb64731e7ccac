#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ffr/generate.hpp"
#include "ffr/grid.hpp"
#include "ffr/rng.hpp"

using namespace ffr;

namespace {

GridFn random_fn(const Field& f, int n, Rng& rng) {
    GridFn g(f, n, Measure::counting);
    for (auto& z : g.values()) z = {rng.real(-1, 1), rng.real(-1, 1)};
    return g;
}

double max_dev(const GridFn& a, const GridFn& b) {
    double m = 0;
    for (std::uint64_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.at(i) - b.at(i)));
    return m;
}

}  // namespace

TEST_CASE("delta transforms to the constant and back") {
    const Field f = Field::make(5);
    GridFn delta(f, 2, Measure::counting);
    delta.set(0, 1.0);
    const GridFn hat = fourier_transform(delta);
    for (std::uint64_t i = 0; i < hat.size(); ++i) CHECK(std::abs(hat.at(i) - 1.0) < 1e-12);

    GridFn ones(f, 2, Measure::counting);
    for (auto& z : ones.values()) z = 1.0;
    const GridFn onesHat = fourier_transform(ones);
    CHECK(std::abs(onesHat.at(0) - 25.0) < 1e-9);
    for (std::uint64_t i = 1; i < onesHat.size(); ++i) CHECK(std::abs(onesHat.at(i)) < 1e-9);
}

TEST_CASE("tensorized path agrees with the direct-summation oracle") {
    Rng rng(20240521);
    for (const Field& f : {Field::make(5), Field::make(3, 2)}) {
        for (int n : {1, 2}) {
            const GridFn g = random_fn(f, n, rng);
            CHECK(max_dev(fourier_transform(g), fourier_transform_direct(g)) < 1e-12);
        }
    }
    const Field f3 = Field::make(3);
    const GridFn g3 = random_fn(f3, 3, rng);
    CHECK(max_dev(fourier_transform(g3), fourier_transform_direct(g3)) < 1e-12);
}

TEST_CASE("double transform with reflection recovers q^n f") {
    const Field f = Field::make(5);
    Rng rng(7);
    const GridFn g = random_fn(f, 2, rng);
    GridFn once(f, 2, Measure::counting, fourier_transform(g).values());
    const GridFn twice = fourier_transform(once);
    // (f^)^(x) = q^n f(-x)
    for (std::uint64_t i = 0; i < g.size(); ++i) {
        auto c = g.coords_of(i);
        for (auto& v : c) v = f.neg(v);
        CHECK(std::abs(twice.at(g.index_of(c)) - 25.0 * g.at(i)) < 1e-9);
    }
}

TEST_CASE("inverse transform round trips") {
    Rng rng(99);
    const Field f = Field::make(7);
    const GridFn g = random_fn(f, 2, rng);
    CHECK(max_dev(inverse_transform(fourier_transform(g)), g) < 1e-12);
    CHECK_THROWS_AS(fourier_transform(fourier_transform(g)), std::invalid_argument);
    CHECK_THROWS_AS(inverse_transform(g), std::invalid_argument);
}

TEST_CASE("norms under both measures") {
    const Field f3 = Field::make(3);
    GridFn delta(f3, 3, Measure::counting);
    delta.set(0, 1.0);
    for (double p : {1.0, 2.0, 4.0, 8.0 / 5.0}) CHECK(lp_norm(delta, p) == doctest::Approx(1.0));

    GridFn ones(f3, 3, Measure::counting);
    for (auto& z : ones.values()) z = 1.0;
    CHECK(lp_norm(ones, 2.0) == doctest::Approx(std::sqrt(27.0)));
    GridFn onesN(f3, 3, Measure::normalized, ones.values());
    CHECK(lp_norm(onesN, 2.0) == doctest::Approx(1.0));

    const double inf = std::numeric_limits<double>::infinity();
    CHECK(lp_norm(ones, inf) == doctest::Approx(1.0));
    CHECK_THROWS_AS(lp_norm(ones, 0.0), std::invalid_argument);
}

TEST_CASE("norm monotone in p when bounded by one") {
    Rng rng(5);
    const Field f = Field::make(5);
    GridFn g(f, 2, Measure::counting);
    for (auto& z : g.values())
        if (rng.coin()) z = {rng.real(-0.7, 0.7), rng.real(-0.7, 0.7)};
    double prev = lp_norm(g, 1.0);
    for (double p : {1.5, 2.0, 3.0, 4.0, 8.0}) {
        const double cur = lp_norm(g, p);
        CHECK(cur <= prev * (1 + 1e-12));
        prev = cur;
    }
}

TEST_CASE("plancherel identity") {
    const Field f7 = Field::make(7);
    GridFn delta(f7, 1, Measure::counting);
    delta.set(0, 1.0);
    auto rep = plancherel_check(delta);
    CHECK(rep.lhs == doctest::Approx(1.0));
    CHECK(rep.rhs == doctest::Approx(1.0));

    GridFn ones(f7, 1, Measure::counting);
    for (auto& z : ones.values()) z = 1.0;
    rep = plancherel_check(ones);
    CHECK(rep.lhs == doctest::Approx(std::sqrt(7.0)));
    CHECK(rep.rhs == doctest::Approx(std::sqrt(7.0)));

    const Field f5 = Field::make(5);
    Rng rng(1234);
    for (int t = 0; t < 100; ++t) {
        const GridFn g = random_fn(f5, 3, rng);
        CHECK(plancherel_check(g).rel_err < 1e-9);
    }
}

TEST_CASE("parseval pairing matches across sides") {
    const Field f = Field::make(5);
    Rng rng(42);
    const GridFn a = random_fn(f, 2, rng);
    const GridFn b = random_fn(f, 2, rng);
    const cplx lhs = pairing(a, b);
    const cplx rhs = pairing(fourier_transform(a), fourier_transform(b));
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("translation becomes modulation") {
    const Field f = Field::make(3);
    Rng rng(8);
    const GridFn g = random_fn(f, 2, rng);
    const GridFn gh = fourier_transform(g);
    for (std::uint64_t aIdx = 0; aIdx < g.size(); ++aIdx) {
        const GridFn sh = fourier_transform(translate(g, aIdx));
        const auto a = g.coords_of(aIdx);
        for (std::uint64_t xi = 0; xi < g.size(); ++xi) {
            const auto xiC = g.coords_of(xi);
            felem dot = 0;
            for (int i = 0; i < 2; ++i) dot = f.add(dot, f.mul(a[i], xiC[i]));
            CHECK(std::abs(sh.at(xi) - f.character_neg(dot) * gh.at(xi)) < 1e-10);
        }
    }
}

TEST_CASE("convolution via transforms matches the definition") {
    const Field f = Field::make(5);
    Rng rng(3);
    const GridFn a = random_fn(f, 2, rng);
    const GridFn b = random_fn(f, 2, rng);
    const GridFn c = convolve(a, b);
    for (std::uint64_t x = 0; x < a.size(); ++x) {
        const auto xc = a.coords_of(x);
        cplx want = 0;
        for (std::uint64_t y = 0; y < a.size(); ++y) {
            const auto yc = a.coords_of(y);
            std::vector<felem> d(2);
            for (int i = 0; i < 2; ++i) d[i] = f.sub(xc[i], yc[i]);
            want += a.at(y) * b.at(a.index_of(d));
        }
        CHECK(std::abs(c.at(x) - want) < 1e-9);
    }

    GridFn delta(f, 2, Measure::counting);
    delta.set(7, 1.0);
    CHECK(max_dev(convolve(a, delta), translate(a, 7)) < 1e-12);
}

TEST_CASE("grid function equality includes the measure tag") {
    const Field f = Field::make(3);
    GridFn a(f, 1, Measure::counting);
    GridFn b(f, 1, Measure::normalized);
    CHECK_FALSE(a == b);
    GridFn c(f, 1, Measure::counting);
    CHECK(a == c);
}
