#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "ffr/generate.hpp"
#include "ffr/incidence.hpp"
#include "ffr/rng.hpp"

using namespace ffr;

namespace {

// every point and every line of F^2
PointLineConfig full_plane(const Field& f) {
    const std::uint64_t q = f.q();
    std::vector<std::uint64_t> pts;
    for (std::uint64_t i = 0; i < q * q; ++i) pts.push_back(i);
    std::vector<Line> lines;
    for (felem b = 0; b < q; ++b)
        for (felem c = 0; c < q; ++c) lines.push_back({1, b, c});
    for (felem c = 0; c < q; ++c) lines.push_back({0, 1, c});
    return PointLineConfig(f, std::move(pts), std::move(lines));
}

// raw four-fold loop, the most literal quadruple counter
std::uint64_t lambda_quartic(const Paraboloid& s, const std::vector<std::uint64_t>& ranks) {
    const Field& f = s.field();
    const std::uint64_t q = f.q();
    auto idx = [&](std::uint64_t r) { return s.grid_index(r); };
    auto addc = [&](std::uint64_t u, std::uint64_t v) {
        const felem a1 = felem(u % q), a2 = felem((u / q) % q), a3 = felem(u / (q * q));
        const felem b1 = felem(v % q), b2 = felem((v / q) % q), b3 = felem(v / (q * q));
        return f.add(a1, b1) + q * (f.add(a2, b2) + q * std::uint64_t(f.add(a3, b3)));
    };
    std::uint64_t count = 0;
    for (auto a : ranks)
        for (auto b : ranks)
            for (auto c : ranks)
                for (auto d : ranks)
                    if (addc(idx(a), idx(b)) == addc(idx(c), idx(d))) ++count;
    return count;
}

}  // namespace

TEST_CASE("line normalization and membership") {
    const Field f = Field::make(7);
    CHECK(make_line(f, 2, 4, 6) == Line{1, 2, 3});
    CHECK(make_line(f, 0, 3, 6) == Line{0, 1, 2});
    CHECK_THROWS_AS(make_line(f, 0, 0, 1), std::invalid_argument);
    const Line l = make_line(f, 1, 2, 5);
    CHECK(on_line(f, l, 1, 2));  // 1 + 4 = 5
    CHECK_FALSE(on_line(f, l, 1, 1));

    // chart x = c y + d converts into the same canonical triples
    for (felem c = 0; c < 7; ++c)
        for (felem d = 0; d < 7; ++d) {
            const Line lc = line_from_chart(f, c, d);
            for (felem y = 0; y < 7; ++y)
                CHECK(on_line(f, lc, f.add(f.mul(c, y), d), y));
        }
    // and the y-chart of the line map is already covered by line_map itself
    CHECK(line_from_chart(f, 0, 4) == Line{1, 0, 4});  // the vertical x = 4
}

TEST_CASE("incidence counts: full plane, single pair, empty") {
    const Field f3 = Field::make(3);
    const PointLineConfig cfg = full_plane(f3);
    // every one of the 12 lines of GF(3)^2 carries exactly 3 points
    CHECK(cfg.lines().size() == 12);
    CHECK(cfg.count_incidences() == 36);
    CHECK(count_incidences_naive(cfg) == 36);

    const PointLineConfig one(f3, {0}, {Line{1, 0, 0}});
    CHECK(one.count_incidences() == 1);

    const PointLineConfig empty(f3, {0, 4}, {});
    CHECK(empty.count_incidences() == 0);
}

TEST_CASE("hashed and naive counts agree on random configurations") {
    Rng rng(7);
    const Field f = Field::make(11);
    for (int t = 0; t < 40; ++t) {
        const auto cfg = gen_random_config(f, 1 + rng.below(60), 1 + rng.below(60), rng);
        CHECK(cfg.count_incidences() == count_incidences_naive(cfg));
    }
}

TEST_CASE("raw line triples are canonicalized at construction") {
    const Field f = Field::make(7);
    // 2x + 4y = 6 and x + 2y = 3 are the same line
    const PointLineConfig cfg(f, {pack_point(f, 1, 1)}, {Line{2, 4, 6}, Line{1, 2, 3}});
    CHECK(cfg.lines().size() == 1);
    CHECK(cfg.lines()[0] == Line{1, 2, 3});
    CHECK(cfg.count_incidences() == 1);  // 1 + 2 = 3
}

TEST_CASE("trivial bound") {
    const Field f3 = Field::make(3);
    const auto repFull = trivial_bound(full_plane(f3));
    CHECK(repFull.bound == doctest::Approx(std::min(3.0 * 12 + 9, 9 * std::sqrt(12.0) + 12)));
    CHECK(repFull.holds);  // 36 <= 43.18...

    const Field f7 = Field::make(7);
    const auto repOne = trivial_bound(PointLineConfig(f7, {0}, {Line{1, 0, 0}}));
    CHECK(repOne.bound >= 1.0);
    CHECK(repOne.holds);

    Rng rng(123);
    const Field f11 = Field::make(11);
    for (int t = 0; t < 200; ++t) {
        const auto cfg = gen_random_config(f11, 1 + rng.below(60), 1 + rng.below(60), rng);
        CHECK(trivial_bound(cfg).holds);
    }
}

TEST_CASE("additive quadruples, both algorithms and the quartic oracle") {
    const Field f3 = Field::make(3);
    const Paraboloid s3(f3);

    CHECK(additive_quadruples(s3, {0}) == 1);
    CHECK(additive_quadruples_cubic(s3, {0}) == 1);

    // E = the whole surface
    std::vector<std::uint64_t> all;
    for (std::uint64_t r = 0; r < s3.surface_size(); ++r) all.push_back(r);
    CHECK(additive_quadruples(s3, all) == additive_quadruples_cubic(s3, all));

    Rng rng(9);
    const Field f7 = Field::make(7);
    const Paraboloid s7(f7);
    for (int t = 0; t < 20; ++t) {
        const auto E = gen_surface_subset(s7, rng, 12);
        const std::uint64_t viaHash = additive_quadruples(s7, E);
        CHECK(viaHash == additive_quadruples_cubic(s7, E));
        CHECK(viaHash == lambda_quartic(s7, E));
        CHECK(viaHash >= E.size() * E.size());  // diagonal quadruples
    }

    CHECK_THROWS_AS(additive_quadruples(s7, {s7.surface_size()}), std::invalid_argument);
    CHECK_THROWS_AS(additive_quadruples(s7, {0, 0}), std::invalid_argument);
}

TEST_CASE("L4 norm equals the quadruple count, 50 seeds") {
    Rng rng(501);
    const Field f7 = Field::make(7);
    const Paraboloid s7(f7);
    for (int t = 0; t < 50; ++t) {
        const auto E = gen_surface_subset(s7, rng);
        const auto rep = l4_identity_check(s7, E);
        CHECK(rep.rel_err < 1e-9);
    }
}

TEST_CASE("galilean reduction claim") {
    const Field f7 = Field::make(7);
    const Paraboloid s7(f7);
    Rng rng(31337);

    // singleton: both sides count pairs with difference on the surface
    {
        const auto rep = galilean_reduction_check(s7, {5}, 5);
        CHECK(rep.equal);
    }

    for (int t = 0; t < 50; ++t) {
        const auto E = gen_surface_subset(s7, rng);
        const auto rep = galilean_reduction_check(s7, E, rng.below(s7.surface_size()));
        CHECK(rep.equal);
    }

    const Field f3 = Field::make(3);
    const Paraboloid s3(f3);
    std::vector<std::uint64_t> all;
    for (std::uint64_t r = 0; r < s3.surface_size(); ++r) all.push_back(r);
    for (std::uint64_t b = 0; b < s3.surface_size(); ++b)
        CHECK(galilean_reduction_check(s3, all, b).equal);
}

TEST_CASE("line map and its injectivity dichotomy") {
    const Field f7 = Field::make(7);
    // l((1,2)) is x1 + 2 x2 = 5 since y.y = 5
    CHECK(line_map(f7, 1, 2) == Line{1, 2, 5});
    CHECK_THROWS_AS(line_map(f7, 0, 0), std::invalid_argument);

    const auto inj7 = line_map_injectivity(f7);
    CHECK(inj7.injective);  // 48 distinct lines, -1 not a square

    const Field f5 = Field::make(5);
    const auto inj5 = line_map_injectivity(f5);
    CHECK_FALSE(inj5.injective);
    REQUIRE(inj5.witness.has_value());
    const auto& [y, yp] = *inj5.witness;
    CHECK(line_map(f5, y.first, y.second) == line_map(f5, yp.first, yp.second));
    CHECK(y != yp);
    // the classical witness pair: y.y = 0 for both
    CHECK(line_map(f5, 1, 2) == line_map(f5, 2, 4));
}

TEST_CASE("energy -> incidence reduction at the worst shift") {
    const Field f7 = Field::make(7);
    const Paraboloid s7(f7);
    Rng rng(808);

    // singleton: E' = {0}, X empty, I = 0
    {
        const auto rep = incidence_from_energy(s7, {3}, 3);
        CHECK(rep.x_size == 0);
        CHECK(rep.incidences == 0);
        CHECK(rep.counts_equal);
        CHECK(rep.chain_holds);
    }

    for (int t = 0; t < 50; ++t) {
        const auto E = gen_surface_subset(s7, rng);
        const WorstShift ws = worst_shift(s7, E);
        CHECK(ws.valueInP >= ws.valueInE);
        const auto rep = incidence_from_energy(s7, E, ws.bestInP);
        CHECK(rep.counts_equal);
        CHECK(rep.chain_holds);
    }

    // full surface: the final L4 bound with the constant 2
    {
        std::vector<std::uint64_t> all;
        for (std::uint64_t r = 0; r < s7.surface_size(); ++r) all.push_back(r);
        const WorstShift ws = worst_shift(s7, all);
        const auto rep = incidence_from_energy(s7, all, ws.bestInP);
        CHECK(rep.counts_equal);
        CHECK(rep.chain_holds);
        const double q = 7.0;
        const double l4 = std::pow(lp_norm(extension(SurfaceFn::indicator(s7, all)), 4.0), 4.0);
        const double bound = 2.0 * std::pow(q, 3.0) * double(all.size()) *
                             double(all.size() + rep.incidences) / std::pow(q, 8.0);
        CHECK(l4 <= bound * (1 + 1e-12));
    }

    // -1 a square: the collision witness is in the error text
    const Field f5 = Field::make(5);
    const Paraboloid s5(f5);
    CHECK_THROWS_WITH_AS(incidence_from_energy(s5, {1}, 1), doctest::Contains("y'"),
                         std::invalid_argument);
}

TEST_CASE("energy is invariant under galilean transport") {
    const Field f5 = Field::make(5);
    const Paraboloid s5(f5);
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        const auto E = gen_surface_subset(s5, rng);
        const felem d1 = felem(rng.below(5)), d2 = felem(rng.below(5));
        std::vector<std::uint64_t> moved;
        for (auto r : E) {
            const SurfacePoint img = galilean(s5, d1, d2, s5.point(r));
            moved.push_back(*s5.rank_of(img.g1, img.g2, img.tau));
        }
        CHECK(additive_quadruples(s5, E) == additive_quadruples(s5, moved));
    }
}
