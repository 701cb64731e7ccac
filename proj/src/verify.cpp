#include "ffr/verify.hpp"

#include <chrono>
#include <cmath>

#include "ffr/estimator.hpp"
#include "ffr/generate.hpp"
#include "ffr/incidence.hpp"
#include "ffr/paraboloid.hpp"
#include "ffr/regular.hpp"
#include "ffr/rng.hpp"

namespace ffr {
namespace {

struct StageTimer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double take_ms() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - start).count();
        start = now;
        return ms;
    }
};

void record(SuiteResult& out, const std::string& name, bool pass, json details = json::object()) {
    details["check"] = name;
    details["pass"] = pass;
    out.report["checks"].push_back(std::move(details));
    out.pass = out.pass && pass;
}

void record(SuiteResult& out, StageTimer& timer, const std::string& name, bool pass,
            json details = json::object()) {
    details["ms"] = timer.take_ms();
    record(out, name, pass, std::move(details));
}

}  // namespace

SuiteResult run_exponent_suite() {
    SuiteResult out;
    out.report["suite"] = "exponents";
    out.report["checks"] = json::array();
    using namespace exponents;

    record(out, "q_over_theta(16/5, 8/9) == 18/5",
           q_over_theta(Fraction(16, 5), Fraction(8, 9)) == Fraction(18, 5));

    const Fraction alphas[] = {Fraction(4, 3), Fraction(7, 5), Fraction(496, 331), Fraction(3, 2)};
    bool crossLow = true, crossHigh = true, tBeta = true, mt1Reg = true, dual = true;
    for (const auto& a : alphas) {
        const Fraction gLow = gamma_low(a);
        crossLow = crossLow && stdecay_exponent(gLow) == reg_exponent(gLow, a);
        const Fraction gHigh = gamma_high(a);
        crossHigh = crossHigh &&
                    reg_exponent(gHigh, Fraction(3, 2)) == l2_target_exponent(a) &&
                    beta_from_gamma(a, gHigh) == beta_threshold(a);
        for (const auto& g : {Fraction(9, 5), Fraction(2), gLow, gHigh})
            tBeta = tBeta && (g - t_threshold(a, g)) == beta_from_gamma(a, g);
        for (const auto& g : {Fraction(9, 5), Fraction(2)})
            mt1Reg = mt1Reg && mt1_exponent(g - Fraction(1), Fraction(1), a) == reg_exponent(g, a);
        dual = dual && dual_exponent(l2_target_exponent(a)) == target_exponent(a);
    }
    record(out, "2g/(2g-1) meets 8g/(6+(g-1)(4+a)) exactly at g=(6-a)/(4-a)", crossLow);
    record(out, "trivial-exponent crossing at g=(6-a)/(3a-2) and beta threshold", crossHigh);
    record(out, "g - t_threshold == (2/3)(3g - ag - 3 + a)", tBeta);
    record(out, "mt1 exponent at t=1 equals the reg exponent", mt1Reg);
    record(out, "dual of (12-2a)/(8-a) is (12-2a)/(4-a)", dual);

    const Fraction a = Fraction(496, 331);
    record(out, "beta_threshold(496/331) == 47144/58587 <= 1",
           beta_threshold(a) == Fraction(47144, 58587) && beta_threshold(a) <= Fraction(1),
           {{"value", beta_threshold(a).str()}});
    record(out, "target_exponent(496/331) == 18/5 - 1/1035",
           target_exponent(a) == Fraction(18, 5) - Fraction(1, 1035) &&
               target_exponent(a) == Fraction(745, 207));
    record(out, "target_exponent(4/3) == 7/2",
           target_exponent(Fraction(4, 3)) == Fraction(7, 2));

    bool s6 = true;
    for (const auto& th : {Fraction(1, 100), Fraction(1, 50), Fraction(1, 10)}) {
        s6 = s6 && section6_slice_exponent(th) == section6_lower_bound(th);
        s6 = s6 && section6_lower_bound(th) >= section6_tail(th);
        s6 = s6 && section6_tail(th) > Fraction(18, 13);
    }
    record(out, "section-6 exponent chain (slice form == closed form >= tail > 18/13)", s6);
    return out;
}

SuiteResult run_core_suite(const Field& f, std::uint64_t seed, int threads,
                           const SuiteCaps& caps) {
    SuiteResult out;
    out.report["suite"] = "core";
    out.report["field"] = f.describe();
    out.report["seed"] = seed;
    out.report["caps"] = json{{"validator_cap", caps.validator_cap}, {"regular_cap", caps.regular_cap}};
    out.report["checks"] = json::array();
    Rng rng(seed);
    StageTimer timer;
    const std::uint64_t q = f.q();

    {
        const SuiteResult exp = run_exponent_suite();
        record(out, timer, "exponent algebra", exp.pass);
    }

    if (q <= 31) {
        const Paraboloid s(f);

        {  // Plancherel + transform oracle agreement
            bool ok = true;
            double worst = 0;
            for (int t = 0; t < 10; ++t) {
                const GridFn g = gen_bounded_fn(f, rng);
                const auto rep = plancherel_check(g);
                worst = std::max(worst, rep.rel_err);
                ok = ok && rep.rel_err < 1e-9;
            }
            GridFn g2(f, 2, Measure::counting);
            for (auto& z : g2.values()) z = cplx(rng.real(-1, 1), rng.real(-1, 1));
            const GridFn fast = fourier_transform(g2);
            const GridFn slow = fourier_transform_direct(g2);
            double dev = 0;
            for (std::uint64_t i = 0; i < fast.size(); ++i)
                dev = std::max(dev, std::abs(fast.at(i) - slow.at(i)));
            ok = ok && dev < 1e-9;
            record(out, timer, "plancherel + tensorized vs direct transform", ok,
                   {{"plancherel_worst", worst}, {"transform_dev", dev}});
        }

        {  // Fourier dimension and kernel closed form
            const FdimReport rep = fourier_dimension_report(s, threads);
            bool ok = rep.plane_max < 1e-9;
            json det{{"max_abs", rep.max_abs}, {"plane_max", rep.plane_max}};
            if (f.k() == 1) {
                ok = ok && std::abs(rep.max_abs - 1.0 / double(q)) < 1e-9;
                det["expected"] = 1.0 / double(q);
            }
            const KernelCheck kc = kernel_formula_check(s);
            ok = ok && kc.max_dev < 1e-9 && kc.plane_max < 1e-12;
            det["kernel_dev"] = kc.max_dev;
            record(out, timer, "fourier dimension + kernel closed form", ok, det);
        }

        {  // Gauss sums
            bool ok = std::abs(gauss_sum(f, 0).real() - double(q)) < 1e-9;
            double worst = 0;
            for (felem a = 1; a < q; ++a) {
                const double m2 = std::norm(gauss_sum(f, a));
                worst = std::max(worst, std::abs(m2 - double(q)));
            }
            ok = ok && worst < 1e-9 * double(q);
            record(out, timer, "gauss sums |S(a)|^2 = q", ok, {{"worst_gap", worst}});
        }

        {  // L4 identity and both quadruple counters
            bool ok = true;
            for (int t = 0; t < 15; ++t) {
                const auto E = gen_surface_subset(s, rng);
                const auto rep = l4_identity_check(s, E);
                ok = ok && rep.rel_err < 1e-9;
                if (E.size() <= 64) ok = ok && additive_quadruples_cubic(s, E) == rep.lambda;
            }
            record(out, timer, "L4 norm == q^3 Lambda / q^8, dual-path Lambda", ok);
        }

        {  // Galilean claim
            bool ok = true;
            for (int t = 0; t < 15; ++t) {
                const auto E = gen_surface_subset(s, rng);
                const auto rep = galilean_reduction_check(s, E, rng.below(s.surface_size()));
                ok = ok && rep.equal;
            }
            record(out, timer, "galilean shift preserves the difference count", ok);
        }

        {  // line map dichotomy
            const auto inj = line_map_injectivity(f);
            const bool expectInjective = !f.minus_one_is_square();
            record(out, timer, "line map injective iff -1 non-square", inj.injective == expectInjective,
                   {{"injective", inj.injective}});
        }
    }

    {  // trivial incidence bound
        bool ok = true;
        for (int t = 0; t < 50; ++t) {
            const auto cfg = gen_random_config(f, 1 + rng.below(std::min<std::uint64_t>(60, q * q)),
                                               1 + rng.below(std::min<std::uint64_t>(60, q * q + q)), rng);
            ok = ok && trivial_bound(cfg).holds;
            if (t < 10) ok = ok && cfg.count_incidences() == count_incidences_naive(cfg);
        }
        record(out, timer, "trivial incidence bound, hashed == naive count", ok);
    }

    if (q <= 11) {
        const Paraboloid s(f);
        {  // Stein-Tomas validators
            bool ok = true;
            double worstC = 0, worstGap = 0;
            for (int t = 0; t < 20; ++t) {
                const GridFn a = gen_bounded_fn(f, rng);
                const auto r1 = validate_st_bounded(s, a, 1.0, 2.0, 4.0, 0.5, caps.validator_cap);
                const GridFn b = gen_supported_fn(f, rng);
                const auto r2 = validate_st_support(s, b, 1.0, 2.0, 4.0, 0.5, caps.validator_cap);
                const GridFn c = gen_halfopen_fn(f, rng, std::uint64_t(std::ceil(std::sqrt(double(q)))) + 1);
                const auto r3 = validate_st_decay(s, c, caps.validator_cap);
                for (const auto& r : {r1, r2, r3}) {
                    ok = ok && r.pass;
                    worstC = std::max(worstC, r.constant);
                    worstGap = std::max(worstGap, r.plancherel_gap);
                }
            }
            record(out, timer, "stein-tomas validators (constant <= 4, plancherel exact)", ok,
                   {{"worst_constant", worstC}, {"worst_plancherel_gap", worstGap}});
        }

        if (!f.minus_one_is_square()) {  // L4 incidence bound via the reduction
            bool ok = true;
            for (int t = 0; t < 10; ++t) {
                const auto E = gen_surface_subset(s, rng);
                const auto rep = l4_incidence_bound_check(s, E);
                ok = ok && rep.pass;
            }
            record(out, timer, "L4 incidence bound chain", ok);
        } else {  // sharpness example instead
            const auto sharp4 = subspace_sharpness(f, 4.0);
            const auto sharp3 = subspace_sharpness(f, 3.0);
            record(out, timer, "subspace sharpness matches the closed form",
                   sharp4.rel_err < 1e-9 && sharp3.rel_err < 1e-9 &&
                       std::abs(sharp4.measured - 1.0) < 1e-9);
        }

        if (q <= 9) {  // pseudo-conformal identity
            bool ok = true;
            for (int t = 0; t < 10; ++t) {
                const auto rep = pseudo_conformal_identity(s, gen_slice(f, rng));
                ok = ok && rep.rel_err < 1e-9;
            }
            record(out, timer, "pseudo-conformal slice identity", ok);
        }

        {  // regular decomposition round trip
            bool ok = true;
            for (int t = 0; t < 10; ++t) {
                const GridFn g = gen_grid_fn(f, 1 + rng.below(q * q * q), rng);
                const auto dec = dyadic_levels(g);
                GridFn rec(f, 3, Measure::counting);
                for (const auto& piece : dec.pieces)
                    for (std::size_t i = 0; i < piece.support.size(); ++i)
                        rec.set(piece.support[i], rec.at(piece.support[i]) + piece.values[i] * piece.scale);
                for (std::size_t i = 0; i < dec.tail_support.size(); ++i)
                    rec.set(dec.tail_support[i], rec.at(dec.tail_support[i]) + dec.tail_values[i]);
                ok = ok && rec.values() == g.values();
                for (const auto& piece : dec.pieces)
                    for (const auto& rp : slice_regular_decompose(f, piece)) {
                        regularity_stats(rp);  // throws on violation
                        (void)rp;
                    }
            }
            record(out, timer, "dyadic levels reconstruct exactly; pieces pass invariants", ok);
        }

        if (q <= 7) {  // regular L2 chain on a planted piece
            Rng prng(seed + 17);
            const RegularPiece rp = gen_regular_piece(f, std::min<std::uint64_t>(q, 4), q, prng);
            const auto rep = regular_l2_bound_check(s, rp, caps.regular_cap);
            record(out, timer, "regular L2 chain (triangle + Hoelder steps)", rep.pass,
                   {{"constant", rep.constant},
                    {"alpha_hat", rep.alpha_hat},
                    {"r_exponent", rep.r_exponent}});
        }

        {  // mockenhaupt-tao bootstrap consistency
            const auto c = mt_st_consistency(f, Fraction(16, 5), Fraction(8, 9), seed, 20);
            record(out, timer, "bootstrap consistency R*(2 -> q/theta)", c.pass,
                   {{"lhs", c.lhs}, {"rhs", c.rhs}});
        }
    }

    return out;
}

}  // namespace ffr
