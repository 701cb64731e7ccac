#include "ffr/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "ffr/estimator.hpp"
#include "ffr/generate.hpp"
#include "ffr/json_io.hpp"
#include "ffr/verify.hpp"

namespace ffr {
namespace {

constexpr const char* kVersion = "ffrestrict 1.0.0";

struct GlobalOpts {
    std::string field = "7^1";
    std::uint64_t seed = 0;
    bool seedSet = false;
    std::string out;
    int threads = 1;
    std::string capsFile;
};

void emit(const GlobalOpts& g, std::ostream& fallback, json& j,
          std::chrono::steady_clock::time_point t0) {
    j["version"] = kVersion;
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    j["timings"] = json{{"total_ms", ms}};
    if (!g.out.empty()) {
        std::ofstream f(g.out);
        f << j.dump(2) << "\n";
    } else {
        fallback << j.dump(2) << "\n";
    }
}

std::uint64_t require_seed(const GlobalOpts& g) {
    if (!g.seedSet)
        throw CLI::ValidationError("--seed", "a seed is mandatory for randomized operations");
    return g.seed;
}

json config_echo(const GlobalOpts& g, const std::string& sub) {
    json j;
    j["command"] = sub;
    j["field"] = g.field;
    if (g.seedSet) j["seed"] = g.seed;
    j["threads"] = g.threads;
    return j;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"finite-field extension/restriction experiments on the 3-d paraboloid"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--field", g.field, "field description p^k or p^k/c0,...,ck");
    auto* seedOpt = app.add_option("--seed", g.seed, "seed for every randomized path");
    app.add_option("--out", g.out, "write the JSON report to this file");
    app.add_option("--threads", g.threads, "worker threads for heavy loops");
    app.add_option("--caps-file", g.capsFile, "JSON with validator_cap / regular_cap overrides");

    // paraboloid
    auto* sub_par = app.add_subcommand("paraboloid", "surface reports");
    std::string parOp = "fdim";
    sub_par->add_option("--op", parOp, "fdim | kernel | gauss | pseudoconformal")
        ->check(CLI::IsMember({"fdim", "kernel", "gauss", "pseudoconformal"}));
    std::uint64_t parCount = 20;
    sub_par->add_option("--count", parCount, "slices for pseudoconformal");

    // incidence
    auto* sub_inc = app.add_subcommand("incidence", "point/line counting");
    std::string incOp = "count";
    sub_inc->add_option("--op", incOp, "count | bound | energy | reduction")
        ->check(CLI::IsMember({"count", "bound", "energy", "reduction"}));
    std::string incConfig;
    sub_inc->add_option("--config-file", incConfig, "points/lines or ranks JSON (or key=value)");

    // structure
    auto* sub_str = app.add_subcommand("structure", "appendix pipeline");
    std::string strConfig;
    sub_str->add_option("--config-file", strConfig, "points/lines JSON")->required();
    double lossK = 2.0;
    sub_str->add_option("--loss-factor", lossK, "loss factor K >= 1");
    std::uint64_t budget = 10000000;
    sub_str->add_option("--budget", budget, "pair-scan budget before sampling");

    // estimate
    auto* sub_est = app.add_subcommand("estimate", "operator-norm lower bounds");
    std::string pStr = "2", qStr = "4";
    sub_est->add_option("--p", pStr, "L^p exponent as an exact fraction a/b");
    sub_est->add_option("--q", qStr, "L^q exponent as an exact fraction a/b");
    std::string famStr = "all";
    sub_est->add_option("--family", famStr, "all|subspace|random|slices|grids|ascent")
        ->check(CLI::IsMember({"all", "subspace", "random", "slices", "grids", "ascent"}));
    std::uint64_t iters = 100;
    sub_est->add_option("--iters", iters, "ascent iterations");

    // regular
    auto* sub_reg = app.add_subcommand("regular", "dyadic + slice decomposition");
    std::string regInput;
    sub_reg->add_option("--input", regInput, "grid function JSON; generated when absent");
    std::uint64_t regSupport = 0;
    sub_reg->add_option("--support", regSupport, "support size for the generated input");

    // generate
    auto* sub_gen = app.add_subcommand("generate", "planted and random instances");
    std::string kind;
    sub_gen->add_option("--kind", kind, "subfield-grid | regular-set | random-points | subspace")
        ->required()
        ->check(CLI::IsMember({"subfield-grid", "regular-set", "random-points", "subspace"}));
    std::uint64_t gOrder = 9, slices = 0, sliceSize = 0, nPoints = 0, nLines = 0;
    sub_gen->add_option("--g-order", gOrder, "subfield order for subfield-grid");
    sub_gen->add_option("--slices", slices, "slice count for regular-set");
    sub_gen->add_option("--slice-size", sliceSize, "points per slice for regular-set");
    sub_gen->add_option("--points", nPoints, "point count for random-points");
    sub_gen->add_option("--lines", nLines, "line count for random-points");

    // verify
    auto* sub_ver = app.add_subcommand("verify", "validator suites");
    std::string suite = "core";
    sub_ver->add_option("--suite", suite, "core | exponents")
        ->check(CLI::IsMember({"core", "exponents"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << json{{"error", e.what()}}.dump(2) << "\n";
        return 2;
    }
    g.seedSet = seedOpt->count() > 0;

    try {
        const Field field = Field::parse(g.field);

        if (*sub_par) {
            json j = config_echo(g, "paraboloid");
            j["op"] = parOp;
            const Paraboloid s(field);
            if (parOp == "fdim") {
                const auto rep = fourier_dimension_report(s, g.threads);
                j["max_abs"] = rep.max_abs;
                j["argmax"] = rep.argmax;
                j["plane_max"] = rep.plane_max;
                j["inverse_q"] = 1.0 / double(field.q());
            } else if (parOp == "kernel") {
                const auto rep = kernel_formula_check(s);
                j["max_dev"] = rep.max_dev;
                j["plane_max"] = rep.plane_max;
                j["pass"] = rep.max_dev < 1e-9;
            } else if (parOp == "gauss") {
                json arr = json::array();
                double worst = 0;
                for (felem a = 0; a < field.q(); ++a) {
                    const cplx sAbs = gauss_sum(field, a);
                    arr.push_back(json::array({a, sAbs.real(), sAbs.imag()}));
                    if (a) worst = std::max(worst, std::abs(std::norm(sAbs) - double(field.q())));
                }
                j["sums"] = std::move(arr);
                j["worst_modulus_gap"] = worst;
            } else {
                Rng rng(require_seed(g));
                json arr = json::array();
                bool pass = true;
                for (std::uint64_t t = 0; t < parCount; ++t) {
                    const auto rep = pseudo_conformal_identity(s, gen_slice(field, rng));
                    arr.push_back(json{{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"rel_err", rep.rel_err}});
                    pass = pass && rep.rel_err < 1e-9;
                }
                j["slices"] = std::move(arr);
                j["pass"] = pass;
                if (!pass) {
                    emit(g, out, j, t0);
                    return 1;
                }
            }
            emit(g, out, j, t0);
            return 0;
        }

        if (*sub_inc) {
            json j = config_echo(g, "incidence");
            j["op"] = incOp;
            if (incOp == "count" || incOp == "bound") {
                if (incConfig.empty())
                    throw CLI::ValidationError("--config-file", "required for count/bound");
                const PointLineConfig cfg = config_from_json(load_config_file(incConfig));
                j["points"] = cfg.points().size();
                j["lines"] = cfg.lines().size();
                j["incidences"] = cfg.count_incidences();
                if (incOp == "bound") {
                    const auto rep = trivial_bound(cfg);
                    j["bound"] = rep.bound;
                    j["holds"] = rep.holds;
                    emit(g, out, j, t0);
                    return rep.holds ? 0 : 1;
                }
            } else {
                const Paraboloid s(field);
                std::vector<std::uint64_t> ranks;
                if (!incConfig.empty()) {
                    const json cj = load_config_file(incConfig);
                    for (const auto& r : cj.at("ranks")) ranks.push_back(r.get<std::uint64_t>());
                } else {
                    Rng rng(require_seed(g));
                    ranks = gen_surface_subset(s, rng);
                }
                j["set_size"] = ranks.size();
                if (incOp == "energy") {
                    const auto rep = l4_identity_check(s, ranks);
                    j["lambda"] = rep.lambda;
                    j["analytic"] = rep.analytic;
                    j["direct"] = rep.direct;
                    j["rel_err"] = rep.rel_err;
                    emit(g, out, j, t0);
                    return rep.rel_err < 1e-9 ? 0 : 1;
                }
                const WorstShift ws = worst_shift(s, ranks);
                const auto red = galilean_reduction_check(s, ranks, ws.bestInP);
                j["worst_b_in_set"] = json::array({ws.bestInE, ws.valueInE});
                j["worst_b_global"] = json::array({ws.bestInP, ws.valueInP});
                j["claim_lhs"] = red.lhs;
                j["claim_rhs"] = red.rhs;
                bool pass = red.equal;
                if (!field.minus_one_is_square()) {
                    const auto er = incidence_from_energy(s, ranks, ws.bestInP);
                    j["shifted_count"] = er.shifted_count;
                    j["incidences"] = er.incidences;
                    j["counts_equal"] = er.counts_equal;
                    j["chain_holds"] = er.chain_holds;
                    pass = pass && er.counts_equal && er.chain_holds;
                }
                emit(g, out, j, t0);
                return pass ? 0 : 1;
            }
            emit(g, out, j, t0);
            return 0;
        }

        if (*sub_str) {
            json j = config_echo(g, "structure");
            const PointLineConfig cfg = config_from_json(load_config_file(strConfig));
            const std::uint64_t seed = g.seedSet ? g.seed : 0;
            const PipelineReport rep =
                incidence_structure_pipeline(cfg, lossK, budget, seed);
            j["loss_factor"] = lossK;
            j["pipeline"] = pipeline_to_json(field, rep);
            emit(g, out, j, t0);
            return 0;
        }

        if (*sub_est) {
            const Fraction pF = Fraction::parse(pStr);
            const Fraction qF = Fraction::parse(qStr);
            unsigned fams = unsigned(Family::all);
            if (famStr == "subspace") fams = Family::constant | Family::subspace;
            else if (famStr == "random") fams = Family::constant | Family::random_sets;
            else if (famStr == "slices") fams = Family::constant | Family::slices;
            else if (famStr == "grids") fams = Family::constant | Family::grids;
            else if (famStr == "ascent")
                fams = unsigned(Family::constant) | unsigned(Family::random_sets) |
                       unsigned(Family::ascent);
            const RatioReport rep = search_lower_bound(field, pF.value(), qF.value(), fams,
                                                       require_seed(g), iters, g.threads);
            json j = config_echo(g, "estimate");
            j["p"] = pF.str();
            j["q"] = qF.str();
            j["family_set"] = famStr;
            j["report"] = ratio_report_to_json(rep);
            emit(g, out, j, t0);
            return 0;
        }

        if (*sub_reg) {
            json j = config_echo(g, "regular");
            GridFn input = [&] {
                if (!regInput.empty()) return grid_from_json(load_config_file(regInput));
                Rng rng(require_seed(g));
                const std::uint64_t n = field.q() * field.q() * field.q();
                return gen_grid_fn(field, regSupport ? regSupport : 1 + rng.below(n), rng);
            }();
            const auto dec = dyadic_levels(input);
            j["levels"] = dec.pieces.size();
            j["tail_size"] = dec.tail_support.size();
            json pieces = json::array();
            for (const auto& piece : dec.pieces) {
                for (const auto& rp : slice_regular_decompose(field, piece)) {
                    const auto st = regularity_stats(rp);
                    pieces.push_back(json{{"level", piece.level},
                                          {"support_size", rp.support_size},
                                          {"slice_count", rp.slice_count},
                                          {"slice_floor", rp.slice_floor},
                                          {"gamma", st.gamma},
                                          {"s", st.s},
                                          {"t", st.t},
                                          {"ratio", st.ratio}});
                }
            }
            j["pieces"] = std::move(pieces);
            emit(g, out, j, t0);
            return 0;
        }

        if (*sub_gen) {
            Rng rng(require_seed(g));
            json j = config_echo(g, "generate");
            j["kind"] = kind;
            if (kind == "subfield-grid") {
                const PlantedGrid pg = gen_subfield_grid(field, gOrder, rng);
                j["instance"] = config_to_json(pg.config);
                j["coord_set_a"] = pg.coordSetA;
                j["coord_set_b"] = pg.coordSetB;
                j["scale_a"] = pg.scaleA;
                j["shift_a"] = pg.shiftA;
                j["scale_b"] = pg.scaleB;
                j["shift_b"] = pg.shiftB;
                j["subfield_order"] = pg.subfieldOrder;
            } else if (kind == "regular-set") {
                if (slices == 0 || sliceSize == 0)
                    throw CLI::ValidationError("--slices/--slice-size", "must be positive");
                const RegularPiece rp = gen_regular_piece(field, slices, sliceSize, rng);
                regularity_stats(rp);
                j["instance"] = piece_to_json(rp);
            } else if (kind == "random-points") {
                const PointLineConfig cfg = gen_random_config(field, nPoints, nLines, rng);
                j["instance"] = config_to_json(cfg);
            } else {
                const auto sharp = subspace_sharpness(field, 4.0);
                const Paraboloid s(field);
                std::vector<std::uint64_t> ranks;
                for (felem xi = 0; xi < field.q(); ++xi)
                    ranks.push_back(xi + field.q() * std::uint64_t(field.mul(sharp.i, xi)));
                j["instance"] = surface_to_json(SurfaceFn::indicator(s, ranks));
                j["i"] = sharp.i;
            }
            emit(g, out, j, t0);
            return 0;
        }

        if (*sub_ver) {
            json j = config_echo(g, "verify");
            j["suite"] = suite;
            SuiteCaps caps;
            if (!g.capsFile.empty()) {
                const json cj = load_config_file(g.capsFile);
                if (cj.contains("validator_cap")) caps.validator_cap = cj["validator_cap"].get<double>();
                if (cj.contains("regular_cap")) caps.regular_cap = cj["regular_cap"].get<double>();
            }
            SuiteResult res = suite == "exponents"
                                  ? run_exponent_suite()
                                  : run_core_suite(field, g.seedSet ? g.seed : 1, g.threads, caps);
            j["result"] = res.report;
            j["pass"] = res.pass;
            emit(g, out, j, t0);
            return res.pass ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        err << json{{"error", e.what()}}.dump(2) << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << json{{"error", e.what()}}.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << json{{"error", e.what()}}.dump(2) << "\n";
        return 1;
    }
    return 2;
}

}  // namespace ffr
