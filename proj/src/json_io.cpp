#include "ffr/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ffr {
namespace {

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }
cplx cplx_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

json grid_to_json(const GridFn& f) {
    json j;
    j["field"] = f.field().describe();
    j["n"] = f.n();
    j["measure"] = f.measure() == Measure::counting ? "counting" : "normalized";
    json vals = json::array();
    for (const auto& z : f.values()) vals.push_back(cplx_to_json(z));
    j["values"] = std::move(vals);
    return j;
}

GridFn grid_from_json(const json& j) {
    const Field f = Field::parse(j.at("field").get<std::string>());
    const int n = j.at("n").get<int>();
    const Measure m =
        j.at("measure").get<std::string>() == "counting" ? Measure::counting : Measure::normalized;
    std::vector<cplx> vals;
    for (const auto& v : j.at("values")) vals.push_back(cplx_from_json(v));
    return GridFn(f, n, m, std::move(vals));
}

json surface_to_json(const SurfaceFn& g) {
    json j;
    j["field"] = g.surface.field().describe();
    j["kind"] = "surface_fn";
    json vals = json::array();
    for (const auto& z : g.values) vals.push_back(cplx_to_json(z));
    j["values"] = std::move(vals);
    return j;
}

SurfaceFn surface_from_json(const json& j) {
    const Field f = Field::parse(j.at("field").get<std::string>());
    Paraboloid s(f);
    std::vector<cplx> vals;
    for (const auto& v : j.at("values")) vals.push_back(cplx_from_json(v));
    return SurfaceFn(std::move(s), std::move(vals));
}

json config_to_json(const PointLineConfig& cfg) {
    const Field& f = cfg.field();
    json j;
    j["field"] = f.describe();
    json pts = json::array();
    for (auto p : cfg.points())
        pts.push_back(json::array({p % f.q(), p / f.q()}));
    j["points"] = std::move(pts);
    json lines = json::array();
    for (const auto& l : cfg.lines()) lines.push_back(json::array({l.a, l.b, l.c}));
    j["lines"] = std::move(lines);
    return j;
}

PointLineConfig config_from_json(const json& j) {
    const Field f = Field::parse(j.at("field").get<std::string>());
    std::vector<std::uint64_t> pts;
    for (const auto& p : j.at("points"))
        pts.push_back(pack_point(f, p.at(0).get<felem>(), p.at(1).get<felem>()));
    std::vector<Line> lines;
    for (const auto& l : j.at("lines"))
        lines.push_back(make_line(f, l.at(0).get<felem>(), l.at(1).get<felem>(), l.at(2).get<felem>()));
    return PointLineConfig(f, std::move(pts), std::move(lines));
}

json piece_to_json(const RegularPiece& piece) {
    json j;
    j["field"] = piece.field.describe();
    j["support"] = piece.support;
    json vals = json::array();
    for (const auto& z : piece.values) vals.push_back(cplx_to_json(z));
    j["values"] = std::move(vals);
    j["support_size"] = piece.support_size;
    j["slice_count"] = piece.slice_count;
    j["slice_floor"] = piece.slice_floor;
    return j;
}

RegularPiece piece_from_json(const json& j) {
    RegularPiece rp{Field::parse(j.at("field").get<std::string>()), {}, {}, 0, 0, 0};
    for (const auto& s : j.at("support")) rp.support.push_back(s.get<std::uint64_t>());
    for (const auto& v : j.at("values")) rp.values.push_back(cplx_from_json(v));
    rp.support_size = j.at("support_size").get<std::uint64_t>();
    rp.slice_count = j.at("slice_count").get<std::uint64_t>();
    rp.slice_floor = j.at("slice_floor").get<std::uint64_t>();
    return rp;
}

json witness_to_json(const Field& f, const GridWitness& w) {
    json j;
    j["transform"] = w.transform.m;
    j["A"] = w.A;
    j["B"] = w.B;
    json pts = json::array();
    for (auto p : w.p_prime) pts.push_back(json::array({p % f.q(), p / f.q()}));
    j["p_prime"] = std::move(pts);
    json lines = json::array();
    for (const auto& l : w.l_prime) lines.push_back(json::array({l.a, l.b, l.c}));
    j["l_prime"] = std::move(lines);
    j["lost_at_infinity"] = w.lost_at_infinity;
    j["image_in_grid"] = w.image_in_grid;
    j["retained_incidences"] = w.retained_incidences;
    j["flag"] = w.flag;
    return j;
}

json subfield_witness_to_json(const SubfieldWitness& w) {
    json j;
    j["subfield_degree"] = w.subfield_degree;
    j["subfield_order"] = w.subfield_order;
    j["scale"] = w.scale;
    j["shift"] = w.shift;
    j["exceptional"] = w.exceptional;
    j["covered"] = w.covered;
    return j;
}

json pipeline_to_json(const Field& f, const PipelineReport& rep) {
    json j;
    j["hypothesis_met"] = rep.hypothesis_met;
    j["n"] = rep.n;
    j["incidences"] = rep.incidences;
    j["threshold"] = rep.threshold;
    if (rep.hypothesis_met) {
        j["grid"] = witness_to_json(f, rep.grid);
        j["collinear_energy"] = rep.energy;
        j["witness_a"] = rep.witness_a ? subfield_witness_to_json(*rep.witness_a) : json(nullptr);
        j["witness_b"] = rep.witness_b ? subfield_witness_to_json(*rep.witness_b) : json(nullptr);
    }
    return j;
}

json ratio_report_to_json(const RatioReport& rep) {
    json j;
    j["field"] = rep.field;
    j["family"] = rep.family;
    j["value"] = rep.value;
    j["p"] = rep.pExp;
    j["q"] = rep.qExp;
    j["seed"] = rep.seed;
    json digest = json::array();
    for (const auto& [rank, z] : rep.digest)
        digest.push_back(json::array({rank, z.real(), z.imag()}));
    j["digest"] = std::move(digest);
    return j;
}

json validator_to_json(const ValidatorReport& rep) {
    json j;
    j["name"] = rep.name;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["constant"] = rep.constant;
    j["cap"] = rep.cap;
    j["plancherel_gap"] = rep.plancherel_gap;
    j["pass"] = rep.pass;
    return j;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto firstNonSpace = text.find_first_not_of(" \t\r\n");
    if (firstNonSpace != std::string::npos && (text[firstNonSpace] == '{' || text[firstNonSpace] == '['))
        return json::parse(text);

    // flat key=value lines
    json j = json::object();
    std::stringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (!val.empty() && val.find_first_not_of("0123456789") == std::string::npos)
            j[key] = std::stoull(val);
        else
            j[key] = val;
    }
    return j;
}

}  // namespace ffr
