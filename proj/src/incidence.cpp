#include "ffr/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ffr {

Line make_line(const Field& f, felem a, felem b, felem c) {
    if (a == 0 && b == 0) throw std::invalid_argument("line: (a, b) must be nonzero");
    if (a != 0) {
        const felem s = f.inv(a);
        return {1, f.mul(s, b), f.mul(s, c)};
    }
    const felem s = f.inv(b);
    return {0, 1, f.mul(s, c)};
}

bool on_line(const Field& f, const Line& l, felem x, felem y) {
    return f.add(f.mul(l.a, x), f.mul(l.b, y)) == l.c;
}

Line line_from_chart(const Field& f, felem c, felem d) {
    // x = c y + d  <->  x - c y = d
    return make_line(f, 1, f.neg(c), d);
}

PointLineConfig::PointLineConfig(Field f, std::vector<std::uint64_t> packedPoints,
                                 std::vector<Line> lines)
    : field_(std::move(f)), points_(std::move(packedPoints)), lines_(std::move(lines)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    for (auto& l : lines_) l = make_line(field_, l.a, l.b, l.c);  // canonical form
    std::sort(lines_.begin(), lines_.end());
    lines_.erase(std::unique(lines_.begin(), lines_.end()), lines_.end());
    for (auto pt : points_)
        if (pt >= field_.q() * field_.q()) throw std::invalid_argument("config: point out of range");
}

const std::vector<std::uint64_t>& PointLineConfig::per_line_counts() const {
    if (!perLine_.empty() || lines_.empty()) return perLine_;
    const Field& f = field_;
    const std::uint64_t q = f.q();
    std::unordered_set<std::uint64_t> pointSet(points_.begin(), points_.end());
    perLine_.resize(lines_.size(), 0);
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        const Line& l = lines_[i];
        std::uint64_t c = 0;
        if (l.a == 0) {
            // y = c: walk x
            for (felem x = 0; x < q; ++x) c += pointSet.count(pack_point(f, x, l.c));
        } else {
            // x = c - b y: walk y
            for (felem y = 0; y < q; ++y) {
                const felem x = f.sub(l.c, f.mul(l.b, y));
                c += pointSet.count(pack_point(f, x, y));
            }
        }
        perLine_[i] = c;
    }
    return perLine_;
}

std::uint64_t PointLineConfig::count_incidences() const {
    if (total_) return *total_;
    std::uint64_t t = 0;
    for (auto c : per_line_counts()) t += c;
    total_ = t;
    return t;
}

std::uint64_t count_incidences_naive(const PointLineConfig& cfg) {
    const Field& f = cfg.field();
    std::uint64_t t = 0;
    for (auto pt : cfg.points()) {
        const felem x = static_cast<felem>(pt % f.q());
        const felem y = static_cast<felem>(pt / f.q());
        for (const Line& l : cfg.lines())
            if (on_line(f, l, x, y)) ++t;
    }
    return t;
}

TrivialBoundReport trivial_bound(const PointLineConfig& cfg) {
    const std::uint64_t P = cfg.points().size();
    const std::uint64_t L = cfg.lines().size();
    const std::uint64_t I = cfg.count_incidences();
    const double bound = std::min(std::sqrt(double(P)) * double(L) + double(P),
                                  double(P) * std::sqrt(double(L)) + double(L));
    // exact integer comparison: I <= sqrt(P) L + P  <=>  I <= P or (I-P)^2 <= P L^2
    auto holdsForm = [](std::uint64_t i, std::uint64_t p, std::uint64_t l) {
        if (i <= p) return true;
        const unsigned __int128 d = i - p;
        return d * d <= (unsigned __int128)(p)*l * l;
    };
    const bool holds = holdsForm(I, P, L) && holdsForm(I, L, P);
    return {bound, holds};
}

namespace {

// F^3 componentwise sum of two packed grid indices.
std::uint64_t add3(const Field& f, std::uint64_t u, std::uint64_t v) {
    const std::uint64_t q = f.q();
    const felem a1 = static_cast<felem>(u % q), a2 = static_cast<felem>((u / q) % q),
                a3 = static_cast<felem>(u / (q * q));
    const felem b1 = static_cast<felem>(v % q), b2 = static_cast<felem>((v / q) % q),
                b3 = static_cast<felem>(v / (q * q));
    return f.add(a1, b1) + q * (f.add(a2, b2) + q * std::uint64_t(f.add(a3, b3)));
}

std::uint64_t sub3(const Field& f, std::uint64_t u, std::uint64_t v) {
    const std::uint64_t q = f.q();
    const felem a1 = static_cast<felem>(u % q), a2 = static_cast<felem>((u / q) % q),
                a3 = static_cast<felem>(u / (q * q));
    const felem b1 = static_cast<felem>(v % q), b2 = static_cast<felem>((v / q) % q),
                b3 = static_cast<felem>(v / (q * q));
    return f.sub(a1, b1) + q * (f.sub(a2, b2) + q * std::uint64_t(f.sub(a3, b3)));
}

bool on_surface3(const Paraboloid& s, std::uint64_t idx) {
    const std::uint64_t q = s.field().q();
    return s.on_surface(static_cast<felem>(idx % q), static_cast<felem>((idx / q) % q),
                        static_cast<felem>(idx / (q * q)));
}

std::vector<std::uint64_t> ranks_to_grid(const Paraboloid& s,
                                         const std::vector<std::uint64_t>& ranks) {
    std::vector<std::uint64_t> out;
    out.reserve(ranks.size());
    for (auto r : ranks) {
        if (r >= s.surface_size()) throw std::invalid_argument("energy: rank outside the surface");
        out.push_back(s.grid_index(r));
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::invalid_argument("energy: duplicate surface points");
    return out;
}

}  // namespace

std::uint64_t additive_quadruples(const Paraboloid& s, const std::vector<std::uint64_t>& ranks) {
    const Field& f = s.field();
    const auto pts = ranks_to_grid(s, ranks);
    std::unordered_map<std::uint64_t, std::uint64_t> sums;
    sums.reserve(pts.size() * pts.size());
    for (auto a : pts)
        for (auto b : pts) ++sums[add3(f, a, b)];
    std::uint64_t lambda = 0;
    for (const auto& [_, c] : sums) lambda += c * c;
    return lambda;
}

std::uint64_t additive_quadruples_cubic(const Paraboloid& s,
                                        const std::vector<std::uint64_t>& ranks) {
    const Field& f = s.field();
    const auto pts = ranks_to_grid(s, ranks);
    std::unordered_set<std::uint64_t> members(pts.begin(), pts.end());
    std::uint64_t lambda = 0;
    for (auto a : pts)
        for (auto b : pts) {
            const std::uint64_t ab = add3(f, a, b);
            for (auto c : pts)
                if (members.count(sub3(f, ab, c))) ++lambda;
        }
    return lambda;
}

L4IdentityReport l4_identity_check(const Paraboloid& s, const std::vector<std::uint64_t>& ranks) {
    const std::uint64_t lambda = additive_quadruples(s, ranks);
    const double q = static_cast<double>(s.field().q());
    const double analytic = std::pow(q, 3.0) * static_cast<double>(lambda) / std::pow(q, 8.0);
    const SurfaceFn g = SurfaceFn::indicator(s, ranks);
    const GridFn e = extension(g);
    const double direct = std::pow(lp_norm(e, 4.0), 4.0);
    const double den = std::max(analytic, direct);
    return {analytic, direct, den == 0 ? 0.0 : std::abs(analytic - direct) / den, lambda};
}

namespace {

// Galilean transport of a rank set by -nu where b = (nu, nu.nu).
std::vector<std::uint64_t> transport(const Paraboloid& s, const std::vector<std::uint64_t>& ranks,
                                     std::uint64_t bRank) {
    const Field& f = s.field();
    const SurfacePoint b = s.point(bRank);
    std::vector<std::uint64_t> out;
    out.reserve(ranks.size());
    for (auto r : ranks) {
        const SurfacePoint img = galilean(s, f.neg(b.g1), f.neg(b.g2), s.point(r));
        out.push_back(*s.rank_of(img.g1, img.g2, img.tau));
    }
    return out;
}

}  // namespace

GalileanReductionReport galilean_reduction_check(const Paraboloid& s,
                                                 const std::vector<std::uint64_t>& ranks,
                                                 std::uint64_t bRank) {
    const Field& f = s.field();
    if (bRank >= s.surface_size()) throw std::invalid_argument("reduction: b outside the surface");
    const auto pts = ranks_to_grid(s, ranks);
    const std::uint64_t bIdx = s.grid_index(bRank);

    // lhs: a - d = c - b with c in P  <=>  a - d + b on the surface.
    std::uint64_t lhs = 0;
    for (auto a : pts)
        for (auto d : pts)
            if (on_surface3(s, add3(f, sub3(f, a, d), bIdx))) ++lhs;

    // rhs over the transported set.
    const auto primeRanks = transport(s, ranks, bRank);
    const auto primePts = ranks_to_grid(s, primeRanks);
    std::uint64_t rhs = 0;
    for (auto a : primePts)
        for (auto d : primePts)
            if (on_surface3(s, sub3(f, a, d))) ++rhs;

    return {lhs, rhs, lhs == rhs};
}

Line line_map(const Field& f, felem y1, felem y2) {
    if (y1 == 0 && y2 == 0) throw std::invalid_argument("line_map: y must be nonzero");
    const felem yy = f.add(f.mul(y1, y1), f.mul(y2, y2));
    return make_line(f, y1, y2, yy);
}

LineMapInjectivity line_map_injectivity(const Field& f) {
    const std::uint64_t q = f.q();
    std::unordered_map<std::uint64_t, std::pair<felem, felem>> seen;
    seen.reserve(q * q);
    for (felem y2 = 0; y2 < q; ++y2)
        for (felem y1 = 0; y1 < q; ++y1) {
            if (y1 == 0 && y2 == 0) continue;
            const Line l = line_map(f, y1, y2);
            const std::uint64_t key = (std::uint64_t(l.a) * q + l.b) * q + l.c;
            auto [it, inserted] = seen.emplace(key, std::make_pair(y1, y2));
            if (!inserted) return {false, std::make_pair(it->second, std::make_pair(y1, y2))};
        }
    return {true, std::nullopt};
}

EnergyIncidenceReport incidence_from_energy(const Paraboloid& s,
                                            const std::vector<std::uint64_t>& ranks,
                                            std::uint64_t bRank) {
    const Field& f = s.field();
    if (f.minus_one_is_square()) {
        const auto inj = line_map_injectivity(f);
        std::string msg = "incidence_from_energy: -1 is a square, lines collide";
        if (inj.witness) {
            const auto& [y, yp] = *inj.witness;
            msg += " (y=(" + std::to_string(y.first) + "," + std::to_string(y.second) + "), y'=(" +
                   std::to_string(yp.first) + "," + std::to_string(yp.second) + "))";
        }
        throw std::invalid_argument(msg);
    }

    const auto primeRanks = transport(s, ranks, bRank);
    const auto primePts = ranks_to_grid(s, primeRanks);

    // X_{E'}: base points of E' \ {0}.
    std::vector<std::pair<felem, felem>> X;
    for (auto idx : primePts) {
        if (idx == 0) continue;  // the origin of F^3
        X.emplace_back(static_cast<felem>(idx % f.q()), static_cast<felem>((idx / f.q()) % f.q()));
    }

    std::uint64_t shifted = 0;
    for (auto a : primePts) {
        if (a == 0) continue;
        for (auto d : primePts) {
            if (d == 0) continue;
            if (on_surface3(s, sub3(f, a, d))) ++shifted;
        }
    }

    // Incidences between X and the lines l(y), y in X.
    std::uint64_t inc = 0;
    for (const auto& [y1, y2] : X) {
        const Line l = line_map(f, y1, y2);
        for (const auto& [x1, x2] : X)
            if (on_line(f, l, x1, x2)) ++inc;
    }

    const std::uint64_t lambda = additive_quadruples(s, ranks);
    const std::uint64_t E = ranks.size();
    const bool chain = lambda <= E * (E + inc);
    return {shifted, inc, shifted == inc, X.size(), lambda, chain, bRank};
}

WorstShift worst_shift(const Paraboloid& s, const std::vector<std::uint64_t>& ranks) {
    const Field& f = s.field();
    const auto pts = ranks_to_grid(s, ranks);
    std::unordered_set<std::uint64_t> inE(pts.begin(), pts.end());

    WorstShift out;
    bool haveE = false, haveP = false;
    for (std::uint64_t b = 0; b < s.surface_size(); ++b) {
        const std::uint64_t bIdx = s.grid_index(b);
        std::uint64_t val = 0;
        for (auto a : pts)
            for (auto d : pts)
                if (on_surface3(s, add3(f, sub3(f, a, d), bIdx))) ++val;
        if (!haveP || val > out.valueInP) {
            out.valueInP = val;
            out.bestInP = b;
            haveP = true;
        }
        if (inE.count(bIdx) && (!haveE || val > out.valueInE)) {
            out.valueInE = val;
            out.bestInE = b;
            haveE = true;
        }
    }
    return out;
}

}  // namespace ffr
