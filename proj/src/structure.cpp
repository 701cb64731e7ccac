#include "ffr/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ffr {

ProjTransform proj_identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

ProjTransform proj_multiply(const Field& f, const ProjTransform& a, const ProjTransform& b) {
    ProjTransform r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            felem s = 0;
            for (int t = 0; t < 3; ++t) s = f.add(s, f.mul(a.m[3 * i + t], b.m[3 * t + j]));
            r.m[3 * i + j] = s;
        }
    return r;
}

felem proj_det(const Field& f, const ProjTransform& t) {
    const auto& m = t.m;
    auto mul3 = [&](felem a, felem b, felem c) { return f.mul(a, f.mul(b, c)); };
    felem pos = f.add(f.add(mul3(m[0], m[4], m[8]), mul3(m[1], m[5], m[6])), mul3(m[2], m[3], m[7]));
    felem neg = f.add(f.add(mul3(m[2], m[4], m[6]), mul3(m[0], m[5], m[7])), mul3(m[1], m[3], m[8]));
    return f.sub(pos, neg);
}

ProjTransform proj_inverse(const Field& f, const ProjTransform& t) {
    const felem det = proj_det(f, t);
    if (det == 0) throw std::invalid_argument("projective: singular matrix");
    const felem di = f.inv(det);
    const auto& m = t.m;
    auto cof = [&](int r0, int c0, int r1, int c1) {
        return f.sub(f.mul(m[3 * r0 + c0], m[3 * r1 + c1]), f.mul(m[3 * r0 + c1], m[3 * r1 + c0]));
    };
    ProjTransform inv{};
    inv.m[0] = f.mul(di, cof(1, 1, 2, 2));
    inv.m[1] = f.mul(di, f.neg(cof(0, 1, 2, 2)));
    inv.m[2] = f.mul(di, cof(0, 1, 1, 2));
    inv.m[3] = f.mul(di, f.neg(cof(1, 0, 2, 2)));
    inv.m[4] = f.mul(di, cof(0, 0, 2, 2));
    inv.m[5] = f.mul(di, f.neg(cof(0, 0, 1, 2)));
    inv.m[6] = f.mul(di, cof(1, 0, 2, 1));
    inv.m[7] = f.mul(di, f.neg(cof(0, 0, 2, 1)));
    inv.m[8] = f.mul(di, cof(0, 0, 1, 1));
    return inv;
}

namespace {

std::array<felem, 3> apply_vec(const Field& f, const ProjTransform& t, std::array<felem, 3> v) {
    std::array<felem, 3> r{};
    for (int i = 0; i < 3; ++i)
        r[i] = f.add(f.add(f.mul(t.m[3 * i], v[0]), f.mul(t.m[3 * i + 1], v[1])),
                     f.mul(t.m[3 * i + 2], v[2]));
    return r;
}

// Covector action: l -> l . T^{-1}; the inverse is passed in.
std::array<felem, 3> apply_covec(const Field& f, const ProjTransform& tinv,
                                 std::array<felem, 3> l) {
    std::array<felem, 3> r{};
    for (int j = 0; j < 3; ++j)
        r[j] = f.add(f.add(f.mul(l[0], tinv.m[j]), f.mul(l[1], tinv.m[3 + j])),
                     f.mul(l[2], tinv.m[6 + j]));
    return r;
}

}  // namespace

ApplyResult apply_projective(const Field& f, const ProjTransform& t,
                             const std::vector<std::uint64_t>& packedPoints) {
    if (proj_det(f, t) == 0) throw std::invalid_argument("projective: singular matrix");
    ApplyResult out{{}, 0};
    const std::uint64_t q = f.q();
    for (auto pt : packedPoints) {
        const felem x = static_cast<felem>(pt % q);
        const felem y = static_cast<felem>(pt / q);
        const auto v = apply_vec(f, t, {x, y, 1});
        if (v[2] == 0) {
            ++out.lost_at_infinity;
            continue;
        }
        const felem w = f.inv(v[2]);
        out.points.push_back(pack_point(f, f.mul(v[0], w), f.mul(v[1], w)));
    }
    return out;
}

JointTransformResult apply_projective_joint(const PointLineConfig& cfg, const ProjTransform& t) {
    const Field& f = cfg.field();
    const ProjTransform tinv = proj_inverse(f, t);
    const std::uint64_t q = f.q();

    JointTransformResult out{};
    std::vector<std::uint64_t> lostPts;
    for (auto pt : cfg.points()) {
        const felem x = static_cast<felem>(pt % q);
        const felem y = static_cast<felem>(pt / q);
        const auto v = apply_vec(f, t, {x, y, 1});
        if (v[2] == 0) {
            ++out.lost_points;
            lostPts.push_back(pt);
            continue;
        }
        const felem w = f.inv(v[2]);
        out.points.push_back(pack_point(f, f.mul(v[0], w), f.mul(v[1], w)));
    }
    for (const Line& l : cfg.lines()) {
        // line ax + by = c is the covector (a, b, -c)
        const auto lv = apply_covec(f, tinv, {l.a, l.b, f.neg(l.c)});
        if (lv[0] == 0 && lv[1] == 0) {
            ++out.lost_lines;
            continue;
        }
        out.lines.push_back(make_line(f, lv[0], lv[1], f.neg(lv[2])));
    }
    // exact accounting: incidences involving a lost point are gone; lines
    // mapping to the infinity line carry only lost points.
    for (auto pt : lostPts) {
        const felem x = static_cast<felem>(pt % q);
        const felem y = static_cast<felem>(pt / q);
        for (const Line& l : cfg.lines())
            if (on_line(f, l, x, y)) ++out.lost_incidences;
    }
    return out;
}

PruneReport prune(const PointLineConfig& cfg, double lossK, double c8) {
    if (lossK < 1.0) throw std::invalid_argument("prune: loss factor must be >= 1");
    const Field& f = cfg.field();
    const double n = static_cast<double>(std::max(cfg.points().size(), cfg.lines().size()));
    const double root = std::sqrt(n);

    PruneReport rep{};
    rep.c8 = c8;
    rep.line_lo = root / (lossK * lossK);
    rep.line_hi = root * lossK * lossK;
    rep.point_lo = root / std::pow(lossK, c8);
    rep.point_hi = root * std::pow(lossK, c8);

    const auto& counts = cfg.per_line_counts();
    std::vector<Line> l2;
    for (std::size_t i = 0; i < cfg.lines().size(); ++i) {
        const double c = static_cast<double>(counts[i]);
        if (c >= rep.line_lo - 1e-9 && c <= rep.line_hi + 1e-9) l2.push_back(cfg.lines()[i]);
    }

    const std::uint64_t q = f.q();
    std::vector<std::uint64_t> p1;
    for (auto pt : cfg.points()) {
        const felem x = static_cast<felem>(pt % q);
        const felem y = static_cast<felem>(pt / q);
        std::uint64_t deg = 0;
        for (const Line& l : l2)
            if (on_line(f, l, x, y)) ++deg;
        const double d = static_cast<double>(deg);
        if (d >= rep.point_lo - 1e-9 && d <= rep.point_hi + 1e-9) p1.push_back(pt);
    }

    PointLineConfig pruned(f, p1, l2);
    rep.retained_incidences = pruned.count_incidences();
    rep.points = std::move(p1);
    rep.lines = std::move(l2);
    return rep;
}

namespace {

// Incidence adjacency: per point, the lines through it; per line, its points.
struct Adjacency {
    std::vector<std::uint64_t> pts;                       // sorted distinct
    std::vector<std::vector<std::uint32_t>> linesOfPoint; // indices into cfg lines
    std::vector<std::vector<std::uint32_t>> pointsOfLine; // indices into pts
};

Adjacency build_adjacency(const PointLineConfig& cfg) {
    const Field& f = cfg.field();
    const std::uint64_t q = f.q();
    Adjacency adj;
    adj.pts = cfg.points();
    adj.linesOfPoint.resize(adj.pts.size());
    adj.pointsOfLine.resize(cfg.lines().size());
    for (std::uint32_t pi = 0; pi < adj.pts.size(); ++pi) {
        const felem x = static_cast<felem>(adj.pts[pi] % q);
        const felem y = static_cast<felem>(adj.pts[pi] / q);
        for (std::uint32_t li = 0; li < cfg.lines().size(); ++li)
            if (on_line(f, cfg.lines()[li], x, y)) {
                adj.linesOfPoint[pi].push_back(li);
                adj.pointsOfLine[li].push_back(pi);
            }
    }
    return adj;
}

// Bitset of U(p) over point indices.
std::vector<std::uint64_t> bush_bits(const Adjacency& adj, std::uint32_t pi) {
    std::vector<std::uint64_t> bits((adj.pts.size() + 63) / 64, 0);
    for (auto li : adj.linesOfPoint[pi])
        for (auto pj : adj.pointsOfLine[li]) bits[pj >> 6] |= 1ULL << (pj & 63);
    return bits;
}

std::uint64_t and_popcount(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += __builtin_popcountll(a[i] & b[i]);
    return c;
}

}  // namespace

std::vector<std::uint64_t> bush(const PointLineConfig& cfg, std::uint64_t packedPoint) {
    const Adjacency adj = build_adjacency(cfg);
    const auto it = std::lower_bound(adj.pts.begin(), adj.pts.end(), packedPoint);
    if (it == adj.pts.end() || *it != packedPoint)
        throw std::invalid_argument("bush: point not in the configuration");
    const auto bits = bush_bits(adj, static_cast<std::uint32_t>(it - adj.pts.begin()));
    std::vector<std::uint64_t> out;
    for (std::uint32_t pi = 0; pi < adj.pts.size(); ++pi)
        if (bits[pi >> 6] & (1ULL << (pi & 63))) out.push_back(adj.pts[pi]);
    return out;
}

BestPair best_pair(const PointLineConfig& cfg, std::uint64_t budget, std::uint64_t seed) {
    const Adjacency adj = build_adjacency(cfg);
    const std::uint64_t n = adj.pts.size();
    BestPair best{};
    if (n < 2) return best;

    std::vector<std::vector<std::uint64_t>> bushes(n);
    for (std::uint32_t pi = 0; pi < n; ++pi) bushes[pi] = bush_bits(adj, pi);

    auto consider = [&](std::uint32_t i, std::uint32_t j) {
        const std::uint64_t ov = and_popcount(bushes[i], bushes[j]);
        if (!best.found || ov > best.overlap) {
            best.found = true;
            best.overlap = ov;
            best.p0 = adj.pts[i];
            best.q0 = adj.pts[j];
        }
    };

    if (n * n <= budget) {
        best.exhaustive = true;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j) consider(i, j);
    } else {
        Rng rng(seed);
        for (std::uint64_t it = 0; it < budget; ++it) {
            const std::uint32_t i = static_cast<std::uint32_t>(rng.below(n));
            const std::uint32_t j = static_cast<std::uint32_t>(rng.below(n));
            if (i != j) consider(i, j);
        }
    }
    return best;
}

ProjTransform normalize_pair(const Field& f, std::uint64_t p0, std::uint64_t q0,
                             const std::vector<std::uint64_t>& frameHints) {
    if (p0 == q0) throw std::invalid_argument("normalize_pair: points must be distinct");
    const std::uint64_t q = f.q();
    const std::array<felem, 3> v0 = {static_cast<felem>(p0 % q), static_cast<felem>(p0 / q), 1};
    const std::array<felem, 3> v1 = {static_cast<felem>(q0 % q), static_cast<felem>(q0 / q), 1};

    auto tryFrame = [&](std::array<felem, 3> r) -> std::optional<ProjTransform> {
        // columns (v0 | v1 | r); T is its inverse, so T v0 = e1, T v1 = e2.
        ProjTransform m{{v0[0], v1[0], r[0], v0[1], v1[1], r[1], v0[2], v1[2], r[2]}};
        if (proj_det(f, m) == 0) return std::nullopt;
        return proj_inverse(f, m);
    };

    for (auto hint : frameHints) {
        if (hint == p0 || hint == q0) continue;
        if (auto t = tryFrame({static_cast<felem>(hint % q), static_cast<felem>(hint / q), 1}))
            return *t;
    }
    for (std::array<felem, 3> r : {std::array<felem, 3>{0, 0, 1}, std::array<felem, 3>{0, 1, 0},
                                   std::array<felem, 3>{1, 0, 0}}) {
        if (auto t = tryFrame(r)) return *t;
    }
    throw std::logic_error("normalize_pair: no completion found");
}

GridWitness extract_grid(const PointLineConfig& cfg, double lossK, std::uint64_t budget,
                         std::uint64_t seed) {
    const Field& f = cfg.field();
    GridWitness w{};
    w.transform = proj_identity();

    const PruneReport pr = prune(cfg, lossK);
    if (pr.points.size() < 2 || pr.lines.empty()) {
        w.flag = "degenerate";
        return w;
    }
    PointLineConfig pruned(f, pr.points, pr.lines);
    const BestPair bp = best_pair(pruned, budget, seed);
    if (!bp.found) {
        w.flag = "degenerate";
        return w;
    }

    // W = U(p0) cap U(q0)
    const auto u0 = bush(pruned, bp.p0);
    const auto u1 = bush(pruned, bp.q0);
    std::vector<std::uint64_t> core;
    std::set_intersection(u0.begin(), u0.end(), u1.begin(), u1.end(), std::back_inserter(core));
    if (core.size() < 2) {
        w.flag = "degenerate";
        return w;
    }

    w.transform = normalize_pair(f, bp.p0, bp.q0, core);
    w.p_prime = core;
    w.l_prime = pr.lines;

    const ApplyResult img = apply_projective(f, w.transform, core);
    w.lost_at_infinity = img.lost_at_infinity;

    std::unordered_set<felem> aSet, bSet;
    const std::uint64_t q = f.q();
    for (auto pt : img.points) {
        aSet.insert(static_cast<felem>(pt % q));
        bSet.insert(static_cast<felem>(pt / q));
    }
    w.A.assign(aSet.begin(), aSet.end());
    w.B.assign(bSet.begin(), bSet.end());
    std::sort(w.A.begin(), w.A.end());
    std::sort(w.B.begin(), w.B.end());
    w.image_in_grid = img.points.size();  // T(P') sits inside A x B by construction

    // witness invariants, re-derived on every run
    if (w.image_in_grid + w.lost_at_infinity != w.p_prime.size())
        throw std::logic_error("extract_grid: infinity accounting broken");
    if (std::uint64_t(w.A.size()) * w.B.size() < w.image_in_grid)
        throw std::logic_error("extract_grid: image exceeds the grid");
    for (auto pt : img.points) {
        if (!std::binary_search(w.A.begin(), w.A.end(), static_cast<felem>(pt % q)) ||
            !std::binary_search(w.B.begin(), w.B.end(), static_cast<felem>(pt / q)))
            throw std::logic_error("extract_grid: image point escapes A x B");
    }

    // Recount incidences between the surviving images and transformed lines.
    PointLineConfig trimmed(f, core, pr.lines);
    const JointTransformResult joint = apply_projective_joint(trimmed, w.transform);
    PointLineConfig imageCfg(f, joint.points, joint.lines);
    w.retained_incidences = imageCfg.count_incidences();
    return w;
}

std::uint64_t collinear_energy(const Field& f, const std::vector<felem>& A,
                               const std::vector<felem>& B) {
    const unsigned __int128 work =
        (unsigned __int128)A.size() * A.size() * B.size();
    if (work > 100000000ULL) throw std::invalid_argument("collinear_energy: |A|^2 |B| over 1e8");
    std::unordered_set<felem> inA(A.begin(), A.end());
    std::uint64_t count = 0;
    for (felem y : B) {
        if (y == 0 || y == 1) continue;
        const felem oneMinus = f.sub(1, y);
        for (felem x0 : A) {
            const felem base = f.mul(oneMinus, x0);
            for (felem x1 : A)
                if (inA.count(f.add(base, f.mul(y, x1)))) ++count;
        }
    }
    return count;
}

GrowthStats growth_stats(const Field& f, const std::vector<felem>& A) {
    std::unordered_set<std::uint64_t> sum, diff, prod;
    for (felem a : A)
        for (felem b : A) {
            sum.insert(f.add(a, b));
            diff.insert(f.sub(a, b));
            prod.insert(f.mul(a, b));
        }
    const double n = std::max<std::size_t>(A.size(), 1);
    return {sum.size(), diff.size(), prod.size(), sum.size() / n, diff.size() / n, prod.size() / n};
}

BsgResult bsg_refine(const Field& f, const std::vector<felem>& A, const std::vector<felem>& B,
                     const std::vector<std::pair<felem, felem>>& G, double lossK) {
    if (A.size() != B.size()) throw std::invalid_argument("bsg: |A| != |B|");
    if (A.empty()) throw std::invalid_argument("bsg: empty sets");
    const double k = std::max(1.0, lossK);
    if (static_cast<double>(G.size()) + 1e-9 < double(A.size()) * double(B.size()) / k)
        throw std::invalid_argument("bsg: graph too sparse for the stated loss factor");
    // restricted sumset must be small, per the hypothesis
    std::unordered_map<felem, std::uint64_t> sumCount;
    for (const auto& [a, b] : G) ++sumCount[f.add(a, b)];
    if (static_cast<double>(sumCount.size()) > k * double(A.size()) + 1e-9)
        throw std::invalid_argument("bsg: restricted sumset exceeds K|A|");

    // Popular-sum filter: keep edges whose sum has at least half the mean
    // multiplicity; at least half the edges survive.
    const double meanMult = double(G.size()) / double(sumCount.size());
    std::vector<std::pair<felem, felem>> popular;
    for (const auto& [a, b] : G)
        if (double(sumCount[f.add(a, b)]) * 2.0 + 1e-9 >= meanMult) popular.push_back({a, b});

    std::unordered_map<felem, std::uint64_t> degA, degB;
    for (const auto& [a, b] : popular) {
        ++degA[a];
        ++degB[b];
    }

    const std::size_t floorA = static_cast<std::size_t>(std::ceil(double(A.size()) / k));
    const std::size_t floorB = static_cast<std::size_t>(std::ceil(double(B.size()) / k));

    // Path-of-length-3 scoring: a is good when its popular neighbors are
    // themselves popular on the B side.
    std::unordered_map<felem, std::uint64_t> score;
    for (const auto& [a, b] : popular) score[a] += degB[b];

    std::vector<felem> aSorted = A;
    std::sort(aSorted.begin(), aSorted.end(), [&](felem x, felem y) {
        const std::uint64_t sx = score.count(x) ? score[x] : 0;
        const std::uint64_t sy = score.count(y) ? score[y] : 0;
        if (sx != sy) return sx > sy;
        return x < y;
    });
    std::vector<felem> aPrime(aSorted.begin(), aSorted.begin() + std::min(aSorted.size(), std::max(floorA, std::size_t(1))));

    std::unordered_set<felem> inAPrime(aPrime.begin(), aPrime.end());
    std::unordered_map<felem, std::uint64_t> degIntoA;
    for (const auto& [a, b] : popular)
        if (inAPrime.count(a)) ++degIntoA[b];
    std::vector<felem> bSorted = B;
    std::sort(bSorted.begin(), bSorted.end(), [&](felem x, felem y) {
        const std::uint64_t sx = degIntoA.count(x) ? degIntoA[x] : 0;
        const std::uint64_t sy = degIntoA.count(y) ? degIntoA[y] : 0;
        if (sx != sy) return sx > sy;
        return x < y;
    });
    std::vector<felem> bPrime(bSorted.begin(), bSorted.begin() + std::min(bSorted.size(), std::max(floorB, std::size_t(1))));

    std::unordered_set<felem> diffs;
    for (felem a : aPrime)
        for (felem b : bPrime) diffs.insert(f.sub(a, b));

    std::sort(aPrime.begin(), aPrime.end());
    std::sort(bPrime.begin(), bPrime.end());
    BsgResult out;
    out.a_prime = std::move(aPrime);
    out.b_prime = std::move(bPrime);
    out.diff_size = diffs.size();
    out.ratio_vs_bound = double(out.diff_size) / (std::pow(k, 4.0) * double(A.size()));
    out.popular_edges = popular.size();
    return out;
}

std::optional<SubfieldWitness> subfield_detect(const Field& f, const std::vector<felem>& A,
                                               const SubfieldDetectParams& params) {
    if (A.empty()) return std::nullopt;
    std::vector<felem> a = A;
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::unordered_set<felem> inA(a.begin(), a.end());

    // Popular nonzero differences, deterministically ordered.
    std::unordered_map<felem, std::uint64_t> diffCount;
    for (felem x : a)
        for (felem y : a) {
            if (x == y) continue;
            ++diffCount[f.sub(x, y)];
        }
    std::vector<std::pair<felem, std::uint64_t>> diffs(diffCount.begin(), diffCount.end());
    std::sort(diffs.begin(), diffs.end(), [](const auto& l, const auto& r) {
        if (l.second != r.second) return l.second > r.second;
        return l.first < r.first;
    });
    if (diffs.size() > params.topDiffs) diffs.resize(params.topDiffs);

    // Scale candidates: the popular differences themselves, their pairwise
    // quotients, and 1.  Quotients alone are scale-free (they land in the
    // subfield for a planted coset), so the raw differences carry the scale.
    std::vector<felem> scales{1};
    for (const auto& [d, _] : diffs) scales.push_back(d);
    for (std::size_t i = 0; i < diffs.size() && i < 8; ++i)
        for (std::size_t j = 0; j < diffs.size() && j < 8; ++j) {
            if (i == j) continue;
            scales.push_back(f.mul(diffs[i].first, f.inv(diffs[j].first)));
        }
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
    scales.erase(std::remove(scales.begin(), scales.end(), felem(0)), scales.end());

    const auto subs = f.subfields();
    const double cap = std::pow(std::max(1.0, params.lossK), params.capC) * double(a.size());

    std::optional<SubfieldWitness> best;
    auto better = [&](const SubfieldWitness& w) {
        if (!best) return true;
        if (w.exceptional.size() != best->exceptional.size())
            return w.exceptional.size() < best->exceptional.size();
        if (w.subfield_order != best->subfield_order) return w.subfield_order < best->subfield_order;
        if (w.scale != best->scale) return w.scale < best->scale;
        return w.shift < best->shift;
    };

    for (const auto& sf : subs) {
        if (double(sf.order) > cap + 1e-9) continue;
        std::unordered_set<felem> g(sf.elements.begin(), sf.elements.end());
        for (felem x : scales) {
            // x*G + anchor covers e iff (e - anchor)/x lands in G; anchors in
            // the same coset give the same witness, the tie-break dedupes.
            std::vector<felem> anchors(a.begin(),
                                       a.begin() + std::min(a.size(), params.anchors));
            const felem xinv = f.inv(x);
            for (felem anchor : anchors) {
                SubfieldWitness w;
                w.subfield_degree = sf.degree;
                w.subfield_order = sf.order;
                w.scale = x;
                w.shift = anchor;
                w.covered = 0;
                for (felem e : a) {
                    if (g.count(f.mul(f.sub(e, anchor), xinv)))
                        ++w.covered;
                    else
                        w.exceptional.push_back(e);
                }
                if (better(w)) best = std::move(w);
            }
        }
    }
    if (!best) return std::nullopt;
    if (double(best->covered) < params.minCoverage * double(a.size())) return std::nullopt;
    return best;
}

PipelineReport incidence_structure_pipeline(const PointLineConfig& cfg, double lossK,
                                            std::uint64_t budget, std::uint64_t seed,
                                            const SubfieldDetectParams& sf) {
    PipelineReport rep{};
    rep.n = std::max(cfg.points().size(), cfg.lines().size());
    rep.incidences = cfg.count_incidences();
    rep.threshold = std::pow(double(rep.n), 1.5) / std::max(1.0, lossK);
    if (double(rep.incidences) + 1e-9 < rep.threshold) {
        rep.hypothesis_met = false;
        return rep;
    }
    rep.hypothesis_met = true;
    rep.grid = extract_grid(cfg, lossK, budget, seed);
    if (rep.grid.flag.empty()) {
        const unsigned __int128 work = (unsigned __int128)rep.grid.A.size() *
                                       rep.grid.A.size() * rep.grid.B.size();
        if (work <= 100000000ULL)
            rep.energy = collinear_energy(cfg.field(), rep.grid.A, rep.grid.B);
        SubfieldDetectParams p = sf;
        p.lossK = lossK;
        rep.witness_a = subfield_detect(cfg.field(), rep.grid.A, p);
        rep.witness_b = subfield_detect(cfg.field(), rep.grid.B, p);
    }
    return rep;
}

}  // namespace ffr
