#include "ffr/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ffr {
namespace {

constexpr std::uint64_t kMaxQ = 59049;  // 3^10, the enumeration design point

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over GF(p) as coefficient vectors, low degree first.
using Poly = std::vector<std::uint32_t>;

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    a = poly_trim(std::move(a));
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint32_t lead = a.back();
        if (lead != 0) {
            // m is monic, so subtract lead * x^(deg a - dm) * m
            const std::size_t shift = a.size() - 1 - dm;
            for (std::size_t i = 0; i <= dm; ++i) {
                std::uint64_t v = a[shift + i] + std::uint64_t(p) * lead - std::uint64_t(lead) * m[i] % p;
                a[shift + i] = static_cast<std::uint32_t>(v % p);
            }
        }
        a.pop_back();
        a = poly_trim(std::move(a));
        if (a.size() <= dm) break;
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    return poly_mod(std::move(r), m, p);
}

bool poly_divides(const Poly& d, const Poly& a, std::uint32_t p) {
    return poly_mod(a, d, p).empty();
}

// Monic polynomial of degree deg from a coefficient code in [0, p^deg).
Poly poly_from_code(std::uint64_t code, std::uint32_t deg, std::uint32_t p) {
    Poly f(deg + 1, 0);
    for (std::uint32_t i = 0; i < deg; ++i) {
        f[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    f[deg] = 1;
    return f;
}

bool poly_irreducible(const Poly& m, std::uint32_t p) {
    const std::uint32_t k = static_cast<std::uint32_t>(m.size() - 1);
    if (k == 0) return false;
    if (k == 1) return true;
    std::uint64_t count = 1;
    for (std::uint32_t deg = 1; 2 * deg <= k; ++deg) {
        count *= p;
        for (std::uint64_t code = 0; code < count; ++code)
            if (poly_divides(poly_from_code(code, deg, p), m, p)) return false;
    }
    return true;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

struct Field::Impl {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint64_t q = 0;
    Poly modulus;

    // exp/log over a fixed generator; expTab doubled so mul never wraps.
    std::vector<felem> expTab;       // size 2(q-1)
    std::vector<std::uint32_t> logTab;  // size q, logTab[0] unused
    std::vector<std::uint16_t> traceTab;
    std::vector<std::complex<double>> unityTab;  // p-th roots of unity

    felem encode(const Poly& f) const {
        std::uint64_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = v * p + f[i];
        return static_cast<felem>(v);
    }
    Poly decode(felem a) const {
        Poly f;
        std::uint64_t v = a;
        while (v) {
            f.push_back(static_cast<std::uint32_t>(v % p));
            v /= p;
        }
        return f;
    }

    felem add(felem a, felem b) const {
        if (k == 1) {
            const std::uint32_t s = a + b;
            return s >= p ? s - p : s;
        }
        std::uint64_t r = 0, mul = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint32_t da = a % p, db = b % p;
            a /= p;
            b /= p;
            std::uint32_t s = da + db;
            if (s >= p) s -= p;
            r += std::uint64_t(s) * mul;
            mul *= p;
        }
        return static_cast<felem>(r);
    }

    felem neg(felem a) const {
        if (k == 1) return a == 0 ? 0 : p - a;
        std::uint64_t r = 0, mul = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint32_t d = a % p;
            a /= p;
            r += std::uint64_t(d == 0 ? 0 : p - d) * mul;
            mul *= p;
        }
        return static_cast<felem>(r);
    }

    felem mul(felem a, felem b) const {
        if (a == 0 || b == 0) return 0;
        return expTab[logTab[a] + logTab[b]];
    }

    felem pow(felem a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        const std::uint64_t ord = q - 1;
        return expTab[(std::uint64_t(logTab[a]) * (e % ord)) % ord];
    }
};

Field Field::with_modulus(std::uint32_t p, const std::vector<std::uint32_t>& coeffs) {
    auto impl = std::make_shared<Impl>();
    if (!is_prime(p)) throw std::invalid_argument("field: p not prime: " + std::to_string(p));
    if (p == 2) throw std::invalid_argument("field: characteristic 2 excluded");
    if (coeffs.size() < 2) throw std::invalid_argument("field: modulus must have degree >= 1");
    if (coeffs.size() > 11) throw std::invalid_argument("field: q exceeds the enumeration cap 3^10");
    impl->p = p;
    impl->k = static_cast<std::uint32_t>(coeffs.size() - 1);
    impl->q = ipow(p, impl->k);
    if (impl->q > kMaxQ)
        throw std::invalid_argument("field: q exceeds the enumeration cap 3^10");
    for (auto c : coeffs)
        if (c >= p) throw std::invalid_argument("field: modulus coefficient out of range");
    if (coeffs.back() != 1) throw std::invalid_argument("field: modulus must be monic");
    impl->modulus = coeffs;
    if (impl->k > 1 && !poly_irreducible(impl->modulus, p))
        throw std::invalid_argument("field: modulus is reducible");

    const std::uint64_t q = impl->q;
    const std::uint64_t ord = q - 1;

    // Generator search: multiplicative order q-1 checked against the prime
    // factors of q-1.
    std::vector<std::uint64_t> primeFactors;
    {
        std::uint64_t m = ord;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                primeFactors.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) primeFactors.push_back(m);
    }
    auto powSlow = [&](felem a, std::uint64_t e) {
        Poly base = impl->decode(a), acc = {1};
        while (e) {
            if (e & 1) acc = poly_mulmod(acc, base, impl->modulus, p);
            base = poly_mulmod(base, base, impl->modulus, p);
            e >>= 1;
        }
        return impl->encode(acc);
    };
    felem gen = 0;
    for (felem c = 2; c < q; ++c) {
        if (c == 0) continue;
        bool ok = true;
        for (auto f : primeFactors)
            if (powSlow(c, ord / f) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            gen = c;
            break;
        }
    }
    if (gen == 0) throw std::logic_error("field: no generator found");

    impl->expTab.resize(2 * ord);
    impl->logTab.assign(q, 0);
    Poly cur = {1};
    const Poly genPoly = impl->decode(gen);
    for (std::uint64_t i = 0; i < ord; ++i) {
        const felem e = impl->encode(cur);
        impl->expTab[i] = e;
        impl->expTab[i + ord] = e;
        impl->logTab[e] = static_cast<std::uint32_t>(i);
        cur = poly_mulmod(cur, genPoly, impl->modulus, p);
    }
    if (impl->encode(cur) != 1) throw std::logic_error("field: generator order mismatch");

    impl->traceTab.resize(q);
    for (felem a = 0; a < q; ++a) {
        felem t = 0;
        std::uint64_t pe = 1;
        for (std::uint32_t i = 0; i < impl->k; ++i) {
            t = impl->add(t, impl->pow(a, pe));
            pe *= p;
        }
        if (t >= p) throw std::logic_error("field: trace left the prime subfield");
        impl->traceTab[a] = static_cast<std::uint16_t>(t);
    }

    impl->unityTab.resize(p);
    for (std::uint32_t t = 0; t < p; ++t) {
        const double ang = 2.0 * std::numbers::pi * t / p;
        impl->unityTab[t] = {std::cos(ang), std::sin(ang)};
    }

    return Field(std::move(impl));
}

Field Field::make(std::uint32_t p, std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("field: k must be >= 1");
    if (k > 10) throw std::invalid_argument("field: q exceeds the enumeration cap 3^10");
    if (k == 1) return with_modulus(p, {0, 1});
    if (!is_prime(p) || p == 2)
        throw std::invalid_argument("field: p not an odd prime: " + std::to_string(p));
    const std::uint64_t count = ipow(p, k);
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly m = poly_from_code(code, k, p);
        if (poly_irreducible(m, p)) return with_modulus(p, m);
    }
    throw std::logic_error("field: no irreducible modulus found");
}

namespace {
std::uint32_t parse_u32(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("field: cannot parse description near '" + s + "'");
    unsigned long v = std::stoul(s);
    if (v > 0xffffffffUL) throw std::invalid_argument("field: value out of range: " + s);
    return static_cast<std::uint32_t>(v);
}
}  // namespace

Field Field::parse(const std::string& desc) {
    const auto caret = desc.find('^');
    const auto slash = desc.find('/');
    const std::uint32_t p = parse_u32(desc.substr(0, std::min(caret, slash)));
    std::uint32_t k = 1;
    if (caret != std::string::npos) {
        const auto kEnd = slash == std::string::npos ? desc.size() : slash;
        k = parse_u32(desc.substr(caret + 1, kEnd - caret - 1));
    }
    if (slash == std::string::npos) return make(p, k);
    std::vector<std::uint32_t> coeffs;
    std::stringstream ss(desc.substr(slash + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) coeffs.push_back(parse_u32(tok));
    if (coeffs.size() != std::size_t(k) + 1)
        throw std::invalid_argument("field: modulus needs k+1 coefficients");
    return with_modulus(p, coeffs);
}

std::uint32_t Field::p() const { return impl_->p; }
std::uint32_t Field::k() const { return impl_->k; }
std::uint64_t Field::q() const { return impl_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return impl_->modulus; }

std::string Field::describe() const {
    std::string s = std::to_string(impl_->p) + "^" + std::to_string(impl_->k) + "/";
    for (std::size_t i = 0; i < impl_->modulus.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(impl_->modulus[i]);
    }
    return s;
}

felem Field::add(felem a, felem b) const { return impl_->add(a, b); }
felem Field::sub(felem a, felem b) const { return impl_->add(a, impl_->neg(b)); }
felem Field::neg(felem a) const { return impl_->neg(a); }
felem Field::mul(felem a, felem b) const { return impl_->mul(a, b); }

felem Field::inv(felem a) const {
    if (a == 0) throw std::domain_error("field: inverse of zero");
    const std::uint64_t ord = impl_->q - 1;
    return impl_->expTab[(ord - impl_->logTab[a]) % ord];
}

felem Field::pow(felem a, std::uint64_t e) const { return impl_->pow(a, e); }

felem Field::from_int(std::int64_t n) const {
    const std::int64_t p = impl_->p;
    std::int64_t r = n % p;
    if (r < 0) r += p;
    return static_cast<felem>(r);
}

std::uint32_t Field::trace(felem a) const { return impl_->traceTab[a]; }

std::complex<double> Field::character(felem a) const {
    return impl_->unityTab[impl_->traceTab[a]];
}

std::complex<double> Field::character_neg(felem a) const {
    const std::uint32_t t = impl_->traceTab[a];
    return impl_->unityTab[t == 0 ? 0 : impl_->p - t];
}

bool Field::is_square(felem a) const {
    if (a == 0) return true;
    return (impl_->logTab[a] & 1) == 0;
}

bool Field::minus_one_is_square() const { return is_square(impl_->neg(1)); }

std::vector<Subfield> Field::subfields() const {
    std::vector<Subfield> out;
    const std::uint64_t ord = impl_->q - 1;
    for (std::uint32_t j = 1; j <= impl_->k; ++j) {
        if (impl_->k % j != 0) continue;
        Subfield sf;
        sf.degree = j;
        sf.order = ipow(impl_->p, j);
        // Nonzero fixed points of x -> x^{p^j} are the powers of
        // g^{(q-1)/(p^j-1)}.
        const std::uint64_t step = ord / (sf.order - 1);
        sf.elements.push_back(0);
        for (std::uint64_t m = 0; m < sf.order - 1; ++m)
            sf.elements.push_back(impl_->expTab[(m * step) % ord]);
        std::sort(sf.elements.begin(), sf.elements.end());
        out.push_back(std::move(sf));
    }
    return out;
}

const std::complex<double>* Field::unity_table() const { return impl_->unityTab.data(); }
const std::uint16_t* Field::trace_table() const { return impl_->traceTab.data(); }

bool Field::operator==(const Field& other) const {
    return impl_->p == other.impl_->p && impl_->modulus == other.impl_->modulus;
}

}  // namespace ffr
