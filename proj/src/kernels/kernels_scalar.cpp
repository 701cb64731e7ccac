#include "ffr/kernels.hpp"

#include <cmath>

namespace ffr::kernels {
namespace {

double abs2_sum_scalar(const cplx* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = v[i].real(), im = v[i].imag();
        acc += re * re + im * im;
    }
    return acc;
}

double abs4_sum_scalar(const cplx* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = v[i].real(), im = v[i].imag();
        const double m2 = re * re + im * im;
        acc += m2 * m2;
    }
    return acc;
}

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // a * conj(b)
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
    }
    return {re, im};
}

cplx phase_mac3_scalar(std::uint32_t p, std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                       const std::uint16_t* u0, const std::uint16_t* u1, const std::uint16_t* u2,
                       const cplx* w, const cplx* table, std::size_t n) {
    double re = 0.0, im = 0.0;
    if (w == nullptr) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t idx = (c0 * u0[i] + c1 * u1[i] + c2 * u2[i]) % p;
            re += table[idx].real();
            im += table[idx].imag();
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t idx = (c0 * u0[i] + c1 * u1[i] + c2 * u2[i]) % p;
            const double tr = table[idx].real(), ti = table[idx].imag();
            re += w[i].real() * tr - w[i].imag() * ti;
            im += w[i].real() * ti + w[i].imag() * tr;
        }
    }
    return {re, im};
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", abs2_sum_scalar, abs4_sum_scalar, dot_conj_scalar,
                           phase_mac3_scalar};
    return b;
}

double abs_pow_sum(const cplx* v, std::size_t n, double p) {
    // Kahan compensated accumulation; exponents here are arbitrary reals.
    double acc = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = std::abs(v[i]);
        if (m == 0.0) continue;
        const double term = std::pow(m, p);
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

}  // namespace ffr::kernels
