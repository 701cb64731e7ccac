#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Data-parallel inner loops shared by the transform, extension and norm code.
// Each kernel has a scalar reference implementation and (on x86_64) an AVX2
// variant; dispatch() picks one at startup based on cpuid.  The two variants
// are equivalence-tested against each other, and the scalar versions double
// as the oracle for the vectorised paths.
//
// Setting the environment variable FFR_FORCE_SCALAR=1 pins the scalar
// backend regardless of cpu support.

namespace ffr::kernels {

using cplx = std::complex<double>;

struct Backend {
    const char* name;

    // sum of |v[i]|^2 and |v[i]|^4
    double (*abs2_sum)(const cplx* v, std::size_t n);
    double (*abs4_sum)(const cplx* v, std::size_t n);

    // sum of a[i] * conj(b[i])
    cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);

    // sum_i w[i] * table[(c0*u0[i] + c1*u1[i] + c2*u2[i]) mod p]
    // with w == nullptr meaning unit weights.  Coordinates and coefficients
    // are reduced mod p on entry; p*p*3 must fit in int32 (p < 26000).
    cplx (*phase_mac3)(std::uint32_t p, std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                       const std::uint16_t* u0, const std::uint16_t* u1, const std::uint16_t* u2,
                       const cplx* w, const cplx* table, std::size_t n);
};

// Active backend (dispatch runs once, thread-safe).
const Backend& active();

// Named backends, for equivalence tests.
const Backend& scalar_backend();
const Backend* avx2_backend();  // nullptr when unavailable

inline double abs2_sum(const cplx* v, std::size_t n) { return active().abs2_sum(v, n); }
inline double abs4_sum(const cplx* v, std::size_t n) { return active().abs4_sum(v, n); }
inline cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
    return active().dot_conj(a, b, n);
}
inline cplx phase_mac3(std::uint32_t p, std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                       const std::uint16_t* u0, const std::uint16_t* u1, const std::uint16_t* u2,
                       const cplx* w, const cplx* table, std::size_t n) {
    return active().phase_mac3(p, c0, c1, c2, u0, u1, u2, w, table, n);
}

// General |v|^p accumulation with compensated summation; no SIMD variant,
// the even integer exponents above cover the hot paths.
double abs_pow_sum(const cplx* v, std::size_t n, double p);

}  // namespace ffr::kernels
