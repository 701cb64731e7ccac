#include "ffr/kernels.hpp"

#if defined(FFR_BUILD_AVX2) && defined(__AVX2__)

#include <immintrin.h>

namespace ffr::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double abs2_sum_avx2(const cplx* v, std::size_t n) {
    const double* d = reinterpret_cast<const double*>(v);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(d + 2 * i);  // re0 im0 re1 im1
        acc = _mm256_fmadd_pd(x, x, acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) out += d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
    return out;
}

double abs4_sum_avx2(const cplx* v, std::size_t n) {
    const double* d = reinterpret_cast<const double*>(v);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x0 = _mm256_loadu_pd(d + 2 * i);      // re0 im0 re1 im1
        __m256d x1 = _mm256_loadu_pd(d + 2 * i + 4);  // re2 im2 re3 im3
        __m256d sq0 = _mm256_mul_pd(x0, x0);
        __m256d sq1 = _mm256_mul_pd(x1, x1);
        // |z|^2 per lane: pairwise re^2+im^2 of adjacent entries
        __m256d m2 = _mm256_hadd_pd(sq0, sq1);  // z0 z2 z1 z3
        acc = _mm256_fmadd_pd(m2, m2, acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) {
        const double m2 = d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
        out += m2 * m2;
    }
    return out;
}

cplx dot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* da = reinterpret_cast<const double*>(a);
    const double* db = reinterpret_cast<const double*>(b);
    __m256d accRe = _mm256_setzero_pd();
    __m256d accIm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(da + 2 * i);              // ar0 ai0 ar1 ai1
        __m256d y = _mm256_loadu_pd(db + 2 * i);              // br0 bi0 br1 bi1
        __m256d ysw = _mm256_permute_pd(y, 0x5);              // bi0 br0 bi1 br1
        accRe = _mm256_fmadd_pd(x, y, accRe);                 // ar*br, ai*bi
        accIm = _mm256_fmadd_pd(x, ysw, accIm);               // ar*bi, ai*br
    }
    // accRe lanes hold ar*br / ai*bi interleaved: both add.
    double re = hsum(accRe);
    // accIm lanes hold ar*bi (even) and ai*br (odd): im = sum(odd) - sum(even).
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, accIm);
    double im = (lanes[1] + lanes[3]) - (lanes[0] + lanes[2]);
    for (; i < n; ++i) {
        re += da[2 * i] * db[2 * i] + da[2 * i + 1] * db[2 * i + 1];
        im += da[2 * i + 1] * db[2 * i] - da[2 * i] * db[2 * i + 1];
    }
    return {re, im};
}

cplx phase_mac3_avx2(std::uint32_t p, std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                     const std::uint16_t* u0, const std::uint16_t* u1, const std::uint16_t* u2,
                     const cplx* w, const cplx* table, std::size_t n) {
    const double* td = reinterpret_cast<const double*>(table);
    const __m128i k0 = _mm_set1_epi32(static_cast<int>(c0));
    const __m128i k1 = _mm_set1_epi32(static_cast<int>(c1));
    const __m128i k2 = _mm_set1_epi32(static_cast<int>(c2));
    const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
    const __m256d pinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
    __m256d accRe = _mm256_setzero_pd();
    __m256d accIm = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i a0 = _mm_cvtepu16_epi32(_mm_loadl_epi64((const __m128i*)(u0 + i)));
        __m128i a1 = _mm_cvtepu16_epi32(_mm_loadl_epi64((const __m128i*)(u1 + i)));
        __m128i a2 = _mm_cvtepu16_epi32(_mm_loadl_epi64((const __m128i*)(u2 + i)));
        __m128i s = _mm_add_epi32(_mm_add_epi32(_mm_mullo_epi32(k0, a0), _mm_mullo_epi32(k1, a1)),
                                  _mm_mullo_epi32(k2, a2));
        // s mod p through double division; exact since s < 2^31 << 2^53.
        __m256d sd = _mm256_cvtepi32_pd(s);
        __m256d q = _mm256_floor_pd(_mm256_mul_pd(sd, pinv));
        __m256d r = _mm256_fnmadd_pd(q, pd, sd);
        // one fixup step in case floor landed one short / one over
        __m256d geP = _mm256_cmp_pd(r, pd, _CMP_GE_OQ);
        r = _mm256_sub_pd(r, _mm256_and_pd(geP, pd));
        __m256d ltZ = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
        r = _mm256_add_pd(r, _mm256_and_pd(ltZ, pd));
        __m128i idx = _mm256_cvttpd_epi32(r);
        __m128i idx2 = _mm_slli_epi32(idx, 1);  // complex stride

        __m256d tre = _mm256_i32gather_pd(td, idx2, 8);
        __m256d tim = _mm256_i32gather_pd(td, _mm_add_epi32(idx2, _mm_set1_epi32(1)), 8);
        if (w == nullptr) {
            accRe = _mm256_add_pd(accRe, tre);
            accIm = _mm256_add_pd(accIm, tim);
        } else {
            const double* wd = reinterpret_cast<const double*>(w + i);
            __m256d w01 = _mm256_loadu_pd(wd);      // wr0 wi0 wr1 wi1
            __m256d w23 = _mm256_loadu_pd(wd + 4);  // wr2 wi2 wr3 wi3
            __m256d wre = _mm256_unpacklo_pd(w01, w23);  // wr0 wr2 wi0... careful below
            __m256d wim = _mm256_unpackhi_pd(w01, w23);
            // unpack gives lane order (wr0, wr2, wr1, wr3); gather produced
            // (t0, t1, t2, t3), so permute the w lanes to match.
            wre = _mm256_permute4x64_pd(wre, _MM_SHUFFLE(3, 1, 2, 0));
            wim = _mm256_permute4x64_pd(wim, _MM_SHUFFLE(3, 1, 2, 0));
            accRe = _mm256_fmadd_pd(wre, tre, accRe);
            accRe = _mm256_fnmadd_pd(wim, tim, accRe);
            accIm = _mm256_fmadd_pd(wre, tim, accIm);
            accIm = _mm256_fmadd_pd(wim, tre, accIm);
        }
    }
    double re = hsum(accRe), im = hsum(accIm);
    for (; i < n; ++i) {
        const std::uint32_t idx = (c0 * u0[i] + c1 * u1[i] + c2 * u2[i]) % p;
        const double tr = table[idx].real(), ti = table[idx].imag();
        if (w == nullptr) {
            re += tr;
            im += ti;
        } else {
            re += w[i].real() * tr - w[i].imag() * ti;
            im += w[i].real() * ti + w[i].imag() * tr;
        }
    }
    return {re, im};
}

}  // namespace

const Backend* avx2_backend() {
    static const Backend b{"avx2", abs2_sum_avx2, abs4_sum_avx2, dot_conj_avx2, phase_mac3_avx2};
    return &b;
}

}  // namespace ffr::kernels

#else

namespace ffr::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace ffr::kernels

#endif
