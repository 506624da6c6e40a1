#include "gridcast/kernels.hpp"

#if GRIDCAST_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace gridcast::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_min_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_min_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Exact int64 -> double for values in [-2^51, 2^51).
inline __m256d i64_to_pd(__m256i v) {
    const __m256i magic_i = _mm256_set1_epi64x(0x4338000000000000LL);
    const __m256d magic_d = _mm256_castsi256_pd(magic_i);
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(v, magic_i)), magic_d);
}

// log2 of four positive normal doubles.
//
// x = m * 2^e with m in [0.5, 1); fold m below 1/sqrt(2) up one octave so the
// reduced mantissa m2 lies in [1/sqrt(2), sqrt(2)).  Then with s = r/(2+r),
// r = m2 - 1:  ln(m2) = 2*atanh(s) = 2s * sum_j s^(2j)/(2j+1), truncated at
// j = 10 (|s| <= 0.1716 keeps the tail below 1e-17).
inline __m256d log2_pd(__m256d x) {
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i exp_biased = _mm256_srli_epi64(bits, 52);
    const __m256i mant_bits = _mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
        _mm256_set1_epi64x(0x3FE0000000000000LL));
    const __m256d m = _mm256_castsi256_pd(mant_bits);  // [0.5, 1)

    __m256d e = i64_to_pd(_mm256_sub_epi64(exp_biased, _mm256_set1_epi64x(1022)));

    const __m256d inv_sqrt2 = _mm256_set1_pd(0.70710678118654752440);
    const __m256d fold = _mm256_cmp_pd(m, inv_sqrt2, _CMP_LT_OQ);
    const __m256d m2 = _mm256_blendv_pd(m, _mm256_add_pd(m, m), fold);
    e = _mm256_add_pd(e, _mm256_and_pd(fold, _mm256_set1_pd(-1.0)));

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d r = _mm256_sub_pd(m2, one);
    const __m256d s = _mm256_div_pd(r, _mm256_add_pd(r, _mm256_set1_pd(2.0)));
    const __m256d t = _mm256_mul_pd(s, s);

    __m256d p = _mm256_set1_pd(1.0 / 21.0);
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 19.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 17.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 15.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.0 / 3.0));
    p = _mm256_fmadd_pd(p, t, one);

    const __m256d log2e = _mm256_set1_pd(1.44269504088896340736);
    const __m256d ln_m2 = _mm256_mul_pd(_mm256_add_pd(s, s), p);
    return _mm256_fmadd_pd(ln_m2, log2e, e);
}

}  // namespace

void min_inplace(double* dst, const double* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(dst + i);
        __m256d s = _mm256_loadu_pd(src + i);
        _mm256_storeu_pd(dst + i, _mm256_min_pd(s, d));
    }
    for (; i < n; ++i) {
        if (src[i] < dst[i]) dst[i] = src[i];
    }
}

double min_value(const double* x, std::size_t n) {
    std::size_t i = 0;
    double m = std::numeric_limits<double>::infinity();
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) {
            acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
        }
        m = hmin(acc);
    }
    for (; i < n; ++i) {
        if (x[i] < m) m = x[i];
    }
    return m;
}

void scale(double* dst, const double* src, double c, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(src + i), vc));
    }
    for (; i < n; ++i) dst[i] = src[i] * c;
}

void divide(double* dst, const double* src, double c, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_div_pd(_mm256_loadu_pd(src + i), vc));
    }
    for (; i < n; ++i) dst[i] = src[i] / c;
}

double sum(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    }
    double total = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) total += x[i];
    return total;
}

double sum_recip(const double* x, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_div_pd(one, _mm256_loadu_pd(x + i)));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += 1.0 / x[i];
    return total;
}

double sum_log2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, log2_pd(_mm256_loadu_pd(x + i)));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += std::log2(x[i]);
    return total;
}

}  // namespace gridcast::kernels::avx2

#endif  // GRIDCAST_HAVE_AVX2
