// AVX2 variants. Compiled with -mavx2 only (no FMA contraction), so every
// lane performs exactly the scalar reference arithmetic; reductions differ
// from the scalar ones only in summation order.

#include <immintrin.h>

#include <cmath>

#include "feq/kernels.hpp"

namespace feq::kernels {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Four shifts per register: one Sturm recurrence per lane.
void sturm_counts_avx2(const double* diag, const double* offdiag_sq, std::size_t n,
                       const double* shifts, std::size_t n_shifts, double pivmin, int* counts) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d piv = _mm256_set1_pd(pivmin);
    const __m256d neg_piv = _mm256_set1_pd(-pivmin);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);

    std::size_t s = 0;
    for (; s + 4 <= n_shifts; s += 4) {
        const __m256d sigma = _mm256_loadu_pd(shifts + s);
        __m256d q = _mm256_sub_pd(_mm256_set1_pd(diag[0]), sigma);
        __m256d tiny = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, q), piv, _CMP_LT_OQ);
        q = _mm256_blendv_pd(q, neg_piv, tiny);
        __m256d count = _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one);
        for (std::size_t i = 1; i < n; ++i) {
            const __m256d shifted = _mm256_sub_pd(_mm256_set1_pd(diag[i]), sigma);
            q = _mm256_sub_pd(shifted, _mm256_div_pd(_mm256_set1_pd(offdiag_sq[i - 1]), q));
            tiny = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, q), piv, _CMP_LT_OQ);
            q = _mm256_blendv_pd(q, neg_piv, tiny);
            count = _mm256_add_pd(count, _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one));
        }
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, count);
        for (int l = 0; l < 4; ++l) counts[s + l] = static_cast<int>(lanes[l]);
    }
    if (s < n_shifts)
        scalar_table().sturm_counts(diag, offdiag_sq, n, shifts + s, n_shifts - s, pivmin,
                                    counts + s);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        acc1 = _mm256_add_pd(acc1,
                             _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

double weighted_dot_avx2(const double* a, const double* w, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(w + i));
        const __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(w + i + 4));
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(p0, _mm256_loadu_pd(b + i)));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(p1, _mm256_loadu_pd(b + i + 4)));
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += (a[i] * w[i]) * b[i];
    return sum;
}

void image_potential_avx2(const double* z, double* out, std::size_t n,
                          const ImagePotentialCoeffs& c) {
    const __m256d coulomb = _mm256_set1_pd(c.coulomb);
    const __m256d offset = _mm256_set1_pd(c.offset);
    const __m256d field = _mm256_set1_pd(c.field);
    const __m256d barrier = _mm256_set1_pd(c.barrier);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d zi = _mm256_loadu_pd(z + i);
        const __m256d outside = _mm256_cmp_pd(zi, zero, _CMP_LE_OQ);
        const __m256d v = _mm256_sub_pd(_mm256_mul_pd(field, zi),
                                        _mm256_div_pd(coulomb, _mm256_add_pd(zi, offset)));
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(v, barrier, outside));
    }
    if (i < n) scalar_table().image_potential(z + i, out + i, n - i, c);
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable t{sturm_counts_avx2, dot_avx2, weighted_dot_avx2,
                               image_potential_avx2};
    return t;
}

}  // namespace feq::kernels
