#include "modsim/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace modsim::kernels {

namespace {

void mod_reduce_avx2(const double* x, double* out, std::size_t n, double delta) {
    const __m256d vdelta = _mm256_set1_pd(delta);
    const __m256d vinv = _mm256_set1_pd(1.0 / delta);
    const __m256d vhalf_c = _mm256_set1_pd(0.5);
    const __m256d vhalf = _mm256_set1_pd(delta / 2.0);
    const __m256d vneg_half = _mm256_set1_pd(-delta / 2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        __m256d k = _mm256_floor_pd(_mm256_fmadd_pd(v, vinv, vhalf_c));
        __m256d r = _mm256_fnmadd_pd(k, vdelta, v);
        // boundary corrections: r in [-delta/2, delta/2)
        __m256d ge = _mm256_cmp_pd(r, vhalf, _CMP_GE_OQ);
        r = _mm256_sub_pd(r, _mm256_and_pd(ge, vdelta));
        __m256d lt = _mm256_cmp_pd(r, vneg_half, _CMP_LT_OQ);
        r = _mm256_add_pd(r, _mm256_and_pd(lt, vdelta));
        _mm256_storeu_pd(out + i, r);
    }
    const double half = delta / 2.0;
    for (; i < n; ++i) {
        double r = x[i] - delta * __builtin_floor(x[i] / delta + 0.5);
        if (r >= half) r -= delta;
        if (r < -half) r += delta;
        out[i] = r;
    }
}

void map_bits_avx2(const uint8_t* bits, double* out, std::size_t n, double h0, double h1) {
    const __m256d v0 = _mm256_set1_pd(h0);
    const __m256d v1 = _mm256_set1_pd(h1);
    const __m128i zero = _mm_setzero_si128();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i b = _mm_cvtsi32_si128(*reinterpret_cast<const int32_t*>(bits + i));
        __m128i nz32 = _mm_cmpeq_epi32(_mm_cvtepu8_epi32(b), zero);
        __m256d is_zero = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(nz32));
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(v1, v0, is_zero));
    }
    for (; i < n; ++i) out[i] = bits[i] ? h1 : h0;
}

void label_regions_avx2(const double* y, uint8_t* out, std::size_t n, double lo0, double hi0,
                        double lo1, double hi1) {
    const __m256d vlo0 = _mm256_set1_pd(lo0);
    const __m256d vhi0 = _mm256_set1_pd(hi0);
    const __m256d vlo1 = _mm256_set1_pd(lo1);
    const __m256d vhi1 = _mm256_set1_pd(hi1);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(y + i);
        __m256d in0 = _mm256_and_pd(_mm256_cmp_pd(v, vlo0, _CMP_GE_OQ),
                                    _mm256_cmp_pd(v, vhi0, _CMP_LT_OQ));
        __m256d in1 = _mm256_and_pd(_mm256_cmp_pd(v, vlo1, _CMP_GE_OQ),
                                    _mm256_cmp_pd(v, vhi1, _CMP_LT_OQ));
        const int mask = _mm256_movemask_pd(_mm256_or_pd(in0, in1));
        out[i + 0] = (mask & 1) ? 0 : 1;
        out[i + 1] = (mask & 2) ? 0 : 1;
        out[i + 2] = (mask & 4) ? 0 : 1;
        out[i + 3] = (mask & 8) ? 0 : 1;
    }
    for (; i < n; ++i) {
        const double v = y[i];
        out[i] = ((v >= lo0 && v < hi0) || (v >= lo1 && v < hi1)) ? 0 : 1;
    }
}

std::size_t count_mismatch_avx2(const uint8_t* a, const uint8_t* b, std::size_t n) {
    std::size_t c = 0;
    std::size_t i = 0;
    const __m256i zero = _mm256_setzero_si256();
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i eq = _mm256_cmpeq_epi8(_mm256_xor_si256(va, vb), zero);
        const uint32_t mask = static_cast<uint32_t>(_mm256_movemask_epi8(eq));
        c += 32u - static_cast<unsigned>(__builtin_popcount(mask));
    }
    for (; i < n; ++i) c += a[i] != b[i];
    return c;
}

} // namespace

const KernelTable* avx2() {
    static const KernelTable table = {mod_reduce_avx2, map_bits_avx2, label_regions_avx2,
                                      count_mismatch_avx2, "avx2"};
    static const KernelTable* chosen =
        __builtin_cpu_supports("avx2") ? &table : nullptr;
    return chosen;
}

} // namespace modsim::kernels

#else

namespace modsim::kernels {
const KernelTable* avx2() { return nullptr; }
} // namespace modsim::kernels

#endif
