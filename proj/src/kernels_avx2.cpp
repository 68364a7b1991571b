#include "isogrow/kernels.hpp"

#include <immintrin.h>

namespace isogrow::kernels {

namespace {

void squared_norms_avx2(const double* data, std::size_t count, std::size_t dim, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t d = 0; d < dim; ++d) {
            const __m256d x = _mm256_loadu_pd(data + d * count + i);
            acc = _mm256_fmadd_pd(x, x, acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < count; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double x = data[d * count + i];
            acc += x * x;
        }
        out[i] = acc;
    }
}

void dot_products_avx2(const double* data, std::size_t count, std::size_t dim, const double* v,
                       double* out) {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t d = 0; d < dim; ++d) {
            const __m256d x = _mm256_loadu_pd(data + d * count + i);
            acc = _mm256_fmadd_pd(_mm256_set1_pd(v[d]), x, acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < count; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            acc += v[d] * data[d * count + i];
        }
        out[i] = acc;
    }
}

void scale_shift_avx2(const double* in, std::size_t count, double scale, double shift,
                      double* out) {
    const __m256d vs = _mm256_set1_pd(scale);
    const __m256d vb = _mm256_set1_pd(shift);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d x = _mm256_loadu_pd(in + i);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(x, vs, vb));
    }
    for (; i < count; ++i) {
        out[i] = in[i] * scale + shift;
    }
}

std::size_t count_leq_avx2(const double* values, std::size_t count, double bound) {
    const __m256d vb = _mm256_set1_pd(bound);
    std::size_t n = 0;
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d x = _mm256_loadu_pd(values + i);
        const __m256d m = _mm256_cmp_pd(x, vb, _CMP_LE_OQ);
        n += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(m)));
    }
    for (; i < count; ++i) {
        n += values[i] <= bound ? 1 : 0;
    }
    return n;
}

constexpr Ops kAvx2Ops{
    squared_norms_avx2, dot_products_avx2, scale_shift_avx2, count_leq_avx2, "avx2"};

}  // namespace

bool avx2_available() {
    static const bool supported =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported;
}

const Ops& avx2_ops() { return kAvx2Ops; }

}  // namespace isogrow::kernels
