#include "isogrow/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace isogrow::kernels {

namespace {

void squared_norms_scalar(const double* data, std::size_t count, std::size_t dim, double* out) {
    for (std::size_t i = 0; i < count; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double x = data[d * count + i];
            acc += x * x;
        }
        out[i] = acc;
    }
}

void dot_products_scalar(const double* data, std::size_t count, std::size_t dim, const double* v,
                         double* out) {
    for (std::size_t i = 0; i < count; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            acc += v[d] * data[d * count + i];
        }
        out[i] = acc;
    }
}

void scale_shift_scalar(const double* in, std::size_t count, double scale, double shift,
                        double* out) {
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = in[i] * scale + shift;
    }
}

std::size_t count_leq_scalar(const double* values, std::size_t count, double bound) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < count; ++i) {
        n += values[i] <= bound ? 1 : 0;
    }
    return n;
}

constexpr Ops kScalarOps{
    squared_norms_scalar, dot_products_scalar, scale_shift_scalar, count_leq_scalar, "scalar"};

std::atomic<const Ops*> g_forced{nullptr};

bool force_scalar_env() {
    const char* env = std::getenv("ISOGROW_FORCE_SCALAR");
    return env != nullptr && env[0] == '1';
}

const Ops* detect_backend() {
    if (force_scalar_env()) {
        return &kScalarOps;
    }
#if defined(ISOGROW_HAVE_AVX2)
    if (avx2_available()) {
        return &avx2_ops();
    }
#endif
    return &kScalarOps;
}

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

#if !defined(ISOGROW_HAVE_AVX2)
bool avx2_available() { return false; }

const Ops& avx2_ops() { throw std::logic_error("AVX2 backend not compiled in"); }
#endif

const Ops& active() {
    const Ops* forced = g_forced.load(std::memory_order_relaxed);
    if (forced != nullptr) {
        return *forced;
    }
    static const Ops* detected = detect_backend();
    return *detected;
}

void force_backend(const Ops* ops) { g_forced.store(ops, std::memory_order_relaxed); }

}  // namespace isogrow::kernels
