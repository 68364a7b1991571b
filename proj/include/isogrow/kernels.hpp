#pragma once

#include <cstddef>

namespace isogrow::kernels {

// Data-parallel inner loops used by the counting and selection code.
// Vector batches use coordinate-major (SoA) layout: data[d * count + i]
// holds coordinate d of vector i. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant; the active backend is
// picked once at startup from CPU capabilities.

struct Ops {
    // out[i] = sum_d data[d][i]^2
    void (*squared_norms)(const double* data, std::size_t count, std::size_t dim, double* out);
    // out[i] = sum_d v[d] * data[d][i]
    void (*dot_products)(const double* data, std::size_t count, std::size_t dim,
                         const double* v, double* out);
    // out[i] = in[i] * scale + shift
    void (*scale_shift)(const double* in, std::size_t count, double scale, double shift,
                        double* out);
    // number of i with values[i] <= bound
    std::size_t (*count_leq)(const double* values, std::size_t count, double bound);
    const char* name;
};

const Ops& scalar_ops();

// True when the AVX2 variant was compiled in and this CPU supports it.
bool avx2_available();

// Throws std::logic_error when !avx2_available().
const Ops& avx2_ops();

// Runtime-selected backend. Setting ISOGROW_FORCE_SCALAR=1 in the
// environment pins the scalar reference implementation.
const Ops& active();

// Test hook: override the dispatched backend; nullptr restores automatic
// selection.
void force_backend(const Ops* ops);

inline void squared_norms(const double* data, std::size_t count, std::size_t dim, double* out) {
    active().squared_norms(data, count, dim, out);
}

inline void dot_products(const double* data, std::size_t count, std::size_t dim, const double* v,
                         double* out) {
    active().dot_products(data, count, dim, v, out);
}

inline void scale_shift(const double* in, std::size_t count, double scale, double shift,
                        double* out) {
    active().scale_shift(in, count, scale, shift, out);
}

inline std::size_t count_leq(const double* values, std::size_t count, double bound) {
    return active().count_leq(values, count, bound);
}

}  // namespace isogrow::kernels
