#include <cmath>

#include "modsim/kernels.hpp"

namespace modsim::kernels {

namespace {

void mod_reduce_scalar(const double* x, double* out, std::size_t n, double delta) {
    const double half = delta / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = x[i] - delta * std::floor(x[i] / delta + 0.5);
        if (r >= half) r -= delta;
        if (r < -half) r += delta;
        out[i] = r;
    }
}

void map_bits_scalar(const uint8_t* bits, double* out, std::size_t n, double h0, double h1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = bits[i] ? h1 : h0;
}

void label_regions_scalar(const double* y, uint8_t* out, std::size_t n, double lo0, double hi0,
                          double lo1, double hi1) {
    for (std::size_t i = 0; i < n; ++i) {
        const double v = y[i];
        const bool zero = (v >= lo0 && v < hi0) || (v >= lo1 && v < hi1);
        out[i] = zero ? 0 : 1;
    }
}

std::size_t count_mismatch_scalar(const uint8_t* a, const uint8_t* b, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += a[i] != b[i];
    return c;
}

} // namespace

const KernelTable& scalar() {
    static const KernelTable table = {mod_reduce_scalar, map_bits_scalar, label_regions_scalar,
                                      count_mismatch_scalar, "scalar"};
    return table;
}

const KernelTable& active() {
    static const KernelTable* chosen = [] {
        if (const KernelTable* t = avx2()) return t;
        return &scalar();
    }();
    return *chosen;
}

} // namespace modsim::kernels
