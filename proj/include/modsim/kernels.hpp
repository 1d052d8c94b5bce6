#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops of the simulation path. Scalar reference kernels
// plus AVX2 variants selected once at load time; both sides are
// equivalence-tested against each other.

namespace modsim::kernels {

struct KernelTable {
    // out[i] = x[i] reduced into [-delta/2, delta/2)
    void (*mod_reduce)(const double* x, double* out, std::size_t n, double delta);
    // out[i] = bits[i] ? h1 : h0
    void (*map_bits)(const uint8_t* bits, double* out, std::size_t n, double h0, double h1);
    // out[i] = 0 iff y[i] lies in one of the (at most two) half-open zero intervals
    void (*label_regions)(const double* y, uint8_t* out, std::size_t n,
                          double lo0, double hi0, double lo1, double hi1);
    // number of positions where a[i] != b[i]
    std::size_t (*count_mismatch)(const uint8_t* a, const uint8_t* b, std::size_t n);
    const char* name;
};

/// Active table (AVX2 when the CPU supports it, scalar otherwise).
const KernelTable& active();

/// Scalar reference implementations, always available.
const KernelTable& scalar();

/// AVX2 table, or nullptr when unsupported at runtime or not compiled in.
const KernelTable* avx2();

} // namespace modsim::kernels
