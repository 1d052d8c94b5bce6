#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace modsim {

/// Reduce x into [-Delta/2, Delta/2). Floor-based, exact at the boundary.
double mod_reduce(double x, double delta);

/// Binary symbol pair inside the fundamental interval.
struct SymbolMap {
    double h0;
    double h1;
    double delta;

    SymbolMap(double h0_, double h1_, double delta_);
};

/// pi0 * h0^2 + (1 - pi0) * h1^2
double average_power(const SymbolMap& map, double pi0);

/// Power-minimal error-optimal pair (-Delta/4, +Delta/4).
SymbolMap optimal_symbol_map(double delta);

struct BitSource {
    double pi0;       // P(bit = 0)
    uint64_t seed;
};

struct ChannelParams {
    double delta;
    double sigma;
    uint64_t seed;
};

/// splitmix64 step; also used to derive per-trial substreams.
uint64_t hash_seed(uint64_t a, uint64_t b);

std::vector<uint8_t> generate_bits(const BitSource& src, std::size_t n);

std::vector<double> map_bits(const std::vector<uint8_t>& bits, const SymbolMap& map);

/// (x_n + w_n) mod Delta with w_n iid N(0, sigma^2). Deterministic given seed.
/// Gaussian sampling: Box-Muller ("box-muller" in run metadata).
std::vector<double> transmit(const std::vector<double>& symbols, const ChannelParams& ch);

/// Name of the Gaussian sampling method, recorded in run metadata.
const std::string& gaussian_method_name();

} // namespace modsim
