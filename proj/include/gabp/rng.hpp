#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace gabp::rng {

// std::mt19937_64 output is pinned by the standard, so engine streams are
// portable. The standard *distributions* are not, which is why the value
// conversions below are hand-rolled: every random artifact in this project
// (tables, splits, GA runs) must replay bit-identically from its seed.

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent stream seed from a master seed and up to two
/// coordinates (stream tag, element index).
inline std::uint64_t derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = master;
    s = splitmix64(s) ^ a;
    s = splitmix64(s) ^ b;
    return splitmix64(s);
}

inline Engine make_engine(std::uint64_t seed) {
    std::uint64_t s = seed;
    return Engine(splitmix64(s));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& e) { return static_cast<double>(e() >> 11) * 0x1.0p-53; }

inline double uniform(Engine& e, double lo, double hi) { return lo + (hi - lo) * uniform01(e); }

/// Uniform integer in [0, n). Lemire multiply-shift; bias is < 2^-64 per draw.
inline std::uint64_t below(Engine& e, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(e()) * n) >> 64);
}

/// Standard normal via Box-Muller. Two engine draws per value, no cached
/// spare, so consumption per call is fixed.
inline double normal(Engine& e) {
    const double u1 = 1.0 - uniform01(e); // (0, 1]
    const double u2 = uniform01(e);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Eigen::VectorXd standard_normals(std::uint64_t seed, Eigen::Index n) {
    Engine e = make_engine(seed);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(e);
    return x;
}

/// In-place Fisher-Yates shuffle driven by the engine (std::shuffle draws in
/// an implementation-defined order, which would break replay).
template <typename T>
void shuffle(std::vector<T>& v, Engine& e) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(below(e, i));
        std::swap(v[i - 1], v[j]);
    }
}

// Stream tags; one per independent consumer of a master seed.
namespace stream {
inline constexpr std::uint64_t kSplit = 1;
inline constexpr std::uint64_t kGaInit = 2;
inline constexpr std::uint64_t kGaLoop = 3;
inline constexpr std::uint64_t kBaselineInit = 4;
inline constexpr std::uint64_t kGarchShocks = 5;
inline constexpr std::uint64_t kVolume = 6;
inline constexpr std::uint64_t kSse50 = 7;
inline constexpr std::uint64_t kBond3m = 8;
inline constexpr std::uint64_t kBond6m = 9;
inline constexpr std::uint64_t kFx = 10;
} // namespace stream

} // namespace gabp::rng
