#pragma once

#include <cstdint>

namespace mmlab::rng {

// Random stream per simulated quantity. Every draw is addressed by
// (seed, path, step, channel), so results never depend on evaluation
// order or worker count, and two strategies replayed on the same seed
// consume identical uniforms (common random numbers).
enum class Channel : std::uint64_t {
    price_noise = 0,
    ask_fill = 1,
    bid_fill = 2,
};

inline constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += golden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t word) {
    return splitmix64(h ^ (word + golden + (h << 6) + (h >> 2)));
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t path,
                                  std::uint64_t step, Channel channel) {
    std::uint64_t h = splitmix64(seed);
    h = combine(h, path);
    h = combine(h, step);
    h = combine(h, static_cast<std::uint64_t>(channel));
    return h;
}

// Uniform strictly inside (0, 1); safe as input to log() and the
// inverse normal CDF.
inline double to_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(std::uint64_t seed, std::uint64_t path, std::uint64_t step,
                      Channel channel) {
    return to_unit(counter_hash(seed, path, step, channel));
}

// Quantile function of the standard normal distribution (Acklam's
// rational approximation refined with one Halley step).
double inverse_normal_cdf(double p);

inline double normal(std::uint64_t seed, std::uint64_t path, std::uint64_t step,
                     Channel channel) {
    return inverse_normal_cdf(uniform(seed, path, step, channel));
}

}  // namespace mmlab::rng
