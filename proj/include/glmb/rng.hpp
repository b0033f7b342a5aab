#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace glmb {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic stream derivation: the same (seed, ids...) always yields the
// same generator regardless of scheduling.
inline std::mt19937_64 derive_stream(uint64_t seed, std::initializer_list<uint64_t> ids) {
    uint64_t h = splitmix64(seed);
    for (uint64_t id : ids) h = splitmix64(h ^ splitmix64(id));
    return std::mt19937_64(h);
}

// Gumbel-max draw from unnormalized log scores (-inf entries excluded).
inline int gumbel_max(std::span<const double> log_scores, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int best = -1;
    double best_v = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < log_scores.size(); ++i) {
        if (!std::isfinite(log_scores[i])) continue;
        double u = unif(rng);
        while (u <= 0.0) u = unif(rng);
        const double v = log_scores[i] - std::log(-std::log(u));
        if (v > best_v) {
            best_v = v;
            best = static_cast<int>(i);
        }
    }
    return best;
}

}  // namespace glmb
