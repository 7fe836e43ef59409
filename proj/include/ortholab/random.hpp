#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ortholab {

// Seeded source with platform-independent derived draws; std distributions
// are avoided because their output differs across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int below(int n) { return static_cast<int>(uniform() * n); }
    int between(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool chance(double p) { return uniform() < p; }

    double normal()
    {
        double u = 1.0 - uniform();
        double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
    }

    // Independent child stream, e.g. one per test instance.
    Rng split() { return Rng(next() ^ 0x9e3779b97f4a7c15ULL); }

private:
    std::mt19937_64 engine_;
};

}  // namespace ortholab
