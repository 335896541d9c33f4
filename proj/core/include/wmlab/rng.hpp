#pragma once

#include <cstdint>
#include <random>

#include "wmlab/rational.hpp"

namespace wmlab {

// Deterministic across platforms: draws raw mt19937_64 words only (the
// standard distributions are not implementation-stable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    int uniform(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    int nonzero(int bound) {  // in [-bound, bound] minus 0
        int v = uniform(1, bound);
        return (next() & 1) ? v : -v;
    }

    Rational small_rational(int num_bound, int den_bound) {
        Rational q(uniform(-num_bound, num_bound), uniform(1, den_bound));
        q.canonicalize();
        return q;
    }

    bool chance(unsigned percent) { return next() % 100 < percent; }

private:
    std::mt19937_64 eng_;
};

}  // namespace wmlab
