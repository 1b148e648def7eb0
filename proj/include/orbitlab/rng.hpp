#ifndef ORBITLAB_RNG_HPP
#define ORBITLAB_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace orbitlab {

/// Deterministic seeded RNG. Draws below a bound use rejection sampling on
/// the raw engine output, so sequences depend only on the seed, never on
/// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform draw from [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    bool coin() { return engine_() & 1u; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace orbitlab

#endif
