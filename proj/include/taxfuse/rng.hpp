#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace taxfuse {

// SplitMix64. Chosen over std::mt19937_64 because the whole toolkit promises
// bit-exact reproducibility across platforms and languages, and SplitMix64 is
// trivial to restate anywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Plain modulo: the bias at 64 bits is irrelevant
    // next to the reproducibility contract.
    std::uint64_t bounded(std::uint64_t bound) { return bound ? next_u64() % bound : 0; }

    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// FNV-1a over bytes; used both for feature hashing and for deriving
// per-stage rng streams from a master seed.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

// Independent, reproducible stream for a named pipeline stage.
inline Rng stage_rng(std::uint64_t master_seed, std::string_view stage) {
    return Rng(master_seed ^ fnv1a64(stage));
}

// Fisher-Yates. Last position first, j = bounded(i + 1), matching the
// serialized definition in the docs so other implementations can replay it.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.bounded(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

}  // namespace taxfuse
