#ifndef TREEBIJ_RNG_HPP
#define TREEBIJ_RNG_HPP

#include <cstdint>
#include <stdexcept>

namespace treebij {

// Deterministic 64-bit generator with independent streams.
//
// The generator is SplitMix64; the initial state is derived from
// (master_seed, stream_index) by two rounds of the SplitMix64 avalanche
// mix, so distinct stream indices give unrelated sequences from the same
// master seed. The sequence for a given (seed, stream) pair is part of
// the tool's output contract and must not change.
class SeededRng {
public:
    SeededRng(std::uint64_t master_seed, std::uint64_t stream_index = 0)
        : master_seed_(master_seed), stream_index_(stream_index) {
        std::uint64_t h = avalanche(master_seed);
        state_ = avalanche(h ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1)));
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return avalanche(state_);
    }

    // Unbiased draw from {0, ..., bound-1} by threshold rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    static std::uint64_t avalanche(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_ = 0;
    std::uint64_t master_seed_ = 0;
    std::uint64_t stream_index_ = 0;
};

// Repeated unbiased draws below a fixed bound; hoists the rejection
// threshold out of the sampling loop.
class UniformBound {
public:
    explicit UniformBound(std::uint64_t bound)
        : bound_(bound), threshold_(bound ? (0 - bound) % bound : 0) {
        if (bound == 0) throw std::invalid_argument("UniformBound: bound must be positive");
    }

    std::uint64_t draw(SeededRng& rng) const {
        for (;;) {
            std::uint64_t r = rng.next_u64();
            if (r >= threshold_) return r % bound_;
        }
    }

private:
    std::uint64_t bound_;
    std::uint64_t threshold_;
};

} // namespace treebij

#endif // TREEBIJ_RNG_HPP
