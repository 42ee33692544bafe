#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace vlcode {

/*
 * Counter-based random number generation (Philox 4x32, 10 rounds).
 *
 * Every draw is a pure function of (seed, stream, block index), so
 * trial-level parallelism and lazy per-key draws reproduce the same
 * values no matter in which order they are evaluated.  Conformance is
 * pinned by test vectors in the test suite; any implementation that
 * reproduces those vectors generates identical experiment streams.
 */
class philox4x32 {
public:
    using block_type = std::array<std::uint32_t, 4>;

    explicit philox4x32(std::uint64_t seed) noexcept
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)) {}

    // One 128-bit block: counter words are (index lo, index hi, stream lo, stream hi).
    block_type block(std::uint64_t stream, std::uint64_t index) const noexcept {
        std::uint32_t c0 = static_cast<std::uint32_t>(index);
        std::uint32_t c1 = static_cast<std::uint32_t>(index >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(stream);
        std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
        std::uint32_t k0 = key0_, k1 = key1_;
        round(c0, c1, c2, c3, k0, k1);
        for (int r = 1; r < 10; ++r) {
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
            round(c0, c1, c2, c3, k0, k1);
        }
        return {c0, c1, c2, c3};
    }

    std::uint64_t seed() const noexcept {
        return (static_cast<std::uint64_t>(key1_) << 32) | key0_;
    }

private:
    static void round(std::uint32_t& c0, std::uint32_t& c1, std::uint32_t& c2,
                      std::uint32_t& c3, std::uint32_t k0, std::uint32_t k1) noexcept {
        std::uint64_t p0 = 0xD2511F53ull * c0;
        std::uint64_t p1 = 0xCD9E8D57ull * c2;
        std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        std::uint32_t n0 = hi1 ^ c1 ^ k0;
        std::uint32_t n1 = lo1;
        std::uint32_t n2 = hi0 ^ c3 ^ k1;
        std::uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
    }

    std::uint32_t key0_, key1_;
};

// Stream ids carry a 16-bit domain tag and a 48-bit index so that unrelated
// uses of the same seed (trial draws, Z bits, phases, ...) never collide.
constexpr std::uint64_t make_stream(std::uint16_t domain, std::uint64_t index) noexcept {
    return (static_cast<std::uint64_t>(domain) << 48) | (index & 0xFFFFFFFFFFFFull);
}

// Sequential view of one (seed, stream) pair.
class counter_rng {
public:
    counter_rng(std::uint64_t seed, std::uint64_t stream) noexcept
        : gen_(seed), stream_(stream) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            block_ = gen_.block(stream_, index_++);
            pos_ = 0;
        }
        return block_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on [0,1) with 53 significant bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on {0, ..., n-1}, unbiased by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("counter_rng::below: n must be positive");
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) return v % n;
        }
    }

    bool next_bit() { return (next_u32() & 1u) != 0; }

    std::uint64_t stream() const noexcept { return stream_; }

private:
    philox4x32 gen_;
    std::uint64_t stream_;
    std::uint64_t index_ = 0;
    philox4x32::block_type block_{};
    int pos_ = 4;
};

namespace stream_domain {
// Reserved domain tags; additions must not reuse existing values.
inline constexpr std::uint16_t trial = 1;       // per-trial Monte Carlo draws
inline constexpr std::uint16_t z_bits = 2;      // per-realization Z_k records
inline constexpr std::uint16_t phase = 3;       // random-phase draws
inline constexpr std::uint16_t auxiliary = 4;   // pilots, one-off estimates
}  // namespace stream_domain

}  // namespace vlcode
