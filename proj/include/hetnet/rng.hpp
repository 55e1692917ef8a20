#pragma once

#include <cmath>
#include <cstdint>

namespace hetnet {

// Counter-based stream RNG (Philox4x32-10). Each (seed, stream) pair is an
// independent substream; realizations draw from their own stream so results
// do not depend on how work is split across threads.
class RandomStream {
  public:
    using result_type = std::uint64_t;

    RandomStream() : RandomStream(0, 0) {}
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        std::uint32_t x0 = static_cast<std::uint32_t>(block_);
        std::uint32_t x1 = static_cast<std::uint32_t>(block_ >> 32);
        ++block_;
        std::uint32_t c0 = x0, c1 = x1, c2 = stream_lo_, c3 = stream_hi_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c0;
            std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c2;
            std::uint32_t h0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t l0 = static_cast<std::uint32_t>(p0);
            std::uint32_t h1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t l1 = static_cast<std::uint32_t>(p1);
            std::uint32_t n0 = h1 ^ c1 ^ k0;
            std::uint32_t n1 = l1;
            std::uint32_t n2 = h0 ^ c3 ^ k1;
            std::uint32_t n3 = l0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        spare_ = (std::uint64_t{c2} << 32) | c3;
        have_spare_ = true;
        return (std::uint64_t{c0} << 32) | c1;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased-enough index draw (bias < n / 2^64).
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

    std::uint64_t poisson(double mean);

  private:
    std::uint32_t key0_, key1_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t block_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace hetnet
