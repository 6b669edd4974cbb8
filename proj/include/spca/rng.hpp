#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace spca {

// Splittable deterministic RNG stream. Child streams are derived by mixing a
// tag into the stream's seed, so trial streams are order-independent and the
// generated values are fixed for a given (seed, tag path) across platforms.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed);

    RngStream child(std::uint64_t tag) const;
    RngStream child(std::string_view tag) const;

    std::uint64_t next_u64();
    // Unbiased draw from {0, ..., bound-1}.
    std::uint64_t next_below(std::uint64_t bound);
    // Uniform on (0, 1].
    double uniform();
    // Standard normal via Box-Muller; the method is part of the determinism
    // contract and must not change between releases.
    double normal();

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace spca
