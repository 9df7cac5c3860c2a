#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

namespace rwrs {

/// Identifies one reproducible random stream: a master seed plus a stream id.
/// Streams with the same master seed and different ids are statistically
/// independent and may be consumed concurrently without coordination.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(std::string_view s);

/// Derives a fresh master seed for a named sub-purpose ("walk", "scenery", ...)
/// so that different components never share stream-id space.
std::uint64_t fold_seed(std::uint64_t master, std::string_view tag);
std::uint64_t fold_seed(std::uint64_t master, std::uint64_t salt);

/// Philox-style 2x64 counter block cipher, 10 rounds.  The counter pair is
/// (position, stream id) and the key is the master seed, so any block of any
/// stream can be produced independently of the others.
std::pair<std::uint64_t, std::uint64_t>
philox2x64(std::uint64_t ctr0, std::uint64_t ctr1, std::uint64_t key);

/// Counter-based random stream.  Cheap to construct, copyable, and the output
/// sequence depends only on (master_seed, stream_id) -- never on which thread
/// or in which order streams are consumed.
class RandomStream {
  public:
    RandomStream() = default;
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_(master_seed), sid_(stream_id) {}
    explicit RandomStream(const SeedSpec& s) : RandomStream(s.master_seed, s.stream_id) {}

    std::uint64_t stream_id() const { return sid_; }

    std::uint64_t u64();

    /// Uniform on the open interval (0, 1); never returns an exact endpoint.
    double uniform01();

    /// Standard normal via Box-Muller (pair cached), bit-stable across
    /// platforms since it avoids std::normal_distribution.
    double gaussian();

    /// Exponential with unit mean.
    double exponential();

  private:
    std::uint64_t key_ = 0;
    std::uint64_t sid_ = 0;
    std::uint64_t ctr_ = 0;
    std::uint64_t buf_[2] = {0, 0};
    int avail_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline RandomStream derive_stream(const SeedSpec& seed) { return RandomStream(seed); }

/// Maps a signed lattice site to a unique stream id (0, -1, 1, -2, 2, ...).
inline std::uint64_t zigzag(std::int64_t x) {
    return x >= 0 ? 2ull * static_cast<std::uint64_t>(x)
                  : 2ull * static_cast<std::uint64_t>(-(x + 1)) + 1ull;
}

} // namespace rwrs
