#include "rwrs/rng.hpp"

#include <cmath>

namespace rwrs {

namespace {
constexpr std::uint64_t kPhiloxMul = 0xD2B74407B1CE6E93ull;
constexpr std::uint64_t kPhiloxBump = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPi = 6.283185307179586476925286766559;
} // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

std::uint64_t fold_seed(std::uint64_t master, std::string_view tag) {
    return splitmix64(master ^ fnv1a64(tag));
}

std::uint64_t fold_seed(std::uint64_t master, std::uint64_t salt) {
    return splitmix64(master ^ splitmix64(salt ^ 0xA5A5A5A55A5A5A5Aull));
}

std::pair<std::uint64_t, std::uint64_t>
philox2x64(std::uint64_t ctr0, std::uint64_t ctr1, std::uint64_t key) {
    for (int round = 0; round < 10; ++round) {
        if (round != 0) key += kPhiloxBump;
        const auto prod = static_cast<unsigned __int128>(kPhiloxMul) * ctr0;
        const auto hi = static_cast<std::uint64_t>(prod >> 64);
        const auto lo = static_cast<std::uint64_t>(prod);
        ctr0 = hi ^ key ^ ctr1;
        ctr1 = lo;
    }
    return {ctr0, ctr1};
}

std::uint64_t RandomStream::u64() {
    if (avail_ == 0) {
        const auto block = philox2x64(ctr_++, sid_, key_);
        buf_[0] = block.first;
        buf_[1] = block.second;
        avail_ = 2;
    }
    return buf_[2 - avail_--];
}

double RandomStream::uniform01() {
    // 53-bit mantissa at cell centers: strictly inside (0, 1).
    return (static_cast<double>(u64() >> 11) + 0.5) * 0x1p-53;
}

double RandomStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = kTwoPi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double RandomStream::exponential() { return -std::log(uniform01()); }

} // namespace rwrs
