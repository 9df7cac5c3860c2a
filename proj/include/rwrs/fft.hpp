#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rwrs::fft {

/// In-place complex DFT (unnormalised).  Plans are cached per size behind a
/// mutex; execution itself is thread-safe and bit-reproducible for a given
/// transform size regardless of thread count.
void transform(std::complex<double>* data, std::size_t n, bool inverse);

inline void transform(std::vector<std::complex<double>>& data, bool inverse) {
    transform(data.data(), data.size(), inverse);
}

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

} // namespace rwrs::fft
