#pragma once

#include <cstddef>
#include <vector>

#include "rwrs/rng.hpp"

namespace rwrs {

/// Fractional Gaussian noise: a stationary centred Gaussian vector with
///   r(k) = 0.5 (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}),
/// i.e. the increments of fractional Brownian motion with Hurst index H.
struct FgnParams {
    double hurst = 0.5;
    std::size_t length = 1;

    void validate() const;
};

double fgn_autocovariance(double hurst, std::int64_t lag);

/// Exact synthesis.  The default path is circulant embedding of the
/// covariance into a 2*length circulant (one FFT per draw, no approximation
/// error).  If the embedding produced eigenvalues below -1e-8 relative it is
/// rejected; short vectors (length <= 2048) then fall back to a dense
/// Cholesky factor of the Toeplitz covariance, longer ones fail hard.
class FgnGenerator {
  public:
    enum class Method { automatic, circulant, cholesky };

    explicit FgnGenerator(const FgnParams& params, Method method = Method::automatic);

    std::vector<double> sample(RandomStream& stream) const;

    const FgnParams& params() const { return params_; }
    Method method() const { return method_; }

  private:
    void build_circulant();
    void build_cholesky();
    std::vector<double> sample_circulant(RandomStream& stream) const;
    std::vector<double> sample_cholesky(RandomStream& stream) const;

    FgnParams params_;
    Method method_ = Method::circulant;
    std::size_t embed_size_ = 0;       // 2 * length
    std::vector<double> spectral_amp_; // sqrt(lambda_k / m) style factors
    std::vector<double> chol_;         // lower-triangular factor, row-major
};

std::vector<double> sample_fgn(const FgnParams& params, RandomStream& stream);

} // namespace rwrs
