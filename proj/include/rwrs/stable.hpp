#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "rwrs/rng.hpp"

namespace rwrs {

/// Parameters of a strictly stable law with characteristic function
///   E exp(iuX) = exp( -scale^index |u|^index (1 - i skewness tan(pi*index/2) sgn u) ).
/// index must lie in (1, 2]; at index == 2 the law is N(0, 2*scale^2) and the
/// skewness parameter has no effect.
struct StableParams {
    double index = 2.0;
    double scale = 1.0;
    double skewness = 0.0;

    void validate() const;
};

/// Chambers-Mallows-Stuck sampler specialised to index != 1.  Constructing the
/// sampler precomputes the angle/scale constants; each draw consumes exactly
/// two uniforms from the stream.
class StableSampler {
  public:
    explicit StableSampler(const StableParams& params);

    double operator()(RandomStream& stream) const;
    const StableParams& params() const { return params_; }

  private:
    StableParams params_;
    double inv_index_ = 0.5;
    double expo_ = 0.0;    // (1 - index) / index
    double angle_b_ = 0.0; // arctan(skewness * tan(pi index / 2)) / index
    double scale_s_ = 1.0; // (1 + (skewness tan(pi index / 2))^2)^(1/(2 index))
};

double sample_stable(const StableParams& params, RandomStream& stream);
std::vector<double> sample_stable(const StableParams& params, RandomStream& stream,
                                  std::size_t count);

/// Closed-form characteristic function of the law above.
std::complex<double> stable_cf(const StableParams& params, double u);

} // namespace rwrs
