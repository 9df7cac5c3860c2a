#include "rwrs/stable.hpp"

#include <cmath>
#include <stdexcept>

namespace rwrs {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

// tan(pi a / 2) with the index == 2 case pinned to exactly zero so that the
// skewness parameter provably drops out of both the sampler and the cf.
double tan_half_pi_index(double index) {
    return index == 2.0 ? 0.0 : std::tan(0.5 * kPi * index);
}
} // namespace

void StableParams::validate() const {
    if (!(index > 1.0) || !(index <= 2.0))
        throw std::invalid_argument("stable index must lie in (1, 2]");
    if (!(scale > 0.0))
        throw std::invalid_argument("stable scale must be positive");
    if (!(skewness >= -1.0) || !(skewness <= 1.0))
        throw std::invalid_argument("stable skewness must lie in [-1, 1]");
}

StableSampler::StableSampler(const StableParams& params) : params_(params) {
    params_.validate();
    const double a = params_.index;
    const double zeta = params_.skewness * tan_half_pi_index(a);
    inv_index_ = 1.0 / a;
    expo_ = (1.0 - a) / a;
    angle_b_ = std::atan(zeta) / a;
    scale_s_ = std::pow(1.0 + zeta * zeta, 0.5 / a);
}

double StableSampler::operator()(RandomStream& stream) const {
    const double a = params_.index;
    const double u = (stream.uniform01() - 0.5) * kPi; // uniform on (-pi/2, pi/2)
    const double w = stream.exponential();
    const double shifted = a * (u + angle_b_);
    const double x = scale_s_ * std::sin(shifted) / std::pow(std::cos(u), inv_index_) *
                     std::pow(std::cos(u - shifted) / w, expo_);
    return params_.scale * x;
}

double sample_stable(const StableParams& params, RandomStream& stream) {
    return StableSampler(params)(stream);
}

std::vector<double> sample_stable(const StableParams& params, RandomStream& stream,
                                  std::size_t count) {
    StableSampler sampler(params);
    std::vector<double> out(count);
    for (auto& v : out) v = sampler(stream);
    return out;
}

std::complex<double> stable_cf(const StableParams& params, double u) {
    params.validate();
    const double mag = std::pow(params.scale * std::abs(u), params.index);
    const double sign = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
    const double im = mag * params.skewness * tan_half_pi_index(params.index) * sign;
    return std::exp(std::complex<double>(-mag, im));
}

} // namespace rwrs
