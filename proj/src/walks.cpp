#include "rwrs/walks.hpp"

#include <cmath>
#include <stdexcept>

#include "rwrs/fgn.hpp"

namespace rwrs {

void WalkSpec::validate() const {
    switch (kind) {
        case WalkKind::stable_increments:
            step_law.validate();
            if (simple_symmetric && step_law.index != 2.0)
                throw std::invalid_argument(
                    "simple symmetric steps are only available at stable index 2");
            break;
        case WalkKind::correlated_gaussian:
            if (!(hurst > 0.0) || !(hurst < 1.0))
                throw std::invalid_argument("walk hurst index must lie in (0, 1)");
            break;
    }
}

double WalkSpec::scaling_exponent() const {
    return kind == WalkKind::stable_increments ? 1.0 / step_law.index : hurst;
}

double ScalingLaw::operator()(double n) const {
    if (!(n > 0.0)) throw std::invalid_argument("scaling sequence needs n >= 1");
    return std::pow(n, exponent);
}

ScalingLaw scaling_for(const WalkSpec& spec) {
    spec.validate();
    return ScalingLaw{spec.scaling_exponent()};
}

WalkPath path_from_real_increments(const std::vector<double>& increments) {
    WalkPath path;
    path.positions.resize(increments.size() + 1);
    path.positions[0] = 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        sum += increments[k];
        path.positions[k + 1] = static_cast<std::int64_t>(std::floor(sum));
    }
    return path;
}

namespace {

WalkPath generate_stable_walk(const WalkSpec& spec, std::size_t n, RandomStream& stream) {
    WalkPath path;
    path.positions.resize(n + 1);
    path.positions[0] = 0;
    std::int64_t pos = 0;
    if (spec.simple_symmetric) {
        for (std::size_t k = 1; k <= n; ++k) {
            pos += (stream.u64() & 1ull) ? 1 : -1;
            path.positions[k] = pos;
        }
        return path;
    }
    StableSampler sampler(spec.step_law);
    // Rounding a draw beyond +-2^62 would overflow the lattice; the event has
    // probability ~ scale^index * 2^{-62 index} per step, so clamping is a
    // pure safety net, not a distributional change at any reachable size.
    const double clamp = 4.6e18;
    for (std::size_t k = 1; k <= n; ++k) {
        double x = sampler(stream);
        if (x > clamp) x = clamp;
        if (x < -clamp) x = -clamp;
        pos += static_cast<std::int64_t>(std::llround(x));
        path.positions[k] = pos;
    }
    return path;
}

WalkPath generate_gaussian_walk(const WalkSpec& spec, std::size_t n, RandomStream& stream) {
    WalkPath path;
    path.positions.assign(1, 0);
    if (n == 0) return path;
    FgnGenerator gen(FgnParams{spec.hurst, n});
    const std::vector<double> noise = gen.sample(stream);
    path.positions.resize(n + 1);
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        sum += noise[k - 1];
        path.positions[k] = static_cast<std::int64_t>(std::floor(sum));
    }
    return path;
}

} // namespace

WalkPath generate_walk(const WalkSpec& spec, std::size_t n, const SeedSpec& seed) {
    spec.validate();
    RandomStream stream(seed);
    return spec.kind == WalkKind::stable_increments ? generate_stable_walk(spec, n, stream)
                                                    : generate_gaussian_walk(spec, n, stream);
}

std::vector<WalkPath> generate_walk_family(const WalkSpec& spec, std::size_t n,
                                           std::size_t count, const SeedSpec& seed) {
    spec.validate();
    if (count == 0) throw std::invalid_argument("walk family needs at least one member");
    std::vector<WalkPath> family;
    family.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        family.push_back(generate_walk(spec, n, SeedSpec{seed.master_seed, seed.stream_id + i}));
    return family;
}

} // namespace rwrs
