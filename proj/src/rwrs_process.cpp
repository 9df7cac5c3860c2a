#include "rwrs/rwrs_process.hpp"

#include <cmath>
#include <stdexcept>

namespace rwrs {

namespace {

std::uint64_t step_index(std::uint64_t n, double t) {
    return static_cast<std::uint64_t>(std::floor(static_cast<double>(n) * t));
}

double relative_gap(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

} // namespace

RwrsPath compute_rwrs(std::shared_ptr<const WalkPath> path, std::shared_ptr<Scenery> xi) {
    if (path == nullptr) throw std::invalid_argument("rwrs needs a walk path");
    if (xi == nullptr) throw std::invalid_argument("rwrs needs a scenery");
    RwrsPath z;
    z.walk = std::move(path);
    z.scenery = std::move(xi);
    const auto& pos = z.walk->positions;
    z.values.resize(pos.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < pos.size(); ++k) {
        acc += z.scenery->value(pos[k]);
        z.values[k] = acc;
    }
    return z;
}

RenormalizedRwrs::RenormalizedRwrs(RwrsPath z, std::uint64_t n, double a_n, double gamma)
    : z_(std::move(z)), n_(n), a_n_(a_n), gamma_(gamma) {
    if (n_ == 0) throw std::invalid_argument("renormalisation needs n >= 1");
    if (!(a_n_ > 0.0)) throw std::invalid_argument("scaling a_n must be positive");
    if (!(gamma_ > 0.0)) throw std::invalid_argument("normalisation gamma must be positive");
    if (z_.values.empty()) throw std::invalid_argument("renormalisation needs a nonempty path");
}

double RenormalizedRwrs::operator()(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be nonnegative");
    const std::uint64_t m = step_index(n_, t);
    if (m >= z_.values.size())
        throw std::invalid_argument("time t is too large for the recorded horizon");
    return prefactor() * z_.values[static_cast<std::size_t>(m)];
}

RenormalizedRwrs renormalize(RwrsPath z, const WalkSpec& walk_spec, std::uint64_t n) {
    if (z.scenery == nullptr) throw std::invalid_argument("renormalisation needs a scenery");
    const double a_n = scaling_for(walk_spec)(static_cast<double>(n));
    const double gamma = normalization(z.scenery->spec(), 1.0 / a_n);
    return RenormalizedRwrs(std::move(z), n, a_n, gamma);
}

std::vector<double> default_t_grid(std::size_t m) {
    if (m == 0) throw std::invalid_argument("t-grid needs at least one point");
    std::vector<double> grid(m);
    for (std::size_t i = 0; i < m; ++i)
        grid[i] = static_cast<double>(i + 1) / static_cast<double>(m);
    return grid;
}

std::pair<double, double> identity_check(std::shared_ptr<const WalkPath> path,
                                         std::shared_ptr<Scenery> xi, std::uint64_t n,
                                         double a_n, double gamma, double t) {
    const RwrsPath z = compute_rwrs(path, xi);
    const RenormalizedRwrs direct(z, n, a_n, gamma);
    const double lhs = direct(t);

    const RescaledLocalTime lt = rescaled_local_time(z.walk, n, a_n, t);
    const RandomMeasure mu(z.scenery, 1.0 / a_n, gamma);
    const double rhs = mu.integrate(lt.to_step_function());
    return {lhs, rhs};
}

double verify_identity(std::shared_ptr<const WalkPath> path, std::shared_ptr<Scenery> xi,
                       const WalkSpec& walk_spec, std::uint64_t n,
                       const std::vector<double>& t_grid) {
    if (xi == nullptr) throw std::invalid_argument("identity check needs a scenery");
    const double a_n = scaling_for(walk_spec)(static_cast<double>(n));
    const double gamma = normalization(xi->spec(), 1.0 / a_n);
    double worst = 0.0;
    for (double t : t_grid) {
        const auto [lhs, rhs] = identity_check(path, xi, n, a_n, gamma, t);
        worst = std::max(worst, relative_gap(lhs, rhs));
    }
    return worst;
}

MultiWalkerReward multiwalker_reward(const std::vector<WalkPath>& family,
                                     std::shared_ptr<Scenery> xi) {
    if (family.empty()) throw std::invalid_argument("reward needs at least one walker");
    if (xi == nullptr) throw std::invalid_argument("reward needs a scenery");
    const std::size_t len = family.front().positions.size();
    for (const auto& walk : family)
        if (walk.positions.size() != len)
            throw std::invalid_argument("all walkers must share one horizon");

    MultiWalkerReward reward;
    reward.scenery = xi;
    reward.walkers.reserve(family.size());
    for (const auto& walk : family)
        reward.walkers.push_back(compute_rwrs(std::make_shared<WalkPath>(walk), xi));
    reward.totals.assign(len, 0.0);
    for (const auto& walker : reward.walkers)
        for (std::size_t k = 0; k < len; ++k) reward.totals[k] += walker.values[k];
    return reward;
}

StepFunction averaged_local_time(const MultiWalkerReward& reward, std::uint64_t n, double a_n,
                                 double t) {
    std::vector<RescaledLocalTime> fields;
    fields.reserve(reward.count());
    for (const auto& walker : reward.walkers)
        fields.push_back(rescaled_local_time(walker.walk, n, a_n, t));
    const std::vector<double> theta(reward.count(), 1.0 / static_cast<double>(reward.count()));
    return combine(theta, fields);
}

double verify_multiwalker_identity(const MultiWalkerReward& reward, const WalkSpec& walk_spec,
                                   std::uint64_t n, const std::vector<double>& t_grid) {
    const double a_n = scaling_for(walk_spec)(static_cast<double>(n));
    const double gamma = normalization(reward.scenery->spec(), 1.0 / a_n);
    const RandomMeasure mu(reward.scenery, 1.0 / a_n, gamma);
    const double c = static_cast<double>(reward.count());
    double worst = 0.0;
    for (double t : t_grid) {
        const std::uint64_t m = step_index(n, t);
        if (m >= reward.totals.size())
            throw std::invalid_argument("time t is too large for the recorded horizon");
        const double lhs =
            a_n * gamma / (c * static_cast<double>(n)) * reward.totals[static_cast<std::size_t>(m)];
        const double rhs = mu.integrate(averaged_local_time(reward, n, a_n, t));
        worst = std::max(worst, relative_gap(lhs, rhs));
    }
    return worst;
}

} // namespace rwrs
