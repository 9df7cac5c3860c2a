#include "rwrs/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace rwrs {

RandomMeasure::RandomMeasure(std::shared_ptr<Scenery> scenery, double h)
    : RandomMeasure(scenery, h, scenery ? normalization(scenery->spec(), h) : 1.0) {}

RandomMeasure::RandomMeasure(std::shared_ptr<Scenery> scenery, double h, double gamma_h)
    : scenery_(std::move(scenery)), h_(h), gamma_(gamma_h) {
    if (scenery_ == nullptr) throw std::invalid_argument("random measure needs a scenery");
    if (!(h_ > 0.0)) throw std::invalid_argument("mesh h must be positive");
    if (!(gamma_ > 0.0)) throw std::invalid_argument("normalisation gamma must be positive");
}

double RandomMeasure::integrate(const StepFunction& f) const {
    if (f.empty()) return 0.0;
    const auto& edges = f.edges();
    const auto& values = f.values();
    Scenery& xi = *scenery_;
    // Cell edges stay in double so they coincide bit for bit with step
    // functions living on the same lattice; only the accumulators carry
    // extra precision.
    long double acc = 0.0L;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (v == 0.0) continue;
        const double a = edges[i];
        const double b = edges[i + 1];
        const auto k_lo = static_cast<std::int64_t>(std::floor(a / h_));
        long double piece = 0.0L;
        for (std::int64_t k = k_lo; static_cast<double>(k) * h_ < b; ++k) {
            const double cell_lo = static_cast<double>(k) * h_;
            const double cell_hi = static_cast<double>(k + 1) * h_;
            const double overlap = std::min(b, cell_hi) - std::max(a, cell_lo);
            if (overlap > 0.0)
                piece += static_cast<long double>(xi.value(k)) * overlap;
        }
        acc += static_cast<long double>(v) * piece;
    }
    return static_cast<double>(static_cast<long double>(gamma_ / h_) * acc);
}

double integrate(const RandomMeasure& mu, const StepFunction& f) { return mu.integrate(f); }

std::pair<double, double> scaling_check(const RandomMeasure& mu, const StepFunction& f,
                                        double c) {
    if (!(c > 0.0)) throw std::invalid_argument("dilation factor c must be positive");
    const double lhs = mu.integrate(f.dilate_arg(c));
    const RandomMeasure coarse(mu.scenery_ptr(), c * mu.mesh());
    const double rhs = mu.gamma() / coarse.gamma() * coarse.integrate(f);
    return {lhs, rhs};
}

namespace {

double overlap_integral(const StepFunction& f1, const StepFunction& f2) {
    if (f1.empty() || f2.empty()) return 0.0;
    const auto& e1 = f1.edges();
    const auto& v1 = f1.values();
    const auto& e2 = f2.edges();
    const auto& v2 = f2.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < v1.size(); ++i) {
        if (v1[i] == 0.0) continue;
        for (std::size_t j = 0; j < v2.size(); ++j) {
            const double len = std::min(e1[i + 1], e2[j + 1]) - std::max(e1[i], e2[j]);
            if (len > 0.0) acc += v1[i] * v2[j] * len;
        }
    }
    return acc;
}

// Cov(W[f1], W[f2]) for fractional W: sum over piece pairs [a,b) x [c,d) of
// v u (|b-c|^{2H} + |a-d|^{2H} - |a-c|^{2H} - |b-d|^{2H}) / 2.
double fractional_inner(double hurst, const StepFunction& f1, const StepFunction& f2) {
    const double twoh = 2.0 * hurst;
    const auto pw = [twoh](double x) { return std::pow(std::abs(x), twoh); };
    const auto& e1 = f1.edges();
    const auto& v1 = f1.values();
    const auto& e2 = f2.edges();
    const auto& v2 = f2.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < v1.size(); ++i) {
        if (v1[i] == 0.0) continue;
        const double a = e1[i];
        const double b = e1[i + 1];
        for (std::size_t j = 0; j < v2.size(); ++j) {
            if (v2[j] == 0.0) continue;
            const double c = e2[j];
            const double d = e2[j + 1];
            acc += 0.5 * v1[i] * v2[j] * (pw(b - c) + pw(a - d) - pw(a - c) - pw(b - d));
        }
    }
    return acc;
}

} // namespace

double limit_inner_product(const LimitNoise& noise, const StepFunction& f1,
                           const StepFunction& f2) {
    switch (noise.kind) {
        case LimitNoise::Kind::brownian:
            return overlap_integral(f1, f2);
        case LimitNoise::Kind::fractional:
            if (!(noise.hurst > 0.5) || !(noise.hurst < 1.0))
                throw std::invalid_argument(
                    "fractional noise hurst index must lie in (1/2, 1)");
            return fractional_inner(noise.hurst, f1, f2);
    }
    throw std::logic_error("unreachable noise kind");
}

} // namespace rwrs
