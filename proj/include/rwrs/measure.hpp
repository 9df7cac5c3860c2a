#pragma once

#include <memory>
#include <utility>

#include "rwrs/scenery.hpp"
#include "rwrs/step_function.hpp"

namespace rwrs {

/// Signed random measure with density gamma_h h^{-1} sum_k xi_k 1_{[hk, h(k+1))}.
/// Integration against compactly supported step functions is an exact finite
/// sum over scenery cells.
class RandomMeasure {
  public:
    /// gamma_h taken from normalization(spec, h).
    RandomMeasure(std::shared_ptr<Scenery> scenery, double h);
    /// Explicit gamma_h (hand-calibrated oracles).
    RandomMeasure(std::shared_ptr<Scenery> scenery, double h, double gamma_h);

    double integrate(const StepFunction& f) const;
    double operator[](const StepFunction& f) const { return integrate(f); }

    double mesh() const { return h_; }
    double gamma() const { return gamma_; }
    const std::shared_ptr<Scenery>& scenery_ptr() const { return scenery_; }

  private:
    std::shared_ptr<Scenery> scenery_;
    double h_ = 1.0;
    double gamma_ = 1.0;
};

double integrate(const RandomMeasure& mu, const StepFunction& f);

/// Both sides of the mesh-change identity, evaluated independently on the
/// same scenery realisation:
///   lhs = mu_h[f(c .)],   rhs = (gamma_h / gamma_{ch}) * mu_{ch}[f].
/// The identity is an exact float computation when c is a power of two (the
/// coarse mesh c*h is then an exact product); other factors pick up mesh
/// rounding at the cell boundaries.
std::pair<double, double> scaling_check(const RandomMeasure& mu, const StepFunction& f,
                                        double c);

/// Limiting noise of the rescaled cumulative scenery: white (Brownian) or
/// fractional with Hurst index in (1/2, 1).
struct LimitNoise {
    enum class Kind { brownian, fractional };

    Kind kind = Kind::brownian;
    double hurst = 0.75; // fractional only

    static LimitNoise brownian() { return LimitNoise{Kind::brownian, 0.5}; }
    static LimitNoise fractional(double hurst) {
        return LimitNoise{Kind::fractional, hurst};
    }
};

/// Closed-form <f1, f2>_W: the Brownian form is the overlap integral
/// Int f1 f2; the fractional form is Cov(W[f1], W[f2]) summed exactly over
/// piece pairs via |.|^{2H} endpoint differences.
double limit_inner_product(const LimitNoise& noise, const StepFunction& f1,
                           const StepFunction& f2);

} // namespace rwrs
