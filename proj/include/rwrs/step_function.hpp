#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace rwrs {

/// Right-continuous piecewise-constant function with compact support.
/// Internally a strictly increasing edge array e_0 < ... < e_K and values
/// v_0..v_{K-1} with f = v_i on [e_i, e_{i+1}) and f = 0 outside [e_0, e_K).
/// All integral operations are exact cell sums -- no quadrature.
class StepFunction {
  public:
    StepFunction() = default; // the zero function
    StepFunction(std::vector<double> edges, std::vector<double> values);

    static StepFunction indicator(double a, double b, double value = 1.0);

    bool empty() const { return values_.empty(); }
    std::size_t cells() const { return values_.size(); }
    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& values() const { return values_; }

    double operator()(double x) const;

    /// Lower/upper bounds of the stored support (zero cells trimmed away).
    std::pair<double, double> support() const;

    StepFunction& scale(double s);
    StepFunction scaled(double s) const;

    /// g(x) = f(c x), c > 0.
    StepFunction dilate_arg(double c) const;

    friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
    friend StepFunction operator-(const StepFunction& a, const StepFunction& b);

    /// g(x) = f(delta * floor(x / delta)): composition with the delta-grid
    /// projection.  Result lives on the delta lattice.
    StepFunction grid_project(double delta) const;

    /// Cell means on the delta lattice: g_j = delta^{-1} Int_{j delta}^{(j+1) delta} f.
    StepFunction block_average(double delta) const;

    double integral() const;
    /// Int |f|^p over the whole line (p >= 1).
    double integral_abs_pow(double p) const;
    /// Int over [lo, hi) of |f|^p.
    double integral_abs_pow(double p, double lo, double hi) const;

  private:
    void trim();

    std::vector<double> edges_;
    std::vector<double> values_;
};

/// (Int_{window} |f|^p)^{1/p}; the whole line when no window is given.
double lp_norm(const StepFunction& f, double p);
double lp_norm(const StepFunction& f, double p, double lo, double hi);
double lp_distance(const StepFunction& f, const StepFunction& g, double p);
double lp_distance(const StepFunction& f, const StepFunction& g, double p, double lo,
                   double hi);

} // namespace rwrs
