#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "rwrs/step_function.hpp"
#include "rwrs/walks.hpp"

namespace rwrs {

/// Occupation counts N(m, x) = #{k in [0, m] : S_k = x} of a walk prefix.
/// Counts live in a dense offset array when the visited range is modest and
/// fall back to an ordered map for extreme jump outliers.
class LocalTimeField {
  public:
    static LocalTimeField accumulate(std::shared_ptr<const WalkPath> path,
                                     std::size_t horizon);

    std::int64_t count(std::int64_t site) const;
    std::size_t horizon() const { return horizon_; }
    std::int64_t min_site() const { return min_site_; }
    std::int64_t max_site() const { return max_site_; }
    /// Total mass: always horizon + 1 visits.
    std::uint64_t total_visits() const;
    const WalkPath& path() const { return *path_; }
    std::shared_ptr<const WalkPath> path_ptr() const { return path_; }

    /// Sites with nonzero count in increasing order, as (site, count).
    std::vector<std::pair<std::int64_t, std::int64_t>> nonzero() const;

  private:
    static constexpr std::int64_t kDenseLimit = 10'000'000;

    std::shared_ptr<const WalkPath> path_;
    std::size_t horizon_ = 0;
    std::int64_t min_site_ = 0;
    std::int64_t max_site_ = 0;
    bool dense_ = true;
    std::vector<std::int64_t> counts_;
    std::map<std::int64_t, std::int64_t> sparse_;
};

/// L_n(t, x) = n^{-1} a_n N([n t], floor(a_n x)): a step function on the
/// lattice of cells [k / a_n, (k+1) / a_n).
class RescaledLocalTime {
  public:
    RescaledLocalTime(const LocalTimeField& field, std::uint64_t n, double a_n, double t);

    double operator()(double x) const;
    double value(double x) const { return (*this)(x); }

    std::uint64_t n() const { return n_; }
    double a_n() const { return a_n_; }
    double t() const { return t_; }
    std::uint64_t step_horizon() const { return field_.horizon(); }
    /// Exact integer visit total; the total integral equals this over n.
    std::uint64_t total_visits() const { return field_.total_visits(); }
    const LocalTimeField& field() const { return field_; }

    StepFunction to_step_function() const;

  private:
    LocalTimeField field_;
    std::uint64_t n_ = 1;
    double a_n_ = 1.0;
    double t_ = 1.0;
};

RescaledLocalTime rescale(const LocalTimeField& field, std::uint64_t n, double a_n,
                          double t);

/// Convenience: accumulate at horizon [n t] and rescale in one go.
RescaledLocalTime rescaled_local_time(std::shared_ptr<const WalkPath> path, std::uint64_t n,
                                      double a_n, double t);

/// Composition with the delta-grid projection x -> delta floor(x / delta).
StepFunction coarsen(const RescaledLocalTime& lt, double delta);

/// Pointwise sum_i theta_i L^{(i)}; all fields must share (n, a_n).
StepFunction combine(const std::vector<double>& theta,
                     const std::vector<RescaledLocalTime>& fields);

} // namespace rwrs
