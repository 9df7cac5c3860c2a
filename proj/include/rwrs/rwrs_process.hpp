#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "rwrs/local_time.hpp"
#include "rwrs/measure.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/step_function.hpp"
#include "rwrs/walks.hpp"

namespace rwrs {

/// Cumulative reward Z_k = sum_{j=0}^k xi_{S_j} along a walk.
struct RwrsPath {
    std::vector<double> values; // Z_0 .. Z_n
    std::shared_ptr<const WalkPath> walk;
    std::shared_ptr<Scenery> scenery;

    std::size_t length() const { return values.empty() ? 0 : values.size() - 1; }
};

RwrsPath compute_rwrs(std::shared_ptr<const WalkPath> path, std::shared_ptr<Scenery> xi);

/// The renormalised process t -> (a_n gamma_{1/a_n} / n) Z_[nt].  The
/// prefactor is exactly the one under which the process matches the
/// mesh-1/a_n measure integrated against L_n(t, .).
class RenormalizedRwrs {
  public:
    RenormalizedRwrs(RwrsPath z, std::uint64_t n, double a_n, double gamma);

    double operator()(double t) const;

    double prefactor() const { return a_n_ * gamma_ / static_cast<double>(n_); }
    std::uint64_t n() const { return n_; }
    double a_n() const { return a_n_; }
    double gamma() const { return gamma_; }
    double mesh() const { return 1.0 / a_n_; }
    const RwrsPath& path() const { return z_; }

  private:
    RwrsPath z_;
    std::uint64_t n_ = 1;
    double a_n_ = 1.0;
    double gamma_ = 1.0;
};

/// Scalings derived from the parameters: a_n from the walk kind, gamma at
/// mesh 1/a_n from the scenery attached to z.
RenormalizedRwrs renormalize(RwrsPath z, const WalkSpec& walk_spec, std::uint64_t n);

/// Evaluation grid {1/m, 2/m, ..., 1}.
std::vector<double> default_t_grid(std::size_t m = 16);

/// Both representations at a single time with explicit scalings: first the
/// direct walk sum (a_n gamma / n) Z_[nt], second the measure-side value
/// mu_{1/a_n}[L_n(t, .)] via occupation counts and cell overlaps.
std::pair<double, double> identity_check(std::shared_ptr<const WalkPath> path,
                                         std::shared_ptr<Scenery> xi, std::uint64_t n,
                                         double a_n, double gamma, double t);

/// Max over the t-grid of the relative gap between the two representations,
/// with scalings derived from the walk and scenery parameters.
double verify_identity(std::shared_ptr<const WalkPath> path, std::shared_ptr<Scenery> xi,
                       const WalkSpec& walk_spec, std::uint64_t n,
                       const std::vector<double>& t_grid);

/// Per-walker rewards in one shared scenery plus their running totals
/// Z_{k, c} = sum_i Z_k^{(i)}.
struct MultiWalkerReward {
    std::vector<RwrsPath> walkers;
    std::vector<double> totals;
    std::shared_ptr<Scenery> scenery;

    std::size_t count() const { return walkers.size(); }
};

MultiWalkerReward multiwalker_reward(const std::vector<WalkPath>& family,
                                     std::shared_ptr<Scenery> xi);

/// The averaged local time c^{-1} sum_i L_n^{(i)}(t, .).
StepFunction averaged_local_time(const MultiWalkerReward& reward, std::uint64_t n, double a_n,
                                 double t);

/// Max relative gap of the multi-walker identity
///   (a_n gamma / (c n)) Z_{[nt], c} = mu_{1/a_n}[c^{-1} sum_i L_n^{(i)}(t, .)]
/// over the t-grid.
double verify_multiwalker_identity(const MultiWalkerReward& reward, const WalkSpec& walk_spec,
                                   std::uint64_t n, const std::vector<double>& t_grid);

} // namespace rwrs
