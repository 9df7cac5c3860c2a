#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

enum class SceneryKind {
    iid_stable,     // i.i.d. stable marginals, index in (1, 2]
    moving_average, // xi_k = sum_i c_{k-i} eta_i with i.i.d. Gaussian innovations
};

enum class KernelKind {
    summable,    // finitely supported coefficients, nonzero total sum
    power_decay, // c_k = p1 k^{-g} (k >= 1), c_0 = p1, c_k = p2 |k|^{-g} (k <= -1)
};

struct MovingAverageKernel {
    KernelKind kind = KernelKind::summable;

    // summable: coeffs[i] multiplies the innovation at lag (min_lag + i).
    std::vector<double> coeffs{1.0};
    std::int64_t min_lag = 0;

    // power_decay
    double decay = 0.75;          // exponent g in (1/2, 1)
    double p_plus = 1.0;          // p1, weight of positive lags (and lag 0)
    double p_minus = 1.0;         // p2, weight of negative lags
    std::int64_t radius = 100000; // truncation radius

    void validate() const;
    /// Materialised coefficients over lags [lo, lo + size).
    std::vector<double> materialise() const;
    std::int64_t lag_lo() const;
    std::int64_t lag_hi() const;
    /// Hurst index of the limiting noise: 1/2 when summable, 3/2 - decay otherwise.
    double hurst() const;
};

struct ScenerySpec {
    SceneryKind kind = SceneryKind::iid_stable;
    StableParams marginal;       // iid_stable only (index = beta)
    MovingAverageKernel kernel;  // moving_average only
    double innovation_std = 1.0; // moving_average only

    void validate() const;
    /// Index beta of the limiting noise (2 for moving averages).
    double noise_index() const;
    /// Stable fingerprint used for caching derived constants.
    std::uint64_t fingerprint() const;
};

/// Space renormalisation gamma_h of the cumulative scenery at mesh h:
///   iid stable:         h^{1/beta} / sigma
///   summable average:   h^{1/2} / (|sum c| * innovation std)
///   power-decay average: h^H / kappa, kappa calibrated from the exact
///                        variance of w_n inside the kernel's scaling window.
double normalization(const ScenerySpec& spec, double h);

/// Lazily materialised scenery.  Site values are a pure function of
/// (seed, site): any window can be queried in any order, from any number of
/// replicates, and overlapping queries agree bit for bit.  Not thread-safe;
/// clone per worker instead of sharing.
class Scenery {
  public:
    Scenery(const ScenerySpec& spec, const SeedSpec& seed);

    /// Scenery with explicitly prescribed values (zero off the given sites);
    /// the ScenerySpec only drives the normalisation constants.
    static std::shared_ptr<Scenery> fixed(std::map<std::int64_t, double> values,
                                          const ScenerySpec& spec = ScenerySpec{});

    double value(std::int64_t site);
    std::vector<double> window(std::int64_t lo, std::int64_t hi);

    const ScenerySpec& spec() const { return spec_; }
    const SeedSpec& seed() const { return seed_; }

  private:
    const std::vector<double>& block(std::int64_t index);
    std::vector<double> build_block(std::int64_t index) const;
    double innovation(std::int64_t site) const;

    ScenerySpec spec_;
    SeedSpec seed_;
    std::uint64_t site_key_ = 0;
    std::int64_t block_size_ = 4096;
    std::map<std::int64_t, std::vector<double>> blocks_;
    bool fixed_mode_ = false;
    std::map<std::int64_t, double> fixed_;
};

std::shared_ptr<Scenery> generate_scenery(const ScenerySpec& spec, const SeedSpec& seed);

/// Two-sided partial sums w with w_0 = 0 and w_{x+1} = w_x + xi_x, evaluated
/// with linear interpolation between integers.
class CumulativeScenery {
  public:
    explicit CumulativeScenery(std::shared_ptr<Scenery> scenery);

    double at_int(std::int64_t x);
    double operator()(double x);

    Scenery& scenery() { return *scenery_; }

  private:
    void extend(std::int64_t lo, std::int64_t hi);

    std::shared_ptr<Scenery> scenery_;
    std::vector<double> w_; // w_[i] = w(lo_ + i)
    std::int64_t lo_ = 0;
    std::int64_t hi_ = 0; // inclusive site range currently materialised
};

/// W_h(x) = gamma_h * w(x / h).
class RescaledCumulative {
  public:
    RescaledCumulative(std::shared_ptr<CumulativeScenery> w, double h, double gamma_h);

    double operator()(double x) const;
    double mesh() const { return h_; }
    double gamma() const { return gamma_; }

  private:
    std::shared_ptr<CumulativeScenery> w_;
    double h_ = 1.0;
    double gamma_ = 1.0;
};

RescaledCumulative rescaled_cumulative(std::shared_ptr<Scenery> scenery, double h);

} // namespace rwrs
