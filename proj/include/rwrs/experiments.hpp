#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwrs/scenery.hpp"
#include "rwrs/stats.hpp"
#include "rwrs/step_function.hpp"
#include "rwrs/walks.hpp"

namespace rwrs {

/// Everything a batch run needs; reports are pure functions of this plus the
/// seed it carries.
struct ExperimentConfig {
    WalkSpec walk;
    ScenerySpec scenery;
    std::vector<std::uint64_t> n_grid;
    std::size_t replicates = 2;
    std::vector<double> t_grid;           // empty -> {1/16, ..., 1}
    std::vector<double> weights;          // empty -> all ones
    double p = 2.0;                       // L^p index in [1, 2]
    std::vector<std::size_t> walker_counts{4, 16, 64};
    std::vector<double> delta_grid{0.5, 0.25, 0.125, 0.0625};
    double window = 2.0;                  // [-M, M] window for coarsening integrals
    std::uint64_t seed = 0;
    std::size_t threads = 0;              // 0 -> resolve from environment
    double identity_tolerance = 1e-9;
    double scaling_tolerance = 1e-12;

    void validate() const;
    std::vector<double> effective_t_grid() const;
    std::vector<double> effective_weights() const;
};

/// Growth exponent of Z_n: 1 - e + e / beta' where a_n = n^e and beta' is the
/// scenery's self-similarity index (noise index for i.i.d. sceneries, the
/// reciprocal of the kernel Hurst index for moving averages).
double target_delta(const WalkSpec& walk, const ScenerySpec& scenery);

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    std::size_t points = 0;
};

/// Least-squares slope of log IQR(Z_n) against log n.  Needs >= 4 grid points
/// and >= 200 samples per point; all-equal samples are rejected as degenerate.
ExponentFit estimate_exponent(const std::vector<std::uint64_t>& n_grid,
                              const std::vector<std::vector<double>>& samples_per_n);

/// Samples whose IQR equals n^exponent exactly (regression oracle input).
std::vector<std::vector<double>> synthetic_power_law_samples(
    const std::vector<std::uint64_t>& n_grid, double exponent, std::size_t count);

struct NSummary {
    std::uint64_t n = 0;
    stats::SummaryStats raw;          // Z_n over replicates
    stats::SummaryStats renormalized; // (a_n gamma / n) Z_n over replicates
    double identity_gap = 0.0;        // max relative gap over the probed replicates
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<NSummary> per_n;
    double max_identity_gap = 0.0;
    bool identity_ok = false;

    bool fit_valid = false; // >= 4 grid points and >= 200 replicates
    ExponentFit fit;
    double delta_target = 0.0;
    double delta_error = 0.0;   // |slope - target| when the fit is valid
    double exponent_band = 0.05;
    bool exponent_ok = false;   // fit valid and within the band
};

/// Replicate r of grid point g draws its walk from stream r of a key folded
/// from (seed, "walk", g) and its scenery likewise under "scenery"; the
/// reduction over replicates is fixed-order, so reports are byte-stable
/// across worker counts.
ExperimentReport run_replicates(const ExperimentConfig& config);

/// KS distance between renormalized terminal values at two horizons,
/// `replicates` samples each (>= 1000).
stats::KsResult self_consistency(const WalkSpec& walk, const ScenerySpec& scenery,
                                 std::uint64_t n1, std::uint64_t n2, std::size_t replicates,
                                 std::uint64_t seed, std::size_t threads);

struct WllnReport {
    std::vector<std::size_t> counts;
    std::vector<double> gaps;           // per count: (mean over batches of D^2)^{1/2}
    std::vector<double> squared_ratios; // consecutive mean-squared-gap ratios
    bool decreasing = false;
    std::size_t batches = 0;
    std::size_t reference_walkers = 0;
    double smoothing_delta = 0.0;
    StepFunction reference; // smoothed many-walker estimate of the mean
};

/// Gap between the c-walker averaged local time (combined over the t-grid
/// with the given weights) and a many-walker reference estimate of its mean,
/// both smoothed by cell averages on the delta-grid, in L^p.
WllnReport wlln_diagnostic(const WalkSpec& walk, std::uint64_t n,
                           const std::vector<std::size_t>& counts,
                           const std::vector<double>& t_grid,
                           const std::vector<double>& weights, double p, std::uint64_t seed,
                           std::size_t threads, std::size_t batches = 16,
                           std::size_t reference_walkers = 1024, double smoothing_delta = 0.25);

struct Rw2Report {
    std::vector<std::uint64_t> n_grid;
    std::vector<double> delta_grid;
    std::vector<std::vector<double>> table; // [n index][delta index]
    std::vector<double> column_max;         // per delta
    std::vector<double> column_min;         // per delta
    bool minima_decreasing = false;
    bool maxima_decreasing = false;         // up to the 2x noise band

    std::vector<double> sup_second_moment;  // per n: sup_x of mean L_n(1, x)^2
    double sup_spread = 0.0;                // largest / smallest of the above
};

/// Coarsening table: mean over replicates of the integral over [-M, M] of
/// |L_n(1, x) - L_n(1, [x]_delta)|^p, with the flatness diagnostic for the
/// second moment of L alongside.  An empty delta grid skips the table.
Rw2Report rw2_diagnostics(const WalkSpec& walk, const std::vector<std::uint64_t>& n_grid,
                          double p, const std::vector<double>& delta_grid, double window,
                          std::size_t replicates, std::uint64_t seed, std::size_t threads);

struct Rw2bFit {
    std::vector<double> ys;
    std::vector<double> mean_square_diff; // per y: mean of (L(x0) - L(x0 + y))^2
    double slope = 0.0;
    double target = 0.0; // index - 1 for stable-increment walks
};

/// Log-log rate of the mean-square local-time increment in the space gap y.
Rw2bFit rw2b_slope(const WalkSpec& walk, std::uint64_t n, const std::vector<double>& ys,
                   double x0, std::size_t replicates, std::uint64_t seed, std::size_t threads);

struct Rs2Row {
    double h = 0.0;
    double variance = 0.0;
    double limit = 0.0;
    double ratio = 0.0;
    bool degenerate = false;
};

struct Rs2Report {
    std::vector<Rs2Row> rows;
    double limit_norm = 0.0;
    double max_second_moment_ratio = 0.0; // sup over rows of E[mu_h[f]^2] / ||f||_2^2
};

/// Var(mu_h[f]) against the limit inner product <f, f> down an h-grid; only
/// square-integrable moving-average sceneries qualify.
Rs2Report rs2_variance_check(const ScenerySpec& scenery, const StepFunction& f,
                             const std::vector<double>& h_grid, std::size_t replicates,
                             std::uint64_t seed, std::size_t threads);

} // namespace rwrs
