#include "rwrs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "rwrs/local_time.hpp"
#include "rwrs/measure.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/rng.hpp"
#include "rwrs/rwrs_process.hpp"

namespace rwrs {

namespace {

constexpr std::size_t kReduceChunk = 128;

std::shared_ptr<const WalkPath> make_walk(const WalkSpec& spec, std::uint64_t n,
                                          const SeedSpec& seed) {
    return std::make_shared<const WalkPath>(generate_walk(spec, n, seed));
}

double scenery_similarity_index(const ScenerySpec& scenery) {
    if (scenery.kind == SceneryKind::iid_stable) return 1.0 / scenery.marginal.index;
    return scenery.kernel.hurst();
}

} // namespace

void ExperimentConfig::validate() const {
    walk.validate();
    scenery.validate();
    if (n_grid.empty()) throw std::invalid_argument("the horizon grid must not be empty");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i] >= n_grid[i + 1])
            throw std::invalid_argument("the horizon grid must be strictly increasing");
    if (n_grid.front() == 0) throw std::invalid_argument("horizons must be positive");
    if (replicates == 0) throw std::invalid_argument("at least one replicate is required");
    if (!(p >= 1.0 && p <= 2.0))
        throw std::invalid_argument("the L^p index must lie in [1, 2]");
    for (double t : t_grid)
        if (!(t > 0.0 && t <= 1.0))
            throw std::invalid_argument("evaluation times must lie in (0, 1]");
    if (!weights.empty() && weights.size() != effective_t_grid().size())
        throw std::invalid_argument("weights must match the evaluation grid in length");
    for (std::size_t i = 0; i + 1 < walker_counts.size(); ++i)
        if (walker_counts[i] >= walker_counts[i + 1])
            throw std::invalid_argument("walker counts must be strictly increasing");
    if (!walker_counts.empty() && walker_counts.front() == 0)
        throw std::invalid_argument("walker counts must be positive");
    for (std::size_t i = 0; i < delta_grid.size(); ++i) {
        if (!(delta_grid[i] > 0.0))
            throw std::invalid_argument("coarsening levels must be positive");
        if (i + 1 < delta_grid.size() && delta_grid[i] <= delta_grid[i + 1])
            throw std::invalid_argument("coarsening levels must be strictly decreasing");
    }
    if (!(window > 0.0)) throw std::invalid_argument("the integration window must be positive");
    if (!(identity_tolerance > 0.0) || !(scaling_tolerance > 0.0))
        throw std::invalid_argument("tolerances must be positive");
}

std::vector<double> ExperimentConfig::effective_t_grid() const {
    return t_grid.empty() ? default_t_grid() : t_grid;
}

std::vector<double> ExperimentConfig::effective_weights() const {
    if (!weights.empty()) return weights;
    return std::vector<double>(effective_t_grid().size(), 1.0);
}

double target_delta(const WalkSpec& walk, const ScenerySpec& scenery) {
    const double e = walk.scaling_exponent();
    return 1.0 - e + e * scenery_similarity_index(scenery);
}

ExponentFit estimate_exponent(const std::vector<std::uint64_t>& n_grid,
                              const std::vector<std::vector<double>>& samples_per_n) {
    if (n_grid.size() < 4)
        throw std::invalid_argument("exponent estimation needs at least four grid points");
    if (samples_per_n.size() != n_grid.size())
        throw std::invalid_argument("one sample set per grid point is required");
    std::vector<double> xs, ys;
    xs.reserve(n_grid.size());
    ys.reserve(n_grid.size());
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (samples_per_n[i].size() < 200)
            throw std::invalid_argument(
                "exponent estimation needs at least 200 replicates per grid point");
        const double spread = stats::iqr(samples_per_n[i]);
        if (!(spread > 0.0))
            throw std::invalid_argument("degenerate spread: the samples at one grid point "
                                        "are all equal");
        xs.push_back(std::log(static_cast<double>(n_grid[i])));
        ys.push_back(std::log(spread));
    }
    const stats::OlsFit ols = stats::ols_fit(xs, ys);
    ExponentFit fit;
    fit.slope = ols.slope;
    fit.intercept = ols.intercept;
    fit.slope_stderr = ols.slope_stderr;
    fit.points = n_grid.size();
    return fit;
}

std::vector<std::vector<double>> synthetic_power_law_samples(
    const std::vector<std::uint64_t>& n_grid, double exponent, std::size_t count) {
    if (count < 2) throw std::invalid_argument("at least two synthetic samples are required");
    std::vector<std::vector<double>> out;
    out.reserve(n_grid.size());
    for (std::uint64_t n : n_grid) {
        // An even lattice from 0 to 2 n^e has inter-quartile range n^e exactly.
        const double top = 2.0 * std::pow(static_cast<double>(n), exponent);
        std::vector<double> xs(count);
        for (std::size_t i = 0; i < count; ++i)
            xs[i] = top * static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(std::move(xs));
    }
    return out;
}

ExperimentReport run_replicates(const ExperimentConfig& config) {
    config.validate();
    if (config.replicates < 2)
        throw std::invalid_argument("replicate statistics need at least two replicates");
    const std::size_t threads = resolve_threads(config.threads);
    const std::vector<double> t_grid = config.effective_t_grid();

    ExperimentReport report;
    report.config = config;
    report.per_n.reserve(config.n_grid.size());

    struct Replicate {
        double raw = 0.0;
        double renormalized = 0.0;
        double identity_gap = 0.0;
    };

    std::vector<std::vector<double>> raw_samples;
    raw_samples.reserve(config.n_grid.size());

    for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
        const std::uint64_t n = config.n_grid[gi];
        const std::uint64_t walk_key = fold_seed(fold_seed(config.seed, "walk"), gi);
        const std::uint64_t scenery_key = fold_seed(fold_seed(config.seed, "scenery"), gi);
        const std::size_t probes = std::min<std::size_t>(4, config.replicates);

        auto one = [&](std::size_t r) {
            auto path = make_walk(config.walk, n, SeedSpec{walk_key, r});
            auto xi = generate_scenery(config.scenery, SeedSpec{scenery_key, r});
            RwrsPath z = compute_rwrs(path, xi);
            Replicate rep;
            rep.raw = z.values.back();
            rep.renormalized = renormalize(std::move(z), config.walk, n)(1.0);
            if (r < probes)
                rep.identity_gap = verify_identity(path, xi, config.walk, n, t_grid);
            return rep;
        };
        const std::vector<Replicate> reps = parallel_map(config.replicates, threads, one);

        NSummary row;
        row.n = n;
        std::vector<double> raw(config.replicates), ren(config.replicates);
        for (std::size_t r = 0; r < config.replicates; ++r) {
            raw[r] = reps[r].raw;
            ren[r] = reps[r].renormalized;
            row.identity_gap = std::max(row.identity_gap, reps[r].identity_gap);
        }
        row.raw = stats::summarize(raw);
        row.renormalized = stats::summarize(ren);
        report.max_identity_gap = std::max(report.max_identity_gap, row.identity_gap);
        report.per_n.push_back(row);
        raw_samples.push_back(std::move(raw));
    }

    report.identity_ok = report.max_identity_gap <= config.identity_tolerance;
    report.delta_target = target_delta(config.walk, config.scenery);
    report.fit_valid = config.n_grid.size() >= 4 && config.replicates >= 200;
    if (report.fit_valid) {
        report.fit = estimate_exponent(config.n_grid, raw_samples);
        report.delta_error = std::abs(report.fit.slope - report.delta_target);
        report.exponent_ok = report.delta_error <= report.exponent_band;
    }
    return report;
}

stats::KsResult self_consistency(const WalkSpec& walk, const ScenerySpec& scenery,
                                 std::uint64_t n1, std::uint64_t n2, std::size_t replicates,
                                 std::uint64_t seed, std::size_t threads) {
    if (replicates < 1000)
        throw std::invalid_argument(
            "the self-consistency check needs at least 1000 replicates per horizon");
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("horizons must be positive");
    const std::size_t workers = resolve_threads(threads);

    auto draw = [&](std::uint64_t n, std::string_view walk_tag, std::string_view scenery_tag) {
        const std::uint64_t wkey = fold_seed(seed, walk_tag);
        const std::uint64_t skey = fold_seed(seed, scenery_tag);
        return parallel_map(replicates, workers, [&, wkey, skey, n](std::size_t r) {
            auto path = make_walk(walk, n, SeedSpec{wkey, r});
            auto xi = generate_scenery(scenery, SeedSpec{skey, r});
            return renormalize(compute_rwrs(path, xi), walk, n)(1.0);
        });
    };
    std::vector<double> a = draw(n1, "ks-a-walk", "ks-a-scenery");
    std::vector<double> b = draw(n2, "ks-b-walk", "ks-b-scenery");
    return stats::two_sample_ks(std::move(a), std::move(b));
}

WllnReport wlln_diagnostic(const WalkSpec& walk, std::uint64_t n,
                           const std::vector<std::size_t>& counts,
                           const std::vector<double>& t_grid,
                           const std::vector<double>& weights, double p, std::uint64_t seed,
                           std::size_t threads, std::size_t batches,
                           std::size_t reference_walkers, double smoothing_delta) {
    walk.validate();
    if (n == 0) throw std::invalid_argument("the horizon must be positive");
    if (counts.empty()) throw std::invalid_argument("a walker count schedule is required");
    for (std::size_t i = 0; i + 1 < counts.size(); ++i)
        if (counts[i] >= counts[i + 1])
            throw std::invalid_argument("walker counts must be strictly increasing");
    if (counts.front() == 0) throw std::invalid_argument("walker counts must be positive");
    if (t_grid.empty() || t_grid.size() != weights.size())
        throw std::invalid_argument("the evaluation grid and weights must match");
    for (double t : t_grid)
        if (!(t > 0.0 && t <= 1.0))
            throw std::invalid_argument("evaluation times must lie in (0, 1]");
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("the L^p index must lie in [1, 2]");
    if (batches < 2) throw std::invalid_argument("at least two batches are required");
    if (reference_walkers == 0)
        throw std::invalid_argument("the reference needs at least one walker");
    if (!(smoothing_delta > 0.0))
        throw std::invalid_argument("the smoothing mesh must be positive");

    const std::size_t workers = resolve_threads(threads);
    const double a_n = scaling_for(walk)(n);

    auto combined = [&](std::uint64_t key, std::size_t id) {
        auto path = make_walk(walk, n, SeedSpec{key, id});
        std::vector<RescaledLocalTime> fields;
        fields.reserve(t_grid.size());
        for (double t : t_grid) fields.push_back(rescaled_local_time(path, n, a_n, t));
        return combine(weights, fields);
    };

    const std::uint64_t ref_key = fold_seed(seed, "wlln-ref");
    StepFunction reference;
    for (std::size_t base = 0; base < reference_walkers; base += kReduceChunk) {
        const std::size_t m = std::min(kReduceChunk, reference_walkers - base);
        auto part =
            parallel_map(m, workers, [&](std::size_t j) { return combined(ref_key, base + j); });
        for (auto& f : part) reference = reference + f;
    }
    const StepFunction reference_smooth =
        reference.scaled(1.0 / static_cast<double>(reference_walkers))
            .block_average(smoothing_delta);

    WllnReport report;
    report.counts = counts;
    report.batches = batches;
    report.reference_walkers = reference_walkers;
    report.smoothing_delta = smoothing_delta;
    report.reference = reference_smooth;

    const std::uint64_t batch_key = fold_seed(seed, "wlln");
    std::vector<double> mean_sq(counts.size(), 0.0);
    for (std::size_t ci = 0; ci < counts.size(); ++ci) {
        const std::size_t c = counts[ci];
        auto one = [&](std::size_t b) {
            const std::uint64_t key = fold_seed(batch_key, ci * 8192 + b);
            StepFunction sum;
            for (std::size_t i = 0; i < c; ++i) sum = sum + combined(key, i);
            const StepFunction smooth =
                sum.scaled(1.0 / static_cast<double>(c)).block_average(smoothing_delta);
            return lp_distance(smooth, reference_smooth, p);
        };
        const std::vector<double> gaps = parallel_map(batches, workers, one);
        double acc = 0.0;
        for (double d : gaps) acc += d * d;
        mean_sq[ci] = acc / static_cast<double>(batches);
        report.gaps.push_back(std::sqrt(mean_sq[ci]));
    }

    report.decreasing = true;
    for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
        if (!(report.gaps[i + 1] < report.gaps[i])) report.decreasing = false;
        report.squared_ratios.push_back(mean_sq[i + 1] > 0.0 ? mean_sq[i] / mean_sq[i + 1]
                                                             : 0.0);
    }
    return report;
}

Rw2Report rw2_diagnostics(const WalkSpec& walk, const std::vector<std::uint64_t>& n_grid,
                          double p, const std::vector<double>& delta_grid, double window,
                          std::size_t replicates, std::uint64_t seed, std::size_t threads) {
    walk.validate();
    if (n_grid.empty()) throw std::invalid_argument("the horizon grid must not be empty");
    if (replicates < 500)
        throw std::invalid_argument("the coarsening diagnostics need at least 500 replicates");
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("the L^p index must lie in [1, 2]");
    if (!(window > 0.0)) throw std::invalid_argument("the integration window must be positive");
    for (std::size_t i = 0; i < delta_grid.size(); ++i) {
        if (!(delta_grid[i] > 0.0))
            throw std::invalid_argument("coarsening levels must be positive");
        if (i + 1 < delta_grid.size() && delta_grid[i] <= delta_grid[i + 1])
            throw std::invalid_argument("coarsening levels must be strictly decreasing");
    }

    const std::size_t workers = resolve_threads(threads);
    Rw2Report report;
    report.n_grid = n_grid;
    report.delta_grid = delta_grid;

    struct Replicate {
        std::vector<double> row;
        std::vector<std::pair<std::int64_t, double>> squares;
    };

    for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
        const std::uint64_t n = n_grid[gi];
        const double a_n = scaling_for(walk)(n);
        const std::uint64_t key = fold_seed(fold_seed(seed, "rw2"), gi);

        auto one = [&](std::size_t r) {
            auto path = make_walk(walk, n, SeedSpec{key, r});
            const RescaledLocalTime lt = rescaled_local_time(path, n, a_n, 1.0);
            Replicate rep;
            const StepFunction f = lt.to_step_function();
            rep.row.reserve(delta_grid.size());
            for (double delta : delta_grid) {
                const StepFunction g = coarsen(lt, delta);
                rep.row.push_back((f - g).integral_abs_pow(p, -window, window));
            }
            const double unit = a_n / static_cast<double>(n);
            for (const auto& [site, count] : lt.field().nonzero()) {
                const double v = unit * static_cast<double>(count);
                rep.squares.emplace_back(site, v * v);
            }
            return rep;
        };

        std::vector<double> row(delta_grid.size(), 0.0);
        std::map<std::int64_t, double> square_sums;
        for (std::size_t base = 0; base < replicates; base += kReduceChunk) {
            const std::size_t m = std::min(kReduceChunk, replicates - base);
            auto part = parallel_map(m, workers, [&](std::size_t j) { return one(base + j); });
            for (auto& rep : part) {
                for (std::size_t k = 0; k < row.size(); ++k) row[k] += rep.row[k];
                for (const auto& [site, sq] : rep.squares) square_sums[site] += sq;
            }
        }
        for (double& v : row) v /= static_cast<double>(replicates);
        report.table.push_back(std::move(row));

        double sup = 0.0;
        for (const auto& [site, sq] : square_sums)
            sup = std::max(sup, sq / static_cast<double>(replicates));
        report.sup_second_moment.push_back(sup);
    }

    if (!delta_grid.empty()) {
        report.column_max.assign(delta_grid.size(), 0.0);
        report.column_min.assign(delta_grid.size(),
                                 std::numeric_limits<double>::infinity());
        for (const auto& row : report.table)
            for (std::size_t k = 0; k < delta_grid.size(); ++k) {
                report.column_max[k] = std::max(report.column_max[k], row[k]);
                report.column_min[k] = std::min(report.column_min[k], row[k]);
            }
        report.minima_decreasing = true;
        report.maxima_decreasing = true;
        for (std::size_t k = 0; k + 1 < delta_grid.size(); ++k) {
            if (!(report.column_min[k + 1] < report.column_min[k]))
                report.minima_decreasing = false;
            if (!(report.column_max[k + 1] < report.column_max[k]))
                report.maxima_decreasing = false;
        }
    }

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double v : report.sup_second_moment) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    report.sup_spread = lo > 0.0 ? hi / lo : 0.0;
    return report;
}

Rw2bFit rw2b_slope(const WalkSpec& walk, std::uint64_t n, const std::vector<double>& ys,
                   double x0, std::size_t replicates, std::uint64_t seed,
                   std::size_t threads) {
    walk.validate();
    if (n == 0) throw std::invalid_argument("the horizon must be positive");
    if (ys.size() < 2) throw std::invalid_argument("at least two gaps are required");
    for (double y : ys)
        if (!(y > 0.0)) throw std::invalid_argument("gaps must be positive");
    if (replicates < 2) throw std::invalid_argument("at least two replicates are required");

    const std::size_t workers = resolve_threads(threads);
    const double a_n = scaling_for(walk)(n);
    const std::uint64_t key = fold_seed(seed, "rw2b");

    auto one = [&](std::size_t r) {
        auto path = make_walk(walk, n, SeedSpec{key, r});
        const RescaledLocalTime lt = rescaled_local_time(path, n, a_n, 1.0);
        std::vector<double> sq(ys.size());
        const double base = lt(x0);
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double d = base - lt(x0 + ys[j]);
            sq[j] = d * d;
        }
        return sq;
    };

    Rw2bFit fit;
    fit.ys = ys;
    fit.mean_square_diff.assign(ys.size(), 0.0);
    for (std::size_t base = 0; base < replicates; base += kReduceChunk) {
        const std::size_t m = std::min(kReduceChunk, replicates - base);
        auto part = parallel_map(m, workers, [&](std::size_t j) { return one(base + j); });
        for (auto& sq : part)
            for (std::size_t j = 0; j < ys.size(); ++j) fit.mean_square_diff[j] += sq[j];
    }
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < ys.size(); ++j) {
        fit.mean_square_diff[j] /= static_cast<double>(replicates);
        if (!(fit.mean_square_diff[j] > 0.0))
            throw std::runtime_error("degenerate spread: the local-time increments vanish");
        lx.push_back(std::log(ys[j]));
        ly.push_back(std::log(fit.mean_square_diff[j]));
    }
    fit.slope = stats::ols_fit(lx, ly).slope;
    fit.target = walk.kind == WalkKind::stable_increments
                     ? walk.step_law.index - 1.0
                     : 1.0 / walk.scaling_exponent() - 1.0;
    return fit;
}

Rs2Report rs2_variance_check(const ScenerySpec& scenery, const StepFunction& f,
                             const std::vector<double>& h_grid, std::size_t replicates,
                             std::uint64_t seed, std::size_t threads) {
    scenery.validate();
    if (scenery.kind != SceneryKind::moving_average)
        throw std::invalid_argument(
            "the variance check needs a moving-average scenery (square-integrable case)");
    if (h_grid.empty()) throw std::invalid_argument("the mesh grid must not be empty");
    for (double h : h_grid)
        if (!(h > 0.0)) throw std::invalid_argument("meshes must be positive");
    if (replicates < 2) throw std::invalid_argument("at least two replicates are required");

    const std::size_t workers = resolve_threads(threads);
    const LimitNoise noise = scenery.kernel.kind == KernelKind::summable
                                 ? LimitNoise::brownian()
                                 : LimitNoise::fractional(scenery.kernel.hurst());

    Rs2Report report;
    report.limit_norm = limit_inner_product(noise, f, f);
    const double f_norm_sq = f.integral_abs_pow(2.0);
    const std::uint64_t key = fold_seed(seed, "rs2");

    for (std::size_t hi = 0; hi < h_grid.size(); ++hi) {
        const double h = h_grid[hi];
        const std::uint64_t hkey = fold_seed(key, hi);
        const std::vector<double> xs =
            parallel_map(replicates, workers, [&, hkey, h](std::size_t r) {
                auto xi = generate_scenery(scenery, SeedSpec{hkey, r});
                return RandomMeasure(xi, h).integrate(f);
            });
        double m2 = 0.0;
        for (double x : xs) m2 += x * x;
        m2 /= static_cast<double>(xs.size());

        Rs2Row row;
        row.h = h;
        row.variance = stats::variance(xs);
        row.limit = report.limit_norm;
        row.degenerate = !(row.limit > 0.0) || !(row.variance > 0.0);
        row.ratio = row.degenerate ? 0.0 : row.variance / row.limit;
        report.rows.push_back(row);
        if (f_norm_sq > 0.0)
            report.max_second_moment_ratio =
                std::max(report.max_second_moment_ratio, m2 / f_norm_sq);
    }
    return report;
}

} // namespace rwrs
