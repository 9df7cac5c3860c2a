#include "rwrs/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rwrs/config.hpp"
#include "rwrs/experiments.hpp"
#include "rwrs/local_time.hpp"
#include "rwrs/measure.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/report.hpp"
#include "rwrs/rng.hpp"
#include "rwrs/rwrs_process.hpp"

namespace rwrs {

namespace {

using json = nlohmann::ordered_json;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t threads = 0;
    bool threads_set = false;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool out_required) {
    cmd->add_option("--config", opts.config_path, "experiment description (TOML)")
        ->required();
    auto* out = cmd->add_option("--out", opts.out_dir, "output directory");
    if (out_required) out->required();
    cmd->add_option("--seed", opts.seed, "override the config seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--threads", opts.threads, "override the worker count")
        ->each([&opts](const std::string&) { opts.threads_set = true; });
    cmd->add_flag("--strict", opts.strict,
                  "promote statistical verdicts to failures and demand full replicate counts");
}

ParsedConfig load_with_overrides(const CommonOpts& opts) {
    ParsedConfig parsed = load_config(opts.config_path);
    if (opts.seed_set) parsed.experiment.seed = opts.seed;
    if (opts.threads_set)
        parsed.experiment.threads = static_cast<std::size_t>(opts.threads);
    return parsed;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::ios_base::failure("cannot create output directory: " + dir);
}

void emit_report(const CommonOpts& opts, const std::string& name, const json& report) {
    if (opts.out_dir.empty()) return;
    ensure_out_dir(opts.out_dir);
    write_text_file(opts.out_dir + "/" + name, report.dump(2) + "\n");
}

std::shared_ptr<const WalkPath> make_walk(const WalkSpec& spec, std::uint64_t n,
                                          const SeedSpec& seed) {
    return std::make_shared<const WalkPath>(generate_walk(spec, n, seed));
}

/// Exact mass bookkeeping: the occupation counts of a horizon-m prefix must
/// total m + 1, making the local-time integral ([nt]+1)/n as a rational.
bool mass_identity_holds(const WalkPath& path, std::uint64_t n, double t) {
    const std::uint64_t m =
        static_cast<std::uint64_t>(std::floor(static_cast<double>(n) * t));
    auto shared = std::make_shared<const WalkPath>(path);
    const LocalTimeField field = LocalTimeField::accumulate(shared, m);
    std::int64_t total = 0;
    for (const auto& [site, count] : field.nonzero()) total += count;
    return total == static_cast<std::int64_t>(m) + 1;
}

/// A random compactly supported test function: a few signed indicator blocks.
StepFunction random_step_function(RandomStream& stream) {
    StepFunction f;
    const int pieces = 1 + static_cast<int>(stream.u64() % 3);
    for (int i = 0; i < pieces; ++i) {
        const double a = -2.0 + 4.0 * stream.uniform01();
        const double len = 0.25 + 1.5 * stream.uniform01();
        const double v = (stream.u64() & 1 ? 1.0 : -1.0) * (0.5 + 1.5 * stream.uniform01());
        f = f + StepFunction::indicator(a, a + len, v);
    }
    return f;
}

double relative_gap(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

int cmd_simulate(const CommonOpts& opts) {
    const ParsedConfig parsed = load_with_overrides(opts);
    const ExperimentConfig& c = parsed.experiment;
    ensure_out_dir(opts.out_dir);

    RunManifest manifest;
    manifest.config = parsed;
    manifest.seed = c.seed;
    manifest.started_at = iso_timestamp();

    auto emit = [&](const std::string& name, const std::string& content) {
        write_text_file(opts.out_dir + "/" + name, content);
        manifest.files.push_back({name, content.size(), digest_bytes(content)});
    };

    for (std::size_t gi = 0; gi < c.n_grid.size(); ++gi) {
        const std::uint64_t n = c.n_grid[gi];
        const std::uint64_t walk_key = fold_seed(fold_seed(c.seed, "walk"), gi);
        const std::uint64_t scenery_key = fold_seed(fold_seed(c.seed, "scenery"), gi);
        for (std::size_t r = 0; r < c.replicates; ++r) {
            auto path = make_walk(c.walk, n, SeedSpec{walk_key, r});
            auto xi = generate_scenery(c.scenery, SeedSpec{scenery_key, r});
            const RwrsPath z = compute_rwrs(path, xi);
            const auto [lo, hi] =
                std::minmax_element(path->positions.begin(), path->positions.end());
            const std::string tag = "n" + std::to_string(n) + "_r" + std::to_string(r);
            emit("walk_" + tag + ".csv", walk_csv(*path));
            emit("scenery_" + tag + ".csv", scenery_csv(*xi, *lo, *hi));
            emit("rwrs_" + tag + ".csv", rwrs_csv(z));
        }
    }

    manifest.finished_at = iso_timestamp();
    write_text_file(opts.out_dir + "/manifest.json", manifest.to_json().dump(2) + "\n");
    std::cout << "simulate: wrote " << manifest.files.size() << " data files + manifest to "
              << opts.out_dir << "\n";
    return 0;
}

int cmd_verify(const CommonOpts& opts, bool inject_scaling_bug) {
    const ParsedConfig parsed = load_with_overrides(opts);
    const ExperimentConfig& c = parsed.experiment;

    const ExperimentReport rep = run_replicates(c);

    // Scaling relation on random (f, c, h) triples in the configured scenery.
    const std::uint64_t scaling_key = fold_seed(c.seed, "verify-scaling");
    RandomStream pick(scaling_key, 0);
    double max_scaling_gap = 0.0;
    constexpr std::size_t kTriples = 20;
    for (std::size_t i = 0; i < kTriples; ++i) {
        auto xi = generate_scenery(c.scenery, SeedSpec{fold_seed(scaling_key, "scenery"), i});
        const StepFunction f = random_step_function(pick);
        // Dyadic dilations keep the coarse mesh c*h an exact float product.
        const double factor = std::ldexp(1.0, static_cast<int>(pick.u64() % 6) - 2);
        const double h = std::pow(2.0, -(4.0 + 6.0 * pick.uniform01()));
        RandomMeasure mu(xi, h);
        auto [lhs, rhs] = scaling_check(mu, f, factor);
        if (inject_scaling_bug) lhs *= 1.0 + 1e-6;
        max_scaling_gap = std::max(max_scaling_gap, relative_gap(lhs, rhs));
    }
    const bool scaling_ok = max_scaling_gap <= c.scaling_tolerance;

    // Exact mass bookkeeping on a bounded sample of replicates.
    const std::vector<double> t_grid = c.effective_t_grid();
    bool mass_ok = true;
    for (std::size_t gi = 0; gi < c.n_grid.size() && mass_ok; ++gi) {
        const std::uint64_t n = c.n_grid[gi];
        const std::uint64_t walk_key = fold_seed(fold_seed(c.seed, "walk"), gi);
        const std::size_t probes = std::min<std::size_t>(c.replicates, 8);
        for (std::size_t r = 0; r < probes && mass_ok; ++r) {
            auto path = make_walk(c.walk, n, SeedSpec{walk_key, r});
            for (double t : t_grid)
                if (!mass_identity_holds(*path, n, t)) mass_ok = false;
        }
    }

    // Soft statistical verdicts.
    const bool rw2_sized = c.replicates >= 500;
    bool rw2_ok = true;
    json rw2_json;
    if (rw2_sized && !c.delta_grid.empty()) {
        const Rw2Report rw2 =
            rw2_diagnostics(c.walk, c.n_grid, c.p, c.delta_grid, c.window, c.replicates,
                            c.seed, c.threads);
        rw2_ok = rw2.minima_decreasing;
        rw2_json["delta_grid"] = rw2.delta_grid;
        rw2_json["table"] = rw2.table;
        rw2_json["column_min"] = rw2.column_min;
        rw2_json["column_max"] = rw2.column_max;
        rw2_json["minima_decreasing"] = rw2.minima_decreasing;
        rw2_json["maxima_decreasing"] = rw2.maxima_decreasing;
        rw2_json["sup_second_moment"] = rw2.sup_second_moment;
        rw2_json["sup_spread"] = rw2.sup_spread;
    } else {
        rw2_json["skipped"] = rw2_sized ? "empty coarsening grid" : "insufficient replicates";
    }

    bool rs2_ok = true;
    json rs2_json;
    if (c.scenery.kind == SceneryKind::moving_average) {
        const Rs2Report rs2 = rs2_variance_check(c.scenery, StepFunction::indicator(0.0, 1.0),
                                                 parsed.h_grid, c.replicates, c.seed,
                                                 c.threads);
        json rows = json::array();
        for (const Rs2Row& row : rs2.rows) {
            json r;
            r["h"] = row.h;
            r["variance"] = row.variance;
            r["limit"] = row.limit;
            if (row.degenerate) r["ratio"] = "degenerate";
            else r["ratio"] = row.ratio;
            rows.push_back(r);
        }
        rs2_json["rows"] = rows;
        rs2_json["max_second_moment_ratio"] = rs2.max_second_moment_ratio;
        const Rs2Row& last = rs2.rows.back();
        rs2_ok = !last.degenerate && last.ratio >= 0.9 && last.ratio <= 1.1;
        rs2_json["final_ratio_in_band"] = rs2_ok;
    } else {
        rs2_json["skipped"] = "i.i.d. scenery has no moving-average variance limit";
    }

    const bool hard_ok = rep.identity_ok && scaling_ok && mass_ok;
    const bool insufficient = !rep.fit_valid || !rw2_sized;
    const bool soft_ok = (!rep.fit_valid || rep.exponent_ok) && rw2_ok && rs2_ok;

    json report;
    report["config"] = config_echo_json(parsed);
    report["seed"] = c.seed;
    report["version"] = kToolVersion;
    report["started_at"] = iso_timestamp();
    json hard;
    hard["identity_max_gap"] = rep.max_identity_gap;
    hard["identity_tolerance"] = c.identity_tolerance;
    hard["identity_ok"] = rep.identity_ok;
    hard["scaling_max_gap"] = max_scaling_gap;
    hard["scaling_tolerance"] = c.scaling_tolerance;
    hard["scaling_ok"] = scaling_ok;
    hard["mass_ok"] = mass_ok;
    report["hard"] = hard;
    json soft;
    if (rep.fit_valid) {
        soft["delta_hat"] = rep.fit.slope;
        soft["delta_stderr"] = rep.fit.slope_stderr;
        soft["delta_target"] = rep.delta_target;
        soft["delta_error"] = rep.delta_error;
        soft["exponent_ok"] = rep.exponent_ok;
    } else {
        soft["exponent"] = "skipped: insufficient replicates";
    }
    soft["rw2"] = rw2_json;
    soft["rs2"] = rs2_json;
    report["soft"] = soft;
    report["finished_at"] = iso_timestamp();
    emit_report(opts, "verify_report.json", report);

    std::cout << "identity max gap " << format_float(rep.max_identity_gap) << " (tolerance "
              << format_float(c.identity_tolerance) << "): "
              << (rep.identity_ok ? "pass" : "FAIL") << "\n"
              << "scaling max gap " << format_float(max_scaling_gap) << " (tolerance "
              << format_float(c.scaling_tolerance) << "): " << (scaling_ok ? "pass" : "FAIL")
              << "\n"
              << "mass bookkeeping: " << (mass_ok ? "pass" : "FAIL") << "\n";
    if (rep.fit_valid)
        std::cout << "exponent " << format_float(rep.fit.slope) << " vs target "
                  << format_float(rep.delta_target) << ": "
                  << (rep.exponent_ok ? "pass" : "soft fail") << "\n";

    if (!hard_ok) return 1;
    if (opts.strict && insufficient) {
        std::cerr << "insufficient replicates\n";
        return 4;
    }
    if (opts.strict && !soft_ok) return 1;
    return 0;
}

int cmd_exponent(const CommonOpts& opts, const std::optional<double>& synthetic) {
    const ParsedConfig parsed = load_with_overrides(opts);
    const ExperimentConfig& c = parsed.experiment;
    if (c.n_grid.size() < 4) {
        std::cerr << opts.config_path
                  << ": exponent estimation needs at least four grid points\n";
        return 2;
    }

    ExponentFit fit;
    double target = 0.0;
    if (synthetic) {
        target = *synthetic;
        fit = estimate_exponent(
            c.n_grid, synthetic_power_law_samples(c.n_grid, target,
                                                  std::max<std::size_t>(c.replicates, 200)));
    } else {
        if (c.replicates < 200) {
            std::cerr << opts.config_path
                      << ": exponent estimation needs at least 200 replicates per grid "
                         "point\n";
            return 2;
        }
        const ExperimentReport rep = run_replicates(c);
        fit = rep.fit;
        target = rep.delta_target;
    }

    json report;
    report["config"] = config_echo_json(parsed);
    report["synthetic"] = synthetic.has_value();
    report["delta_hat"] = fit.slope;
    report["stderr"] = fit.slope_stderr;
    report["delta_target"] = target;
    report["abs_error"] = std::abs(fit.slope - target);
    emit_report(opts, "exponent_report.json", report);
    std::cout << "delta_hat " << format_float(fit.slope) << " target " << format_float(target)
              << " abs error " << format_float(std::abs(fit.slope - target)) << "\n";
    return 0;
}

int cmd_wlln(const CommonOpts& opts) {
    const ParsedConfig parsed = load_with_overrides(opts);
    const ExperimentConfig& c = parsed.experiment;
    const WllnReport rep =
        wlln_diagnostic(c.walk, c.n_grid.back(), c.walker_counts, c.effective_t_grid(),
                        c.effective_weights(), c.p, c.seed, c.threads);

    json report;
    report["config"] = config_echo_json(parsed);
    report["n"] = c.n_grid.back();
    report["counts"] = rep.counts;
    report["gaps"] = rep.gaps;
    report["squared_ratios"] = rep.squared_ratios;
    report["decreasing"] = rep.decreasing;
    report["batches"] = rep.batches;
    report["reference_walkers"] = rep.reference_walkers;
    report["smoothing_delta"] = rep.smoothing_delta;
    emit_report(opts, "wlln_report.json", report);
    if (!opts.out_dir.empty())
        write_text_file(opts.out_dir + "/localtime_reference.csv",
                        local_time_csv(rep.reference, rep.smoothing_delta));

    std::cout << "wlln gaps:";
    for (double g : rep.gaps) std::cout << ' ' << format_float(g);
    std::cout << " (decreasing: " << (rep.decreasing ? "yes" : "no") << ")\n";
    return opts.strict && !rep.decreasing ? 1 : 0;
}

int cmd_rs2check(const CommonOpts& opts) {
    const ParsedConfig parsed = load_with_overrides(opts);
    const ExperimentConfig& c = parsed.experiment;
    const Rs2Report rep = rs2_variance_check(c.scenery, StepFunction::indicator(0.0, 1.0),
                                             parsed.h_grid, c.replicates, c.seed, c.threads);

    json rows = json::array();
    for (const Rs2Row& row : rep.rows) {
        json r;
        r["h"] = row.h;
        r["variance"] = row.variance;
        r["limit"] = row.limit;
        if (row.degenerate) r["ratio"] = "degenerate";
        else r["ratio"] = row.ratio;
        rows.push_back(r);
    }
    json report;
    report["config"] = config_echo_json(parsed);
    report["rows"] = rows;
    report["limit_norm"] = rep.limit_norm;
    report["max_second_moment_ratio"] = rep.max_second_moment_ratio;
    const Rs2Row& last = rep.rows.back();
    const bool in_band = !last.degenerate && last.ratio >= 0.9 && last.ratio <= 1.1;
    report["final_ratio_in_band"] = in_band;
    emit_report(opts, "rs2_report.json", report);

    for (const Rs2Row& row : rep.rows)
        std::cout << "h " << format_float(row.h) << ": variance "
                  << format_float(row.variance) << " / limit " << format_float(row.limit)
                  << (row.degenerate ? " (degenerate)" : "") << "\n";
    return opts.strict && !in_band ? 1 : 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Monte Carlo laboratory for random walks in random sceneries"};
    app.require_subcommand(1);

    CommonOpts simulate_opts, verify_opts, exponent_opts, wlln_opts, rs2_opts;
    bool inject_scaling_bug = false;
    double synthetic_exponent = 0.0;

    CLI::App* simulate = app.add_subcommand("simulate", "emit walk/scenery/reward traces");
    add_common(simulate, simulate_opts, /*out_required=*/true);

    CLI::App* verify = app.add_subcommand("verify", "check the exact identities and report "
                                                    "statistical verdicts");
    add_common(verify, verify_opts, /*out_required=*/false);
    verify->add_flag("--inject-scaling-bug", inject_scaling_bug)->group("");

    CLI::App* exponent = app.add_subcommand("exponent", "estimate the growth exponent");
    add_common(exponent, exponent_opts, /*out_required=*/false);
    CLI::Option* synthetic_opt =
        exponent->add_option("--synthetic-exponent", synthetic_exponent)->group("");

    CLI::App* wlln = app.add_subcommand("wlln", "many-walker averaging diagnostic");
    add_common(wlln, wlln_opts, /*out_required=*/false);

    CLI::App* rs2check = app.add_subcommand("rs2check", "scenery variance convergence check");
    add_common(rs2check, rs2_opts, /*out_required=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(simulate_opts);
        if (verify->parsed()) return cmd_verify(verify_opts, inject_scaling_bug);
        if (exponent->parsed()) {
            std::optional<double> synthetic;
            if (synthetic_opt->count() > 0) synthetic = synthetic_exponent;
            return cmd_exponent(exponent_opts, synthetic);
        }
        if (wlln->parsed()) return cmd_wlln(wlln_opts);
        if (rs2check->parsed()) return cmd_rs2check(rs2_opts);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace rwrs
