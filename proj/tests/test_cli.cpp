#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "rwrs/cli.hpp"
#include "rwrs/report.hpp"

using namespace rwrs;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path& cli_test_root() {
    static const fs::path root = [] {
        // Pin timestamps so reruns of the same command are byte-identical.
        setenv("SOURCE_DATE_EPOCH", "0", 1);
        fs::path p = fs::temp_directory_path() / "rwrs_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return root;
}

fs::path fresh_dir(const std::string& name) {
    fs::path p = cli_test_root() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string write_config(const fs::path& dir, const std::string& name,
                         const std::string& body) {
    const fs::path p = dir / name;
    write_text_file(p.string(), body);
    return p.string();
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "rwrs");
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

json read_json(const fs::path& p) { return json::parse(read_text_file(p.string())); }

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

const char* kSimulateConfig =
    "schema = \"rwrs/1\"\n"
    "[walk]\n"
    "kind = \"simple\"\n"
    "[scenery]\n"
    "kind = \"iid\"\n"
    "beta = 2.0\n"
    "[experiment]\n"
    "n_grid = [16, 32]\n"
    "replicates = 2\n"
    "seed = 11\n";

const char* kVerifyConfig =
    "schema = \"rwrs/1\"\n"
    "[walk]\n"
    "kind = \"simple\"\n"
    "[scenery]\n"
    "kind = \"iid\"\n"
    "beta = 2.0\n"
    "[experiment]\n"
    "n_grid = [64, 128]\n"
    "replicates = 8\n"
    "seed = 5\n";

} // namespace

TEST_CASE("cli: usage errors and help") {
    const fs::path dir = fresh_dir("usage");
    const std::string cfg = write_config(dir, "sim.toml", kSimulateConfig);

    CHECK(run({"--help"}) == 0);
    CHECK(run({}) == 2);                  // a subcommand is required
    CHECK(run({"frobnicate"}) == 2);      // unknown subcommand
    CHECK(run({"verify"}) == 2);          // --config is required
    CHECK(run({"simulate", "--config", cfg}) == 2); // --out required for simulate
    CHECK(run({"verify", "--config", cfg, "--frobnicate"}) == 2);
}

TEST_CASE("cli: config and I/O failures map to distinct exit codes") {
    const fs::path dir = fresh_dir("failures");
    const std::string missing = (dir / "nope.toml").string();
    CHECK(run({"verify", "--config", missing}) == 3);

    const std::string bad_range = write_config(dir, "bad_range.toml",
                                               "schema = \"rwrs/1\"\n"
                                               "[walk]\n"
                                               "kind = \"simple\"\n"
                                               "[scenery]\n"
                                               "kind = \"iid\"\n"
                                               "beta = 0.9\n"
                                               "[experiment]\n"
                                               "n_grid = [16]\n"
                                               "replicates = 2\n");
    CHECK(run({"verify", "--config", bad_range}) == 2);

    const std::string bad_syntax = write_config(dir, "bad_syntax.toml",
                                                "schema = \"rwrs/1\"\n"
                                                "[walk\n");
    CHECK(run({"verify", "--config", bad_syntax}) == 2);

    // An output directory that cannot be created is an I/O failure.
    const fs::path blocker = dir / "blocker";
    write_text_file(blocker.string(), "not a directory\n");
    const std::string cfg = write_config(dir, "sim.toml", kSimulateConfig);
    CHECK(run({"simulate", "--config", cfg, "--out", (blocker / "sub").string()}) == 3);
}

TEST_CASE("cli: simulate emits a complete, reproducible dataset") {
    const fs::path dir = fresh_dir("simulate");
    const std::string cfg = write_config(dir, "sim.toml", kSimulateConfig);
    const fs::path out1 = dir / "run1";
    const fs::path out2 = dir / "run2";

    REQUIRE(run({"simulate", "--config", cfg, "--out", out1.string()}) == 0);

    const json manifest = read_json(out1 / "manifest.json");
    CHECK(manifest["tool"] == "rwrs");
    CHECK(manifest["version"] == "0.1.0");
    CHECK(manifest["schema"] == "rwrs/1");
    CHECK(manifest["seed"] == 11);
    CHECK(manifest["started_at"] == "1970-01-01T00:00:00Z");
    CHECK(manifest["finished_at"] == "1970-01-01T00:00:00Z");
    CHECK(manifest["config"]["walk"]["kind"] == "simple");
    CHECK(manifest["config"]["scenery"]["kind"] == "iid");
    CHECK(manifest["config"]["experiment"]["n_grid"] == json::array({16, 32}));

    // 2 horizons x 2 replicates x 3 traces.
    REQUIRE(manifest["files"].size() == 12);
    for (const json& rec : manifest["files"]) {
        const fs::path p = out1 / rec["file"].get<std::string>();
        REQUIRE(fs::exists(p));
        const std::string content = read_text_file(p.string());
        CHECK(content.size() == rec["bytes"].get<std::uint64_t>());
        const std::string digest = rec["digest"].get<std::string>();
        CHECK(digest.rfind("fnv1a64:", 0) == 0);
        CHECK(digest.size() == 8 + 16);
        CHECK(digest_bytes(content) == digest);
    }

    const std::string walk0 = read_text_file((out1 / "walk_n16_r0.csv").string());
    CHECK(walk0.rfind("step,position\n", 0) == 0);
    CHECK(count_lines(walk0) == 1 + 17); // header + positions 0..16
    const std::string rwrs0 = read_text_file((out1 / "rwrs_n16_r0.csv").string());
    CHECK(rwrs0.rfind("step,z\n", 0) == 0);
    CHECK(count_lines(rwrs0) == 1 + 17);
    const std::string scen0 = read_text_file((out1 / "scenery_n16_r0.csv").string());
    CHECK(scen0.rfind("site,value\n", 0) == 0);
    CHECK(count_lines(scen0) >= 1 + 2); // at least the visited range

    // A rerun with a different worker count produces byte-identical traces;
    // only the thread count echoed inside the manifest's config block differs.
    REQUIRE(run({"simulate", "--config", cfg, "--out", out2.string(), "--threads", "2"}) == 0);
    for (const json& rec : manifest["files"]) {
        const std::string name = rec["file"].get<std::string>();
        CHECK(read_text_file((out2 / name).string()) ==
              read_text_file((out1 / name).string()));
    }
    CHECK(read_json(out2 / "manifest.json")["files"] == manifest["files"]);

    // A rerun with identical flags reproduces the manifest byte for byte.
    const fs::path out3 = dir / "run3";
    REQUIRE(run({"simulate", "--config", cfg, "--out", out3.string()}) == 0);
    CHECK(read_text_file((out3 / "manifest.json").string()) ==
          read_text_file((out1 / "manifest.json").string()));
}

TEST_CASE("cli: simulate honours the seed override") {
    const fs::path dir = fresh_dir("seed_override");
    const std::string cfg = write_config(dir, "sim.toml", kSimulateConfig);
    const fs::path base = dir / "base";
    const fs::path reseeded = dir / "reseeded";

    REQUIRE(run({"simulate", "--config", cfg, "--out", base.string()}) == 0);
    REQUIRE(run({"simulate", "--config", cfg, "--out", reseeded.string(), "--seed", "99"}) ==
            0);

    const json manifest = read_json(reseeded / "manifest.json");
    CHECK(manifest["seed"] == 99);
    CHECK(manifest["config"]["experiment"]["seed"] == 99);
    CHECK(read_text_file((reseeded / "walk_n16_r0.csv").string()) !=
          read_text_file((base / "walk_n16_r0.csv").string()));
}

TEST_CASE("cli: verify reports hard checks and honours strictness") {
    const fs::path dir = fresh_dir("verify");
    const std::string cfg = write_config(dir, "verify.toml", kVerifyConfig);
    const fs::path out1 = dir / "run1";
    const fs::path out2 = dir / "run2";

    REQUIRE(run({"verify", "--config", cfg, "--out", out1.string()}) == 0);
    const json report = read_json(out1 / "verify_report.json");
    CHECK(report["seed"] == 5);
    CHECK(report["version"] == "0.1.0");
    CHECK(report["hard"]["identity_ok"] == true);
    CHECK(report["hard"]["identity_max_gap"].get<double>() <= 1e-9);
    CHECK(report["hard"]["scaling_ok"] == true);
    CHECK(report["hard"]["mass_ok"] == true);
    CHECK(report["soft"]["exponent"] == "skipped: insufficient replicates");
    CHECK(report["soft"]["rw2"]["skipped"] == "insufficient replicates");
    CHECK(report["soft"]["rs2"]["skipped"] ==
          "i.i.d. scenery has no moving-average variance limit");

    // Deterministic report bytes on rerun.
    REQUIRE(run({"verify", "--config", cfg, "--out", out2.string()}) == 0);
    CHECK(read_text_file((out2 / "verify_report.json").string()) ==
          read_text_file((out1 / "verify_report.json").string()));

    // Thread override is echoed but does not change the verdicts.
    const fs::path out3 = dir / "run3";
    REQUIRE(run({"verify", "--config", cfg, "--out", out3.string(), "--threads", "2"}) == 0);
    const json threaded = read_json(out3 / "verify_report.json");
    CHECK(threaded["config"]["experiment"]["threads"] == 2);
    CHECK(threaded["hard"] == report["hard"]);

    // Strict mode demands full replicate counts.
    CHECK(run({"verify", "--config", cfg, "--strict"}) == 4);

    // A deliberately broken scaling relation is a hard failure.
    CHECK(run({"verify", "--config", cfg, "--inject-scaling-bug"}) == 1);
}

TEST_CASE("cli: exponent command handles synthetic and real fits") {
    const fs::path dir = fresh_dir("exponent");
    const std::string cfg = write_config(dir, "exp.toml",
                                         "schema = \"rwrs/1\"\n"
                                         "[walk]\n"
                                         "kind = \"simple\"\n"
                                         "[scenery]\n"
                                         "kind = \"iid\"\n"
                                         "beta = 2.0\n"
                                         "[experiment]\n"
                                         "n_grid = [64, 128, 256, 512]\n"
                                         "replicates = 8\n"
                                         "seed = 6\n");

    const fs::path out = dir / "synthetic";
    REQUIRE(run({"exponent", "--config", cfg, "--out", out.string(),
                 "--synthetic-exponent", "0.6"}) == 0);
    const json report = read_json(out / "exponent_report.json");
    CHECK(report["synthetic"] == true);
    CHECK(report["delta_target"] == 0.6);
    CHECK(report["abs_error"].get<double>() <= 1e-9);
    CHECK(report["stderr"].get<double>() <= 1e-9);

    // Too few grid points or replicates for a real fit.
    const std::string short_grid = write_config(dir, "short.toml",
                                                "schema = \"rwrs/1\"\n"
                                                "[walk]\n"
                                                "kind = \"simple\"\n"
                                                "[scenery]\n"
                                                "kind = \"iid\"\n"
                                                "beta = 2.0\n"
                                                "[experiment]\n"
                                                "n_grid = [64, 128, 256]\n"
                                                "replicates = 8\n");
    CHECK(run({"exponent", "--config", short_grid, "--synthetic-exponent", "0.6"}) == 2);
    CHECK(run({"exponent", "--config", cfg}) == 2); // 8 replicates < 200

    const std::string real_cfg = write_config(dir, "real.toml",
                                              "schema = \"rwrs/1\"\n"
                                              "[walk]\n"
                                              "kind = \"simple\"\n"
                                              "[scenery]\n"
                                              "kind = \"iid\"\n"
                                              "beta = 2.0\n"
                                              "[experiment]\n"
                                              "n_grid = [64, 128, 256, 512]\n"
                                              "replicates = 200\n"
                                              "seed = 6\n");
    const fs::path real_out = dir / "real";
    REQUIRE(run({"exponent", "--config", real_cfg, "--out", real_out.string()}) == 0);
    const json real = read_json(real_out / "exponent_report.json");
    CHECK(real["synthetic"] == false);
    CHECK(real["delta_target"] == 0.75);
    const double hat = real["delta_hat"].get<double>();
    CHECK(real["abs_error"].get<double>() ==
          doctest::Approx(std::abs(hat - 0.75)).epsilon(1e-12));
    CHECK(real["stderr"].get<double>() > 0.0);
}

TEST_CASE("cli: wlln writes the diagnostic report and reference trace") {
    const fs::path dir = fresh_dir("wlln");
    const std::string cfg = write_config(dir, "wlln.toml",
                                         "schema = \"rwrs/1\"\n"
                                         "[walk]\n"
                                         "kind = \"simple\"\n"
                                         "[scenery]\n"
                                         "kind = \"iid\"\n"
                                         "beta = 2.0\n"
                                         "[experiment]\n"
                                         "n_grid = [64]\n"
                                         "replicates = 2\n"
                                         "seed = 13\n");
    const fs::path out = dir / "run";
    REQUIRE(run({"wlln", "--config", cfg, "--out", out.string()}) == 0);

    const json report = read_json(out / "wlln_report.json");
    CHECK(report["n"] == 64);
    CHECK(report["counts"] == json::array({4, 16, 64}));
    REQUIRE(report["gaps"].size() == 3);
    for (const json& g : report["gaps"]) CHECK(g.get<double>() > 0.0);
    CHECK(report["squared_ratios"].size() == 2);
    CHECK(report["batches"] == 16);
    CHECK(report["reference_walkers"] == 1024);
    CHECK(report["smoothing_delta"] == 0.25);
    CHECK(report["decreasing"] == true);

    const std::string reference =
        read_text_file((out / "localtime_reference.csv").string());
    CHECK(reference.rfind("cell_index,value\n", 0) == 0);
    CHECK(count_lines(reference) > 1);
}

TEST_CASE("cli: rs2check validates the variance limit and rejects i.i.d. sceneries") {
    const fs::path dir = fresh_dir("rs2check");
    const std::string cfg = write_config(dir, "rs2.toml",
                                         "schema = \"rwrs/1\"\n"
                                         "[walk]\n"
                                         "kind = \"simple\"\n"
                                         "[scenery]\n"
                                         "kind = \"moving_average\"\n"
                                         "kernel = \"summable\"\n"
                                         "coeffs = [1.0, 0.5]\n"
                                         "min_lag = 0\n"
                                         "innovation_std = 1.0\n"
                                         "[experiment]\n"
                                         "n_grid = [64]\n"
                                         "replicates = 300\n"
                                         "seed = 57\n"
                                         "h_grid = [0.0625, 0.015625]\n");
    const fs::path out = dir / "run";
    REQUIRE(run({"rs2check", "--config", cfg, "--out", out.string()}) == 0);

    const json report = read_json(out / "rs2_report.json");
    REQUIRE(report["rows"].size() == 2);
    CHECK(report["rows"][0]["h"] == 0.0625);
    CHECK(report["rows"][1]["h"] == 0.015625);
    for (const json& row : report["rows"]) {
        CHECK(row["variance"].get<double>() > 0.0);
        CHECK(row["limit"].get<double>() > 0.0);
        CHECK(row["ratio"].is_number()); // not degenerate
    }
    CHECK(report["limit_norm"].get<double>() > 0.0);
    CHECK(report["final_ratio_in_band"].is_boolean());

    // The seed override is echoed through the report.
    const fs::path out2 = dir / "reseeded";
    REQUIRE(run({"rs2check", "--config", cfg, "--out", out2.string(), "--seed", "7"}) == 0);
    CHECK(read_json(out2 / "rs2_report.json")["config"]["experiment"]["seed"] == 7);

    // An i.i.d. scenery has no moving-average limit to check against.
    const std::string iid = write_config(dir, "iid.toml", kVerifyConfig);
    CHECK(run({"rs2check", "--config", iid}) == 2);
}
