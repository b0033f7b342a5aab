#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "glmb/experiment.hpp"

using namespace glmb;
namespace fs = std::filesystem;

namespace {

Scenario tiny_scenario(uint64_t seed) {
    Scenario sc = default_scenario(seed);
    sc.duration = 8;
    sc.spawns = {{1, 7, 1}, {2, 9, 3}};
    sc.models.sensor.p_detect = 0.7;
    sc.models.sensor.clutter_rate = 1.0;
    return sc;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("glmb_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parse_mode") {
    const ModeSpec f = parse_mode("filter");
    CHECK(f.name == "filter");
    CHECK_FALSE(f.sweeps);

    const ModeSpec s = parse_mode("smoother:20");
    CHECK(s.name == "smoother:20");
    CHECK(s.sweeps);
    CHECK(s.window == 20);

    CHECK_THROWS_AS(parse_mode("smoother:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mode("viterbi"), std::invalid_argument);
}

TEST_CASE("config file parsing") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "run.cfg";

    {
        std::ofstream f(cfg);
        f << "# comment line\n"
          << "duration = 25\n"
          << "p_detect = 0.8   # trailing comment\n"
          << "clutter_rate = 2.5\n"
          << "cap_hypotheses = 7\n"
          << "samples_gibbs = 9\n"
          << "runs = 3\n"
          << "seed = 17\n"
          << "out_dir = results\n"
          << "\n";
    }
    ExperimentConfig c;
    c.scenario = tiny_scenario(0);
    apply_config_file(c, cfg.string());
    CHECK(c.scenario.duration == 25);
    CHECK(c.scenario.models.sensor.p_detect == doctest::Approx(0.8));
    CHECK(c.scenario.models.sensor.clutter_rate == doctest::Approx(2.5));
    CHECK(c.tracker.cap_requested == 7);
    CHECK(c.tracker.samples_gibbs == 9);
    CHECK(c.runs == 3);
    CHECK(c.seed == 17);
    CHECK(c.out_dir == "results");

    {
        std::ofstream f(cfg);
        f << "no_such_key = 1\n";
    }
    CHECK_THROWS(apply_config_file(c, cfg.string()));
    CHECK_THROWS(apply_config_file(c, (tmp.path / "missing.cfg").string()));
}

TEST_CASE("time-averaged metrics ignore the unused scan-0 slot") {
    RunResult rr;
    rr.ospa_dist = {99.0, 2.0, 4.0};
    rr.ospa2 = {99.0, 10.0};
    CHECK(rr.time_averaged_ospa() == doctest::Approx(3.0));
    CHECK(rr.time_averaged_ospa2() == doctest::Approx(10.0));
    CHECK(RunResult{}.time_averaged_ospa() == doctest::Approx(0.0));
}

TEST_CASE("track conversion") {
    const Dataset data = generate(tiny_scenario(5));
    const auto tt = truth_tracks(data);
    CHECK(tt.size() == 2);
    for (const auto& t : tt) CHECK(!t.empty());

    Estimate est;
    TrackEstimate tr;
    tr.label = {2, 1};
    tr.start_scan = 3;
    tr.means = {Vec4(1, 0, 2, 0), Vec4(3, 0, 4, 0)};
    est.tracks.push_back(tr);
    const auto et = estimate_tracks(est);
    REQUIRE(et.size() == 1);
    CHECK(et[0].at(3) == Vec2(1, 2));
    CHECK(et[0].at(4) == Vec2(3, 4));
    CHECK(et[0].size() == 2);
}

TEST_CASE("run_tracker produces per-scan metric series") {
    const Scenario sc = tiny_scenario(11);
    const Dataset data = generate(sc);
    SmootherConfig cfg;
    cfg.window = 3;
    cfg.cap_requested = 4;
    cfg.cap_pre_gibbs = 2;
    cfg.samples_filter = 6;
    cfg.samples_gibbs = 2;
    cfg.seed = 3;

    const RunResult rr = run_tracker(data, sc.models, cfg, OspaParams{}, 1 << 16);
    REQUIRE(static_cast<int>(rr.ospa_dist.size()) == sc.duration + 1);
    CHECK(rr.invalid_hypotheses == 0);
    for (int k = 1; k <= sc.duration; ++k) {
        CHECK(std::isfinite(rr.ospa_dist[k]));
        CHECK(rr.ospa_dist[k] >= 0.0);
        CHECK(rr.ospa_dist[k] <= OspaParams{}.cutoff + 1e-12);
        CHECK(rr.step_seconds[k] >= 0.0);
        CHECK(rr.card_true[k] == static_cast<int>(data.truth[k].items.size()));
    }
}

TEST_CASE("run_experiment writes the artifact tree") {
    TempDir tmp;
    ExperimentConfig c;
    c.scenario = tiny_scenario(0);
    c.tracker.cap_requested = 4;
    c.tracker.cap_pre_gibbs = 2;
    c.tracker.samples_filter = 6;
    c.tracker.samples_gibbs = 2;
    c.modes = {parse_mode("filter"), parse_mode("smoother:3")};
    c.runs = 2;
    c.seed = 21;
    c.out_dir = (tmp.path / "out").string();
    c.export_dataset_path = (tmp.path / "data.txt").string();

    REQUIRE(run_experiment(c) == 0);
    for (const char* f : {"summary.csv", "ospa.svg", "ospa2.svg", "cardinality.svg", "runtime.svg"})
        CHECK(fs::exists(fs::path(c.out_dir) / f));
    for (const char* mode : {"filter", "smoother:3"})
        for (const char* f : {"metrics.csv", "cardinality.csv", "runtime.csv", "tracks.csv", "tracks.svg"})
            CHECK(fs::exists(fs::path(c.out_dir) / mode / f));
    CHECK(fs::exists(c.export_dataset_path));

    // replaying the exported dataset works and uses it for every run
    ExperimentConfig r = c;
    r.export_dataset_path.clear();
    r.replay_path = c.export_dataset_path;
    r.out_dir = (tmp.path / "out_replay").string();
    CHECK(run_experiment(r) == 0);

    ExperimentConfig bad = c;
    bad.modes.clear();
    CHECK(run_experiment(bad) == 2);
    bad = c;
    bad.replay_path = (tmp.path / "nope.txt").string();
    CHECK(run_experiment(bad) == 2);
}
