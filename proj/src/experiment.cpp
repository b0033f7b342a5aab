#include "glmb/experiment.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "glmb/rng.hpp"
#include "glmb/svg.hpp"

namespace glmb {

namespace fs = std::filesystem;

ModeSpec parse_mode(const std::string& text) {
    if (text == "filter") return {"filter", false, 1};
    if (text.rfind("smoother:", 0) == 0) {
        const int n = std::stoi(text.substr(9));
        if (n < 1) throw std::invalid_argument("smoother window must be >= 1");
        return {text, true, n};
    }
    throw std::invalid_argument("unknown mode '" + text + "' (expected filter or smoother:N)");
}

void apply_config_file(ExperimentConfig& c, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config file " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, eq, value;
        if (!(ls >> key)) continue;
        if (!(ls >> eq >> value) || eq != "=")
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key = value");
        auto& models = c.scenario.models;
        if (key == "duration") c.scenario.duration = std::stoi(value);
        else if (key == "p_detect") models.sensor.p_detect = std::stod(value);
        else if (key == "clutter_rate") models.sensor.clutter_rate = std::stod(value);
        else if (key == "p_survive") models.motion.p_survive = std::stod(value);
        else if (key == "r_birth")
            for (auto& b : models.birth.components) b.r_birth = std::stod(value);
        else if (key == "cap_hypotheses") c.tracker.cap_requested = std::stoi(value);
        else if (key == "cap_pre_gibbs") c.tracker.cap_pre_gibbs = std::stoi(value);
        else if (key == "samples_filter") c.tracker.samples_filter = std::stoi(value);
        else if (key == "samples_gibbs") c.tracker.samples_gibbs = std::stoi(value);
        else if (key == "ospa_cutoff") c.ospa.cutoff = std::stod(value);
        else if (key == "ospa_order") c.ospa.order = std::stod(value);
        else if (key == "ospa2_window") c.ospa.window = std::stoi(value);
        else if (key == "cache_capacity") c.cache_capacity = std::stoull(value);
        else if (key == "runs") c.runs = std::stoi(value);
        else if (key == "seed") c.seed = std::stoull(value);
        else if (key == "workers") c.workers = std::stoi(value);
        else if (key == "out_dir") c.out_dir = value;
        else
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": unknown key '" + key +
                                     "'");
    }
}

double RunResult::time_averaged_ospa() const {
    double s = 0.0;
    for (size_t k = 1; k < ospa_dist.size(); ++k) s += ospa_dist[k];
    return ospa_dist.size() > 1 ? s / static_cast<double>(ospa_dist.size() - 1) : 0.0;
}

double RunResult::time_averaged_ospa2() const {
    double s = 0.0;
    for (size_t k = 1; k < ospa2.size(); ++k) s += ospa2[k];
    return ospa2.size() > 1 ? s / static_cast<double>(ospa2.size() - 1) : 0.0;
}

std::vector<Track> truth_tracks(const Dataset& data) {
    std::map<Label, Track> by_label;
    for (const auto& set : data.truth)
        for (const auto& [x, l] : set.items) by_label[l][set.scan] = Vec2(x(0), x(2));
    std::vector<Track> out;
    for (auto& [l, t] : by_label) out.push_back(std::move(t));
    return out;
}

std::vector<Track> estimate_tracks(const Estimate& est) {
    std::vector<Track> out;
    for (const auto& tr : est.tracks) {
        Track t;
        for (size_t i = 0; i < tr.means.size(); ++i)
            t[tr.start_scan + static_cast<int>(i)] = Vec2(tr.means[i](0), tr.means[i](2));
        out.push_back(std::move(t));
    }
    return out;
}

RunResult run_tracker(const Dataset& data, const ModelSet& models, const SmootherConfig& config,
                      const OspaParams& ospa_params, std::size_t cache_capacity) {
    const int K = static_cast<int>(data.measurements.size()) - 1;
    TrajectoryCache cache(cache_capacity);
    RunResult rr;
    rr.step_seconds.assign(static_cast<size_t>(K) + 1, 0.0);

    PosteriorBank bank = initial_bank();
    for (int k = 1; k <= K; ++k) {
        StepDiagnostics diag;
        bank = step(bank, config, models, data.measurements, cache, &diag);
        rr.step_seconds[static_cast<size_t>(k)] = diag.seconds;
        for (const auto& h : bank.hypotheses)
            if (!validate_history(h.gamma)) ++rr.invalid_hypotheses;
    }
    rr.final_estimate = extract_estimate(bank, models.motion);

    const auto tt = truth_tracks(data);
    const auto et = estimate_tracks(rr.final_estimate);
    rr.ospa_dist.assign(static_cast<size_t>(K) + 1, 0.0);
    rr.ospa_loc = rr.ospa_card = rr.ospa2 = rr.ospa_dist;
    rr.card_true.assign(static_cast<size_t>(K) + 1, 0);
    rr.card_est = rr.card_true;
    for (int k = 1; k <= K; ++k) {
        std::vector<Vec2> xs, ys;
        for (const auto& t : tt)
            if (auto it = t.find(k); it != t.end()) xs.push_back(it->second);
        for (const auto& t : et)
            if (auto it = t.find(k); it != t.end()) ys.push_back(it->second);
        const OspaResult r = ospa(xs, ys, ospa_params);
        rr.ospa_dist[static_cast<size_t>(k)] = r.dist;
        rr.ospa_loc[static_cast<size_t>(k)] = r.loc;
        rr.ospa_card[static_cast<size_t>(k)] = r.card;
        rr.ospa2[static_cast<size_t>(k)] = ospa2(tt, et, ospa_params, k);
        rr.card_true[static_cast<size_t>(k)] = static_cast<int>(xs.size());
        rr.card_est[static_cast<size_t>(k)] = static_cast<int>(ys.size());
    }
    return rr;
}

namespace {

struct ModeAggregate {
    std::vector<RunResult> runs;
};

void write_mode_csvs(const fs::path& dir, const ModeAggregate& agg, const Dataset& first_data) {
    const auto& runs = agg.runs;
    const int K = static_cast<int>(runs[0].ospa_dist.size()) - 1;
    const auto mean_at = [&](auto proj, int k) {
        double s = 0.0;
        for (const auto& r : runs) s += static_cast<double>(proj(r)[static_cast<size_t>(k)]);
        return s / static_cast<double>(runs.size());
    };

    std::ofstream metrics(dir / "metrics.csv");
    metrics.precision(17);
    metrics << "scan,ospa,ospa_loc,ospa_card,ospa2\n";
    for (int k = 1; k <= K; ++k)
        metrics << k << ',' << mean_at([](const RunResult& r) -> const auto& { return r.ospa_dist; }, k)
                << ',' << mean_at([](const RunResult& r) -> const auto& { return r.ospa_loc; }, k)
                << ',' << mean_at([](const RunResult& r) -> const auto& { return r.ospa_card; }, k)
                << ',' << mean_at([](const RunResult& r) -> const auto& { return r.ospa2; }, k) << '\n';

    std::ofstream card(dir / "cardinality.csv");
    card.precision(17);
    card << "scan,true,estimated\n";
    for (int k = 1; k <= K; ++k)
        card << k << ',' << mean_at([](const RunResult& r) -> const auto& { return r.card_true; }, k)
             << ',' << mean_at([](const RunResult& r) -> const auto& { return r.card_est; }, k) << '\n';

    std::ofstream rt(dir / "runtime.csv");
    rt.precision(17);
    rt << "scan,seconds\n";
    for (int k = 1; k <= K; ++k)
        rt << k << ','
           << mean_at([](const RunResult& r) -> const auto& { return r.step_seconds; }, k) << '\n';

    std::ofstream tracks(dir / "tracks.csv");
    tracks.precision(17);
    tracks << "scan,label,x,y\n";
    for (const auto& tr : runs[0].final_estimate.tracks)
        for (size_t i = 0; i < tr.means.size(); ++i)
            tracks << tr.start_scan + static_cast<int>(i) << ',' << to_string(tr.label) << ','
                   << tr.means[i](0) << ',' << tr.means[i](2) << '\n';

    // tracks figure: truth solid, estimates as points
    SvgPlot plot("tracks", "x (m)", "y (m)");
    for (const auto& t : truth_tracks(first_data)) {
        std::vector<double> xs, ys;
        for (const auto& [scan, p] : t) {
            xs.push_back(p(0));
            ys.push_back(p(1));
        }
        plot.add_line(xs, ys, "black");
    }
    const char* colors[] = {"crimson", "royalblue", "seagreen", "darkorange", "purple", "teal"};
    int ci = 0;
    for (const auto& t : estimate_tracks(runs[0].final_estimate)) {
        std::vector<double> xs, ys;
        for (const auto& [scan, p] : t) {
            xs.push_back(p(0));
            ys.push_back(p(1));
        }
        plot.add_points(xs, ys, colors[ci++ % 6]);
    }
    plot.write((dir / "tracks.svg").string());
}

}  // namespace

int run_experiment(const ExperimentConfig& config) {
    if (config.modes.empty()) {
        std::cerr << "no --mode given\n";
        return 2;
    }
    fs::create_directories(config.out_dir);

    // one dataset per run (shared across modes); replay substitutes them all
    std::vector<Dataset> datasets;
    if (!config.replay_path.empty()) {
        std::ifstream f(config.replay_path);
        if (!f) {
            std::cerr << "cannot read dataset " << config.replay_path << '\n';
            return 2;
        }
        const Dataset d = read_dataset(f);
        datasets.assign(static_cast<size_t>(config.runs), d);
    } else {
        for (int r = 0; r < config.runs; ++r) {
            Scenario sc = config.scenario;
            sc.seed = splitmix64(config.seed) ^ splitmix64(static_cast<uint64_t>(r));
            datasets.push_back(generate(sc));
        }
    }
    if (!config.export_dataset_path.empty()) {
        std::ofstream f(config.export_dataset_path);
        if (!f) {
            std::cerr << "cannot write dataset " << config.export_dataset_path << '\n';
            return 1;
        }
        write_dataset(f, datasets[0]);
    }

    std::vector<ModeAggregate> results(config.modes.size());
    for (auto& r : results) r.runs.resize(static_cast<size_t>(config.runs));

    std::vector<std::pair<size_t, int>> tasks;
    for (size_t m = 0; m < config.modes.size(); ++m)
        for (int r = 0; r < config.runs; ++r) tasks.emplace_back(m, r);

    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
            const auto [m, r] = tasks[i];
            SmootherConfig tc = config.tracker;
            tc.enable_sweeps = config.modes[m].sweeps;
            tc.window = config.modes[m].window;
            tc.seed = splitmix64(config.seed) ^ splitmix64(0x7C4Eull + static_cast<uint64_t>(r));
            try {
                results[m].runs[static_cast<size_t>(r)] =
                    run_tracker(datasets[static_cast<size_t>(r)], config.scenario.models, tc,
                                config.ospa, config.cache_capacity);
            } catch (const std::exception& e) {
                std::cerr << "run failed (" << config.modes[m].name << ", run " << r
                          << "): " << e.what() << '\n';
                failed = true;
            }
        }
    };
    if (config.workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < config.workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed) {
        std::cerr << "partial artifacts: one or more runs failed\n";
        return 1;
    }

    std::ofstream summary(fs::path(config.out_dir) / "summary.csv");
    summary.precision(17);
    summary << "mode,ospa_mean,ospa_std,ospa2_mean,ospa2_std\n";
    for (size_t m = 0; m < config.modes.size(); ++m) {
        const auto& runs = results[m].runs;
        const auto stats = [&](auto proj) {
            double mean = 0.0;
            for (const auto& r : runs) mean += proj(r);
            mean /= static_cast<double>(runs.size());
            double var = 0.0;
            for (const auto& r : runs) var += (proj(r) - mean) * (proj(r) - mean);
            var = runs.size() > 1 ? var / static_cast<double>(runs.size() - 1) : 0.0;
            return std::make_pair(mean, std::sqrt(var));
        };
        const auto [om, os] = stats([](const RunResult& r) { return r.time_averaged_ospa(); });
        const auto [o2m, o2s] = stats([](const RunResult& r) { return r.time_averaged_ospa2(); });
        summary << config.modes[m].name << ',' << om << ',' << os << ',' << o2m << ',' << o2s << '\n';

        const fs::path dir = fs::path(config.out_dir) / config.modes[m].name;
        fs::create_directories(dir);
        write_mode_csvs(dir, results[m], datasets[0]);
    }

    // cross-mode figures
    const int K = static_cast<int>(datasets[0].measurements.size()) - 1;
    std::vector<double> scans;
    for (int k = 1; k <= K; ++k) scans.push_back(k);
    const char* mode_colors[] = {"crimson", "royalblue", "seagreen", "darkorange"};
    const auto mean_series = [&](const ModeAggregate& agg, auto proj) {
        std::vector<double> out;
        for (int k = 1; k <= K; ++k) {
            double s = 0.0;
            for (const auto& r : agg.runs) s += static_cast<double>(proj(r)[static_cast<size_t>(k)]);
            out.push_back(s / static_cast<double>(agg.runs.size()));
        }
        return out;
    };
    SvgPlot f_ospa("OSPA", "scan", "OSPA (m)");
    SvgPlot f_ospa2("OSPA(2)", "scan", "OSPA(2) (m)");
    SvgPlot f_card("cardinality", "scan", "cardinality");
    SvgPlot f_rt("per-step runtime", "scan", "seconds");
    f_card.add_line(scans,
                    mean_series(results[0], [](const RunResult& r) -> const auto& { return r.card_true; }),
                    "black", "truth");
    for (size_t m = 0; m < config.modes.size(); ++m) {
        const std::string& name = config.modes[m].name;
        const char* col = mode_colors[m % 4];
        f_ospa.add_line(scans,
                        mean_series(results[m], [](const RunResult& r) -> const auto& { return r.ospa_dist; }),
                        col, name);
        f_ospa2.add_line(scans,
                         mean_series(results[m], [](const RunResult& r) -> const auto& { return r.ospa2; }),
                         col, name);
        f_card.add_line(scans,
                        mean_series(results[m], [](const RunResult& r) -> const auto& { return r.card_est; }),
                        col, name);
        f_rt.add_line(scans,
                      mean_series(results[m], [](const RunResult& r) -> const auto& { return r.step_seconds; }),
                      col, name);
    }
    f_ospa.write((fs::path(config.out_dir) / "ospa.svg").string());
    f_ospa2.write((fs::path(config.out_dir) / "ospa2.svg").string());
    f_card.write((fs::path(config.out_dir) / "cardinality.svg").string());
    f_rt.write((fs::path(config.out_dir) / "runtime.svg").string());
    return 0;
}

}  // namespace glmb
