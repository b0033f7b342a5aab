#include "glmb/smoother.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "glmb/rng.hpp"

namespace glmb {

namespace {

// Sort for truncation: weight descending, history ascending as tie-break.
void sort_hypotheses(std::vector<Hypothesis>& hs) {
    std::sort(hs.begin(), hs.end(), [](const Hypothesis& a, const Hypothesis& b) {
        if (a.log_weight != b.log_weight) return a.log_weight > b.log_weight;
        return a.gamma < b.gamma;
    });
}

// One representative per distinct history; duplicates carry identical weights.
void dedup(std::vector<Hypothesis>& hs) {
    std::sort(hs.begin(), hs.end(),
              [](const Hypothesis& a, const Hypothesis& b) { return a.gamma < b.gamma; });
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    sort_hypotheses(hs);
}

std::vector<double> normalize(const std::vector<Hypothesis>& hs) {
    double max_lw = -std::numeric_limits<double>::infinity();
    for (const auto& h : hs) max_lw = std::max(max_lw, h.log_weight);
    double sum = 0.0;
    std::vector<double> w(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) sum += (w[i] = std::exp(hs[i].log_weight - max_lw));
    for (auto& x : w) x /= sum;
    return w;
}

}  // namespace

PosteriorBank initial_bank() {
    PosteriorBank b;
    b.scan = 0;
    b.hypotheses.emplace_back();
    b.weights.push_back(1.0);
    return b;
}

std::vector<Hypothesis> sample_factors(const Hypothesis& hypothesis, int t_h, const ModelSet& models,
                                       const Measurements& meas, TrajectoryCache& cache,
                                       uint64_t stream_seed) {
    const int k = hypothesis.gamma.last_scan() + 1;
    if (k >= static_cast<int>(meas.size()))
        throw std::out_of_range("sample_factors: no measurements for scan k");

    AssociationHistory g = hypothesis.gamma;
    AssociationMap ext;
    ext.scan = k;
    ext.m_count = static_cast<int>(meas[static_cast<size_t>(k)].size());

    std::map<Label, TrajPtr> tips;
    for (const auto& l : g.maps[static_cast<size_t>(k - 1)].live_labels()) {
        const TrajPtr tip = hypothesis.trajectories.at(l);
        ext.entries[l] = 0;  // start live labels as misdetected
        tips[l] = tip;
    }
    for (const auto& c : models.birth.components) ext.entries[Label{k, c.index}] = -1;
    g.maps.push_back(std::move(ext));

    auto rng = derive_stream(stream_seed, {static_cast<uint64_t>(k)});
    std::vector<Hypothesis> out;
    std::set<AssociationMap> seen;
    for (int t = 0; t < t_h; ++t) {
        sweep_scan(g, k, tips, nullptr, models, meas, cache, rng);
        const auto& mk = g.maps[static_cast<size_t>(k)];
        if (!seen.insert(mk).second) continue;

        // price the new scan incrementally off the parent hypothesis
        Hypothesis h;
        h.log_weight = hypothesis.log_weight;
        h.trajectories = hypothesis.trajectories;
        for (const auto& [l, a] : mk.entries) {
            if (l.s == k && a < 0) {
                h.log_weight += not_born_weight(models.birth.component_for(l.iota));
                continue;
            }
            const TrajPtr t_new = l.s == k
                                      ? cache.birth(l, a, models, meas[static_cast<size_t>(k)])
                                      : cache.extend(tips.at(l), a, models, meas[static_cast<size_t>(k)]);
            h.log_weight += t_new->log_factor;
            h.trajectories[l] = t_new;
        }
        h.gamma = g;
        out.push_back(std::move(h));
    }
    return out;
}

PosteriorBank step(const PosteriorBank& bank, const SmootherConfig& config, const ModelSet& models,
                   const Measurements& meas, TrajectoryCache& cache, StepDiagnostics* diag) {
    const auto t_start = std::chrono::steady_clock::now();
    const int k = bank.scan + 1;

    std::vector<Hypothesis> pool;
    for (size_t h = 0; h < bank.hypotheses.size(); ++h) {
        const int t_h =
            std::max<int>(1, static_cast<int>(std::llround(config.samples_filter * bank.weights[h])));
        auto ext = sample_factors(bank.hypotheses[h], t_h, models, meas, cache,
                                  splitmix64(config.seed) ^ splitmix64(0x66AC00ull + h));
        pool.insert(pool.end(), std::make_move_iterator(ext.begin()),
                    std::make_move_iterator(ext.end()));
    }
    dedup(pool);

    if (config.enable_sweeps && k >= config.window) {
        // unrefined extensions stay in the candidate pool: they are the Gibbs
        // chains' initial states, and they carry tentative tracks through
        // stretches the window-restricted sweeps would prune too eagerly
        std::vector<Hypothesis> carriers = pool;
        if (static_cast<int>(pool.size()) > config.cap_pre_gibbs)
            pool.resize(static_cast<size_t>(config.cap_pre_gibbs));
        std::vector<std::vector<Hypothesis>> refined(pool.size());
        auto run_one = [&](size_t h) {
            GibbsConfig gc;
            gc.window = config.window;
            gc.samples = config.samples_gibbs;
            gc.rng_seed = splitmix64(config.seed) ^ splitmix64(0x91BB50ull + h) ^
                          splitmix64(static_cast<uint64_t>(k));
            refined[h] = sweep_window(pool[h], k, gc, models, meas, cache);
        };
        if (config.threads <= 1 || pool.size() <= 1) {
            for (size_t h = 0; h < pool.size(); ++h) run_one(h);
        } else {
            std::vector<std::thread> workers;
            const int nw = std::min<int>(config.threads, static_cast<int>(pool.size()));
            for (int w = 0; w < nw; ++w)
                workers.emplace_back([&, w] {
                    for (size_t h = static_cast<size_t>(w); h < pool.size();
                         h += static_cast<size_t>(nw))
                        run_one(h);
                });
            for (auto& th : workers) th.join();
        }
        pool = std::move(carriers);
        for (auto& r : refined)
            pool.insert(pool.end(), std::make_move_iterator(r.begin()),
                        std::make_move_iterator(r.end()));
        dedup(pool);
    }

    if (static_cast<int>(pool.size()) > config.cap_requested)
        pool.resize(static_cast<size_t>(config.cap_requested));

    PosteriorBank out;
    out.scan = k;
    out.hypotheses = std::move(pool);
    out.weights = normalize(out.hypotheses);

    if (diag) {
        diag->hypothesis_count = static_cast<int>(out.hypotheses.size());
        double sq = 0.0;
        for (double w : out.weights) sq += w * w;
        diag->ess = sq > 0 ? 1.0 / sq : 0.0;
        diag->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    }
    return out;
}

Estimate extract_estimate(const PosteriorBank& bank, const MotionModel& motion) {
    if (bank.hypotheses.empty()) throw std::logic_error("extract_estimate: empty bank");
    const Hypothesis& best = bank.hypotheses.front();
    Estimate est;
    est.cardinality =
        static_cast<int>(best.gamma.maps[static_cast<size_t>(bank.scan)].live_labels().size());
    for (const auto& [label, tip] : best.trajectories) {
        TrajectoryPosterior traj{tip};
        TrackEstimate tr;
        tr.label = label;
        tr.start_scan = traj.birth_scan();
        for (const auto& g : smooth(traj, motion)) tr.means.push_back(g.mean);
        est.tracks.push_back(std::move(tr));
    }
    return est;
}

}  // namespace glmb
