#include "glmb/gibbs.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <thread>

#include "glmb/rng.hpp"

namespace glmb {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Weight impact of alpha at (j, ell) given the chain tip at j-1 (null iff ell
// is a birth candidate), propagated through the remaining lifetime under gamma.
double score_alpha(const AssociationHistory& g, const Label& ell, int j, int alpha,
                   const TrajPtr& prefix, const ModelSet& models, const Measurements& meas,
                   TrajectoryCache& cache) {
    const bool is_birth = ell.s == j;
    if (alpha < 0) {
        return is_birth ? not_born_weight(models.birth.component_for(ell.iota))
                        : death_weight(models.motion.p_survive);
    }
    TrajPtr tip = is_birth ? cache.birth(ell, alpha, models, meas[static_cast<size_t>(j)])
                           : cache.extend(prefix, alpha, models, meas[static_cast<size_t>(j)]);
    const int k = g.last_scan();
    for (int i = j + 1; i <= k && !tip->dead; ++i)
        tip = cache.extend(tip, g.alpha(ell, i), models, meas[static_cast<size_t>(i)]);
    return tip->log_total - (prefix ? prefix->log_total : 0.0);
}

// Window-restricted weight and end-of-window chains for gamma, given base
// chains at j0-1. Lets samples be priced in O(window) instead of O(k).
struct WindowEval {
    double log_w = 0.0;              // sum of association factors over scans j0..k
    std::map<Label, TrajPtr> chains;  // through min(k, death) per label touched
};

WindowEval eval_window(const AssociationHistory& g, int j0, int k,
                       const std::map<Label, TrajPtr>& base, const ModelSet& models,
                       const Measurements& meas, TrajectoryCache& cache) {
    WindowEval ev;
    std::map<Label, TrajPtr> live = base;
    for (int j = j0; j <= k; ++j) {
        for (const auto& [l, a] : g.maps[static_cast<size_t>(j)].entries) {
            if (l.s == j) {
                if (a < 0) {
                    ev.log_w += not_born_weight(models.birth.component_for(l.iota));
                } else {
                    const TrajPtr t = cache.birth(l, a, models, meas[static_cast<size_t>(j)]);
                    ev.log_w += t->log_factor;
                    ev.chains[l] = live[l] = t;
                }
            } else if (auto it = live.find(l); it != live.end()) {
                const TrajPtr t = cache.extend(it->second, a, models, meas[static_cast<size_t>(j)]);
                ev.log_w += t->log_factor;
                ev.chains[l] = t;
                if (a < 0)
                    live.erase(it);
                else
                    it->second = t;
            }
            // remaining case: a stale -1 entry for a label dead before the
            // window; contributes no factor
        }
    }
    return ev;
}

ConditionalTable table_for(const AssociationHistory& g, int j, const Label& ell,
                           const TrajPtr& prefix, const std::set<int>& used, const ModelSet& models,
                           const Measurements& meas, TrajectoryCache& cache) {
    const int k = g.last_scan();
    const int m_count = g.maps[static_cast<size_t>(j)].m_count;
    const int beta = j < k ? g.alpha(ell, j + 1) : -1;
    ConditionalTable t;
    for (int alpha = -1; alpha <= m_count; ++alpha) {
        t.support.push_back(alpha);
        t.log_scores.push_back(m_factor(alpha, beta, used)
                                   ? score_alpha(g, ell, j, alpha, prefix, models, meas, cache)
                                   : kNegInf);
    }
    return t;
}
}  // namespace

int m_factor(int alpha, int beta, const std::set<int>& used) {
    if (alpha < 0) return alpha == beta ? 1 : 0;
    if (alpha == 0) return 1;
    return used.count(alpha) ? 0 : 1;
}

double eta_jn(const AssociationHistory& gamma, const Label& ell, int j, int alpha,
              const ModelSet& models, const Measurements& meas, TrajectoryCache& cache) {
    const bool is_birth = ell.s == j;
    TrajPtr prefix = is_birth ? nullptr : build_chain(gamma, ell, j - 1, models, meas, cache);
    if (!is_birth && (!prefix || prefix->dead))
        throw std::logic_error("eta_jn: label not in the candidate domain at scan j");
    return score_alpha(gamma, ell, j, alpha, prefix, models, meas, cache);
}

ConditionalTable conditional(const AssociationHistory& gamma, int j, const Label& ell,
                             const ModelSet& models, const Measurements& meas,
                             TrajectoryCache& cache) {
    const bool is_birth = ell.s == j;
    TrajPtr prefix = is_birth ? nullptr : build_chain(gamma, ell, j - 1, models, meas, cache);
    if (!is_birth && (!prefix || prefix->dead)) {
        // outside B_j + L(gamma_{j-1}): point mass at nonexistence
        return {{-1}, {0.0}};
    }
    std::set<int> used;
    for (const auto& [l, a] : gamma.maps[static_cast<size_t>(j)].entries)
        if (l != ell && a > 0) used.insert(a);
    return table_for(gamma, j, ell, prefix, used, models, meas, cache);
}

void sweep_scan(AssociationHistory& gamma, int j, const std::map<Label, TrajPtr>& tips_in,
                std::map<Label, TrajPtr>* tips_out, const ModelSet& models,
                const Measurements& meas, TrajectoryCache& cache, std::mt19937_64& rng) {
    auto& map = gamma.maps[static_cast<size_t>(j)];

    // canonicalize the domain: birth candidates plus labels live at j-1
    EntryMap entries;
    for (const auto& c : models.birth.components) {
        const Label l{j, c.index};
        entries[l] = map.alpha(l);
    }
    for (const auto& [l, tip] : tips_in) entries[l] = map.alpha(l);
#ifndef NDEBUG
    for (const auto& [l, a] : map.entries)
        if (!entries.count(l)) assert(a == -1);
#endif
    map.entries = std::move(entries);

    std::set<int> used;
    for (const auto& [l, a] : map.entries)
        if (a > 0) used.insert(a);

    for (auto& [ell, cur] : map.entries) {
        if (cur > 0) used.erase(cur);
        const bool is_birth = ell.s == j;
        const TrajPtr prefix = is_birth ? nullptr : tips_in.at(ell);
        const ConditionalTable t = table_for(gamma, j, ell, prefix, used, models, meas, cache);
        const int pick = gumbel_max(t.log_scores, rng);
        assert(pick >= 0);
        cur = t.support[static_cast<size_t>(pick)];
        if (cur > 0) used.insert(cur);
    }

    if (tips_out) {
        std::map<Label, TrajPtr> next;
        for (const auto& [l, a] : map.entries) {
            if (a < 0) continue;
            next[l] = l.s == j ? cache.birth(l, a, models, meas[static_cast<size_t>(j)])
                               : cache.extend(tips_in.at(l), a, models, meas[static_cast<size_t>(j)]);
        }
        *tips_out = std::move(next);
    }
}

std::vector<Hypothesis> sweep_window(const Hypothesis& hypothesis, int k, const GibbsConfig& config,
                                     const ModelSet& models, const Measurements& meas,
                                     TrajectoryCache& cache) {
    if (k != hypothesis.gamma.last_scan() || k < 1 || !validate_history(hypothesis.gamma))
        throw std::logic_error("sweep_window: invalid input hypothesis");
    const int j0 = std::max(1, k - config.window + 1);

    std::map<Label, TrajPtr> base;
    if (j0 > 1)
        for (const auto& l : hypothesis.gamma.maps[static_cast<size_t>(j0 - 1)].live_labels())
            base[l] = build_chain(hypothesis.gamma, l, j0 - 1, models, meas, cache);

    // the weight of everything outside the window is shared by all samples
    const double prefix_w =
        hypothesis.log_weight -
        eval_window(hypothesis.gamma, j0, k, base, models, meas, cache).log_w;

    // trajectories of labels resolved before the window carry over unchanged
    std::map<Label, TrajPtr> frozen;
    for (const auto& [l, tip] : hypothesis.trajectories)
        if (l.s < j0 && !base.count(l)) frozen[l] = tip;

    auto finish = [&](AssociationHistory g) {
        const WindowEval ev = eval_window(g, j0, k, base, models, meas, cache);
        Hypothesis h;
        h.log_weight = prefix_w + ev.log_w;
        h.trajectories = frozen;
        for (const auto& [l, tip] : ev.chains) h.trajectories[l] = tip;
        h.gamma = std::move(g);
        return h;
    };

    std::vector<Hypothesis> out(static_cast<size_t>(config.samples));
    if (config.chained) {
        AssociationHistory g = hypothesis.gamma;
        auto rng = derive_stream(config.rng_seed, {0});
        for (int t = 0; t < config.samples; ++t) {
            std::map<Label, TrajPtr> tips = base;
            for (int j = j0; j <= k; ++j)
                sweep_scan(g, j, tips, &tips, models, meas, cache, rng);
            out[static_cast<size_t>(t)] = finish(g);
        }
        return out;
    }

    auto run_one = [&](int t) {
        AssociationHistory g = hypothesis.gamma;
        auto rng = derive_stream(config.rng_seed, {static_cast<uint64_t>(t) + 1});
        std::map<Label, TrajPtr> tips = base;
        for (int j = j0; j <= k; ++j)
            sweep_scan(g, j, tips, &tips, models, meas, cache, rng);
        out[static_cast<size_t>(t)] = finish(g);
    };
    if (config.threads <= 1) {
        for (int t = 0; t < config.samples; ++t) run_one(t);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < config.threads; ++w)
            pool.emplace_back([&, w] {
                for (int t = w; t < config.samples; t += config.threads) run_one(t);
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace glmb
