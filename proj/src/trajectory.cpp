#include "glmb/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace glmb {

int TrajectoryPosterior::birth_scan() const {
    const TrajectoryNode* n = tip.get();
    while (n->parent) n = n->parent.get();
    return n->scan;
}

std::vector<int> TrajectoryPosterior::alphas() const {
    std::vector<int> out;
    for (const TrajectoryNode* n = tip.get(); n; n = n->parent.get())
        if (!n->dead) out.push_back(n->alpha);
    return {out.rbegin(), out.rend()};
}

std::vector<Gaussian> TrajectoryPosterior::filtered() const {
    std::vector<Gaussian> out;
    for (const TrajectoryNode* n = tip.get(); n; n = n->parent.get())
        if (!n->dead) out.push_back(n->filt);
    return {out.rbegin(), out.rend()};
}

std::vector<double> TrajectoryPosterior::log_eta_factors() const {
    std::vector<double> out;
    for (const TrajectoryNode* n = tip.get(); n; n = n->parent.get()) out.push_back(n->log_factor);
    return {out.rbegin(), out.rend()};
}

std::pair<Gaussian, double> birth_update(const BirthComponent& birth, const SensorModel& sensor,
                                         const std::vector<Vec2>& z_scan, int alpha, int /*k*/) {
    if (alpha < 0 || alpha > static_cast<int>(z_scan.size()))
        throw std::invalid_argument("birth_update: alpha out of range");
    Gaussian prior{birth.mean, birth.cov};
    const double lw = std::log(birth.r_birth) + log_psi_marginal(sensor, z_scan, alpha, prior);
    if (alpha > 0) prior = kalman_update(prior, sensor.H, sensor.R, z_scan[static_cast<size_t>(alpha - 1)]);
    return {prior, lw};
}

std::pair<Gaussian, double> survival_update(const TrajectoryPosterior& traj, const MotionModel& motion,
                                            const SensorModel& sensor, const std::vector<Vec2>& z_scan,
                                            int alpha, int k) {
    if (traj.terminated() || traj.last_live_scan() != k - 1)
        throw std::logic_error("survival_update: trajectory is not live at k-1");
    if (alpha < 0 || alpha > static_cast<int>(z_scan.size()))
        throw std::invalid_argument("survival_update: alpha out of range");
    Gaussian pred = kalman_predict(traj.tip->filt, motion.F, motion.Q);
    const double lw = std::log(motion.p_survive) + log_psi_marginal(sensor, z_scan, alpha, pred);
    if (alpha > 0) pred = kalman_update(pred, sensor.H, sensor.R, z_scan[static_cast<size_t>(alpha - 1)]);
    return {pred, lw};
}

double death_weight(double p_survive) {
    return std::log1p(-p_survive);
}

double not_born_weight(const BirthComponent& birth) {
    return std::log1p(-birth.r_birth);
}

TrajPtr TrajectoryCache::compute_birth(const Label& lab, int alpha, const ModelSet& models,
                                       const std::vector<Vec2>& z_scan) const {
    auto [g, lw] = birth_update(models.birth.component_for(lab.iota), models.sensor, z_scan, alpha, lab.s);
    auto node = std::make_shared<TrajectoryNode>();
    node->label = lab;
    node->scan = lab.s;
    node->alpha = alpha;
    node->filt = g;
    node->log_factor = lw;
    node->log_total = lw;
    return node;
}

TrajPtr TrajectoryCache::compute_extend(const TrajPtr& parent, int alpha, const ModelSet& models,
                                        const std::vector<Vec2>& z_scan) const {
    if (parent->dead) throw std::logic_error("extend: trajectory already terminated");
    auto node = std::make_shared<TrajectoryNode>();
    node->parent = parent;
    node->label = parent->label;
    node->scan = parent->scan + 1;
    node->alpha = alpha;
    if (alpha < 0) {
        node->dead = true;
        node->filt = parent->filt;
        node->log_factor = death_weight(models.motion.p_survive);
    } else {
        auto [g, lw] = survival_update({parent}, models.motion, models.sensor, z_scan, alpha, node->scan);
        node->filt = g;
        node->log_factor = lw;
    }
    node->log_total = parent->log_total + node->log_factor;
    return node;
}

TrajPtr TrajectoryCache::birth(const Label& lab, int alpha, const ModelSet& models,
                               const std::vector<Vec2>& z_scan) {
    const BirthKey key{lab, alpha};
    {
        std::lock_guard lock(mu_);
        auto it = births_.find(key);
        if (it != births_.end()) return it->second;
    }
    TrajPtr node = compute_birth(lab, alpha, models, z_scan);
    std::lock_guard lock(mu_);
    return births_.emplace(key, node).first->second;
}

TrajPtr TrajectoryCache::extend(const TrajPtr& parent, int alpha, const ModelSet& models,
                                const std::vector<Vec2>& z_scan) {
    const ExtKey key{parent, alpha};
    {
        std::lock_guard lock(mu_);
        auto it = ext_.find(key);
        if (it != ext_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second.lru_it);
            return it->second.value;
        }
    }
    TrajPtr node = compute_extend(parent, alpha, models, z_scan);
    std::lock_guard lock(mu_);
    auto it = ext_.find(key);
    if (it != ext_.end()) return it->second.value;
    lru_.push_front(key);
    ext_.emplace(key, ExtEntry{node, lru_.begin()});
    while (ext_.size() > capacity_) {
        ext_.erase(lru_.back());
        lru_.pop_back();
    }
    return node;
}

std::size_t TrajectoryCache::size() const {
    std::lock_guard lock(mu_);
    return births_.size() + ext_.size();
}

void TrajectoryCache::clear() {
    std::lock_guard lock(mu_);
    births_.clear();
    ext_.clear();
    lru_.clear();
}

TrajPtr build_chain(const AssociationHistory& gamma, const Label& ell, int upto,
                    const ModelSet& models, const Measurements& meas, TrajectoryCache& cache) {
    TrajPtr tip;
    for (int j = ell.s; j <= upto && j <= gamma.last_scan(); ++j) {
        const int a = gamma.alpha(ell, j);
        if (!tip) {
            if (a < 0) continue;  // not yet born
            if (j != ell.s) throw std::logic_error("build_chain: birth after label's birth scan");
            tip = cache.birth(ell, a, models, meas[static_cast<size_t>(j)]);
        } else if (tip->dead) {
            break;
        } else {
            tip = cache.extend(tip, a, models, meas[static_cast<size_t>(j)]);
        }
    }
    return tip;
}

double eta(const AssociationHistory& gamma, const Label& ell, int j, const ModelSet& models,
           const Measurements& meas, TrajectoryCache& cache) {
    const int a = gamma.alpha(ell, j);
    const bool is_birth = ell.s == j;
    if (is_birth && a < 0) return not_born_weight(models.birth.component_for(ell.iota));
    TrajPtr prev = is_birth ? nullptr : build_chain(gamma, ell, j - 1, models, meas, cache);
    if (!is_birth && (!prev || prev->dead))
        throw std::logic_error("eta: label not in the candidate domain at scan j");
    TrajPtr tip = is_birth ? cache.birth(ell, a, models, meas[static_cast<size_t>(j)])
                           : cache.extend(prev, a, models, meas[static_cast<size_t>(j)]);
    return tip->log_total - (prev ? prev->log_total : 0.0);
}

double history_log_weight(const AssociationHistory& gamma, const ModelSet& models,
                          const Measurements& meas, TrajectoryCache& cache) {
    double total = 0.0;
    for (const auto& ell : gamma.ever_live_labels()) {
        TrajPtr tip = build_chain(gamma, ell, gamma.last_scan(), models, meas, cache);
        total += tip->log_total;
    }
    // unborn birth candidates
    for (int j = 1; j <= gamma.last_scan(); ++j)
        for (const auto& [l, a] : gamma.maps[static_cast<size_t>(j)].entries)
            if (l.s == j && a < 0) total += not_born_weight(models.birth.component_for(l.iota));
    return total;
}

std::vector<Gaussian> smooth(const TrajectoryPosterior& traj, const MotionModel& motion) {
    return rts_smooth(traj.filtered(), motion.F, motion.Q);
}

}  // namespace glmb
