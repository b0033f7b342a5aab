#pragma once

#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glmb/label.hpp"
#include "glmb/models.hpp"

namespace glmb {

// Measurement sets indexed by scan; index 0 is unused (no scan-0 update).
using Measurements = std::vector<std::vector<Vec2>>;

struct TrajectoryNode;
using TrajPtr = std::shared_ptr<const TrajectoryNode>;

// One scan of a trajectory posterior chain. Chains are persistent: a node
// holds its predecessor, so common association prefixes share storage.
// A node with dead == true records the death event at `scan` (the trajectory
// statistics are frozen at the parent; alpha is -1 and filt copies the parent).
struct TrajectoryNode {
    TrajPtr parent;
    Label label;
    int scan = 0;
    int alpha = -1;
    bool dead = false;
    Gaussian filt;
    double log_factor = 0.0;  // association-weight factor for this scan
    double log_total = 0.0;   // cumulative since birth
};

// A trajectory posterior: filtered Gaussians over the label's life plus the
// accumulated association-weight factors, viewed through the chain tip.
struct TrajectoryPosterior {
    TrajPtr tip;

    const Label& label() const { return tip->label; }
    int birth_scan() const;
    int last_live_scan() const { return tip->dead ? tip->scan - 1 : tip->scan; }
    bool terminated() const { return tip->dead; }
    double log_weight() const { return tip->log_total; }
    std::vector<int> alphas() const;               // over live scans only
    std::vector<Gaussian> filtered() const;        // over live scans only
    std::vector<double> log_eta_factors() const;   // incl. the death factor if terminated
};

// Memoizes chain extensions keyed by (parent node, alpha); birth nodes are
// keyed by (label, alpha). Values are deterministic functions of the key and
// the dataset, so concurrent duplicate computation is harmless. LRU-capped.
class TrajectoryCache {
public:
    explicit TrajectoryCache(std::size_t capacity = std::size_t{1} << 20)
        : capacity_(capacity) {}

    // Birth at scan lab.s with measurement assignment alpha >= 0.
    TrajPtr birth(const Label& lab, int alpha, const ModelSet& models,
                  const std::vector<Vec2>& z_scan);
    // Survival (alpha >= 0) or death (alpha == -1) extension of a live chain.
    TrajPtr extend(const TrajPtr& parent, int alpha, const ModelSet& models,
                   const std::vector<Vec2>& z_scan);

    std::size_t size() const;
    void clear();

private:
    struct ExtKey {
        TrajPtr parent;  // owning: keeps the keyed address stable
        int alpha;
        bool operator==(const ExtKey& o) const {
            return parent.get() == o.parent.get() && alpha == o.alpha;
        }
    };
    struct ExtKeyHash {
        std::size_t operator()(const ExtKey& k) const {
            return std::hash<const void*>()(k.parent.get()) * 31u ^ std::hash<int>()(k.alpha);
        }
    };
    struct BirthKey {
        Label label;
        int alpha;
        bool operator==(const BirthKey& o) const { return label == o.label && alpha == o.alpha; }
    };
    struct BirthKeyHash {
        std::size_t operator()(const BirthKey& k) const {
            return (std::hash<int>()(k.label.s) * 1315423911u) ^
                   (std::hash<int>()(k.label.iota) * 2654435761u) ^ std::hash<int>()(k.alpha);
        }
    };
    struct ExtEntry {
        TrajPtr value;
        std::list<ExtKey>::iterator lru_it;
    };

    TrajPtr compute_birth(const Label&, int alpha, const ModelSet&, const std::vector<Vec2>&) const;
    TrajPtr compute_extend(const TrajPtr&, int alpha, const ModelSet&, const std::vector<Vec2>&) const;

    mutable std::mutex mu_;
    std::size_t capacity_;
    std::unordered_map<BirthKey, TrajPtr, BirthKeyHash> births_;
    std::unordered_map<ExtKey, ExtEntry, ExtKeyHash> ext_;
    std::list<ExtKey> lru_;
};

// Eq.-level kernels (all log-domain).

// Birth at scan k: Kalman update of the birth prior when alpha > 0, prior
// unchanged when alpha == 0; weight log(P_B) + marginal psi.
std::pair<Gaussian, double> birth_update(const BirthComponent& birth, const SensorModel& sensor,
                                         const std::vector<Vec2>& z_scan, int alpha, int k);

// Survival into scan k: Kalman predict then optional update; weight
// log(P_S) + marginal psi against the predicted density. Requires a live
// posterior at k-1.
std::pair<Gaussian, double> survival_update(const TrajectoryPosterior& traj, const MotionModel& motion,
                                            const SensorModel& sensor, const std::vector<Vec2>& z_scan,
                                            int alpha, int k);

double death_weight(double p_survive);
double not_born_weight(const BirthComponent& birth);

// Chain for ell under gamma through scan `upto` (death node included when the
// death event falls at or before `upto`). Null if ell is not yet born by `upto`.
TrajPtr build_chain(const AssociationHistory& gamma, const Label& ell, int upto,
                    const ModelSet& models, const Measurements& meas, TrajectoryCache& cache);

// Association-weight factor of ell at scan j under gamma (Eq. 12 case dispatch).
// ell must be in the candidate domain at j.
double eta(const AssociationHistory& gamma, const Label& ell, int j, const ModelSet& models,
           const Measurements& meas, TrajectoryCache& cache);

// Total log association weight of the history: all chain factors plus the
// not-born factors of unborn birth candidates.
double history_log_weight(const AssociationHistory& gamma, const ModelSet& models,
                          const Measurements& meas, TrajectoryCache& cache);

// RTS-smoothed marginals over the live scans of a trajectory.
std::vector<Gaussian> smooth(const TrajectoryPosterior& traj, const MotionModel& motion);

}  // namespace glmb
