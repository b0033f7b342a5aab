#include "glmb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace glmb {

double min_cost_assignment(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<size_t>(n) + 1), v(static_cast<size_t>(n) + 1);
    std::vector<int> p(static_cast<size_t>(n) + 1), way(static_cast<size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<size_t>(n) + 1, 0);
        do {
            used[static_cast<size_t>(j0)] = 1;
            const int i0 = p[static_cast<size_t>(j0)];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) continue;
                const double cur = a(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
                if (cur < minv[static_cast<size_t>(j)]) {
                    minv[static_cast<size_t>(j)] = cur;
                    way[static_cast<size_t>(j)] = j0;
                }
                if (minv[static_cast<size_t>(j)] < delta) {
                    delta = minv[static_cast<size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) {
                    u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
                    v[static_cast<size_t>(j)] -= delta;
                } else {
                    minv[static_cast<size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<size_t>(j0)];
            p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
            j0 = j1;
        } while (j0);
    }
    double cost = 0.0;
    for (int j = 1; j <= n; ++j) cost += a(p[static_cast<size_t>(j)] - 1, j - 1);
    return cost;
}

namespace {

// OSPA on an arbitrary base-distance matrix (entries already capped at c).
OspaResult ospa_from_matrix(const Eigen::MatrixXd& d, const OspaParams& params) {
    const int nx = static_cast<int>(d.rows());
    const int ny = static_cast<int>(d.cols());
    const int n = std::max(nx, ny);
    const int m = std::min(nx, ny);
    const double c = params.cutoff, p = params.order;
    if (n == 0) return {};
    if (m == 0) return {c, 0.0, c};

    // pad to square; dummy rows cost 0 against every column
    Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n, n);
    if (nx <= ny)
        cost.topRows(nx) = d.array().pow(p).matrix();
    else
        cost.topRows(ny) = d.transpose().array().pow(p).matrix();
    const double loc_sum = min_cost_assignment(cost);
    const double card_sum = std::pow(c, p) * (n - m);
    OspaResult r;
    r.dist = std::pow((loc_sum + card_sum) / n, 1.0 / p);
    r.loc = std::pow(loc_sum / n, 1.0 / p);
    r.card = std::pow(card_sum / n, 1.0 / p);
    return r;
}

}  // namespace

OspaResult ospa(const std::vector<Vec2>& x, const std::vector<Vec2>& y, const OspaParams& params) {
    Eigen::MatrixXd d(x.size(), y.size());
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j)
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::min(params.cutoff, (x[i] - y[j]).norm());
    return ospa_from_matrix(d, params);
}

double ospa2(const std::vector<Track>& truth, const std::vector<Track>& est,
             const OspaParams& params, int k) {
    const int j_lo = k - params.window + 1;
    auto exists_in_window = [&](const Track& t) {
        auto it = t.lower_bound(j_lo);
        return it != t.end() && it->first <= k;
    };
    std::vector<const Track*> xs, ys;
    for (const auto& t : truth)
        if (exists_in_window(t)) xs.push_back(&t);
    for (const auto& t : est)
        if (exists_in_window(t)) ys.push_back(&t);

    Eigen::MatrixXd d(xs.size(), ys.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        for (size_t j = 0; j < ys.size(); ++j) {
            double sum = 0.0;
            for (int s = j_lo; s <= k; ++s) {
                const auto a = xs[i]->find(s);
                const auto b = ys[j]->find(s);
                const bool ea = a != xs[i]->end(), eb = b != ys[j]->end();
                if (ea && eb)
                    sum += std::min(params.cutoff, (a->second - b->second).norm());
                else if (ea != eb)
                    sum += params.cutoff;
            }
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum / params.window;
        }
    }
    return ospa_from_matrix(d, params).dist;
}

}  // namespace glmb
