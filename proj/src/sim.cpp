#include "glmb/sim.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "glmb/rng.hpp"

namespace glmb {

Scenario default_scenario(uint64_t seed) {
    Scenario sc;
    sc.duration = 100;
    sc.models = default_scenario_models();
    sc.seed = seed;
    const int births[3] = {1, 20, 50};
    const int deaths[3] = {10, 40, 90};
    for (int g = 0; g < 3; ++g)
        for (int c = 1; c <= 4; ++c) sc.spawns.push_back({births[g], deaths[g], c});
    return sc;
}

Dataset generate(const Scenario& scenario) {
    const auto& m = scenario.models;
    auto rng = derive_stream(scenario.seed, {0xDA7Aull});
    std::normal_distribution<double> stdn(0.0, 1.0);
    auto sample_gauss4 = [&](const Vec4& mean, const Mat4& cov) {
        Eigen::LLT<Mat4> llt(cov);
        Vec4 u;
        for (int i = 0; i < 4; ++i) u(i) = stdn(rng);
        return Vec4(mean + llt.matrixL() * u);
    };

    Dataset data;
    data.truth.resize(static_cast<size_t>(scenario.duration) + 1);
    data.measurements.resize(static_cast<size_t>(scenario.duration) + 1);
    for (int j = 0; j <= scenario.duration; ++j) data.truth[static_cast<size_t>(j)].scan = j;

    // truth trajectories: deterministic schedule, noisy constant-velocity motion
    for (const auto& sp : scenario.spawns) {
        const Label label{sp.birth_scan, sp.component};
        const auto& bc = m.birth.component_for(sp.component);
        Vec4 x = sample_gauss4(bc.mean, bc.cov);
        for (int j = sp.birth_scan; j < sp.death_scan && j <= scenario.duration; ++j) {
            if (j > sp.birth_scan) x = sample_gauss4(m.motion.F * x, m.motion.Q);
            data.truth[static_cast<size_t>(j)].items.emplace_back(x, label);
        }
    }

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::poisson_distribution<int> poisson(m.sensor.clutter_rate);
    const auto* reg = m.sensor.region;
    Eigen::LLT<Mat2> lltR(m.sensor.R);
    for (int j = 1; j <= scenario.duration; ++j) {
        auto& Z = data.measurements[static_cast<size_t>(j)];
        for (const auto& [x, label] : data.truth[static_cast<size_t>(j)].items) {
            if (unif(rng) < m.sensor.p_detect) {
                Vec2 u(stdn(rng), stdn(rng));
                Z.push_back(m.sensor.H * x + lltR.matrixL() * u);
            }
        }
        const int n_clutter = poisson(rng);
        for (int c = 0; c < n_clutter; ++c)
            Z.emplace_back(reg[0] + unif(rng) * (reg[1] - reg[0]),
                           reg[2] + unif(rng) * (reg[3] - reg[2]));
        std::shuffle(Z.begin(), Z.end(), rng);
    }
    return data;
}

void write_dataset(std::ostream& os, const Dataset& data) {
    os.precision(17);
    for (size_t j = 0; j < data.truth.size(); ++j) {
        os << "scan " << j << '\n';
        for (const auto& [x, l] : data.truth[j].items)
            os << "truth " << to_string(l) << ' ' << x(0) << ' ' << x(1) << ' ' << x(2) << ' '
               << x(3) << '\n';
        if (j < data.measurements.size())
            for (const auto& z : data.measurements[j]) os << "meas " << z(0) << ' ' << z(1) << '\n';
        os << "end\n";
    }
}

Dataset read_dataset(std::istream& is) {
    Dataset data;
    std::string line;
    int scan = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "scan") {
            ls >> scan;
            if (scan != static_cast<int>(data.truth.size()))
                throw std::runtime_error("dataset scans out of order");
            data.truth.push_back({scan, {}});
            data.measurements.emplace_back();
        } else if (tag == "truth") {
            Label l;
            char dot;
            Vec4 x;
            ls >> l.s >> dot >> l.iota >> x(0) >> x(1) >> x(2) >> x(3);
            if (!ls || dot != '.') throw std::runtime_error("bad truth line: " + line);
            data.truth.back().items.emplace_back(x, l);
        } else if (tag == "meas") {
            Vec2 z;
            ls >> z(0) >> z(1);
            if (!ls) throw std::runtime_error("bad meas line: " + line);
            data.measurements.back().push_back(z);
        } else if (tag != "end") {
            throw std::runtime_error("unknown dataset line: " + line);
        }
    }
    return data;
}

}  // namespace glmb
