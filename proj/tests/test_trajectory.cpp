#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace glmb;

namespace {

ModelSet small_models() {
    ModelSet m = default_scenario_models();
    m.birth.components.resize(2);
    m.birth.components[0].mean = Vec4(-50.0, 0.0, 0.0, 0.0);
    m.birth.components[1].mean = Vec4(50.0, 0.0, 0.0, 0.0);
    m.birth.components[0].r_birth = 0.2;
    m.birth.components[1].r_birth = 0.1;
    m.sensor.region[0] = m.sensor.region[2] = -200.0;
    m.sensor.region[1] = m.sensor.region[3] = 200.0;
    return m;
}

Measurements random_meas(int scans, int per_scan, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-150.0, 150.0);
    Measurements meas(scans + 1);
    for (int j = 1; j <= scans; ++j)
        for (int i = 0; i < per_scan; ++i) meas[j].push_back(Vec2(u(rng), u(rng)));
    return meas;
}

}  // namespace

TEST_CASE("death and not-born weights") {
    CHECK(death_weight(0.95) == doctest::Approx(std::log(0.05)));
    BirthComponent b;
    b.r_birth = 0.03;
    CHECK(not_born_weight(b) == doctest::Approx(std::log(0.97)));
}

TEST_CASE("birth_update matches manual Kalman math") {
    const ModelSet m = small_models();
    const auto& bc = m.birth.components[0];
    const std::vector<Vec2> z = {Vec2(-45.0, 3.0), Vec2(120.0, -60.0)};

    SUBCASE("misdetected birth keeps the prior") {
        const auto [g, lw] = birth_update(bc, m.sensor, z, 0, 3);
        CHECK((g.mean - bc.mean).norm() == doctest::Approx(0.0));
        CHECK(lw == doctest::Approx(std::log(bc.r_birth) + std::log(1.0 - m.sensor.p_detect)));
    }
    SUBCASE("detected birth updates against the assigned measurement") {
        const auto [g, lw] = birth_update(bc, m.sensor, z, 1, 3);
        const Gaussian want = oracle::kf_update({bc.mean, bc.cov}, m.sensor.H, m.sensor.R, z[0]);
        CHECK((g.mean - want.mean).norm() == doctest::Approx(0.0).epsilon(1e-9));
        const double want_lw = std::log(bc.r_birth) + std::log(m.sensor.p_detect) +
                               oracle::log_meas_like({bc.mean, bc.cov}, m.sensor.H, m.sensor.R, z[0]) -
                               std::log(m.sensor.clutter_density());
        CHECK(lw == doctest::Approx(want_lw));
    }
}

TEST_CASE("build_chain / eta / history_log_weight agree with the from-scratch oracle") {
    const ModelSet m = small_models();
    const Measurements meas = random_meas(4, 2, 5);
    TrajectoryCache cache;

    // born at 1 on z1, misdetect, z2, die at 4; second site never born
    AssociationHistory g;
    for (int j = 1; j <= 4; ++j) {
        AssociationMap map;
        map.scan = j;
        map.m_count = 2;
        map.entries[{j, 1}] = -1;
        map.entries[{j, 2}] = -1;
        if (j == 1) map.entries[{1, 1}] = 1;
        if (j == 2) map.entries[{1, 1}] = 0;
        if (j == 3) map.entries[{1, 1}] = 2;
        if (j == 4) map.entries[{1, 1}] = -1;
        g.maps.push_back(map);
    }
    REQUIRE(validate_history(g));

    const double got = history_log_weight(g, m, meas, cache);
    const double want = oracle::log_history_weight(g, m, meas);
    CHECK(got == doctest::Approx(want).epsilon(1e-10));

    const TrajPtr tip = build_chain(g, {1, 1}, 4, m, meas, cache);
    REQUIRE(tip);
    TrajectoryPosterior traj{tip};
    CHECK(traj.terminated());
    CHECK(traj.birth_scan() == 1);
    CHECK(traj.last_live_scan() == 3);
    CHECK(traj.alphas() == std::vector<int>{1, 0, 2});
    CHECK(traj.filtered().size() == 3);

    // eta factors re-sum to the chain total
    double total = 0.0;
    for (int j = 1; j <= 4; ++j) total += eta(g, {1, 1}, j, m, meas, cache);
    CHECK(total == doctest::Approx(traj.log_weight()).epsilon(1e-10));

    CHECK(build_chain(g, {3, 2}, 2, m, meas, cache) == nullptr);
}

TEST_CASE("history weight oracle agreement over random valid histories") {
    const ModelSet m = small_models();
    const Measurements meas = random_meas(3, 2, 9);
    TrajectoryCache cache;
    int checked = 0;
    oracle::enumerate_histories(m, meas, 2, [&](const AssociationHistory& g) {
        if (checked >= 200) return;
        ++checked;
        CHECK(history_log_weight(g, m, meas, cache) ==
              doctest::Approx(oracle::log_history_weight(g, m, meas)).epsilon(1e-9));
    });
    CHECK(checked == 200);
}

TEST_CASE("survival_update requires a live parent") {
    const ModelSet m = small_models();
    const Measurements meas = random_meas(2, 1, 1);
    TrajectoryCache cache;
    const TrajPtr born = cache.birth({1, 1}, 0, m, meas[1]);
    const TrajPtr dead = cache.extend(born, -1, m, meas[2]);
    CHECK_THROWS_AS(survival_update(TrajectoryPosterior{dead}, m.motion, m.sensor, meas[2], 0, 3),
                    std::logic_error);
}

TEST_CASE("cache returns identical nodes for identical keys") {
    const ModelSet m = small_models();
    const Measurements meas = random_meas(3, 2, 13);
    TrajectoryCache cache;

    const TrajPtr a = cache.birth({1, 1}, 1, m, meas[1]);
    const TrajPtr b = cache.birth({1, 1}, 1, m, meas[1]);
    CHECK(a.get() == b.get());

    const TrajPtr e1 = cache.extend(a, 2, m, meas[2]);
    const TrajPtr e2 = cache.extend(a, 2, m, meas[2]);
    CHECK(e1.get() == e2.get());
    CHECK(cache.size() >= 2);

    // cold cache reproduces the same numbers bit for bit
    TrajectoryCache cold;
    const TrajPtr c = cold.extend(cold.birth({1, 1}, 1, m, meas[1]), 2, m, meas[2]);
    CHECK(c->log_total == e1->log_total);
    CHECK((c->filt.mean - e1->filt.mean).norm() == 0.0);
}

TEST_CASE("lru eviction keeps the cache bounded") {
    const ModelSet m = small_models();
    const Measurements meas = random_meas(1, 3, 17);
    TrajectoryCache cache(4);
    TrajPtr base = cache.birth({1, 1}, 0, m, meas[1]);
    for (int a = 0; a <= 3; ++a) {
        TrajPtr t = cache.extend(base, a, m, meas[1]);
        for (int b = 0; b <= 3; ++b) cache.extend(t, b, m, meas[1]);
    }
    CHECK(cache.size() <= 4 + 1);  // extensions capped; births kept
}

TEST_CASE("smoothed trajectory matches a direct rts pass") {
    const ModelSet m = small_models();
    const Measurements meas = random_meas(4, 1, 23);
    TrajectoryCache cache;
    AssociationHistory g;
    for (int j = 1; j <= 4; ++j) {
        AssociationMap map;
        map.scan = j;
        map.m_count = 1;
        map.entries[{j, 1}] = -1;
        map.entries[{j, 2}] = -1;
        map.entries[{1, 2}] = -1;
        map.entries[{1, 1}] = (j == 2) ? 0 : 1;
        g.maps.push_back(map);
    }
    TrajectoryPosterior traj{build_chain(g, {1, 1}, 4, m, meas, cache)};
    const auto sm = smooth(traj, m.motion);
    const auto want = rts_smooth(traj.filtered(), m.motion.F, m.motion.Q);
    REQUIRE(sm.size() == want.size());
    for (size_t i = 0; i < sm.size(); ++i)
        CHECK((sm[i].mean - want[i].mean).norm() == doctest::Approx(0.0));
}
