#include <doctest.h>

#include <set>
#include <stdexcept>
#include <string>

#include "simcal/datagen.hpp"
#include "simcal/observables.hpp"
#include "simcal/rng.hpp"

using namespace simcal;

TEST_CASE("simulate evaluates the polynomial at the origin") {
    const ObservableVector o = simulate({0.0, 0.0, 0.0, 0.0});
    CHECK(o.gamma_bang_time == doctest::Approx(8.1).epsilon(1e-14));
    CHECK(o.gamma_burnwidth == doctest::Approx(0.24).epsilon(1e-14));
    CHECK(o.log10_yield_dt == doctest::Approx(15.3).epsilon(1e-14));
    CHECK(o.tion_dt == doctest::Approx(2.6).epsilon(1e-14));
    CHECK(o.log10_yield_dd == doctest::Approx(13.2).epsilon(1e-14));
    CHECK(o.tion_dd == doctest::Approx(2.24).epsilon(1e-14));
    CHECK(o.dsr == doctest::Approx(0.03).epsilon(1e-14));
}

TEST_CASE("simulate is pure") {
    const DesignPoint d{0.3, 0.6, 0.2, 0.9};
    const auto a = simulate(d).to_array();
    const auto b = simulate(d).to_array();
    CHECK(a == b);
}

TEST_CASE("simulate rejects out-of-range knobs") {
    CHECK_THROWS_AS(simulate({-0.1, 0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate({0.0, 1.1, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate({0.0, 0.0, 2.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate({0.0, 0.0, 0.0, -1e-9}), std::invalid_argument);
}

TEST_CASE("dt yield rises strictly with drive strength") {
    double previous = -1e300;
    for (int i = 0; i <= 10; ++i) {
        const double x1 = i / 10.0;
        const double y = simulate({x1, 0.4, 0.6, 0.8}).log10_yield_dt;
        CHECK(y > previous);
        previous = y;
    }
}

TEST_CASE("zero-noise experiment matches the warp in closed form") {
    GeneratorConfig cfg;
    cfg.noise_sd.fill(0.0);
    const DesignPoint d{0.3, 0.7, 0.4, 0.9};
    const ObservableVector sim = simulate(d);

    SeededRng rng(1);
    const ObservableVector exp = experiment_truth(d, cfg, rng);
    const double yield_shift = 0.5 + 1.5 * d.x3;
    CHECK(exp.gamma_bang_time == doctest::Approx(sim.gamma_bang_time + 0.1).epsilon(1e-14));
    CHECK(exp.gamma_burnwidth == doctest::Approx(sim.gamma_burnwidth * 1.3).epsilon(1e-14));
    CHECK(exp.log10_yield_dt ==
          doctest::Approx(sim.log10_yield_dt - yield_shift).epsilon(1e-14));
    CHECK(exp.tion_dt == doctest::Approx(0.85 * sim.tion_dt + 0.3).epsilon(1e-14));
    CHECK(exp.log10_yield_dd ==
          doctest::Approx(sim.log10_yield_dd - yield_shift).epsilon(1e-14));
    CHECK(exp.tion_dd == doctest::Approx(0.85 * sim.tion_dd + 0.3).epsilon(1e-14));
    CHECK(exp.dsr == doctest::Approx(sim.dsr * 0.9).epsilon(1e-14));
}

TEST_CASE("zero-noise yield shift vanishes with the asymmetry knob") {
    GeneratorConfig cfg;
    cfg.noise_sd.fill(0.0);
    const DesignPoint d{0.5, 0.2, 0.0, 0.6};
    SeededRng rng(2);
    const ObservableVector exp = experiment_truth(d, cfg, rng);
    CHECK(exp.log10_yield_dt ==
          doctest::Approx(simulate(d).log10_yield_dt - 0.5).epsilon(1e-14));
}

TEST_CASE("experiment_truth is deterministic by seed") {
    const GeneratorConfig cfg;
    const DesignPoint d{0.1, 0.8, 0.5, 0.3};
    SeededRng a(77), b(77);
    CHECK(experiment_truth(d, cfg, a).to_array() == experiment_truth(d, cfg, b).to_array());
}

TEST_CASE("experiment_truth consumes the stream independently of the noise scale") {
    GeneratorConfig loud;
    GeneratorConfig quiet;
    quiet.noise_sd.fill(0.0);
    const DesignPoint d{0.4, 0.4, 0.4, 0.4};
    SeededRng a(5), b(5);
    experiment_truth(d, loud, a);
    experiment_truth(d, quiet, b);
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("experiment_truth clamps dsr into the physical range") {
    GeneratorConfig cfg;
    cfg.noise_sd[6] = 10.0;
    SeededRng rng(9);
    bool clamped_low = false;
    for (int i = 0; i < 200; ++i) {
        const ObservableVector exp = experiment_truth({0.5, 0.5, 0.5, 0.5}, cfg, rng);
        REQUIRE(exp.dsr >= 0.0);
        REQUIRE(exp.dsr <= 1.0);
        clamped_low = clamped_low || exp.dsr == 0.0;
    }
    CHECK(clamped_low);
}

TEST_CASE("experiment_truth rejects negative noise") {
    GeneratorConfig cfg;
    cfg.noise_sd[2] = -0.1;
    SeededRng rng(3);
    CHECK_THROWS_AS(experiment_truth({0.0, 0.0, 0.0, 0.0}, cfg, rng), std::invalid_argument);
}

TEST_CASE("generate_sim_database produces valid, bounded rows") {
    SeededRng rng(31);
    const auto rows = generate_sim_database(5000, rng);
    REQUIRE(rows.size() == 5000);
    for (const ObservableVector& v : rows) {
        validate_observables(v, "test");
        // dsr = 0.03 + 0.02*x4 - 0.03*x2 over the unit cube.
        REQUIRE(v.dsr >= 0.0);
        REQUIRE(v.dsr <= 0.05);
    }
}

TEST_CASE("generate_sim_database is deterministic and rejects n=0") {
    SeededRng a(8), b(8);
    const auto ra = generate_sim_database(50, a);
    const auto rb = generate_sim_database(50, b);
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) CHECK(ra[i].to_array() == rb[i].to_array());
    CHECK_THROWS_AS(generate_sim_database(0, a), std::invalid_argument);
}

TEST_CASE("generate_shot_series numbers shots chronologically") {
    const GeneratorConfig cfg;
    SeededRng rng(12);
    const auto shots = generate_shot_series(47, cfg, rng);
    REQUIRE(shots.size() == 47);
    for (std::size_t i = 0; i < shots.size(); ++i) {
        CHECK(shots[i].shot_index == i);
        validate_observables(shots[i].sim, "sim");
        validate_observables(shots[i].exp, "exp");
    }
}

TEST_CASE("generate_shot_series drifts across campaigns") {
    const GeneratorConfig cfg;
    SeededRng rng(13);
    const auto shots = generate_shot_series(47, cfg, rng);

    const std::set<std::string> known = {"campaign-a", "campaign-b", "campaign-c",
                                         "campaign-d"};
    for (const ShotRecord& rec : shots) CHECK(known.count(rec.campaign) == 1);
    // The drive knob starts in [0, 0.3] and ends in [0.7, 1.0], so the
    // first shot sits in the early campaigns and the last in the late ones.
    CHECK((shots.front().campaign == "campaign-a" || shots.front().campaign == "campaign-b"));
    CHECK((shots.back().campaign == "campaign-c" || shots.back().campaign == "campaign-d"));
}

TEST_CASE("generate_shot_series under zero noise matches the warp shot by shot") {
    GeneratorConfig cfg;
    cfg.noise_sd.fill(0.0);
    SeededRng rng(14);
    const auto shots = generate_shot_series(20, cfg, rng);
    for (const ShotRecord& rec : shots) {
        CHECK(rec.exp.gamma_bang_time ==
              doctest::Approx(rec.sim.gamma_bang_time + 0.1).epsilon(1e-14));
        CHECK(rec.exp.gamma_burnwidth ==
              doctest::Approx(rec.sim.gamma_burnwidth * 1.3).epsilon(1e-14));
        CHECK(rec.exp.tion_dt == doctest::Approx(0.85 * rec.sim.tion_dt + 0.3).epsilon(1e-14));
        CHECK(rec.exp.tion_dd == doctest::Approx(0.85 * rec.sim.tion_dd + 0.3).epsilon(1e-14));
        CHECK(rec.exp.dsr == doctest::Approx(0.9 * rec.sim.dsr).epsilon(1e-14));
        // Both yields shift by the same x3-dependent amount, within the
        // documented range.
        const double shift_dt = rec.sim.log10_yield_dt - rec.exp.log10_yield_dt;
        const double shift_dd = rec.sim.log10_yield_dd - rec.exp.log10_yield_dd;
        CHECK(shift_dt == doctest::Approx(shift_dd).epsilon(1e-12));
        CHECK(shift_dt >= 0.5);
        CHECK(shift_dt <= 2.0);
    }
}

TEST_CASE("generate_shot_series is deterministic and rejects n=0") {
    const GeneratorConfig cfg;
    SeededRng a(15), b(15);
    const auto sa = generate_shot_series(10, cfg, a);
    const auto sb = generate_shot_series(10, cfg, b);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i) {
        CHECK(sa[i].campaign == sb[i].campaign);
        CHECK(sa[i].sim.to_array() == sb[i].sim.to_array());
        CHECK(sa[i].exp.to_array() == sb[i].exp.to_array());
    }
    CHECK_THROWS_AS(generate_shot_series(0, cfg, a), std::invalid_argument);
}
