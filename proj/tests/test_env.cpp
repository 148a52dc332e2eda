#include <doctest.h>

#include <cmath>

#include "cenra/env.hpp"
#include "cenra/errors.hpp"
#include "cenra/suite.hpp"
#include "oracles.hpp"

using namespace cenra;
using test_oracles::maze_from_string;

namespace {
MazeLayout small() { return maze_from_string(test_oracles::kSmallMaze, "small"); }
}  // namespace

TEST_SUITE("env") {

TEST_CASE("observation encodes normalized coordinates and the key flag") {
    MazeLayout m = small();  // 7x7: scale is 1/6
    Observation o = encode_observation(m, {1, 1}, false);
    REQUIRE((int)o.features.size() == kObservationDim);
    CHECK(o.features[0] == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(o.features[1] == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(o.features[2] == 0.0);
    CHECK(o.features[3] == doctest::Approx(3.0 / 6));  // key x
    CHECK(o.features[4] == doctest::Approx(2.0 / 6));  // key y
    CHECK(o.features[5] == doctest::Approx(3.0 / 6));  // door x
    CHECK(o.features[6] == doctest::Approx(3.0 / 6));  // door y
    CHECK(o.features[7] == doctest::Approx(4.0 / 6));  // goal x
    CHECK(o.features[8] == doctest::Approx(5.0 / 6));  // goal y
    Observation with_key = encode_observation(m, {1, 1}, true);
    CHECK(with_key.features[2] == 1.0);
    for (double v : o.features) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("reset returns the start observation") {
    MazeEnv env(small(), 200);
    Observation o = env.reset(7);
    CHECK(env.agent() == Cell{1, 1});
    CHECK_FALSE(env.has_key());
    CHECK(env.steps_taken() == 0);
    CHECK(env.episode_active());
    CHECK(o.features[0] == doctest::Approx(1.0 / 6));
}

TEST_CASE("bumping a wall burns a step in place") {
    MazeEnv env(small(), 200);
    env.reset(0);
    auto r = env.step(0);  // up into the border
    CHECK(env.agent() == Cell{1, 1});
    CHECK(r.reward == 0.0);
    CHECK_FALSE(r.done);
    CHECK_FALSE(r.truncated);
    CHECK(env.steps_taken() == 1);
    auto r2 = env.step(3);  // left into the border
    CHECK(env.agent() == Cell{1, 1});
    CHECK(r2.reward == 0.0);
    CHECK(env.steps_taken() == 2);
}

TEST_CASE("locked door blocks, open door passes") {
    // Key off the door column so we can reach the cell above the door keyless.
    MazeLayout m = maze_from_string(
        "maze v1 7 7\n"
        "#######\n"
        "#S....#\n"
        "#.K...#\n"
        "###D###\n"
        "#.....#\n"
        "#...G.#\n"
        "#######\n",
        "offset-key");
    MazeEnv env(m, 200);
    env.reset_at({3, 2}, false);
    CHECK_FALSE(env.has_key());
    auto r = env.step(2);  // down into the locked door
    CHECK(env.agent() == Cell{3, 2});
    CHECK_FALSE(env.has_key());
    CHECK(r.reward == 0.0);

    env.reset_at({3, 2}, true);
    auto r2 = env.step(2);
    CHECK(env.agent() == Cell{3, 3});
    CHECK(r2.next_obs.features[2] == 1.0);
}

TEST_CASE("key is collected by stepping onto it") {
    MazeEnv env(small(), 200);
    env.reset(0);
    env.step(1);
    env.step(1);
    CHECK_FALSE(env.has_key());
    auto r = env.step(2);  // onto (3,2)
    CHECK(env.has_key());
    CHECK(r.next_obs.features[2] == 1.0);
    CHECK(r.reward == 0.0);  // the key itself pays nothing
}

TEST_CASE("goal ends the episode with reward 1") {
    MazeEnv env(small(), 200);
    env.reset(0);
    // start(1,1) -> key(3,2) -> door(3,3) -> goal(4,5)
    for (int a : {1, 1, 2, 2, 2, 1, 2}) {
        auto r = env.step(a);
        if (env.agent() == Cell{4, 5}) {
            CHECK(r.reward == 1.0);
            CHECK(r.done);
            CHECK_FALSE(r.truncated);
        } else {
            CHECK(r.reward == 0.0);
            CHECK_FALSE(r.done);
        }
    }
    CHECK_FALSE(env.episode_active());
    CHECK(env.steps_taken() == 7);
    CHECK_THROWS_AS(env.step(0), UsageError);
}

TEST_CASE("step limit truncates without marking done") {
    MazeEnv env(small(), 5);
    env.reset(0);
    for (int i = 0; i < 4; ++i) {
        auto r = env.step(0);  // bump the wall forever
        CHECK_FALSE(r.done);
        CHECK_FALSE(r.truncated);
    }
    auto last = env.step(0);
    CHECK_FALSE(last.done);
    CHECK(last.truncated);
    CHECK(last.reward == 0.0);
    CHECK_FALSE(env.episode_active());
    CHECK_THROWS_AS(env.step(0), UsageError);
}

TEST_CASE("goal on the last allowed step counts as done, not truncation") {
    MazeEnv env(small(), 7);
    env.reset(0);
    for (int a : {1, 1, 2, 2, 2, 1}) env.step(a);
    auto r = env.step(2);  // 7th step lands on the goal
    CHECK(r.done);
    CHECK_FALSE(r.truncated);
    CHECK(r.reward == 1.0);
}

TEST_CASE("reset_at validates the cell and picks up an underfoot key") {
    MazeEnv env(small(), 200);
    CHECK_THROWS_AS(env.reset_at({0, 0}, false), UsageError);            // wall
    CHECK_THROWS_AS(env.reset_at(env.layout().door, false), UsageError); // locked door
    env.reset_at(env.layout().door, true);
    CHECK(env.agent() == env.layout().door);
    env.reset_at(env.layout().key, false);
    CHECK(env.has_key());  // standing on the key collects it immediately
    env.reset_at({1, 4}, true);
    CHECK(env.agent() == Cell{1, 4});
    CHECK(env.has_key());
}

TEST_CASE("dynamics are deterministic") {
    MazeEnv a(small(), 200), b(small(), 200);
    a.reset(1);
    b.reset(99);  // seed does not perturb the deterministic dynamics
    for (int t = 0; t < 50; ++t) {
        int act = (t * 7 + 3) % kNumActions;
        auto ra = a.step(act);
        auto rb = b.step(act);
        CHECK(ra.reward == rb.reward);
        CHECK(ra.done == rb.done);
        CHECK(ra.truncated == rb.truncated);
        CHECK(ra.next_obs.features == rb.next_obs.features);
        if (ra.done || ra.truncated) break;
    }
}

TEST_CASE("rewards are exactly zero or one") {
    MazeEnv env(small(), 50);
    for (uint64_t seed = 0; seed < 4; ++seed) {
        env.reset(seed);
        for (int t = 0; t < 50; ++t) {
            auto r = env.step((t * 5 + (int)seed) % kNumActions);
            CHECK((r.reward == 0.0 || r.reward == 1.0));
            if (r.done || r.truncated) break;
        }
    }
}

TEST_CASE("suite rejects mixed shapes and empty lists") {
    MazeLayout a = small();
    MazeLayout b = maze_from_string(
        "maze v1 9 7\n"
        "#########\n"
        "#S......#\n"
        "#..K....#\n"
        "###D#####\n"
        "#.......#\n"
        "#...G...#\n"
        "#########\n",
        "wide");
    CHECK_THROWS_AS(TaskSuite::from_layouts({}), ConfigError);
    CHECK_THROWS_AS(TaskSuite::from_layouts({a, b}), ConfigError);
    TaskSuite s = TaskSuite::from_layouts({a, a});
    CHECK(s.num_tasks() == 2);
}

}  // TEST_SUITE
