#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rln/physics.hpp"
#include "rln/prng.hpp"

using namespace rln;

namespace {
const PhysicsParams kDefaults{};
}

TEST_CASE("upright equilibrium has zero accelerations") {
    const Accel a = derivatives(CartPoleState{}, 0.0, kDefaults);
    CHECK(a.theta_ddot == 0.0);
    CHECK(a.x_ddot == 0.0);
}

// Expected values hand-evaluated from the closed-form equations with the
// default parameters and frozen here.
TEST_CASE("derivative values match the hand-evaluated oracle") {
    SUBCASE("upright, +10 N") {
        const Accel a = derivatives(CartPoleState{}, 10.0, kDefaults);
        CHECK(a.theta_ddot == doctest::Approx(-30.142332092139085).epsilon(1e-12));
        CHECK(a.x_ddot == doctest::Approx(13.10186701604979).epsilon(1e-12));
    }
    SUBCASE("0.1 rad lean, no force") {
        const Accel a = derivatives(CartPoleState{0.0, 0.0, 0.1, 0.0}, 0.0, kDefaults);
        CHECK(a.theta_ddot == doctest::Approx(2.707563477438326).epsilon(1e-12));
        CHECK(a.x_ddot == doctest::Approx(-0.19951686165267363).epsilon(1e-12));
    }
}

TEST_CASE("one Euler step from rest under +10 N") {
    const CartPoleState next = step(CartPoleState{}, 10.0, kDefaults);
    CHECK(next.x == 0.0);      // position moves with the pre-step velocity
    CHECK(next.theta == 0.0);
    CHECK(next.x_dot == doctest::Approx(0.2620373403209958).epsilon(1e-12));
    CHECK(next.theta_dot == doctest::Approx(-0.6028466418427817).epsilon(1e-12));
}

TEST_CASE("equilibrium is a bit-exact fixed point") {
    CartPoleState state{};
    for (int i = 0; i < 1000; ++i) state = step(state, 0.0, kDefaults);
    CHECK(state.x == 0.0);
    CHECK(state.x_dot == 0.0);
    CHECK(state.theta == 0.0);
    CHECK(state.theta_dot == 0.0);
}

TEST_CASE("mirror symmetry: negating state and force negates accelerations exactly") {
    SplitMix64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        CartPoleState s;
        s.x = (rng.next_double() - 0.5) * 4.8;
        s.x_dot = (rng.next_double() - 0.5) * 10.0;
        s.theta = (rng.next_double() - 0.5) * 0.4;
        s.theta_dot = (rng.next_double() - 0.5) * 6.0;
        const double force = (rng.next_double() - 0.5) * 20.0;

        const CartPoleState neg{-s.x, -s.x_dot, -s.theta, -s.theta_dot};
        const Accel a = derivatives(s, force, kDefaults);
        const Accel b = derivatives(neg, -force, kDefaults);
        CHECK(b.theta_ddot == -a.theta_ddot);
        CHECK(b.x_ddot == -a.x_ddot);
    }
}

TEST_CASE("free fall diverges monotonically to an angle failure") {
    SplitMix64 rng(7);
    for (int i = 0; i < 20; ++i) {
        CartPoleState state;
        state.theta = deg_to_rad(0.01 + rng.next_double() * 11.9);
        state.theta_dot = rng.next_double() * 0.5;
        double prev = state.theta;
        long steps = 0;
        while (steps < 100000) {
            state = step(state, 0.0, kDefaults);
            ++steps;
            CHECK(state.theta >= prev);   // never decreases
            if (steps > 1) CHECK(state.theta > prev);  // strict once velocity is positive
            prev = state.theta;
            if (check_termination(state, 0, 100000, kDefaults) == TrialStatus::FailedAngle) break;
        }
        CHECK(steps < 100000);
    }
}

TEST_CASE("small-angle acceleration agrees with the linearization within 0.1%") {
    const double total_mass = kDefaults.cart_mass + kDefaults.pole_mass;
    const double k = total_mass * kDefaults.gravity /
                     ((4.0 / 3.0) * total_mass * kDefaults.pole_half_length -
                      kDefaults.pole_mass * kDefaults.pole_half_length);
    for (double theta = -0.01; theta <= 0.0101; theta += 0.001) {
        if (theta == 0.0) continue;
        const Accel a = derivatives(CartPoleState{0.0, 0.0, theta, 0.0}, 0.0, kDefaults);
        CHECK(a.theta_ddot == doctest::Approx(k * theta).epsilon(1e-3));
    }
}

TEST_CASE("termination rules") {
    PhysicsParams p;
    SUBCASE("angle failure beats everything") {
        CartPoleState s{5.0, 0.0, deg_to_rad(12.5), 0.0};
        CHECK(check_termination(s, 100, 100, p) == TrialStatus::FailedAngle);
    }
    SUBCASE("track failure beats the cap") {
        CartPoleState s{2.5, 0.0, 0.0, 0.0};
        CHECK(check_termination(s, 100, 100, p) == TrialStatus::FailedTrack);
    }
    SUBCASE("cap only when nothing failed") {
        CartPoleState s{1.0, 0.0, deg_to_rad(1.0), 0.0};
        CHECK(check_termination(s, 10000, 10000, p) == TrialStatus::ReachedCap);
        CHECK(check_termination(s, 9999, 10000, p) == TrialStatus::Running);
    }
    SUBCASE("limits are strict inequalities") {
        CHECK(check_termination(CartPoleState{2.4, 0.0, 0.0, 0.0}, 0, 10, p) ==
              TrialStatus::Running);
        CHECK(check_termination(CartPoleState{0.0, 0.0, deg_to_rad(12.0), 0.0}, 0, 10, p) ==
              TrialStatus::Running);
        CHECK(check_termination(CartPoleState{std::nextafter(2.4, 3.0), 0.0, 0.0, 0.0}, 0, 10,
                                p) == TrialStatus::FailedTrack);
    }
    SUBCASE("steps beyond the cap violate the contract") {
        CHECK_THROWS_AS(check_termination(CartPoleState{}, 11, 10, p), ContractViolation);
    }
}

TEST_CASE("non-finite inputs are rejected") {
    const double nan = std::nan("");
    CHECK_THROWS_AS(derivatives(CartPoleState{nan, 0.0, 0.0, 0.0}, 0.0, kDefaults),
                    InvalidStateError);
    CHECK_THROWS_AS(derivatives(CartPoleState{}, nan, kDefaults), InvalidStateError);
    CHECK_THROWS_AS(step(CartPoleState{0.0, 0.0, 0.0, nan}, 0.0, kDefaults), InvalidStateError);
}

TEST_CASE("parameter validation rejects non-positive values") {
    PhysicsParams p;
    p.pole_mass = 0.0;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
    p = PhysicsParams{};
    p.tau = -0.02;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
    CHECK_NOTHROW(PhysicsParams{}.validate());
}

TEST_CASE("held +10 N from rest leaves the track after 34 successful steps") {
    CartPoleState state{};
    long survived = 0;
    while (std::fabs(state.x) <= kDefaults.x_limit) {
        state = step(state, 10.0, kDefaults);
        if (std::fabs(state.x) <= kDefaults.x_limit) {
            ++survived;
        }
        REQUIRE(survived < 1000);
    }
    CHECK(survived == 34);
    CHECK(survived >= 32);
    CHECK(survived <= 34);
}

TEST_CASE("start-envelope trajectories stay finite for 10,000 steps") {
    SplitMix64 rng(99);
    for (int run = 0; run < 10; ++run) {
        CartPoleState state;
        state.theta = deg_to_rad((rng.next_double() - 0.5) * 3.0);
        for (int i = 0; i < 10000; ++i) {
            const double force = rng.next_below(2) == 0 ? -10.0 : 10.0;
            state = step(state, force, kDefaults);
            REQUIRE(state.finite());
        }
    }
}
