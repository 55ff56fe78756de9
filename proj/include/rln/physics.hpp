#pragma once

#include "rln/errors.hpp"

namespace rln {

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

struct PhysicsParams {
    double cart_mass = 0.711;         // M, kg
    double pole_mass = 0.209;         // m, kg
    double gravity = 9.8;             // g, m/s^2
    double force = 10.0;              // F, N; actions apply +force or -force
    double pole_half_length = 0.326;  // l, m
    double tau = 0.02;                // integration step, s
    double x_limit = 2.4;             // track half-length, m
    double theta_limit_deg = 12.0;    // failure angle, degrees

    double theta_limit_rad() const { return deg_to_rad(theta_limit_deg); }

    // Throws ContractViolation unless every parameter is strictly positive.
    void validate() const;
};

struct CartPoleState {
    double x = 0.0;          // cart position, m
    double x_dot = 0.0;      // cart velocity, m/s
    double theta = 0.0;      // pole angle, rad
    double theta_dot = 0.0;  // pole angular velocity, rad/s

    bool finite() const;
};

enum class TrialStatus { Running, FailedAngle, FailedTrack, ReachedCap };

const char* to_string(TrialStatus status);

struct Accel {
    double theta_ddot;  // rad/s^2
    double x_ddot;      // m/s^2
};

// Cart-pole accelerations for the given applied force. theta_ddot is
// computed first and substituted into x_ddot.
Accel derivatives(const CartPoleState& state, double force, const PhysicsParams& params);

// One explicit Euler step: positions advance with the pre-step velocities,
// then velocities advance with the accelerations of the pre-step state.
CartPoleState step(const CartPoleState& state, double force, const PhysicsParams& params);

// Failure checks are strict inequalities, so a state exactly on a limit is
// still valid. Precedence when several conditions hold: FailedAngle, then
// FailedTrack, then ReachedCap.
TrialStatus check_termination(const CartPoleState& state, long steps_done, long step_cap,
                              const PhysicsParams& params);

}  // namespace rln
