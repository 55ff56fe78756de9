#include "rln/physics.hpp"

#include <cmath>

namespace rln {

void PhysicsParams::validate() const {
    const double values[] = {cart_mass, pole_mass,  gravity, force,
                             pole_half_length, tau, x_limit, theta_limit_deg};
    const char* names[] = {"cart_mass", "pole_mass", "gravity", "force",
                           "pole_half_length", "tau", "x_limit", "theta_limit_deg"};
    for (int i = 0; i < 8; ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw ContractViolation(std::string("physics parameter must be strictly positive: ") +
                                    names[i]);
        }
    }
}

bool CartPoleState::finite() const {
    return std::isfinite(x) && std::isfinite(x_dot) && std::isfinite(theta) &&
           std::isfinite(theta_dot);
}

const char* to_string(TrialStatus status) {
    switch (status) {
        case TrialStatus::Running: return "Running";
        case TrialStatus::FailedAngle: return "FailedAngle";
        case TrialStatus::FailedTrack: return "FailedTrack";
        case TrialStatus::ReachedCap: return "ReachedCap";
    }
    return "?";
}

Accel derivatives(const CartPoleState& state, double force, const PhysicsParams& p) {
    if (!state.finite() || !std::isfinite(force)) {
        throw InvalidStateError("derivatives: non-finite state or force");
    }
    const double sin_t = std::sin(state.theta);
    const double cos_t = std::cos(state.theta);
    const double total_mass = p.cart_mass + p.pole_mass;
    const double ml = p.pole_mass * p.pole_half_length;

    const double numerator =
        total_mass * p.gravity * sin_t - cos_t * (force + ml * state.theta_dot * state.theta_dot * sin_t);
    const double denominator =
        (4.0 / 3.0) * total_mass * p.pole_half_length - ml * cos_t * cos_t;
    const double theta_ddot = numerator / denominator;
    const double x_ddot =
        (force + ml * (state.theta_dot * state.theta_dot * sin_t - theta_ddot * cos_t)) /
        total_mass;
    return {theta_ddot, x_ddot};
}

CartPoleState step(const CartPoleState& state, double force, const PhysicsParams& p) {
    const Accel a = derivatives(state, force, p);
    CartPoleState next;
    next.x = state.x + p.tau * state.x_dot;
    next.x_dot = state.x_dot + p.tau * a.x_ddot;
    next.theta = state.theta + p.tau * state.theta_dot;
    next.theta_dot = state.theta_dot + p.tau * a.theta_ddot;
    return next;
}

TrialStatus check_termination(const CartPoleState& state, long steps_done, long step_cap,
                              const PhysicsParams& p) {
    if (steps_done > step_cap) {
        throw ContractViolation("check_termination: steps_done exceeds step_cap");
    }
    if (std::fabs(state.theta) > p.theta_limit_rad()) return TrialStatus::FailedAngle;
    if (std::fabs(state.x) > p.x_limit) return TrialStatus::FailedTrack;
    if (steps_done == step_cap) return TrialStatus::ReachedCap;
    return TrialStatus::Running;
}

}  // namespace rln
