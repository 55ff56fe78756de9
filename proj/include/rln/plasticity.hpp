#pragma once

#include "rln/network.hpp"

namespace rln {

struct PlasticityParams {
    int sigma = 256;  // success window, steps
    int omega = 256;  // punishment window, steps
    FixedWeight rho_plus = FixedWeight::from_ratio(1, 128);    // max reward increment
    FixedWeight rho_minus = FixedWeight::from_ratio(7, 1024);  // max reward backoff
    FixedWeight pi = FixedWeight::from_ratio(8, 1024);         // max punishment decrement

    // Throws ContractViolation unless all parameters are strictly positive.
    void validate() const;
};

// Counts consecutive successful steps; emits a positive reward at sigma.
struct SuccessCounter {
    int count = 0;
};

struct Winner {
    Action neuron = Action::MinusF;
    std::size_t segment = 0;
};

// Marks the step's action path on the winning segment only: every synapse i
// gets c_pos = sigma and e_flag = d_i; synapses with d_i = 1 additionally get
// c_neg = omega (re-tagging refreshes a counter to the full window). The
// losing neuron and non-winning segments are untouched. Throws
// ContractViolation when `winner` does not match the recorded WTA result.
void tag_eligibility(Network& net, const InputVector& d, Winner winner,
                     const PlasticityParams& params);

// Decrements every positive counter by one; zeros stay zero, e-flags keep
// their value. Called once per simulation step, after any reward.
void decay_counters(Network& net);

// Increments the counter; at sigma, resets it and reports that a positive
// reward must be broadcast.
bool tick_success(SuccessCounter& counter, const PlasticityParams& params);

// Negative reward: every synapse with c_neg > 0 loses pi * c_neg / omega,
// saturating at zero. Counters and flags are left for the trial reset.
void apply_negative_reward(Network& net, const PlasticityParams& params);

// Positive reward: every synapse with c_pos > 0 gains rho_plus * c_pos / sigma
// when its e-flag is set, otherwise loses rho_minus * c_pos / sigma. Weights
// saturate at [0, w_max]; counters keep decaying naturally afterwards.
void apply_positive_reward(Network& net, const PlasticityParams& params);

// Zeroes all counters, e-flags and the success counter. Weights persist
// across trials.
void reset_trial_state(Network& net, SuccessCounter& counter);

}  // namespace rln
