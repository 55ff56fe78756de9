#pragma once

#include <cstdint>
#include <vector>

#include "rln/encoding.hpp"
#include "rln/network.hpp"
#include "rln/physics.hpp"
#include "rln/plasticity.hpp"
#include "rln/prng.hpp"

namespace rln {

struct ExperimentConfig {
    SvMode mode = SvMode::OneSv;
    long trials_per_episode = 512;
    long step_cap = 10000;
    double initial_angle_range_deg = 1.5;  // grid spans +/- this value
    int n_initial_angles = 32;
    FixedWeight w_base = FixedWeight::from_ratio(9, 2);
    FixedWeight w_range = FixedWeight::from_ratio(1, 128);
    std::uint64_t seed = 1;
    int seed_count = 32;
    int w_max = 8;
    std::size_t segments = 0;  // 0 = per-mode default: 3 for 1 SV, 8 for 2 SV

    std::size_t segments_for_mode() const {
        if (segments != 0) return segments;
        return mode == SvMode::OneSv ? 3 : 8;
    }

    void validate() const;
};

// Everything a run needs; parse_config_file() produces one of these.
struct SimulationSetup {
    PhysicsParams physics;
    PlasticityParams plasticity;
    ExperimentConfig experiment;
    EncodingSchemes schemes;

    void validate() const;
};

struct TrialResult {
    long trial = 0;
    double initial_angle_deg = 0.0;
    long steps = 0;  // successful steps survived (the failing step excluded)
    TrialStatus outcome = TrialStatus::Running;
    long positive_rewards = 0;
    long negative_rewards = 0;
};

struct EpisodeResult {
    std::uint64_t seed = 0;
    std::vector<TrialResult> trials;
    double average_steps = 0.0;  // mean over all trials, first trials included
};

struct StepRecord {
    long step = 0;  // 1-based executed step index
    double theta_deg = 0.0;
    double x_m = 0.0;
    double x_dot = 0.0;
    Action action = Action::MinusF;
    RewardSignal reward = RewardSignal::None;
};

// Fresh network for the configured mode with zero weights.
Network make_network_for(const SimulationSetup& setup);

// Independent draws in [w_base, w_base + w_range), canonical order: -F
// neuron first, then segment-major, then synapse index.
void init_weights(Network& net, SplitMix64& prng, const ExperimentConfig& cfg);

// The n equally spaced angles spanning +/- initial_angle_range_deg,
// endpoints included. For the defaults this grid excludes zero exactly.
std::vector<double> initial_angle_grid(const ExperimentConfig& cfg);

// Successive independent Fisher-Yates permutations of the grid, truncated
// to n_trials entries.
std::vector<double> initial_angle_sequence(SplitMix64& prng, const ExperimentConfig& cfg,
                                           long n_trials);

// One balancing attempt from (x=0, x_dot=0, theta=initial angle,
// theta_dot=0) until failure or the step cap. Reward signals are always
// generated and counted; tagging and weight updates run only when
// net.learning_enabled. When `trace` is given, one record per executed step
// is appended (post-step state).
TrialResult run_trial(Network& net, SuccessCounter& counter, double initial_angle_deg,
                      const SimulationSetup& setup, std::vector<StepRecord>* trace = nullptr);

// Fresh network, init_weights, angle schedule from the same seeded stream,
// then trials_per_episode learning trials with weights persisting.
EpisodeResult run_episode(std::uint64_t seed, const SimulationSetup& setup);

// seed_count independent episodes with seeds base, base+1, ...; results in
// deterministic seed order. workers = 0 picks the hardware thread count.
std::vector<EpisodeResult> run_seed_sweep(const SimulationSetup& setup, unsigned workers = 0);

// Copy sorted by average descending (seed ascending on ties) for reporting.
std::vector<EpisodeResult> sorted_by_average(std::vector<EpisodeResult> results);

// Replays episode `seed` up to trial_index and captures that trial's
// per-step trajectory plus the network state after it.
struct TraceRun {
    TrialResult trial;
    std::vector<StepRecord> steps;
    Network network;
};

TraceRun trace_trial(std::uint64_t seed, long trial_index, const SimulationSetup& setup);

// Hand-set weight presets that implement the reference policies; learning
// is disabled on the returned network.
Network load_optimal_weights(SvMode mode);

// One trial per grid angle, in grid order, with the optimal preset.
EpisodeResult run_optimal_baseline(SvMode mode, const SimulationSetup& setup);

}  // namespace rln
