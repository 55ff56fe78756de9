#include "rln/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace rln {

void ExperimentConfig::validate() const {
    if (trials_per_episode <= 0) throw ContractViolation("trials must be strictly positive");
    if (step_cap <= 0) throw ContractViolation("step_cap must be strictly positive");
    if (!(initial_angle_range_deg > 0.0)) {
        throw ContractViolation("angle_range_deg must be strictly positive");
    }
    if (n_initial_angles <= 0) throw ContractViolation("n_angles must be strictly positive");
    if (seed_count <= 0) throw ContractViolation("seeds must be strictly positive");
    if (w_max <= 0) throw ContractViolation("w_max must be strictly positive");
    if (w_base.raw < 0) throw ContractViolation("w_base must be non-negative");
    if (w_range.raw < 0) throw ContractViolation("w_range must be non-negative");
    if (w_base.raw + w_range.raw > FixedWeight::from_int(w_max).raw) {
        throw ContractViolation("w_base + w_range must not exceed w_max");
    }
}

void SimulationSetup::validate() const {
    physics.validate();
    plasticity.validate();
    experiment.validate();
    schemes.angle.validate();
    schemes.velocity.validate();
}

Network make_network_for(const SimulationSetup& setup) {
    const ExperimentConfig& cfg = setup.experiment;
    return make_network(input_size(cfg.mode, setup.schemes), cfg.segments_for_mode(),
                        FixedWeight::from_int(cfg.w_max));
}

void init_weights(Network& net, SplitMix64& prng, const ExperimentConfig& cfg) {
    for (Rln& rln : net.rlns) {
        for (Segment& segment : rln.segments) {
            for (Synapse& syn : segment.synapses) {
                const std::uint64_t u = prng.next_bits53();
                const auto offset = static_cast<std::int64_t>(
                    (static_cast<unsigned __int128>(u) *
                     static_cast<unsigned __int128>(cfg.w_range.raw)) >>
                    53);
                syn.weight.raw = cfg.w_base.raw + offset;
            }
        }
    }
}

std::vector<double> initial_angle_grid(const ExperimentConfig& cfg) {
    const int n = cfg.n_initial_angles;
    std::vector<double> grid(n);
    if (n == 1) {
        grid[0] = 0.0;
        return grid;
    }
    // Endpoint-inclusive and exactly symmetric: grid[k] = -grid[n-1-k].
    for (int k = 0; k < n; ++k) {
        grid[k] = cfg.initial_angle_range_deg * static_cast<double>(2 * k - (n - 1)) /
                  static_cast<double>(n - 1);
    }
    return grid;
}

std::vector<double> initial_angle_sequence(SplitMix64& prng, const ExperimentConfig& cfg,
                                           long n_trials) {
    if (n_trials < 1) throw ContractViolation("initial_angle_sequence: n_trials must be >= 1");
    const std::vector<double> grid = initial_angle_grid(cfg);
    std::vector<double> sequence;
    sequence.reserve(static_cast<std::size_t>(n_trials));
    std::vector<double> perm = grid;
    while (static_cast<long>(sequence.size()) < n_trials) {
        perm = grid;
        for (std::size_t i = perm.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(prng.next_below(i + 1));
            std::swap(perm[i], perm[j]);
        }
        for (double angle : perm) {
            if (static_cast<long>(sequence.size()) == n_trials) break;
            sequence.push_back(angle);
        }
    }
    return sequence;
}

TrialResult run_trial(Network& net, SuccessCounter& counter, double initial_angle_deg,
                      const SimulationSetup& setup, std::vector<StepRecord>* trace) {
    const ExperimentConfig& cfg = setup.experiment;
    const bool learning = net.learning_enabled;

    CartPoleState state{0.0, 0.0, deg_to_rad(initial_angle_deg), 0.0};
    TrialResult result;
    result.initial_angle_deg = initial_angle_deg;

    InputVector d;
    long ok_steps = 0;
    long executed = 0;
    for (;;) {
        build_input_into(state, cfg.mode, setup.schemes, d);
        const InferResult minus = dendrite_infer(net.rln(Action::MinusF), d);
        const InferResult plus = dendrite_infer(net.rln(Action::PlusF), d);
        const Action action = select_action(minus.response, plus.response);
        if (learning) {
            const std::size_t seg = action == Action::MinusF ? minus.segment : plus.segment;
            tag_eligibility(net, d, Winner{action, seg}, setup.plasticity);
        }

        state = step(state, force_newtons(action, setup.physics), setup.physics);
        ++executed;
        const TrialStatus status =
            check_termination(state, ok_steps + 1, cfg.step_cap, setup.physics);

        RewardSignal signal = RewardSignal::None;
        if (status == TrialStatus::FailedAngle || status == TrialStatus::FailedTrack) {
            ++result.negative_rewards;
            signal = RewardSignal::Negative;
            if (learning) apply_negative_reward(net, setup.plasticity);
        } else {
            ++ok_steps;
            if (tick_success(counter, setup.plasticity)) {
                ++result.positive_rewards;
                signal = RewardSignal::Positive;
                if (learning) apply_positive_reward(net, setup.plasticity);
            }
        }
        decay_counters(net);

        if (trace) {
            trace->push_back(StepRecord{executed, rad_to_deg(state.theta), state.x, state.x_dot,
                                        action, signal});
        }
        if (status != TrialStatus::Running) {
            result.steps = ok_steps;
            result.outcome = status;
            return result;
        }
    }
}

EpisodeResult run_episode(std::uint64_t seed, const SimulationSetup& setup) {
    setup.validate();
    const ExperimentConfig& cfg = setup.experiment;

    SplitMix64 prng(seed);
    Network net = make_network_for(setup);
    init_weights(net, prng, cfg);
    const std::vector<double> angles = initial_angle_sequence(prng, cfg, cfg.trials_per_episode);

    EpisodeResult episode;
    episode.seed = seed;
    episode.trials.reserve(angles.size());
    SuccessCounter counter;
    double total_steps = 0.0;
    for (long t = 0; t < cfg.trials_per_episode; ++t) {
        reset_trial_state(net, counter);
        TrialResult trial = run_trial(net, counter, angles[static_cast<std::size_t>(t)], setup);
        trial.trial = t;
        total_steps += static_cast<double>(trial.steps);
        episode.trials.push_back(trial);
    }
    episode.average_steps = total_steps / static_cast<double>(cfg.trials_per_episode);
    return episode;
}

std::vector<EpisodeResult> run_seed_sweep(const SimulationSetup& setup, unsigned workers) {
    setup.validate();
    const int count = setup.experiment.seed_count;
    std::vector<EpisodeResult> results(static_cast<std::size_t>(count));
    if (workers == 0) workers = std::thread::hardware_concurrency();
    workers = std::min<unsigned>(std::max(1u, workers), static_cast<unsigned>(count));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            results[static_cast<std::size_t>(i)] =
                run_episode(setup.experiment.seed + static_cast<std::uint64_t>(i), setup);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

std::vector<EpisodeResult> sorted_by_average(std::vector<EpisodeResult> results) {
    std::stable_sort(results.begin(), results.end(),
                     [](const EpisodeResult& a, const EpisodeResult& b) {
                         if (a.average_steps != b.average_steps) {
                             return a.average_steps > b.average_steps;
                         }
                         return a.seed < b.seed;
                     });
    return results;
}

TraceRun trace_trial(std::uint64_t seed, long trial_index, const SimulationSetup& setup) {
    setup.validate();
    const ExperimentConfig& cfg = setup.experiment;
    if (trial_index < 0 || trial_index >= cfg.trials_per_episode) {
        throw ContractViolation("trace_trial: trial index out of range");
    }

    SplitMix64 prng(seed);
    Network net = make_network_for(setup);
    init_weights(net, prng, cfg);
    const std::vector<double> angles = initial_angle_sequence(prng, cfg, cfg.trials_per_episode);

    TraceRun run;
    SuccessCounter counter;
    for (long t = 0; t <= trial_index; ++t) {
        reset_trial_state(net, counter);
        const bool wanted = t == trial_index;
        TrialResult trial = run_trial(net, counter, angles[static_cast<std::size_t>(t)], setup,
                                      wanted ? &run.steps : nullptr);
        trial.trial = t;
        if (wanted) run.trial = trial;
    }
    run.network = net;
    return run;
}

namespace {

struct PresetRow {
    int angle_col;  // 1-based interval column, 0 = none
    int vel_col;    // 1-based interval column, 0 = none
};

void fill_preset(Rln& rln, const PresetRow* rows, std::size_t n_rows, std::size_t n_inputs) {
    for (std::size_t s = 0; s < n_rows; ++s) {
        Segment segment{std::vector<Synapse>(n_inputs)};
        if (rows[s].angle_col > 0) {
            segment.synapses[static_cast<std::size_t>(rows[s].angle_col - 1)].weight =
                FixedWeight::from_int(8);
        }
        if (rows[s].vel_col > 0) {
            segment.synapses[6 + static_cast<std::size_t>(rows[s].vel_col - 1)].weight =
                FixedWeight::from_int(8);
        }
        rln.segments.push_back(segment);
    }
}

}  // namespace

Network load_optimal_weights(SvMode mode) {
    // 1 SV: the plain lean rule. -F segments own the left-lean intervals in
    // order; +F owns the right-lean intervals in mirrored order.
    static constexpr PresetRow kOneSvMinus[] = {{1, 0}, {2, 0}, {3, 0}};
    static constexpr PresetRow kOneSvPlus[] = {{6, 0}, {5, 0}, {4, 0}};
    // 2 SV: the lean rule plus velocity overrides. A fast cart recruits the
    // opposing force even when the pole still leans with it (segments
    // (3,1)->+F and (4,3)->-F and the far-lean rows (1,1)->+F, (5,3)->-F).
    static constexpr PresetRow kTwoSvMinus[] = {{1, 2}, {1, 3}, {2, 2}, {2, 3},
                                                {3, 2}, {3, 3}, {4, 3}, {5, 3}};
    static constexpr PresetRow kTwoSvPlus[] = {{6, 2}, {6, 1}, {4, 2}, {4, 1},
                                               {4, 3}, {3, 1}, {2, 2}, {1, 1}};

    Network net;
    net.w_max = FixedWeight::from_int(8);
    net.learning_enabled = false;
    net.rlns[0].action = Action::MinusF;
    net.rlns[1].action = Action::PlusF;
    if (mode == SvMode::OneSv) {
        fill_preset(net.rlns[0], kOneSvMinus, 3, 6);
        fill_preset(net.rlns[1], kOneSvPlus, 3, 6);
    } else {
        fill_preset(net.rlns[0], kTwoSvMinus, 8, 9);
        fill_preset(net.rlns[1], kTwoSvPlus, 8, 9);
    }
    return net;
}

EpisodeResult run_optimal_baseline(SvMode mode, const SimulationSetup& setup) {
    SimulationSetup baseline = setup;
    baseline.experiment.mode = mode;
    baseline.validate();

    Network net = load_optimal_weights(mode);
    const std::vector<double> grid = initial_angle_grid(baseline.experiment);

    EpisodeResult episode;
    episode.seed = baseline.experiment.seed;
    SuccessCounter counter;
    double total_steps = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        reset_trial_state(net, counter);
        TrialResult trial = run_trial(net, counter, grid[k], baseline);
        trial.trial = static_cast<long>(k);
        total_steps += static_cast<double>(trial.steps);
        episode.trials.push_back(trial);
    }
    episode.average_steps = total_steps / static_cast<double>(grid.size());
    return episode;
}

}  // namespace rln
