// rlncart: command-line driver for the cart-pole RL simulator.
//
// Subcommands:
//   optimal       baseline run over the initial-angle grid with preset weights
//   learn         seed sweep of learning episodes
//   trace         per-step trajectory log of one trial inside an episode
//   physics-check dynamics self-test (fixed point, runaway, free fall)
//   plot          emit a gnuplot script for an existing output CSV

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rln/config.hpp"
#include "rln/csv_io.hpp"
#include "rln/experiment.hpp"
#include "rln/version.hpp"

namespace {

using namespace rln;

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    CLI::Option* sv_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* seeds_opt = nullptr;
    CLI::Option* trials_opt = nullptr;
    long sv = 1;
    std::uint64_t seed = 1;
    long seeds = 32;
    long trials = 512;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_protocol) {
    cmd->add_option("--config", flags.config_path, "configuration file (key = value lines)");
    cmd->add_option("--out", flags.out_dir, "output directory")->capture_default_str();
    flags.seed_opt = cmd->add_option("--seed", flags.seed, "base PRNG seed");
    if (with_protocol) {
        flags.sv_opt = cmd->add_option("--sv", flags.sv, "state variables: 1 (angle) or 2 (angle + cart velocity)");
        flags.seeds_opt = cmd->add_option("--seeds", flags.seeds, "episodes in a sweep");
        flags.trials_opt = cmd->add_option("--trials", flags.trials, "trials per episode");
    }
}

SimulationSetup load_setup(const CommonFlags& flags) {
    SimulationSetup setup;
    if (!flags.config_path.empty()) setup = parse_config_file(flags.config_path);
    // CLI flags override file values.
    if (flags.sv_opt && flags.sv_opt->count() > 0) {
        apply_setting(setup, "sv", std::to_string(flags.sv), "--sv");
    }
    if (flags.seed_opt && flags.seed_opt->count() > 0) {
        apply_setting(setup, "seed", std::to_string(flags.seed), "--seed");
    }
    if (flags.seeds_opt && flags.seeds_opt->count() > 0) {
        apply_setting(setup, "seeds", std::to_string(flags.seeds), "--seeds");
    }
    if (flags.trials_opt && flags.trials_opt->count() > 0) {
        apply_setting(setup, "trials", std::to_string(flags.trials), "--trials");
    }
    setup.validate();
    return setup;
}

std::string out_path(const CommonFlags& flags, const std::string& name) {
    return (std::filesystem::path(flags.out_dir) / name).string();
}

void write_outputs(const CommonFlags& flags, const SimulationSetup& setup,
                   const std::string& command_line,
                   const std::vector<std::pair<std::string, std::string>>& files) {
    std::vector<std::string> names;
    names.reserve(files.size());
    for (const auto& [name, text] : files) {
        write_text_file(out_path(flags, name), text);
        names.push_back(name);
    }
    write_text_file(out_path(flags, "manifest.txt"),
                    render_manifest(setup, command_line, names));
}

template <typename WriteFn>
std::string render_csv(WriteFn&& fn) {
    std::ostringstream os;
    fn(os);
    return os.str();
}

int cmd_optimal(const CommonFlags& flags, const std::string& command_line) {
    const SimulationSetup setup = load_setup(flags);
    const SvMode mode = setup.experiment.mode;
    const EpisodeResult episode = run_optimal_baseline(mode, setup);
    const Network preset = load_optimal_weights(mode);

    long caps = 0;
    for (const TrialResult& t : episode.trials) {
        if (t.outcome == TrialStatus::ReachedCap) ++caps;
    }
    write_outputs(flags, setup, command_line,
                  {{"trials.csv", render_csv([&](std::ostream& os) {
                        write_trials_csv(os, {episode});
                    })},
                   {"weights.csv", render_csv([&](std::ostream& os) {
                        write_weights_csv(os, preset);
                    })}});
    std::cout << "optimal " << (mode == SvMode::OneSv ? "1" : "2") << " SV baseline: "
              << episode.trials.size() << " trials, average successful steps = "
              << format_double(episode.average_steps) << ", cap reached in " << caps << "/"
              << episode.trials.size() << " trials\n";
    return 0;
}

int cmd_learn(const CommonFlags& flags, unsigned workers, const std::string& command_line) {
    const SimulationSetup setup = load_setup(flags);
    const std::vector<EpisodeResult> results = run_seed_sweep(setup, workers);
    const std::vector<EpisodeResult> sorted = sorted_by_average(results);

    write_outputs(flags, setup, command_line,
                  {{"summary.csv", render_csv([&](std::ostream& os) {
                        write_summary_csv(os, sorted);
                    })},
                   {"trials.csv", render_csv([&](std::ostream& os) {
                        write_trials_csv(os, results);
                    })}});

    const std::size_t n = sorted.size();
    const double median = n % 2 == 1
                              ? sorted[n / 2].average_steps
                              : 0.5 * (sorted[n / 2 - 1].average_steps + sorted[n / 2].average_steps);
    std::cout << "learning sweep: " << n << " episodes x " << setup.experiment.trials_per_episode
              << " trials; episode averages: best = " << format_double(sorted.front().average_steps)
              << ", median = " << format_double(median)
              << ", worst = " << format_double(sorted.back().average_steps) << "\n";
    return 0;
}

int cmd_trace(const CommonFlags& flags, long trial_index, const std::string& command_line) {
    const SimulationSetup setup = load_setup(flags);
    const TraceRun run = trace_trial(setup.experiment.seed, trial_index, setup);

    write_outputs(flags, setup, command_line,
                  {{"trajectory.csv", render_csv([&](std::ostream& os) {
                        write_trajectory_csv(os, run.steps);
                    })},
                   {"weights.csv", render_csv([&](std::ostream& os) {
                        write_weights_csv(os, run.network);
                    })}});
    std::cout << "trace: seed " << setup.experiment.seed << " trial " << trial_index
              << " started at " << format_double(run.trial.initial_angle_deg)
              << " deg, survived " << run.trial.steps << " steps ("
              << to_string(run.trial.outcome) << ")\n";
    return 0;
}

// Dynamics self-test. Exercises the same integrator the trials use.
int cmd_physics_check(const CommonFlags& flags) {
    const SimulationSetup setup = load_setup(flags);
    const PhysicsParams& phys = setup.physics;
    bool all_ok = true;
    auto report = [&](bool ok, const std::string& label, const std::string& detail) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << label << ": " << detail << "\n";
        all_ok = all_ok && ok;
    };

    {  // upright equilibrium is a fixed point
        const CartPoleState start{};
        CartPoleState state = start;
        bool unchanged = true;
        for (int i = 0; i < 1000; ++i) {
            state = step(state, 0.0, phys);
            if (state.x != start.x || state.x_dot != start.x_dot || state.theta != start.theta ||
                state.theta_dot != start.theta_dot) {
                unchanged = false;
                break;
            }
        }
        report(unchanged, "fixed point", "upright rest state is bit-stable over 1000 steps");
    }

    {  // held +F runaway: cart must leave the track after 32..34 successful steps
        CartPoleState state{};
        long survived = 0;
        while (std::fabs(state.x) <= phys.x_limit && survived < 1000) {
            state = step(state, phys.force, phys);
            if (std::fabs(state.x) <= phys.x_limit) ++survived;
        }
        std::ostringstream detail;
        detail << "track exit after " << survived << " successful steps (fails on step "
               << survived + 1 << ")";
        report(survived >= 32 && survived <= 34, "constant-force runaway", detail.str());
    }

    {  // free fall from the smallest grid angle vs the linearized oracle
        const std::vector<double> grid = initial_angle_grid(setup.experiment);
        double theta0_deg = grid.back();
        for (double a : grid) {
            if (a > 0.0 && a < theta0_deg) theta0_deg = a;
        }
        CartPoleState state{0.0, 0.0, deg_to_rad(theta0_deg), 0.0};
        const double limit = phys.theta_limit_rad();
        long survived = 0;
        bool monotone = true;
        double prev = state.theta;
        while (std::fabs(state.theta) <= limit && survived < 100000) {
            state = step(state, 0.0, phys);
            if (state.theta < prev) monotone = false;
            prev = state.theta;
            if (std::fabs(state.theta) <= limit) ++survived;
        }
        const double total_mass = phys.cart_mass + phys.pole_mass;
        const double k = total_mass * phys.gravity /
                         ((4.0 / 3.0) * total_mass * phys.pole_half_length -
                          phys.pole_mass * phys.pole_half_length);
        const double lambda = 1.0 + std::sqrt(k) * phys.tau;
        const double mu = 1.0 - std::sqrt(k) * phys.tau;
        const double theta0 = deg_to_rad(theta0_deg);
        long oracle = 0;
        while (0.5 * theta0 * (std::pow(lambda, oracle + 1) + std::pow(mu, oracle + 1)) <= limit &&
               oracle < 100000) {
            ++oracle;
        }
        std::ostringstream detail;
        detail << "fall from " << format_double(theta0_deg) << " deg survives " << survived
               << " steps; linearized oracle predicts " << oracle << " (monotone growth: "
               << (monotone ? "yes" : "no") << ")";
        const bool close = std::llabs(survived - oracle) <= oracle / 10;
        report(monotone && close, "free fall", detail.str());
    }

    return all_ok ? 0 : 1;
}

int cmd_plot(const std::string& csv_path, std::string script_path) {
    std::ifstream in(csv_path);
    if (!in) throw InvalidStateError("cannot open csv: " + csv_path);
    std::string header;
    if (!std::getline(in, header)) throw InvalidStateError("empty csv: " + csv_path);
    const CsvKind kind = detect_csv_kind(header);
    if (script_path.empty()) script_path = csv_path + ".gp";
    write_text_file(script_path, plot_script_for(csv_path, kind));
    std::cout << "plot script written to " << script_path << "\n";
    return 0;
}

std::string join_args(int argc, char** argv) {
    std::string joined;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) joined += ' ';
        joined += argv[i];
    }
    return joined;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("rlncart ") + kVersion +
                 " - cart-pole balancing with reinforcement-learning neurons"};
    app.require_subcommand(1);

    CommonFlags optimal_flags;
    auto* optimal = app.add_subcommand("optimal", "baseline run with hand-set weights");
    add_common_flags(optimal, optimal_flags, true);

    CommonFlags learn_flags;
    unsigned workers = 0;
    auto* learn = app.add_subcommand("learn", "seed sweep of learning episodes");
    add_common_flags(learn, learn_flags, true);
    learn->add_option("--workers", workers, "worker threads (0 = hardware)")->capture_default_str();

    CommonFlags trace_flags;
    long trial_index = 0;
    auto* trace = app.add_subcommand("trace", "log one trial of an episode step by step");
    add_common_flags(trace, trace_flags, true);
    trace->add_option("--trial", trial_index, "trial index inside the episode (0-based)")
        ->capture_default_str();

    CommonFlags check_flags;
    auto* check = app.add_subcommand("physics-check", "dynamics self-test");
    add_common_flags(check, check_flags, false);

    std::string plot_csv;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot", "emit a gnuplot script for an output csv");
    plot->add_option("csv", plot_csv, "csv file produced by optimal/learn/trace")->required();
    plot->add_option("--out", plot_out, "script path (default: <csv>.gp)");

    CLI11_PARSE(app, argc, argv);

    const std::string command_line = join_args(argc, argv);
    try {
        if (optimal->parsed()) return cmd_optimal(optimal_flags, command_line);
        if (learn->parsed()) return cmd_learn(learn_flags, workers, command_line);
        if (trace->parsed()) return cmd_trace(trace_flags, trial_index, command_line);
        if (check->parsed()) return cmd_physics_check(check_flags);
        if (plot->parsed()) return cmd_plot(plot_csv, plot_out);
    } catch (const std::exception& e) {
        std::cerr << "rlncart: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
