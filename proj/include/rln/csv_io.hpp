#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rln/experiment.hpp"

namespace rln {

// Locale-independent shortest round-trip rendering.
std::string format_double(double value);

// trials.csv: seed,trial,initial_angle_deg,steps,outcome,pos_rewards,neg_rewards
void write_trials_csv(std::ostream& out, const std::vector<EpisodeResult>& episodes);

// trajectory.csv: step,theta_deg,x_m,x_dot,action,reward
void write_trajectory_csv(std::ostream& out, const std::vector<StepRecord>& records);

// weights.csv: neuron,segment,synapse,weight_exact,weight_ceil
void write_weights_csv(std::ostream& out, const Network& net);

// Inverse of write_weights_csv; rewriting the result reproduces the input
// byte for byte.
Network load_weights_csv(std::istream& in);

// summary.csv: seed,avg_steps (caller chooses the order, normally sorted).
void write_summary_csv(std::ostream& out, const std::vector<EpisodeResult>& episodes);

enum class CsvKind { Trials, Trajectory, Weights, Summary };

// Recognizes one of the four schemas from the header line.
CsvKind detect_csv_kind(const std::string& header_line);

// Gnuplot script that visualizes an existing CSV; it never computes new
// numbers.
std::string plot_script_for(const std::string& csv_path, CsvKind kind);

// Writes text to path, creating parent directories; failures carry the path.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rln
