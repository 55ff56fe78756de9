#include "rln/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace rln {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

namespace {

const char* to_string(RewardSignal signal) {
    switch (signal) {
        case RewardSignal::Positive: return "1";
        case RewardSignal::Negative: return "-1";
        case RewardSignal::None: return "0";
    }
    return "0";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    return fields;
}

}  // namespace

void write_trials_csv(std::ostream& out, const std::vector<EpisodeResult>& episodes) {
    out << "seed,trial,initial_angle_deg,steps,outcome,pos_rewards,neg_rewards\n";
    for (const EpisodeResult& ep : episodes) {
        for (const TrialResult& t : ep.trials) {
            out << ep.seed << ',' << t.trial << ',' << format_double(t.initial_angle_deg) << ','
                << t.steps << ',' << to_string(t.outcome) << ',' << t.positive_rewards << ','
                << t.negative_rewards << '\n';
        }
    }
}

void write_trajectory_csv(std::ostream& out, const std::vector<StepRecord>& records) {
    out << "step,theta_deg,x_m,x_dot,action,reward\n";
    for (const StepRecord& r : records) {
        out << r.step << ',' << format_double(r.theta_deg) << ',' << format_double(r.x_m) << ','
            << format_double(r.x_dot) << ',' << to_string(r.action) << ',' << to_string(r.reward)
            << '\n';
    }
}

void write_weights_csv(std::ostream& out, const Network& net) {
    out << "neuron,segment,synapse,weight_exact,weight_ceil\n";
    for (const Rln& rln : net.rlns) {
        for (std::size_t s = 0; s < rln.segments.size(); ++s) {
            const Segment& segment = rln.segments[s];
            for (std::size_t i = 0; i < segment.synapses.size(); ++i) {
                const Synapse& syn = segment.synapses[i];
                out << to_string(rln.action) << ',' << s << ',' << i << ','
                    << syn.weight.to_decimal_string() << ',' << effective_weight(syn.weight)
                    << '\n';
            }
        }
    }
}

Network load_weights_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detect_csv_kind(line) != CsvKind::Weights) {
        throw InvalidStateError("weights csv: missing or wrong header");
    }
    // neuron -> segment -> synapse -> weight
    std::map<int, std::map<std::size_t, std::map<std::size_t, FixedWeight>>> table;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw InvalidStateError("weights csv line " + std::to_string(line_no) +
                                    ": expected 5 fields");
        }
        int neuron;
        if (fields[0] == "-F") {
            neuron = 0;
        } else if (fields[0] == "+F") {
            neuron = 1;
        } else {
            throw InvalidStateError("weights csv line " + std::to_string(line_no) +
                                    ": neuron must be -F or +F");
        }
        const auto seg = static_cast<std::size_t>(std::stoul(fields[1]));
        const auto syn = static_cast<std::size_t>(std::stoul(fields[2]));
        const FixedWeight w = FixedWeight::parse_decimal(fields[3]);
        if (std::stoll(fields[4]) != w.ceil_int()) {
            throw InvalidStateError("weights csv line " + std::to_string(line_no) +
                                    ": weight_ceil does not match weight_exact");
        }
        table[neuron][seg][syn] = w;
    }
    if (table.size() != 2) throw InvalidStateError("weights csv: expected both neurons");

    const std::size_t segments = table[0].size();
    const std::size_t inputs = segments == 0 ? 0 : table[0].begin()->second.size();
    if (segments == 0 || inputs == 0 || table[1].size() != segments) {
        throw InvalidStateError("weights csv: neurons are not structurally identical");
    }
    Network net = make_network(inputs, segments, FixedWeight::from_int(8));
    FixedWeight max_seen;
    for (int neuron = 0; neuron < 2; ++neuron) {
        for (std::size_t s = 0; s < segments; ++s) {
            const auto seg_it = table[neuron].find(s);
            if (seg_it == table[neuron].end() || seg_it->second.size() != inputs) {
                throw InvalidStateError("weights csv: missing synapse rows");
            }
            for (std::size_t i = 0; i < inputs; ++i) {
                const auto syn_it = seg_it->second.find(i);
                if (syn_it == seg_it->second.end()) {
                    throw InvalidStateError("weights csv: missing synapse rows");
                }
                net.rlns[static_cast<std::size_t>(neuron)].segments[s].synapses[i].weight =
                    syn_it->second;
                max_seen = std::max(max_seen, syn_it->second);
            }
        }
    }
    if (max_seen > net.w_max) net.w_max = max_seen;
    return net;
}

void write_summary_csv(std::ostream& out, const std::vector<EpisodeResult>& episodes) {
    out << "seed,avg_steps\n";
    for (const EpisodeResult& ep : episodes) {
        out << ep.seed << ',' << format_double(ep.average_steps) << '\n';
    }
}

CsvKind detect_csv_kind(const std::string& header_line) {
    std::string header = header_line;
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header == "seed,trial,initial_angle_deg,steps,outcome,pos_rewards,neg_rewards") {
        return CsvKind::Trials;
    }
    if (header == "step,theta_deg,x_m,x_dot,action,reward") return CsvKind::Trajectory;
    if (header == "neuron,segment,synapse,weight_exact,weight_ceil") return CsvKind::Weights;
    if (header == "seed,avg_steps") return CsvKind::Summary;
    throw InvalidStateError("unrecognized csv header: " + header_line);
}

std::string plot_script_for(const std::string& csv_path, CsvKind kind) {
    const std::string name = std::filesystem::path(csv_path).filename().string();
    std::ostringstream out;
    out << "# gnuplot script generated by rlncart; run: gnuplot -persist <script>\n";
    out << "set datafile separator ','\n";
    out << "set key outside\n";
    out << "set grid\n";
    switch (kind) {
        case CsvKind::Trials:
            out << "set title 'steps per trial vs initial angle (" << name << ")'\n";
            out << "set xlabel 'initial angle (deg)'\n";
            out << "set ylabel 'successful steps'\n";
            out << "plot '" << csv_path << "' every ::1 using 3:4 with points pt 7 title 'trials'\n";
            break;
        case CsvKind::Trajectory:
            out << "set title 'trajectory (" << name << ")'\n";
            out << "set xlabel 'step'\n";
            out << "set ylabel 'pole angle (deg)'\n";
            out << "set y2label 'cart position (m)'\n";
            out << "set y2tics\n";
            out << "plot '" << csv_path << "' every ::1 using 1:2 with lines title 'theta (deg)', \\\n"
                << "     '" << csv_path
                << "' every ::1 using 1:3 axes x1y2 with lines title 'x (m)'\n";
            break;
        case CsvKind::Weights:
            out << "set title 'effective weights (" << name << ")'\n";
            out << "set xlabel 'synapse index'\n";
            out << "set ylabel 'ceil(weight)'\n";
            out << "plot '" << csv_path
                << "' every ::1 using 3:5 with points pt 5 title 'synapses'\n";
            break;
        case CsvKind::Summary:
            out << "set title 'episode averages (" << name << ")'\n";
            out << "set xlabel 'episode (file order)'\n";
            out << "set ylabel 'average successful steps'\n";
            out << "plot '" << csv_path
                << "' every ::1 using 0:2 with linespoints pt 7 title 'episodes'\n";
            break;
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw InvalidStateError("cannot create directory " + p.parent_path().string() +
                                        ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidStateError("cannot open for writing: " + path);
    out << text;
    if (!out) throw InvalidStateError("write failed: " + path);
}

}  // namespace rln
