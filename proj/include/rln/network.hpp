#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rln/encoding.hpp"
#include "rln/fixed_weight.hpp"

namespace rln {

enum class Action : int { MinusF = 0, PlusF = 1 };

const char* to_string(Action action);

inline double force_newtons(Action action, const PhysicsParams& params) {
    return action == Action::PlusF ? params.force : -params.force;
}

// Broadcast third factor, one value per step.
enum class RewardSignal { None, Positive, Negative };

struct Synapse {
    FixedWeight weight;
    int c_neg = 0;        // punishment decay counter, in [0, omega]
    int c_pos = 0;        // success decay counter, in [0, sigma]
    bool e_flag = false;  // input spike seen at the segment's last win
};

struct Segment {
    std::vector<Synapse> synapses;
};

// One reinforcement-learning neuron: a single dendrite of parallel segments
// feeding a per-dendrite WTA.
struct Rln {
    Action action = Action::MinusF;
    std::vector<Segment> segments;
    std::optional<std::size_t> last_winning_segment;
};

struct Network {
    std::array<Rln, 2> rlns;  // [0] = -F neuron, [1] = +F neuron
    FixedWeight w_max = FixedWeight::from_int(8);
    bool learning_enabled = true;

    Rln& rln(Action a) { return rlns[static_cast<std::size_t>(a)]; }
    const Rln& rln(Action a) const { return rlns[static_cast<std::size_t>(a)]; }
    std::size_t segments_per_neuron() const { return rlns[0].segments.size(); }
    std::size_t inputs() const {
        return rlns[0].segments.empty() ? 0 : rlns[0].segments[0].synapses.size();
    }
};

// Two structurally identical neurons, all weights zero.
Network make_network(std::size_t inputs, std::size_t segments_per_neuron, FixedWeight w_max);

// Ceiling of the fractional weight; inference is integer-only.
inline std::int64_t effective_weight(FixedWeight w) { return w.ceil_int(); }

// Integer dot product of the active input lines with ceiling weights.
std::int64_t segment_response(const Segment& segment, const InputVector& d);

struct InferResult {
    std::size_t segment = 0;
    std::int64_t response = 0;
};

// Argmax over segment responses, ties to the lowest segment index. Records
// the winner in last_winning_segment; weights and counters are untouched.
InferResult dendrite_infer(Rln& rln, const InputVector& d);

// Network-level WTA; ties select -F (the lowest-index neuron).
Action select_action(std::int64_t a_minus, std::int64_t a_plus);

}  // namespace rln
