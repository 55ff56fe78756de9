#include "rln/network.hpp"

namespace rln {

const char* to_string(Action action) {
    return action == Action::MinusF ? "-F" : "+F";
}

Network make_network(std::size_t inputs, std::size_t segments_per_neuron, FixedWeight w_max) {
    if (segments_per_neuron == 0) throw ContractViolation("network needs at least one segment");
    if (inputs == 0) throw ContractViolation("network needs at least one input line");
    Network net;
    net.w_max = w_max;
    for (std::size_t a = 0; a < 2; ++a) {
        Rln& rln = net.rlns[a];
        rln.action = static_cast<Action>(a);
        rln.segments.assign(segments_per_neuron, Segment{std::vector<Synapse>(inputs)});
        rln.last_winning_segment.reset();
    }
    return net;
}

std::int64_t segment_response(const Segment& segment, const InputVector& d) {
    if (segment.synapses.size() != d.size()) {
        throw ContractViolation("segment_response: input length does not match synapse count");
    }
    std::int64_t response = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i]) response += effective_weight(segment.synapses[i].weight);
    }
    return response;
}

InferResult dendrite_infer(Rln& rln, const InputVector& d) {
    InferResult best{0, segment_response(rln.segments[0], d)};
    for (std::size_t s = 1; s < rln.segments.size(); ++s) {
        const std::int64_t r = segment_response(rln.segments[s], d);
        if (r > best.response) best = {s, r};
    }
    rln.last_winning_segment = best.segment;
    return best;
}

Action select_action(std::int64_t a_minus, std::int64_t a_plus) {
    return a_plus > a_minus ? Action::PlusF : Action::MinusF;
}

}  // namespace rln
