#include "rln/plasticity.hpp"

#include <algorithm>

namespace rln {

void PlasticityParams::validate() const {
    if (sigma <= 0) throw ContractViolation("sigma must be strictly positive");
    if (omega <= 0) throw ContractViolation("omega must be strictly positive");
    if (rho_plus.raw <= 0) throw ContractViolation("rho_plus must be strictly positive");
    if (rho_minus.raw <= 0) throw ContractViolation("rho_minus must be strictly positive");
    if (pi.raw <= 0) throw ContractViolation("pi must be strictly positive");
}

void tag_eligibility(Network& net, const InputVector& d, Winner winner,
                     const PlasticityParams& params) {
    Rln& rln = net.rln(winner.neuron);
    if (winner.segment >= rln.segments.size()) {
        throw ContractViolation("tag_eligibility: segment index out of range");
    }
    if (!rln.last_winning_segment || *rln.last_winning_segment != winner.segment) {
        throw ContractViolation("tag_eligibility: winner does not match the recorded WTA result");
    }
    Segment& segment = rln.segments[winner.segment];
    if (segment.synapses.size() != d.size()) {
        throw ContractViolation("tag_eligibility: input length does not match synapse count");
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        Synapse& syn = segment.synapses[i];
        syn.c_pos = params.sigma;
        syn.e_flag = d[i] != 0;
        if (d[i]) syn.c_neg = params.omega;
    }
}

void decay_counters(Network& net) {
    for (Rln& rln : net.rlns) {
        for (Segment& segment : rln.segments) {
            for (Synapse& syn : segment.synapses) {
                if (syn.c_neg > 0) --syn.c_neg;
                if (syn.c_pos > 0) --syn.c_pos;
            }
        }
    }
}

bool tick_success(SuccessCounter& counter, const PlasticityParams& params) {
    if (++counter.count == params.sigma) {
        counter.count = 0;
        return true;
    }
    return false;
}

void apply_negative_reward(Network& net, const PlasticityParams& params) {
    for (Rln& rln : net.rlns) {
        for (Segment& segment : rln.segments) {
            for (Synapse& syn : segment.synapses) {
                if (syn.c_neg > 0) {
                    const std::int64_t delta = params.pi.raw * syn.c_neg / params.omega;
                    syn.weight.raw = std::max<std::int64_t>(0, syn.weight.raw - delta);
                }
            }
        }
    }
}

void apply_positive_reward(Network& net, const PlasticityParams& params) {
    for (Rln& rln : net.rlns) {
        for (Segment& segment : rln.segments) {
            for (Synapse& syn : segment.synapses) {
                if (syn.c_pos > 0) {
                    if (syn.e_flag) {
                        const std::int64_t delta = params.rho_plus.raw * syn.c_pos / params.sigma;
                        syn.weight.raw = std::min(net.w_max.raw, syn.weight.raw + delta);
                    } else {
                        const std::int64_t delta = params.rho_minus.raw * syn.c_pos / params.sigma;
                        syn.weight.raw = std::max<std::int64_t>(0, syn.weight.raw - delta);
                    }
                }
            }
        }
    }
}

void reset_trial_state(Network& net, SuccessCounter& counter) {
    for (Rln& rln : net.rlns) {
        rln.last_winning_segment.reset();
        for (Segment& segment : rln.segments) {
            for (Synapse& syn : segment.synapses) {
                syn.c_neg = 0;
                syn.c_pos = 0;
                syn.e_flag = false;
            }
        }
    }
    counter.count = 0;
}

}  // namespace rln
