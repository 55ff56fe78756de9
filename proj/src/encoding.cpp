#include "rln/encoding.hpp"

#include <cmath>
#include <limits>

namespace rln {

void IntervalScheme::validate() const {
    if (lower_bounds.empty()) {
        throw ContractViolation("interval scheme '" + variable + "' has no intervals");
    }
    double prev = lower_bounds[0];
    for (std::size_t i = 1; i < lower_bounds.size(); ++i) {
        if (!(lower_bounds[i] > prev)) {
            throw ContractViolation("interval scheme '" + variable +
                                    "' bounds must be strictly increasing");
        }
        prev = lower_bounds[i];
    }
    if (!(upper_bound > prev)) {
        throw ContractViolation("interval scheme '" + variable +
                                "' upper bound must exceed the last lower bound");
    }
}

IntervalScheme IntervalScheme::default_angle() {
    return {"theta_deg", {-12.0, -6.0, -1.0, 0.0, 1.0, 6.0}, 12.0};
}

IntervalScheme IntervalScheme::default_velocity() {
    const double inf = std::numeric_limits<double>::infinity();
    return {"x_dot", {-inf, -5.0, 5.0}, inf};
}

std::size_t InputVector::count() const {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
}

std::string InputVector::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

std::size_t interval_index(double value, const IntervalScheme& scheme) {
    if (!std::isfinite(value)) {
        throw ContractViolation("cannot encode non-finite value for '" + scheme.variable + "'");
    }
    if (value < scheme.lower_bounds.front() || value > scheme.upper_bound) {
        throw ContractViolation("value out of encodable range for '" + scheme.variable + "'");
    }
    std::size_t index = 0;
    for (std::size_t i = 1; i < scheme.lower_bounds.size(); ++i) {
        if (value >= scheme.lower_bounds[i]) index = i;
    }
    return index;
}

InputVector encode_angle(double theta_deg, const IntervalScheme& scheme) {
    InputVector v(scheme.intervals());
    v.set(interval_index(theta_deg, scheme));
    return v;
}

InputVector encode_velocity(double x_dot, const IntervalScheme& scheme) {
    InputVector v(scheme.intervals());
    v.set(interval_index(x_dot, scheme));
    return v;
}

std::size_t input_size(SvMode mode, const EncodingSchemes& schemes) {
    std::size_t n = schemes.angle.intervals();
    if (mode == SvMode::TwoSv) n += schemes.velocity.intervals();
    return n;
}

void build_input_into(const CartPoleState& state, SvMode mode, const EncodingSchemes& schemes,
                      InputVector& out) {
    out.reset(input_size(mode, schemes));
    out.set(interval_index(rad_to_deg(state.theta), schemes.angle));
    if (mode == SvMode::TwoSv) {
        out.set(schemes.angle.intervals() + interval_index(state.x_dot, schemes.velocity));
    }
}

InputVector build_input(const CartPoleState& state, SvMode mode, const EncodingSchemes& schemes) {
    InputVector v;
    build_input_into(state, mode, schemes, v);
    return v;
}

}  // namespace rln
