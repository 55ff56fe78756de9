#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rln/physics.hpp"

namespace rln {

enum class SvMode { OneSv = 1, TwoSv = 2 };

// One state variable discretized into half-open intervals. Interval i covers
// [lower_bounds[i], lower_bounds[i+1]); the final interval is closed at
// upper_bound, so the scheme is total on [lower_bounds[0], upper_bound].
// The first lower bound and the upper bound may be infinite.
struct IntervalScheme {
    std::string variable;
    std::vector<double> lower_bounds;
    double upper_bound = 0.0;

    std::size_t intervals() const { return lower_bounds.size(); }

    // Throws ContractViolation unless bounds are strictly increasing.
    void validate() const;

    static IntervalScheme default_angle();     // degrees: -12,-6,-1,0,1,6 / 12
    static IntervalScheme default_velocity();  // m/s: -inf,-5,5 / +inf
};

// Concatenated 1-hot codes, one bit per interval per enabled state variable.
class InputVector {
public:
    InputVector() = default;
    explicit InputVector(std::size_t n) : bits_(n, 0) {}

    std::size_t size() const { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    void reset(std::size_t n) { bits_.assign(n, 0); }
    void set(std::size_t i) { bits_[i] = 1; }
    std::size_t count() const;
    std::string to_string() const;  // e.g. "000100010"

    bool operator==(const InputVector&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

struct EncodingSchemes {
    IntervalScheme angle = IntervalScheme::default_angle();
    IntervalScheme velocity = IntervalScheme::default_velocity();
};

// Index of the interval owning `value`: the largest i with
// lower_bounds[i] <= value. Throws ContractViolation when value is not
// finite or lies outside [lower_bounds[0], upper_bound].
std::size_t interval_index(double value, const IntervalScheme& scheme);

InputVector encode_angle(double theta_deg, const IntervalScheme& scheme);
InputVector encode_velocity(double x_dot, const IntervalScheme& scheme);

InputVector build_input(const CartPoleState& state, SvMode mode, const EncodingSchemes& schemes);

// Allocation-free variant for per-step use; `out` is resized as needed.
void build_input_into(const CartPoleState& state, SvMode mode, const EncodingSchemes& schemes,
                      InputVector& out);

std::size_t input_size(SvMode mode, const EncodingSchemes& schemes);

}  // namespace rln
