#pragma once

#include <cstdint>
#include <string>

namespace rln {

// Synaptic weights are exact binary fixed-point values raw / 2^20. All
// default update amounts (1/128, 7/1024, 8/1024) and window divisions by
// 256 are exact in this representation, so weight state never drifts.
struct FixedWeight {
    static constexpr int kFractionBits = 20;
    static constexpr std::int64_t kOne = std::int64_t{1} << kFractionBits;

    std::int64_t raw = 0;

    static FixedWeight from_raw(std::int64_t r) { return FixedWeight{r}; }
    static FixedWeight from_int(std::int64_t v) { return FixedWeight{v * kOne}; }
    // Nearest representable value of num/den (exact whenever den divides
    // num * 2^20, which holds for every default parameter).
    static FixedWeight from_ratio(std::int64_t num, std::int64_t den);
    static FixedWeight from_double(double v);

    double to_double() const { return static_cast<double>(raw) / static_cast<double>(kOne); }

    // Ceiling to a small integer; weights are non-negative.
    std::int64_t ceil_int() const { return (raw + kOne - 1) >> kFractionBits; }

    // Exact decimal rendering, e.g. "4.50000762939453125"; no trailing zeros.
    std::string to_decimal_string() const;

    // Exact inverse of to_decimal_string; other decimals round to nearest.
    static FixedWeight parse_decimal(const std::string& text);

    auto operator<=>(const FixedWeight&) const = default;
};

}  // namespace rln
