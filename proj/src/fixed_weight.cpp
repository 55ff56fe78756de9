#include "rln/fixed_weight.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace rln {

FixedWeight FixedWeight::from_ratio(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("FixedWeight::from_ratio: denominator must be > 0");
    const bool negative = num < 0;
    const unsigned __int128 n = negative ? -static_cast<__int128>(num) : num;
    const unsigned __int128 scaled = n << kFractionBits;
    const unsigned __int128 q = (scaled + static_cast<unsigned __int128>(den) / 2) / den;
    const std::int64_t raw = static_cast<std::int64_t>(q);
    return FixedWeight{negative ? -raw : raw};
}

FixedWeight FixedWeight::from_double(double v) {
    return FixedWeight{static_cast<std::int64_t>(std::llround(v * static_cast<double>(kOne)))};
}

std::string FixedWeight::to_decimal_string() const {
    std::int64_t r = raw;
    std::string out;
    if (r < 0) {
        out.push_back('-');
        r = -r;
    }
    out += std::to_string(r >> kFractionBits);
    std::int64_t frac = r & (kOne - 1);
    if (frac == 0) return out;
    out.push_back('.');
    std::string digits;
    while (frac != 0) {  // at most kFractionBits digits, exact
        frac *= 10;
        digits.push_back(static_cast<char>('0' + (frac >> kFractionBits)));
        frac &= kOne - 1;
    }
    out += digits;
    return out;
}

FixedWeight FixedWeight::parse_decimal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("FixedWeight::parse_decimal: empty string");
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '-' || text[pos] == '+') {
        negative = text[pos] == '-';
        ++pos;
    }
    std::int64_t int_part = 0;
    bool any_digit = false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        int_part = int_part * 10 + (text[pos] - '0');
        any_digit = true;
        ++pos;
    }
    unsigned __int128 frac_digits = 0;
    unsigned __int128 frac_scale = 1;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (frac_scale < (static_cast<unsigned __int128>(1) << 100)) {
                frac_digits = frac_digits * 10 + static_cast<unsigned>(text[pos] - '0');
                frac_scale *= 10;
            }
            any_digit = true;
            ++pos;
        }
    }
    if (!any_digit || pos != text.size()) {
        throw std::invalid_argument("FixedWeight::parse_decimal: malformed number '" + text + "'");
    }
    const unsigned __int128 scaled = frac_digits << kFractionBits;
    const unsigned __int128 frac_raw = (scaled + frac_scale / 2) / frac_scale;
    std::int64_t raw = (int_part << kFractionBits) + static_cast<std::int64_t>(frac_raw);
    return FixedWeight{negative ? -raw : raw};
}

}  // namespace rln
