#include "rln/config.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "rln/csv_io.hpp"
#include "rln/version.hpp"

namespace rln {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& context, const std::string& message) {
    throw ConfigError(context.empty() ? message : context + ": " + message);
}

long parse_long(const std::string& text, const std::string& context) {
    long value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) fail(context, "expected an integer, got '" + text + "'");
    return value;
}

double parse_double(const std::string& text, const std::string& context) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) fail(context, "expected a number, got '" + text + "'");
    return value;
}

// Accepts "a/b" fractions, decimals, and plain integers.
FixedWeight parse_weight_value(const std::string& text, const std::string& context) {
    const std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        const long num = parse_long(trim(text.substr(0, slash)), context);
        const long den = parse_long(trim(text.substr(slash + 1)), context);
        if (den <= 0) fail(context, "fraction denominator must be positive in '" + text + "'");
        return FixedWeight::from_ratio(num, den);
    }
    try {
        return FixedWeight::parse_decimal(text);
    } catch (const std::invalid_argument&) {
        fail(context, "expected a fraction or decimal, got '" + text + "'");
    }
}

std::vector<double> parse_bounds_list(const std::string& text, const std::string& context) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(context, "empty entry in bounds list");
        values.push_back(parse_double(item, context));
    }
    if (values.size() < 2) fail(context, "a bounds list needs at least two entries");
    return values;
}

IntervalScheme scheme_from_bounds(const std::vector<double>& bounds, const std::string& variable) {
    IntervalScheme scheme;
    scheme.variable = variable;
    scheme.lower_bounds.assign(bounds.begin(), bounds.end() - 1);
    scheme.upper_bound = bounds.back();
    return scheme;
}

std::string render_bounds(const IntervalScheme& scheme) {
    std::string out;
    for (double b : scheme.lower_bounds) {
        if (!out.empty()) out += ", ";
        if (std::isinf(b)) {
            out += b < 0 ? "-inf" : "inf";
        } else {
            out += format_double(b);
        }
    }
    out += ", ";
    out += std::isinf(scheme.upper_bound) ? "inf" : format_double(scheme.upper_bound);
    return out;
}

void check_positive(double v, const std::string& key, const std::string& context) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(context, key + " must be strictly positive");
}

using Setter = std::function<void(SimulationSetup&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"cart_mass",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.physics.cart_mass = parse_double(v, c);
             check_positive(s.physics.cart_mass, "cart_mass", c);
         }},
        {"pole_mass",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.physics.pole_mass = parse_double(v, c);
             check_positive(s.physics.pole_mass, "pole_mass", c);
         }},
        {"gravity",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.physics.gravity = parse_double(v, c);
             check_positive(s.physics.gravity, "gravity", c);
         }},
        {"force",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.physics.force = parse_double(v, c);
             check_positive(s.physics.force, "force", c);
         }},
        {"pole_half_length",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.physics.pole_half_length = parse_double(v, c);
             check_positive(s.physics.pole_half_length, "pole_half_length", c);
         }},
        {"tau",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.physics.tau = parse_double(v, c);
             check_positive(s.physics.tau, "tau", c);
         }},
        {"x_limit",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.physics.x_limit = parse_double(v, c);
             check_positive(s.physics.x_limit, "x_limit", c);
         }},
        {"theta_limit_deg",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.physics.theta_limit_deg = parse_double(v, c);
             check_positive(s.physics.theta_limit_deg, "theta_limit_deg", c);
         }},
        {"sigma",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             const long n = parse_long(v, c);
             if (n <= 0) fail(c, "sigma must be a positive step count");
             s.plasticity.sigma = static_cast<int>(n);
         }},
        {"omega",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             const long n = parse_long(v, c);
             if (n <= 0) fail(c, "omega must be a positive step count");
             s.plasticity.omega = static_cast<int>(n);
         }},
        {"rho_plus",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.plasticity.rho_plus = parse_weight_value(v, c);
             if (s.plasticity.rho_plus.raw <= 0) fail(c, "rho_plus must be strictly positive");
         }},
        {"rho_minus",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.plasticity.rho_minus = parse_weight_value(v, c);
             if (s.plasticity.rho_minus.raw <= 0) fail(c, "rho_minus must be strictly positive");
         }},
        {"pi",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.plasticity.pi = parse_weight_value(v, c);
             if (s.plasticity.pi.raw <= 0) fail(c, "pi must be strictly positive");
         }},
        {"sv",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             const long n = parse_long(v, c);
             if (n != 1 && n != 2) fail(c, "sv must be 1 or 2");
             s.experiment.mode = n == 1 ? SvMode::OneSv : SvMode::TwoSv;
         }},
        {"trials",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.experiment.trials_per_episode = parse_long(v, c);
             if (s.experiment.trials_per_episode <= 0) fail(c, "trials must be positive");
         }},
        {"step_cap",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.experiment.step_cap = parse_long(v, c);
             if (s.experiment.step_cap <= 0) fail(c, "step_cap must be positive");
         }},
        {"angle_range_deg",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.experiment.initial_angle_range_deg = parse_double(v, c);
             check_positive(s.experiment.initial_angle_range_deg, "angle_range_deg", c);
         }},
        {"n_angles",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             const long n = parse_long(v, c);
             if (n <= 0) fail(c, "n_angles must be positive");
             s.experiment.n_initial_angles = static_cast<int>(n);
         }},
        {"w_base",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.experiment.w_base = parse_weight_value(v, c);
             if (s.experiment.w_base.raw < 0) fail(c, "w_base must be non-negative");
         }},
        {"w_range",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.experiment.w_range = parse_weight_value(v, c);
             if (s.experiment.w_range.raw < 0) fail(c, "w_range must be non-negative");
         }},
        {"seed",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             unsigned long long seed = 0;
             const char* begin = v.data();
             auto [ptr, ec] = std::from_chars(begin, begin + v.size(), seed);
             if (ec != std::errc{} || ptr != begin + v.size()) {
                 fail(c, "seed must be a non-negative integer");
             }
             s.experiment.seed = seed;
         }},
        {"seeds",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             const long n = parse_long(v, c);
             if (n <= 0) fail(c, "seeds must be positive");
             s.experiment.seed_count = static_cast<int>(n);
         }},
        {"w_max",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             const long n = parse_long(v, c);
             if (n <= 0) fail(c, "w_max must be positive");
             s.experiment.w_max = static_cast<int>(n);
         }},
        {"segments",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             const long n = parse_long(v, c);
             if (n < 0) fail(c, "segments must be >= 0 (0 selects the per-mode default)");
             s.experiment.segments = static_cast<std::size_t>(n);
         }},
        {"angle_bounds",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.schemes.angle = scheme_from_bounds(parse_bounds_list(v, c), "theta_deg");
             try {
                 s.schemes.angle.validate();
             } catch (const ContractViolation& e) {
                 fail(c, e.what());
             }
         }},
        {"velocity_bounds",
         [](SimulationSetup& s, const std::string& v, const std::string& c) {
             s.schemes.velocity = scheme_from_bounds(parse_bounds_list(v, c), "x_dot");
             try {
                 s.schemes.velocity.validate();
             } catch (const ContractViolation& e) {
                 fail(c, e.what());
             }
         }},
    };
    return table;
}

}  // namespace

void apply_setting(SimulationSetup& setup, const std::string& key, const std::string& value,
                   const std::string& context) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) fail(context, "unknown key '" + key + "'");
    it->second(setup, value, context);
}

SimulationSetup parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    SimulationSetup setup;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            fail(path + ":" + std::to_string(line_number), "expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(path + ":" + std::to_string(line_number), "missing key");
        if (value.empty()) fail(path + ":" + std::to_string(line_number), "missing value");
        apply_setting(setup, key, value, path + ":" + std::to_string(line_number));
    }
    setup.validate();
    return setup;
}

std::string render_config(const SimulationSetup& s) {
    std::ostringstream out;
    out << "# physics\n";
    out << "cart_mass = " << format_double(s.physics.cart_mass) << "\n";
    out << "pole_mass = " << format_double(s.physics.pole_mass) << "\n";
    out << "gravity = " << format_double(s.physics.gravity) << "\n";
    out << "force = " << format_double(s.physics.force) << "\n";
    out << "pole_half_length = " << format_double(s.physics.pole_half_length) << "\n";
    out << "tau = " << format_double(s.physics.tau) << "\n";
    out << "x_limit = " << format_double(s.physics.x_limit) << "\n";
    out << "theta_limit_deg = " << format_double(s.physics.theta_limit_deg) << "\n";
    out << "# plasticity\n";
    out << "sigma = " << s.plasticity.sigma << "\n";
    out << "omega = " << s.plasticity.omega << "\n";
    out << "rho_plus = " << s.plasticity.rho_plus.to_decimal_string() << "\n";
    out << "rho_minus = " << s.plasticity.rho_minus.to_decimal_string() << "\n";
    out << "pi = " << s.plasticity.pi.to_decimal_string() << "\n";
    out << "# network\n";
    out << "w_max = " << s.experiment.w_max << "\n";
    out << "segments = " << s.experiment.segments << "\n";
    out << "# experiment\n";
    out << "sv = " << static_cast<int>(s.experiment.mode) << "\n";
    out << "trials = " << s.experiment.trials_per_episode << "\n";
    out << "step_cap = " << s.experiment.step_cap << "\n";
    out << "angle_range_deg = " << format_double(s.experiment.initial_angle_range_deg) << "\n";
    out << "n_angles = " << s.experiment.n_initial_angles << "\n";
    out << "w_base = " << s.experiment.w_base.to_decimal_string() << "\n";
    out << "w_range = " << s.experiment.w_range.to_decimal_string() << "\n";
    out << "seed = " << s.experiment.seed << "\n";
    out << "seeds = " << s.experiment.seed_count << "\n";
    out << "# encoding (angle bounds in degrees, velocity bounds in m/s)\n";
    out << "angle_bounds = " << render_bounds(s.schemes.angle) << "\n";
    out << "velocity_bounds = " << render_bounds(s.schemes.velocity) << "\n";
    return out.str();
}

std::string render_manifest(const SimulationSetup& setup, const std::string& command_line,
                            const std::vector<std::string>& output_paths) {
    std::ostringstream out;
    out << "# rlncart run manifest (parseable as a config file)\n";
    out << "# version: " << kVersion << "\n";
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# created: " << stamp << "\n";
    out << "# command: " << command_line << "\n";
    for (const auto& p : output_paths) out << "# output: " << p << "\n";
    out << render_config(setup);
    return out.str();
}

}  // namespace rln
