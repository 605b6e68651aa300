#pragma once

#include "adrcpid/pid_equiv.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adrcpid {

/// Resolved experiment configuration.
///
/// Text form is INI-like: `[section]` headers, `key = value` lines, `#`
/// comments. Keys are addressed as `section.key` (for example `tuning.ts`).
/// Numbers are written with 17 significant digits so a config round-trips
/// exactly.
struct ExperimentConfig {
    int order = 1;
    double ts = 1.0;
    double g = 10.0;
    double b0 = 1.0;

    double plant_k = 1.0;
    double plant_t = 1.0;
    double plant_d = 1.0;

    std::vector<double> sweep_k_order1{0.1, 0.2, 0.5, 1, 2, 5, 10};
    std::vector<double> sweep_t_order1{0.1, 0.2, 0.5, 1, 2, 5, 10};
    std::vector<double> sweep_k_order2{0.1, 0.2, 0.5, 1, 2, 5};
    std::vector<double> sweep_t_order2{0.1, 0.2, 0.5, 1, 2, 5};
    /// Step experiments run to t_end_factor * ts in n_steps samples.
    double t_end_factor = 30.0;
    int n_steps = 12000;

    double omega_min = kDefaultOmegaMin;
    double omega_max = kDefaultOmegaMax;
    int omega_points = kDefaultOmegaPoints;

    std::string out_dir = "out";
    std::optional<ComparePid> compare;

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;

    /// Set one key from text. Throws std::invalid_argument for unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
    std::string get(const std::string& key) const;
    static const std::vector<std::string>& keys();

    std::string to_text() const;
    static ExperimentConfig from_text(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    void save(const std::string& path) const;

    double t_end() const { return t_end_factor * ts; }
    const std::vector<double>& sweep_values(int plant_order, const std::string& parameter) const;
    std::vector<double> grid() const { return log_grid(omega_min, omega_max, omega_points); }

    bool operator==(const ExperimentConfig&) const;
};

/// 17 significant digits; parses back to the identical double.
std::string format_double(double v);
double parse_double(const std::string& text, const std::string& what);
std::vector<double> parse_list(const std::string& text, const std::string& what);
ComparePid parse_compare_pid(const std::string& text);

}  // namespace adrcpid
