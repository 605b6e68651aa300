#pragma once

#include "adrcpid/state_space.hpp"

#include <string>
#include <utility>
#include <vector>

namespace adrcpid {

/// Logarithmically spaced frequency grid [lo, hi] with n points, lo > 0.
std::vector<double> log_grid(double lo, double hi, int n);

inline constexpr double kDefaultOmegaMin = 1e-2;
inline constexpr double kDefaultOmegaMax = 1e4;
inline constexpr int kDefaultOmegaPoints = 600;

struct FrequencyResponseTable {
    std::vector<double> omega;
    std::vector<std::string> channels;
    /// values[c][i] is channel c at omega[i].
    std::vector<std::vector<Complex>> values;

    const std::vector<Complex>& channel(const std::string& name) const;
    void add(std::string name, std::vector<Complex> v);
};

/// Throws std::invalid_argument unless omega is strictly increasing and positive.
void check_grid(const std::vector<double>& omega);

FrequencyResponseTable freq_response(const TransferFunction& g, const std::vector<double>& omega,
                                     const std::string& name = "G");
FrequencyResponseTable freq_response(const StateSpaceModel& m, int input, int output,
                                     const std::vector<double>& omega, const std::string& name = "G");

/// Uniformly sampled time traces with t[0] = 0.
struct StepResponseTable {
    std::vector<double> t;
    std::vector<std::pair<std::string, std::vector<double>>> columns;

    const std::vector<double>& column(const std::string& name) const;
};

/// Unit step on `input` from zero initial state. The augmented system
/// [A B; 0 0] is discretized exactly with a matrix exponential at
/// h = t_end / n_steps, so samples are exact for LTI systems up to rounding.
/// One column per model output, named by the output labels.
StepResponseTable step_response(const StateSpaceModel& m, int input, double t_end, int n_steps);

/// Zero-order-hold pair (Phi, Gamma) for sample period h.
std::pair<Matrix, Matrix> zoh_discretize(const Matrix& a, const Matrix& b, double h);

}  // namespace adrcpid
