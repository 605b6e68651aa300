#pragma once

#include "adrcpid/pid_equiv.hpp"

#include <string>
#include <vector>

namespace adrcpid {

/// K/(T s + 1) for order 1, K/(T^2 s^2 + 2 D T s + 1) for order 2.
struct PlantModel {
    int order = 1;
    double k = 1.0;
    double t = 1.0;
    double d = 1.0;

    /// Throws std::invalid_argument for an unsupported order or T <= 0.
    TransferFunction tf() const;
    /// Copy with the named parameter ("K", "T" or "D") replaced.
    PlantModel with(const std::string& parameter, double value) const;
};

/// Plant and controller in feedback. Inputs [r, d_u, n], outputs [y, u]:
/// the plant sees u + d_u and the controller measures y + n.
/// Throws std::invalid_argument if the plant has direct feedthrough.
StateSpaceModel closed_loop(const PlantModel& plant, const TwoInputController& c);
StateSpaceModel closed_loop(const StateSpaceModel& plant, const TwoInputController& c);

struct GangOfSeven {
    TransferFunction s;       ///< 1/(1 + P C_y)
    TransferFunction ps;      ///< P S
    TransferFunction cs;      ///< C_y S
    TransferFunction t;       ///< P C_y S
    TransferFunction sf_r;    ///< S C_r / C_y
    TransferFunction psf_r;   ///< P S C_r / C_y
    TransferFunction tf_r;    ///< P C_r S

    static const std::vector<std::string>& names();
    const TransferFunction& operator[](std::size_t i) const;
};

inline constexpr double kGangMinrealTolerance = 1e-8;

GangOfSeven gang_of_seven(const TransferFunction& plant, const ControllerChannels& c);
GangOfSeven gang_of_seven(const PlantModel& plant, const TwoInputController& c);

/// Residual of S + T = 1: both sides over the common denominator, compared
/// coefficient-wise.
double sensitivity_identity_residual(const GangOfSeven& g);

struct NamedTransferFunction {
    std::string name;
    TransferFunction tf;
};

struct BodeCurve {
    std::string name;
    std::vector<double> magnitude;
    std::vector<double> phase_deg;  ///< unwrapped along the grid
};

struct BodeData {
    std::vector<double> omega;
    std::vector<BodeCurve> curves;
};

BodeData bode_set(const std::vector<NamedTransferFunction>& tfs, const std::vector<double>& omega);

/// Removes 360-degree jumps between neighbouring samples.
void unwrap_degrees(std::vector<double>& phase);

struct LoopMargins {
    double gain_margin;      ///< linear; +inf without a phase crossover
    double phase_margin_deg; ///< +inf without a gain crossover
    double gain_crossover;   ///< rad/s, NaN if none
    double max_sensitivity;  ///< max |S| over the grid
};

/// Margins of the loop L = P C_y, crossovers located on the grid and refined
/// by bisection in log frequency.
LoopMargins loop_margins(const TransferFunction& loop, const std::vector<double>& omega);

struct NamedController {
    std::string name;
    TwoInputController controller;
};

struct SweepCase {
    std::size_t value_index;
    std::size_t controller_index;
    bool stable;
    StepResponseTable response;  ///< columns y and u for a unit reference step
};

struct SweepResult {
    std::string parameter;
    std::vector<double> values;
    std::vector<std::string> controllers;
    std::vector<SweepCase> cases;  ///< ordered by (value index, controller index)

    const SweepCase& at(std::size_t value_index, std::size_t controller_index) const;
};

/// Robustness experiment: the plant parameter is varied, the controllers
/// are kept as tuned for the nominal plant. Unstable loops are simulated and
/// flagged, never rejected.
SweepResult step_sweep(const PlantModel& nominal, const std::string& parameter, const std::vector<double>& values,
                       const std::vector<NamedController>& controllers, double t_end, int n_steps);

/// First time after which |y - target| stays within band * |target|.
/// Returns +inf if the last sample is outside the band.
double settling_time(const std::vector<double>& t, const std::vector<double>& y, double target = 1.0,
                     double band = 0.02);

}  // namespace adrcpid
