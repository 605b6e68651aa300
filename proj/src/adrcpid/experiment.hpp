#pragma once

#include "adrcpid/analysis.hpp"
#include "adrcpid/config.hpp"

#include <string>
#include <vector>

namespace adrcpid {

/// Multi-line report: ADRC gains, equivalent PI(D)F parameters and the
/// matrices of the equivalent realization, 10 significant digits.
std::string tune_report(int order, double ts, double g, double b0);

/// Controllers compared in the experiments: "adrc", "equiv" and, when
/// configured, "compare". All are tuned for the nominal plant of `order`.
std::vector<NamedController> experiment_controllers(const ExperimentConfig& cfg, int order);
PlantModel nominal_plant(const ExperimentConfig& cfg, int order);

struct FigureSpec {
    int id;
    int order;        ///< plant order used by the figure
    std::string kind; ///< "step", "bode" or "gang"
    std::string parameter;  ///< swept parameter for step figures
    std::string title;
};

/// Throws std::invalid_argument unless 1 <= id <= 8.
FigureSpec figure_spec(int id);

struct FigureOutput {
    std::string csv;
    std::string svg;
    std::vector<std::string> notes;  ///< e.g. one line per unstable sweep case
};

/// Pure computation; no files are touched.
FigureOutput build_figure(int id, const ExperimentConfig& cfg);

/// Step sweep over `values` of `parameter` ("K", "T" or "D") for the
/// configured order; CSV columns t, y_<P>=<v>_<controller>.
FigureOutput build_sweep(const ExperimentConfig& cfg, const std::string& parameter, const std::vector<double>& values);

/// Creates the output directory and writes `name`.csv, `name`.svg and
/// config.ini. Throws std::ios_base::failure on I/O errors.
void write_outputs(const ExperimentConfig& cfg, const std::string& name, const FigureOutput& out);

struct VerifyCheck {
    std::string name;
    double residual;
    double tolerance;
    bool passed;

    /// "name: residual=1.234e-10 tol=1.0e-09 PASS"
    std::string line() const;
};

/// Equivalence, asymptote and property checks for the configured design.
/// `perturb_b0` scales b0 on the equivalent-controller side of the
/// y-channel equivalence checks only.
std::vector<VerifyCheck> run_verify(const ExperimentConfig& cfg, double perturb_b0 = 1.0);

}  // namespace adrcpid
