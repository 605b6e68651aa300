#include "adrcpid/adrc.hpp"

#include <cmath>
#include <stdexcept>

namespace adrcpid {

TwoInputController::TwoInputController(StateSpaceModel model) : ss(std::move(model)) {
    if (ss.inputs() != 2 || ss.outputs() != 1)
        throw std::invalid_argument("two-input controller must have inputs [r, y] and one output");
}

namespace {

void validate(double ts, double g, double b0) {
    if (!(ts > 0.0) || !std::isfinite(ts)) throw std::invalid_argument("ts must be > 0");
    if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("g must be > 0");
    if (b0 == 0.0 || !std::isfinite(b0)) throw std::invalid_argument("b0 must be nonzero");
}

const std::vector<std::string> kControllerInputs{"r", "y"};
const std::vector<std::string> kControllerOutputs{"u"};

}  // namespace

AdrcDesign1 tune_first_order(double ts, double g, double b0) {
    validate(ts, g, b0);
    const double kp = 4.0 / ts;
    return {ts, g, b0, kp, 2.0 * g * kp, g * g * kp * kp};
}

AdrcDesign2 tune_second_order(double ts, double g, double b0) {
    validate(ts, g, b0);
    const double w = 6.0 / ts;
    const double wo = g * w;
    return {ts, g, b0, w, w * w, 2.0 * w, 3.0 * wo, 3.0 * wo * wo, wo * wo * wo};
}

TwoInputController build_first_order(const AdrcDesign1& d) {
    Matrix a(2, 2), b(2, 2), c(1, 2), dd(1, 2);
    a << -(d.l1 + d.kp), 0.0,
         -d.l2, 0.0;
    b << d.kp, d.l1,
         0.0, d.l2;
    c << -d.kp / d.b0, -1.0 / d.b0;
    dd << d.kp / d.b0, 0.0;
    return TwoInputController({a, b, c, dd, kControllerInputs, kControllerOutputs});
}

TwoInputController build_second_order(const AdrcDesign2& d) {
    Matrix a(3, 3), b(3, 2), c(1, 3), dd(1, 2);
    a << -d.l1, 1.0, 0.0,
         -(d.l2 + d.kp), -d.kd, 0.0,
         -d.l3, 0.0, 0.0;
    b << 0.0, d.l1,
         d.kp, d.l2,
         0.0, d.l3;
    c << -d.kp / d.b0, -d.kd / d.b0, -1.0 / d.b0;
    dd << d.kp / d.b0, 0.0;
    return TwoInputController({a, b, c, dd, kControllerInputs, kControllerOutputs});
}

Matrix observer_matrix(const AdrcDesign1& d) {
    Matrix a(2, 2);
    a << -d.l1, 1.0,
         -d.l2, 0.0;
    return a;
}

Matrix observer_matrix(const AdrcDesign2& d) {
    Matrix a(3, 3);
    a << -d.l1, 1.0, 0.0,
         -d.l2, 0.0, 1.0,
         -d.l3, 0.0, 0.0;
    return a;
}

ControllerChannels extract_cr_cy(const TwoInputController& c) {
    return {ss_to_tf(c.ss, TwoInputController::kReference, 0),
            -ss_to_tf(c.ss, TwoInputController::kMeasurement, 0)};
}

}  // namespace adrcpid
