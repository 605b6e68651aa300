#pragma once

#include "adrcpid/state_space.hpp"

namespace adrcpid {

/// Controller with inputs ordered [r, y] and the single output u.
/// Transfer r->u is C_r and y->u is -C_y.
struct TwoInputController {
    StateSpaceModel ss;

    static constexpr int kReference = 0;
    static constexpr int kMeasurement = 1;

    /// Throws std::invalid_argument unless the model has exactly two inputs and one output.
    explicit TwoInputController(StateSpaceModel model);
};

/// First-order linear ADRC tuned by the bandwidth rule.
///
/// Closed-loop pole at -K_P = -4/T_s, observer poles both at -g*K_P.
struct AdrcDesign1 {
    double ts;  ///< desired settling time [s]
    double g;   ///< observer pole multiplier
    double b0;  ///< characteristic plant gain, K/T for K/(Ts+1)
    double kp;  ///< state-feedback gain K_P [1/s]
    double l1;  ///< observer gain [1/s]
    double l2;  ///< observer gain [1/s^2]
};

/// Second-order linear ADRC: closed-loop poles at -omega_cl (double),
/// observer poles at -g*omega_cl (triple).
struct AdrcDesign2 {
    double ts;
    double g;
    double b0;
    double omega_cl;  ///< 6/T_s
    double kp;        ///< omega_cl^2
    double kd;        ///< 2 omega_cl
    double l1;
    double l2;
    double l3;
};

/// Throws std::invalid_argument for ts <= 0, g <= 0 or b0 == 0 (or non-finite values).
AdrcDesign1 tune_first_order(double ts, double g, double b0);
AdrcDesign2 tune_second_order(double ts, double g, double b0);

/// Observer with the control law substituted in:
///   x1' = -(l1 + K_P) x1 + K_P r + l1 y
///   x2' = -l2 x1 + l2 y
///   u   = (K_P r - K_P x1 - x2) / b0
TwoInputController build_first_order(const AdrcDesign1& design);

/// Three-state extended observer with u = (K_P (r - x1) - K_D x2 - x3) / b0 substituted.
TwoInputController build_second_order(const AdrcDesign2& design);

/// Observer matrix A - L C of the uncontrolled extended state observer.
Matrix observer_matrix(const AdrcDesign1& design);
Matrix observer_matrix(const AdrcDesign2& design);

struct ControllerChannels {
    TransferFunction cr;  ///< r -> u
    TransferFunction cy;  ///< -(y -> u)
};

ControllerChannels extract_cr_cy(const TwoInputController& c);

}  // namespace adrcpid
