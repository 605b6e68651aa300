#pragma once

#include "adrcpid/adrc.hpp"
#include "adrcpid/response.hpp"

namespace adrcpid {

/// PI controller with set-point weight and a first-order measurement filter:
///   u = kp (b r - y_f) + ki (r - y_f) / s,   y_f = y / (Tf s + 1)
struct PifParams {
    double kp;
    double ki;
    double tf;
    double b;
};

/// PID controller with set-point weight b on the proportional term, zero
/// set-point weight on the derivative term, and a second-order filter:
///   u = kp (b r - y_f) + ki (r - y_f) / s - kd s y_f
///   y_f = y / (Tf^2 s^2 + 2 d Tf s + 1)
struct PidfParams {
    double kp;
    double ki;
    double kd;
    double tf;
    double d;
    double b;
};

PifParams pif_from_adrc(const AdrcDesign1& design);
PidfParams pidf_from_adrc(const AdrcDesign2& design);

/// States [integrator, Tf * y_f]:
///   x1' = -(ki/Tf) x2 + ki r
///   x2' = -(1/Tf) x2 + y
///   u   = x1 - (kp/Tf) x2 + b kp r
TwoInputController build_pif_controller(const PifParams& p);

/// States [-y_f, integral of (r - y_f), -y_f'] with u = [kp ki kd] x + b kp r.
TwoInputController build_pidf_controller(const PidfParams& p);

/// Closed-form channels of the equivalent controllers.
/// feedback_tf is C_y (so y->u is its negative); reference_tf is b kp + ki/s.
TransferFunction feedback_tf(const PifParams& p);
TransferFunction feedback_tf(const PidfParams& p);
TransferFunction reference_tf(const PifParams& p);
TransferFunction reference_tf(const PidfParams& p);

/// Realize [C_r, -C_y] as one two-input controller in observable canonical
/// form over the shared denominator. Both channels must be proper.
TwoInputController realize_two_input(const TransferFunction& cr, const TransferFunction& cy);

/// Generic 2DOF PID for user-supplied comparisons:
///   u = kp (b r - y) + ki (r - y)/s - kd s/(Tf s + 1) y
/// Tf may be zero only when kd is zero.
struct ComparePid {
    double kp;
    double ki;
    double kd;
    double tf;
    double b;

    bool operator==(const ComparePid&) const = default;
};

TwoInputController build_compare_pid(const ComparePid& p);

struct AsymptotePair {
    Complex adrc;
    Complex equivalent;
    double mismatch;  ///< |adrc - equivalent| / |adrc|
};

struct AsymptoteReport {
    AsymptotePair low;   ///< s C_r(s) and s K_ry(s) at omega = low_omega
    AsymptotePair high;  ///< C_r(s) and K_ry(s) at omega = high_omega
    double low_omega;
    double high_omega;
    double tolerance;

    bool passed() const { return low.mismatch < tolerance && high.mismatch < tolerance; }
};

AsymptoteReport verify_asymptotes(const AdrcDesign1& design, const PifParams& params);
AsymptoteReport verify_asymptotes(const AdrcDesign2& design, const PidfParams& params);

struct ReferenceGap {
    double sup;          ///< max over the grid of |C_r - K_ry| / |C_r|
    double omega_at_sup;
    FrequencyResponseTable table;  ///< channels "C_r", "K_ry", "gap" (gap stored as a real value)
};

ReferenceGap reference_channel_gap(const AdrcDesign1& design, const PifParams& params, const std::vector<double>& omega);
ReferenceGap reference_channel_gap(const AdrcDesign2& design, const PidfParams& params, const std::vector<double>& omega);

}  // namespace adrcpid
