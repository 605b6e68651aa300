#include "adrcpid/pid_equiv.hpp"

#include <cmath>
#include <stdexcept>

namespace adrcpid {

PifParams pif_from_adrc(const AdrcDesign1& d) {
    const double g = d.g;
    const double ts = d.ts;
    const double kp = (4.0 * g * g + 8.0 * g) / (d.b0 * ts * (2.0 * g + 1.0));
    const double ki = 16.0 * g * g / (d.b0 * ts * ts * (2.0 * g + 1.0));
    const double tf = ts / (8.0 * g + 4.0);
    return {kp, ki, tf, d.kp / (d.b0 * kp)};
}

PidfParams pidf_from_adrc(const AdrcDesign2& d) {
    const double g = d.g;
    const double ts = d.ts;
    const double q = 3.0 * g * g + 6.0 * g + 1.0;
    const double root = std::sqrt(q);
    const double kp = (72.0 * g * g * g + 108.0 * g * g) / (d.b0 * ts * ts * q);
    const double ki = 216.0 * g * g * g / (d.b0 * ts * ts * ts * q);
    const double kd = (6.0 * g * g * g + 36.0 * g * g + 18.0 * g) / (d.b0 * ts * q);
    const double tf = ts / (6.0 * root);
    const double damping = (3.0 * g + 2.0) / (2.0 * root);
    return {kp, ki, kd, tf, damping, 36.0 / (d.b0 * ts * ts * kp)};
}

namespace {

const std::vector<std::string> kInputs{"r", "y"};
const std::vector<std::string> kOutputs{"u"};

}  // namespace

TwoInputController build_pif_controller(const PifParams& p) {
    if (!(p.tf > 0.0)) throw std::invalid_argument("Tf must be > 0");
    Matrix a(2, 2), b(2, 2), c(1, 2), d(1, 2);
    a << 0.0, -p.ki / p.tf,
         0.0, -1.0 / p.tf;
    b << p.ki, 0.0,
         0.0, 1.0;
    c << 1.0, -p.kp / p.tf;
    d << p.b * p.kp, 0.0;
    return TwoInputController({a, b, c, d, kInputs, kOutputs});
}

TwoInputController build_pidf_controller(const PidfParams& p) {
    if (!(p.tf > 0.0)) throw std::invalid_argument("Tf must be > 0");
    if (!(p.d > 0.0)) throw std::invalid_argument("d must be > 0");
    const double w2 = 1.0 / (p.tf * p.tf);
    Matrix a(3, 3), b(3, 2), c(1, 3), d(1, 2);
    a << 0.0, 0.0, 1.0,
         1.0, 0.0, 0.0,
         -w2, 0.0, -2.0 * p.d / p.tf;
    b << 0.0, 0.0,
         1.0, 0.0,
         0.0, -w2;
    c << p.kp, p.ki, p.kd;
    d << p.b * p.kp, 0.0;
    return TwoInputController({a, b, c, d, kInputs, kOutputs});
}

TransferFunction feedback_tf(const PifParams& p) {
    return {Polynomial{p.ki, p.kp}, Polynomial{0.0, 1.0, p.tf}};
}

TransferFunction feedback_tf(const PidfParams& p) {
    return {Polynomial{p.ki, p.kp, p.kd}, Polynomial{0.0, 1.0, 2.0 * p.d * p.tf, p.tf * p.tf}};
}

TransferFunction reference_tf(const PifParams& p) {
    return {Polynomial{p.ki, p.b * p.kp}, Polynomial{0.0, 1.0}};
}

TransferFunction reference_tf(const PidfParams& p) {
    return {Polynomial{p.ki, p.b * p.kp}, Polynomial{0.0, 1.0}};
}

TwoInputController realize_two_input(const TransferFunction& cr, const TransferFunction& cy) {
    if (!cr.is_proper() || !cy.is_proper()) throw std::invalid_argument("controller channels must be proper");
    const bool shared = cr.den().coeffs() == cy.den().coeffs();
    const Polynomial den = shared ? cr.den() : cr.den() * cy.den();
    const Polynomial num_r = shared ? cr.num() : cr.num() * cy.den();
    const Polynomial num_y = shared ? -cy.num() : -(cy.num() * cr.den());

    const int n = den.degree();
    const auto un = static_cast<std::size_t>(n);
    const double dr = num_r[un];
    const double dy = num_y[un];
    Matrix a = Matrix::Zero(n, n), b(n, 2), c = Matrix::Zero(1, n), d(1, 2);
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(n - 1 - i);
        a(i, 0) = -den[k];
        if (i + 1 < n) a(i, i + 1) = 1.0;
        b(i, 0) = num_r[k] - dr * den[k];
        b(i, 1) = num_y[k] - dy * den[k];
    }
    if (n > 0) c(0, 0) = 1.0;
    d << dr, dy;
    return TwoInputController({a, b, c, d, kInputs, kOutputs});
}

TwoInputController build_compare_pid(const ComparePid& p) {
    if (p.tf < 0.0) throw std::invalid_argument("Tf must be >= 0");
    if (p.kd != 0.0 && p.tf == 0.0) throw std::invalid_argument("a derivative term needs Tf > 0");
    const TransferFunction cr{Polynomial{p.ki, p.b * p.kp}, Polynomial{0.0, 1.0}};
    TransferFunction cy{Polynomial{p.ki, p.kp}, Polynomial{0.0, 1.0}};
    if (p.kd != 0.0) cy = cy + TransferFunction{Polynomial{0.0, p.kd}, Polynomial{1.0, p.tf}};
    return realize_two_input(cr, cy);
}

namespace {

constexpr double kLowOmega = 1e-6;
constexpr double kHighOmega = 1e6;
constexpr double kAsymptoteTolerance = 1e-4;

AsymptotePair pair_of(Complex adrc, Complex equivalent) {
    return {adrc, equivalent, std::abs(adrc - equivalent) / std::abs(adrc)};
}

AsymptoteReport asymptotes(const TransferFunction& cr, const TransferFunction& kry) {
    const Complex lo(0.0, kLowOmega);
    const Complex hi(0.0, kHighOmega);
    return {pair_of(lo * cr.evaluate(lo), lo * kry.evaluate(lo)), pair_of(cr.evaluate(hi), kry.evaluate(hi)),
            kLowOmega, kHighOmega, kAsymptoteTolerance};
}

ReferenceGap gap(const TransferFunction& cr, const TransferFunction& kry, const std::vector<double>& omega) {
    check_grid(omega);
    ReferenceGap out{0.0, omega.front(), {omega, {}, {}}};
    std::vector<Complex> vr, vk, vg;
    for (double w : omega) {
        const Complex a = cr.at_frequency(w);
        const Complex b = kry.at_frequency(w);
        const double rel = std::abs(a - b) / std::abs(a);
        vr.push_back(a);
        vk.push_back(b);
        vg.emplace_back(rel);
        if (rel > out.sup) {
            out.sup = rel;
            out.omega_at_sup = w;
        }
    }
    out.table.add("C_r", std::move(vr));
    out.table.add("K_ry", std::move(vk));
    out.table.add("gap", std::move(vg));
    return out;
}

}  // namespace

AsymptoteReport verify_asymptotes(const AdrcDesign1& design, const PifParams& params) {
    return asymptotes(extract_cr_cy(build_first_order(design)).cr, reference_tf(params));
}

AsymptoteReport verify_asymptotes(const AdrcDesign2& design, const PidfParams& params) {
    return asymptotes(extract_cr_cy(build_second_order(design)).cr, reference_tf(params));
}

ReferenceGap reference_channel_gap(const AdrcDesign1& design, const PifParams& params,
                                   const std::vector<double>& omega) {
    return gap(extract_cr_cy(build_first_order(design)).cr, reference_tf(params), omega);
}

ReferenceGap reference_channel_gap(const AdrcDesign2& design, const PidfParams& params,
                                   const std::vector<double>& omega) {
    return gap(extract_cr_cy(build_second_order(design)).cr, reference_tf(params), omega);
}

}  // namespace adrcpid
