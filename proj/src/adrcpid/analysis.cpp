#include "adrcpid/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace adrcpid {

TransferFunction PlantModel::tf() const {
    if (!(t > 0.0)) throw std::invalid_argument("plant time constant must be > 0");
    if (order == 1) return {Polynomial{k}, Polynomial{1.0, t}};
    if (order == 2) return {Polynomial{k}, Polynomial{1.0, 2.0 * d * t, t * t}};
    throw std::invalid_argument("plant order must be 1 or 2");
}

PlantModel PlantModel::with(const std::string& parameter, double value) const {
    PlantModel p = *this;
    if (parameter == "K")
        p.k = value;
    else if (parameter == "T")
        p.t = value;
    else if (parameter == "D")
        p.d = value;
    else
        throw std::invalid_argument("unknown plant parameter " + parameter);
    return p;
}

StateSpaceModel closed_loop(const StateSpaceModel& plant, const TwoInputController& c) {
    if (plant.inputs() != 1 || plant.outputs() != 1) throw std::invalid_argument("plant must be SISO");
    if (plant.D(0, 0) != 0.0) throw std::invalid_argument("plant feedthrough makes the loop algebraic");

    const auto& k = c.ss;
    const int np = plant.states();
    const int nc = k.states();
    const Matrix& ap = plant.A;
    const Vector bp = plant.B.col(0);
    const Eigen::RowVectorXd cp = plant.C.row(0);
    const Vector bcr = k.B.col(TwoInputController::kReference);
    const Vector bcy = k.B.col(TwoInputController::kMeasurement);
    const Eigen::RowVectorXd cc = k.C.row(0);
    const double dcr = k.D(0, TwoInputController::kReference);
    const double dcy = k.D(0, TwoInputController::kMeasurement);

    Matrix a = Matrix::Zero(np + nc, np + nc);
    Matrix b = Matrix::Zero(np + nc, 3);
    Matrix cm = Matrix::Zero(2, np + nc);
    Matrix d = Matrix::Zero(2, 3);

    a.topLeftCorner(np, np) = ap + dcy * bp * cp;
    a.topRightCorner(np, nc) = bp * cc;
    a.bottomLeftCorner(nc, np) = bcy * cp;
    a.bottomRightCorner(nc, nc) = k.A;

    b.block(0, 0, np, 1) = dcr * bp;
    b.block(0, 1, np, 1) = bp;
    b.block(0, 2, np, 1) = dcy * bp;
    b.block(np, 0, nc, 1) = bcr;
    b.block(np, 2, nc, 1) = bcy;

    cm.block(0, 0, 1, np) = cp;
    cm.block(1, 0, 1, np) = dcy * cp;
    cm.block(1, np, 1, nc) = cc;

    d(1, 0) = dcr;
    d(1, 2) = dcy;
    return {a, b, cm, d, {"r", "d_u", "n"}, {"y", "u"}};
}

StateSpaceModel closed_loop(const PlantModel& plant, const TwoInputController& c) {
    return closed_loop(tf_to_ss(plant.tf()), c);
}

const std::vector<std::string>& GangOfSeven::names() {
    static const std::vector<std::string> n{"S", "PS", "CS", "T", "SF_r", "PSF_r", "TF_r"};
    return n;
}

const TransferFunction& GangOfSeven::operator[](std::size_t i) const {
    switch (i) {
        case 0: return s;
        case 1: return ps;
        case 2: return cs;
        case 3: return t;
        case 4: return sf_r;
        case 5: return psf_r;
        case 6: return tf_r;
        default: throw std::out_of_range("gang-of-seven index");
    }
}

GangOfSeven gang_of_seven(const TransferFunction& plant, const ControllerChannels& c) {
    // All seven share the characteristic polynomial Pd Cd + Pn Cn.
    const Polynomial& pn = plant.num();
    const Polynomial& pd = plant.den();
    const Polynomial& cn = c.cy.num();
    const Polynomial& cd = c.cy.den();
    const Polynomial& rn = c.cr.num();
    const Polynomial& rd = c.cr.den();
    const Polynomial chi = pd * cd + pn * cn;

    // F = C_r / C_y = (rn cd) / (rd cn); the shared-denominator case collapses exactly.
    const bool shared = rd.coeffs() == cd.coeffs();
    const Polynomial f_num = shared ? rn : rn * cd;
    const Polynomial f_den = shared ? cn : rd * cn;

    auto reduce = [](const Polynomial& num, const Polynomial& den) {
        return minreal(TransferFunction(num, den), kGangMinrealTolerance);
    };
    return {reduce(pd * cd, chi),
            reduce(pn * cd, chi),
            reduce(cn * pd, chi),
            reduce(pn * cn, chi),
            reduce(pd * cd * f_num, chi * f_den),
            reduce(pn * cd * f_num, chi * f_den),
            shared ? reduce(pn * rn, chi) : reduce(pn * rn * cd, chi * rd)};
}

GangOfSeven gang_of_seven(const PlantModel& plant, const TwoInputController& c) {
    return gang_of_seven(plant.tf(), extract_cr_cy(c));
}

double sensitivity_identity_residual(const GangOfSeven& g) {
    const Polynomial num = g.s.num() * g.t.den() + g.t.num() * g.s.den();
    const Polynomial den = g.s.den() * g.t.den();
    return coefficient_mismatch(num, den);
}

void unwrap_degrees(std::vector<double>& phase) {
    for (std::size_t i = 1; i < phase.size(); ++i) {
        const double jump = phase[i] - phase[i - 1];
        phase[i] -= 360.0 * std::round(jump / 360.0);
    }
}

BodeData bode_set(const std::vector<NamedTransferFunction>& tfs, const std::vector<double>& omega) {
    check_grid(omega);
    BodeData out{omega, {}};
    for (const auto& [name, g] : tfs) {
        BodeCurve curve{name, {}, {}};
        for (double w : omega) {
            const Complex v = g.at_frequency(w);
            curve.magnitude.push_back(std::abs(v));
            curve.phase_deg.push_back(std::arg(v) * 180.0 / std::numbers::pi);
        }
        unwrap_degrees(curve.phase_deg);
        out.curves.push_back(std::move(curve));
    }
    return out;
}

namespace {

// Bisection in log10(omega) on a sign change of f between grid points a < b.
template <typename F>
double refine_root(F f, double a, double b) {
    double la = std::log10(a);
    double lb = std::log10(b);
    double fa = f(a);
    for (int i = 0; i < 80; ++i) {
        const double lm = 0.5 * (la + lb);
        const double fm = f(std::pow(10.0, lm));
        if ((fm < 0.0) == (fa < 0.0)) {
            la = lm;
            fa = fm;
        } else {
            lb = lm;
        }
    }
    return std::pow(10.0, 0.5 * (la + lb));
}

}  // namespace

LoopMargins loop_margins(const TransferFunction& loop, const std::vector<double>& omega) {
    check_grid(omega);
    constexpr double inf = std::numeric_limits<double>::infinity();
    LoopMargins m{inf, inf, std::numeric_limits<double>::quiet_NaN(), 0.0};

    auto log_mag = [&](double w) { return std::log(std::abs(loop.at_frequency(w))); };
    auto imag = [&](double w) { return loop.at_frequency(w).imag(); };

    for (std::size_t i = 0; i < omega.size(); ++i) {
        const Complex l = loop.at_frequency(omega[i]);
        m.max_sensitivity = std::max(m.max_sensitivity, 1.0 / std::abs(1.0 + l));
        if (i == 0) continue;
        const double w0 = omega[i - 1];
        const double w1 = omega[i];

        if (std::isnan(m.gain_crossover) && (log_mag(w0) > 0.0) != (log_mag(w1) > 0.0)) {
            const double wc = refine_root(log_mag, w0, w1);
            m.gain_crossover = wc;
            m.phase_margin_deg = 180.0 + std::arg(loop.at_frequency(wc)) * 180.0 / std::numbers::pi;
        }
        if ((imag(w0) > 0.0) != (imag(w1) > 0.0)) {
            const double wp = refine_root(imag, w0, w1);
            const Complex lp = loop.at_frequency(wp);
            if (lp.real() < 0.0) m.gain_margin = std::min(m.gain_margin, 1.0 / std::abs(lp));
        }
    }
    return m;
}

const SweepCase& SweepResult::at(std::size_t value_index, std::size_t controller_index) const {
    const std::size_t i = value_index * controllers.size() + controller_index;
    if (i >= cases.size()) throw std::out_of_range("sweep case index");
    return cases[i];
}

SweepResult step_sweep(const PlantModel& nominal, const std::string& parameter, const std::vector<double>& values,
                       const std::vector<NamedController>& controllers, double t_end, int n_steps) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    if (controllers.empty()) throw std::invalid_argument("sweep needs at least one controller");
    SweepResult out{parameter, values, {}, {}};
    for (const auto& c : controllers) out.controllers.push_back(c.name);

    for (std::size_t v = 0; v < values.size(); ++v) {
        const PlantModel plant = nominal.with(parameter, values[v]);
        for (std::size_t c = 0; c < controllers.size(); ++c) {
            const StateSpaceModel loop = closed_loop(plant, controllers[c].controller);
            out.cases.push_back({v, c, loop.is_stable(), step_response(loop, loop.input_index("r"), t_end, n_steps)});
        }
    }
    return out;
}

double settling_time(const std::vector<double>& t, const std::vector<double>& y, double target, double band) {
    if (t.size() != y.size() || t.empty()) throw std::invalid_argument("settling_time needs matching nonempty traces");
    const double limit = band * std::abs(target);
    std::size_t k = y.size();
    while (k > 0 && std::abs(y[k - 1] - target) <= limit) --k;
    if (k == y.size()) return std::numeric_limits<double>::infinity();
    return t[k];
}

}  // namespace adrcpid
