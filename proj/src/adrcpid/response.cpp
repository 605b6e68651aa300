#include "adrcpid/response.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adrcpid {

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("log_grid needs 0 < lo < hi and n >= 2");
    std::vector<double> w(static_cast<std::size_t>(n));
    const double a = std::log10(lo);
    const double step = (std::log10(hi) - a) / (n - 1);
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = std::pow(10.0, a + step * i);
    w.front() = lo;
    w.back() = hi;
    return w;
}

void check_grid(const std::vector<double>& omega) {
    if (omega.empty()) throw std::invalid_argument("empty frequency grid");
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (!(omega[i] > 0.0)) throw std::invalid_argument("frequency grid must be positive");
        if (i > 0 && !(omega[i] > omega[i - 1])) throw std::invalid_argument("frequency grid must be increasing");
    }
}

const std::vector<Complex>& FrequencyResponseTable::channel(const std::string& name) const {
    auto it = std::find(channels.begin(), channels.end(), name);
    if (it == channels.end()) throw std::out_of_range("no channel named " + name);
    return values[static_cast<std::size_t>(it - channels.begin())];
}

void FrequencyResponseTable::add(std::string name, std::vector<Complex> v) {
    if (v.size() != omega.size()) throw std::invalid_argument("channel length does not match grid");
    channels.push_back(std::move(name));
    values.push_back(std::move(v));
}

FrequencyResponseTable freq_response(const TransferFunction& g, const std::vector<double>& omega,
                                     const std::string& name) {
    check_grid(omega);
    FrequencyResponseTable table{omega, {}, {}};
    std::vector<Complex> v;
    v.reserve(omega.size());
    for (double w : omega) v.push_back(g.at_frequency(w));
    table.add(name, std::move(v));
    return table;
}

FrequencyResponseTable freq_response(const StateSpaceModel& m, int input, int output,
                                     const std::vector<double>& omega, const std::string& name) {
    check_grid(omega);
    FrequencyResponseTable table{omega, {}, {}};
    std::vector<Complex> v;
    v.reserve(omega.size());
    for (double w : omega) v.push_back(evaluate(m, input, output, Complex(0.0, w)));
    table.add(name, std::move(v));
    return table;
}

const std::vector<double>& StepResponseTable::column(const std::string& name) const {
    for (const auto& [label, data] : columns)
        if (label == name) return data;
    throw std::out_of_range("no column named " + name);
}

std::pair<Matrix, Matrix> zoh_discretize(const Matrix& a, const Matrix& b, double h) {
    const auto n = a.rows();
    const auto m = b.cols();
    if (n == 0) return {Matrix(0, 0), Matrix(0, m)};
    Matrix aug = Matrix::Zero(n + m, n + m);
    aug.topLeftCorner(n, n) = a * h;
    aug.topRightCorner(n, m) = b * h;
    const Matrix e = aug.exp();
    return {e.topLeftCorner(n, n), e.topRightCorner(n, m)};
}

StepResponseTable step_response(const StateSpaceModel& m, int input, double t_end, int n_steps) {
    if (input < 0 || input >= m.inputs()) throw std::out_of_range("input index out of range");
    if (!(t_end > 0.0) || n_steps < 2) throw std::invalid_argument("step_response needs t_end > 0 and n_steps >= 2");

    const double h = t_end / n_steps;
    StepResponseTable table;
    table.t.resize(static_cast<std::size_t>(n_steps) + 1);
    for (int k = 0; k <= n_steps; ++k) table.t[static_cast<std::size_t>(k)] = k * h;

    const int n = m.states();
    const auto [phi, gamma] = zoh_discretize(m.A, m.B.col(input), h);

    std::vector<std::vector<double>> out(static_cast<std::size_t>(m.outputs()),
                                         std::vector<double>(table.t.size()));
    Vector x = Vector::Zero(n);
    const Vector feedthrough = m.D.col(input);
    for (std::size_t k = 0; k < table.t.size(); ++k) {
        const Vector y = m.C * x + feedthrough;
        for (int o = 0; o < m.outputs(); ++o) out[static_cast<std::size_t>(o)][k] = y(o);
        if (n > 0) x = phi * x + gamma.col(0);
    }
    for (int o = 0; o < m.outputs(); ++o)
        table.columns.emplace_back(m.output_labels[static_cast<std::size_t>(o)],
                                   std::move(out[static_cast<std::size_t>(o)]));
    return table;
}

}  // namespace adrcpid
