#include "adrcpid/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adrcpid {

Polynomial::Polynomial() : coeffs_{0.0} {}

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int k, double c) {
    if (k < 0) throw std::invalid_argument("monomial power must be >= 0");
    std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, double leading) {
    std::vector<Complex> acc{Complex(1.0)};
    for (const Complex& r : roots) {
        std::vector<Complex> next(acc.size() + 1, Complex(0.0));
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] += acc[k];
            next[k] -= r * acc[k];
        }
        acc = std::move(next);
    }
    std::vector<double> real(acc.size());
    std::transform(acc.begin(), acc.end(), real.begin(),
                   [leading](const Complex& c) { return leading * c.real(); });
    return Polynomial(std::move(real));
}

void Polynomial::trim() {
    if (coeffs_.empty()) {
        coeffs_.push_back(0.0);
        return;
    }
    const double cutoff = kTrimTolerance * max_abs();
    while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= cutoff) coeffs_.pop_back();
    for (double& c : coeffs_)
        if (c == 0.0) c = 0.0;  // drop negative zeros
}

double Polynomial::max_abs() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex Polynomial::evaluate(Complex s) const {
    Complex acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double Polynomial::evaluate(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

namespace {

Complex evaluate_derivative(const std::vector<double>& c, Complex s) {
    Complex acc(0.0);
    for (std::size_t k = c.size() - 1; k >= 1; --k) acc = acc * s + static_cast<double>(k) * c[k];
    return acc;
}

}  // namespace

std::vector<Complex> Polynomial::roots() const {
    if (degree() < 1) throw std::domain_error("roots of a constant polynomial");

    std::vector<Complex> out;
    std::size_t lo = 0;
    while (coeffs_[lo] == 0.0) {
        out.emplace_back(0.0);
        ++lo;
    }
    const int n = static_cast<int>(coeffs_.size() - 1 - lo);
    if (n == 0) return out;

    // Companion matrix of the deflated monic polynomial.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = coeffs_.back();
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[lo + static_cast<std::size_t>(i)] / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue solve failed");

    std::vector<double> reduced(coeffs_.begin() + static_cast<std::ptrdiff_t>(lo), coeffs_.end());
    const Polynomial q(reduced);
    for (int i = 0; i < n; ++i) {
        Complex z = solver.eigenvalues()[i];
        double residual = std::abs(q.evaluate(z));
        for (int iter = 0; iter < 3 && residual > 0.0; ++iter) {
            const Complex dp = evaluate_derivative(reduced, z);
            if (dp == Complex(0.0)) break;
            const Complex candidate = z - q.evaluate(z) / dp;
            const double r = std::abs(q.evaluate(candidate));
            if (!(r < residual)) break;
            z = candidate;
            residual = r;
        }
        out.push_back(z);
    }
    return out;
}

Polynomial Polynomial::operator-() const { return *this * -1.0; }

Polynomial& Polynomial::operator*=(double c) {
    *this = *this * c;
    return *this;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, double c) {
    std::vector<double> v = a.coeffs_;
    for (double& x : v) x *= c;
    return Polynomial(std::move(v));
}

double coefficient_mismatch(const Polynomial& a, const Polynomial& b) {
    const double floor = Polynomial::kTrimTolerance * std::max(a.max_abs(), b.max_abs());
    const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double diff = std::abs(a[k] - b[k]);
        if (diff <= floor) continue;
        worst = std::max(worst, diff / std::max(std::abs(a[k]), std::abs(b[k])));
    }
    return worst;
}

}  // namespace adrcpid
