#include "adrcpid/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace adrcpid {

TransferFunction::TransferFunction() : num_{1.0}, den_{1.0} {}

TransferFunction::TransferFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("transfer function denominator is zero");
    const double lead = den_.leading();
    if (lead != 1.0) {
        num_ *= 1.0 / lead;
        den_ *= 1.0 / lead;
    }
}

TransferFunction TransferFunction::gain(double k) { return {Polynomial{k}, Polynomial{1.0}}; }

TransferFunction TransferFunction::integrator() { return {Polynomial{1.0}, Polynomial{0.0, 1.0}}; }

Complex TransferFunction::evaluate(Complex s) const { return num_.evaluate(s) / den_.evaluate(s); }

std::vector<Complex> TransferFunction::poles() const { return den_.roots(); }

std::vector<Complex> TransferFunction::zeros() const {
    if (num_.degree() < 1) return {};
    return num_.roots();
}

bool TransferFunction::is_stable() const {
    const auto p = poles();
    return std::all_of(p.begin(), p.end(), [](const Complex& z) { return z.real() < 0.0; });
}

TransferFunction TransferFunction::operator-() const { return {-num_, den_}; }

TransferFunction TransferFunction::reciprocal() const {
    if (num_.is_zero()) throw std::domain_error("reciprocal of a zero transfer function");
    return {den_, num_};
}

TransferFunction operator*(const TransferFunction& a, const TransferFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

TransferFunction operator+(const TransferFunction& a, const TransferFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

TransferFunction operator-(const TransferFunction& a, const TransferFunction& b) { return a + (-b); }

TransferFunction operator*(const TransferFunction& a, double k) { return {a.num_ * k, a.den_}; }

namespace {

struct RootSet {
    int zeros_at_origin = 0;
    std::vector<Complex> rest;
};

// Roots at the origin are counted from exact trailing zero coefficients so
// that integrators cancel exactly.
RootSet split_roots(const Polynomial& p) {
    RootSet out;
    if (p.degree() < 1) return out;
    std::size_t lo = 0;
    while (p[lo] == 0.0) ++lo;
    out.zeros_at_origin = static_cast<int>(lo);
    if (static_cast<int>(lo) < p.degree()) {
        std::vector<double> reduced(p.coeffs().begin() + static_cast<std::ptrdiff_t>(lo), p.coeffs().end());
        out.rest = Polynomial(std::move(reduced)).roots();
    }
    return out;
}

Polynomial rebuild(int origin, const std::vector<Complex>& roots, double leading) {
    Polynomial p = Polynomial::from_roots(roots, leading);
    return origin > 0 ? p * Polynomial::monomial(origin) : p;
}

}  // namespace

TransferFunction minreal(const TransferFunction& g, double tol) {
    if (tol < 0.0) throw std::invalid_argument("minreal tolerance must be >= 0");
    if (g.num().is_zero()) return TransferFunction(Polynomial{0.0}, Polynomial{1.0});

    RootSet zs = split_roots(g.num());
    RootSet ps = split_roots(g.den());

    const int common_origin = std::min(zs.zeros_at_origin, ps.zeros_at_origin);
    zs.zeros_at_origin -= common_origin;
    ps.zeros_at_origin -= common_origin;
    bool changed = common_origin > 0;

    std::vector<bool> zero_used(zs.rest.size(), false);
    std::vector<bool> pole_used(ps.rest.size(), false);
    for (;;) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < zs.rest.size(); ++i) {
            if (zero_used[i]) continue;
            for (std::size_t j = 0; j < ps.rest.size(); ++j) {
                if (pole_used[j]) continue;
                const double d = std::abs(zs.rest[i] - ps.rest[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (!(best <= tol)) break;
        zero_used[bi] = true;
        pole_used[bj] = true;
        changed = true;
    }
    if (!changed) return g;

    std::vector<Complex> zr, pr;
    for (std::size_t i = 0; i < zs.rest.size(); ++i)
        if (!zero_used[i]) zr.push_back(zs.rest[i]);
    for (std::size_t j = 0; j < ps.rest.size(); ++j)
        if (!pole_used[j]) pr.push_back(ps.rest[j]);

    return {rebuild(zs.zeros_at_origin, zr, g.num().leading()), rebuild(ps.zeros_at_origin, pr, 1.0)};
}

double tf_mismatch(const TransferFunction& a, const TransferFunction& b) {
    return std::max(coefficient_mismatch(a.num(), b.num()), coefficient_mismatch(a.den(), b.den()));
}

TransferFunction feedback_unity(const TransferFunction& forward, const TransferFunction& loop) {
    return {forward.num() * loop.den(), forward.den() * (loop.den() + loop.num())};
}

}  // namespace adrcpid
