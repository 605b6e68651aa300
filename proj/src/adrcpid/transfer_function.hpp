#pragma once

#include "adrcpid/polynomial.hpp"

#include <vector>

namespace adrcpid {

/// Continuous-time SISO rational transfer function num(s)/den(s).
///
/// Stored in canonical form: den is monic and num carries the same scale
/// factor. Arithmetic never cancels common factors implicitly; use
/// minreal() for that.
class TransferFunction {
public:
    /// Unity gain.
    TransferFunction();
    TransferFunction(Polynomial num, Polynomial den);

    static TransferFunction gain(double k);
    /// 1/s
    static TransferFunction integrator();

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_proper() const { return num_.degree() <= den_.degree() || num_.is_zero(); }
    bool is_strictly_proper() const { return num_.degree() < den_.degree() || num_.is_zero(); }

    Complex evaluate(Complex s) const;
    Complex at_frequency(double omega) const { return evaluate(Complex(0.0, omega)); }

    /// Roots of the denominator. Throws std::domain_error for a constant denominator.
    std::vector<Complex> poles() const;
    std::vector<Complex> zeros() const;
    bool is_stable() const;

    TransferFunction operator-() const;
    TransferFunction reciprocal() const;

    friend TransferFunction operator*(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator+(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator-(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator*(const TransferFunction& a, double k);
    friend TransferFunction operator*(double k, const TransferFunction& a) { return a * k; }

private:
    Polynomial num_;
    Polynomial den_;
};

/// Cancel numerator/denominator roots closer than tol (absolute distance).
/// Pairs are matched greedily, globally nearest first. If nothing cancels the
/// input is returned unchanged.
TransferFunction minreal(const TransferFunction& g, double tol);

/// Largest relative coefficient difference of the canonical forms; see
/// coefficient_mismatch(). Invariant under scaling num and den together.
double tf_mismatch(const TransferFunction& a, const TransferFunction& b);

/// 1/(1 + loop) built over a shared denominator so that
/// sensitivity + complementary == 1 holds coefficient-wise.
TransferFunction feedback_unity(const TransferFunction& forward, const TransferFunction& loop);

}  // namespace adrcpid
