#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace adrcpid {

using Complex = std::complex<double>;

/// Real polynomial in s with coefficients stored in ascending power order:
/// coeffs()[k] multiplies s^k. This is the only coefficient order used
/// anywhere in the library.
///
/// Construction trims negligible leading coefficients (magnitude at most
/// 1e-12 times the largest coefficient). The zero polynomial is {0}.
class Polynomial {
public:
    static constexpr double kTrimTolerance = 1e-12;

    Polynomial();
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double c);
    /// s^k
    static Polynomial monomial(int k, double c = 1.0);
    /// Monic polynomial with the given roots; conjugate pairs must both be present.
    static Polynomial from_roots(std::span<const Complex> roots, double leading = 1.0);

    const std::vector<double>& coeffs() const { return coeffs_; }
    double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double leading() const { return coeffs_.back(); }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    double max_abs() const;

    Complex evaluate(Complex s) const;
    double evaluate(double s) const;

    /// Roots from the companion matrix eigenvalues, refined by a few guarded
    /// Newton steps. Throws std::domain_error for degree < 1.
    std::vector<Complex> roots() const;

    Polynomial operator-() const;
    Polynomial& operator*=(double c);

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, double c);
    friend Polynomial operator*(double c, const Polynomial& a) { return a * c; }

private:
    void trim();

    std::vector<double> coeffs_;
};

/// Largest per-coefficient relative difference between two polynomials.
/// Differences at or below 1e-12 times the largest coefficient of either
/// operand count as zero; the rest are divided by max(|a_k|, |b_k|).
double coefficient_mismatch(const Polynomial& a, const Polynomial& b);

}  // namespace adrcpid
