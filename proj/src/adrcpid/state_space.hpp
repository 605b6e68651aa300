#pragma once

#include "adrcpid/transfer_function.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace adrcpid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Continuous-time LTI model  x' = A x + B u,  y = C x + D u.
/// A model with zero states is a static gain D.
struct StateSpaceModel {
    Matrix A;
    Matrix B;
    Matrix C;
    Matrix D;
    std::vector<std::string> input_labels;
    std::vector<std::string> output_labels;

    StateSpaceModel() = default;
    /// Throws std::invalid_argument on inconsistent dimensions. Labels default
    /// to u0.., y0.. when empty.
    StateSpaceModel(Matrix a, Matrix b, Matrix c, Matrix d, std::vector<std::string> inputs = {},
                    std::vector<std::string> outputs = {});

    int states() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(B.cols()); }
    int outputs() const { return static_cast<int>(C.rows()); }

    int input_index(const std::string& label) const;
    int output_index(const std::string& label) const;

    /// Eigenvalues of A.
    std::vector<Complex> poles() const;
    bool is_stable() const;
};

/// Scalar channel C(sI - A)^{-1}B + D via Faddeev-LeVerrier: the
/// characteristic polynomial and the adjugate coefficients come out of the
/// same recursion, so num = C adj(sI - A) B + D det(sI - A).
TransferFunction ss_to_tf(const StateSpaceModel& m, int input, int output);

/// det(sI - A) by the same recursion.
Polynomial characteristic_polynomial(const Matrix& a);

/// Controllable canonical realization. Throws std::invalid_argument for an
/// improper transfer function.
StateSpaceModel tf_to_ss(const TransferFunction& g);

/// Direct evaluation C(sI - A)^{-1}B + D at a complex point by an LU solve.
Complex evaluate(const StateSpaceModel& m, int input, int output, Complex s);

}  // namespace adrcpid
