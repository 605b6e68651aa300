#include "adrcpid/state_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace adrcpid {

StateSpaceModel::StateSpaceModel(Matrix a, Matrix b, Matrix c, Matrix d, std::vector<std::string> in_labels,
                                 std::vector<std::string> out_labels)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)), input_labels(std::move(in_labels)),
      output_labels(std::move(out_labels)) {
    const auto n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("A must be square");
    if (B.rows() != n || C.cols() != n) throw std::invalid_argument("B/C do not match the state dimension");
    if (B.cols() < 1 || C.rows() < 1) throw std::invalid_argument("model needs at least one input and one output");
    if (D.rows() != C.rows() || D.cols() != B.cols()) throw std::invalid_argument("D has the wrong shape");
    if (input_labels.empty())
        for (int i = 0; i < inputs(); ++i) input_labels.push_back("u" + std::to_string(i));
    if (output_labels.empty())
        for (int i = 0; i < outputs(); ++i) output_labels.push_back("y" + std::to_string(i));
    if (static_cast<int>(input_labels.size()) != inputs() || static_cast<int>(output_labels.size()) != outputs())
        throw std::invalid_argument("label count does not match model dimensions");
}

int StateSpaceModel::input_index(const std::string& label) const {
    auto it = std::find(input_labels.begin(), input_labels.end(), label);
    if (it == input_labels.end()) throw std::out_of_range("no input named " + label);
    return static_cast<int>(it - input_labels.begin());
}

int StateSpaceModel::output_index(const std::string& label) const {
    auto it = std::find(output_labels.begin(), output_labels.end(), label);
    if (it == output_labels.end()) throw std::out_of_range("no output named " + label);
    return static_cast<int>(it - output_labels.begin());
}

std::vector<Complex> StateSpaceModel::poles() const {
    if (states() == 0) return {};
    Eigen::EigenSolver<Matrix> solver(A, false);
    std::vector<Complex> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
    return out;
}

bool StateSpaceModel::is_stable() const {
    const auto p = poles();
    return std::all_of(p.begin(), p.end(), [](const Complex& z) { return z.real() < 0.0; });
}

static void check_channel(const StateSpaceModel& m, int input, int output) {
    if (input < 0 || input >= m.inputs()) throw std::out_of_range("input index out of range");
    if (output < 0 || output >= m.outputs()) throw std::out_of_range("output index out of range");
}

TransferFunction ss_to_tf(const StateSpaceModel& m, int input, int output) {
    check_channel(m, input, output);
    const int n = m.states();
    const double d = m.D(output, input);
    if (n == 0) return TransferFunction::gain(d);

    // adj(sI - A) = sum_{k=1..n} M_k s^{n-k},  det(sI - A) = sum_k c_k s^{n-k}
    // M_1 = I, c_k = -tr(A M_k)/k, M_{k+1} = A M_k + c_k I.
    const Vector b = m.B.col(input);
    const Eigen::RowVectorXd c = m.C.row(output);
    std::vector<double> charpoly(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> adj(static_cast<std::size_t>(n), 0.0);
    charpoly[static_cast<std::size_t>(n)] = 1.0;

    Matrix mk = Matrix::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        adj[static_cast<std::size_t>(n - k)] = c * mk * b;
        const Matrix amk = m.A * mk;
        const double ck = -amk.trace() / k;
        charpoly[static_cast<std::size_t>(n - k)] = ck;
        mk = amk + ck * Matrix::Identity(n, n);
    }

    std::vector<double> num(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) num[k] = d * charpoly[k];
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) num[k] += adj[k];
    return {Polynomial(std::move(num)), Polynomial(std::move(charpoly))};
}

Polynomial characteristic_polynomial(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("characteristic polynomial needs a square matrix");
    const int n = static_cast<int>(a.rows());
    std::vector<double> charpoly(static_cast<std::size_t>(n) + 1, 0.0);
    charpoly[static_cast<std::size_t>(n)] = 1.0;
    Matrix mk = Matrix::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        const Matrix amk = a * mk;
        const double ck = -amk.trace() / k;
        charpoly[static_cast<std::size_t>(n - k)] = ck;
        mk = amk + ck * Matrix::Identity(n, n);
    }
    return Polynomial(std::move(charpoly));
}

StateSpaceModel tf_to_ss(const TransferFunction& g) {
    if (!g.is_proper()) throw std::invalid_argument("cannot realize an improper transfer function");
    const int n = g.den().degree();
    const double feedthrough = g.num().degree() == n ? g.num()[static_cast<std::size_t>(n)] : 0.0;
    Matrix d = Matrix::Constant(1, 1, feedthrough);
    if (n == 0) return {Matrix(0, 0), Matrix(0, 1), Matrix(1, 0), d};

    // den is monic; remainder num - D*den has degree < n.
    Matrix a = Matrix::Zero(n, n);
    Matrix b = Matrix::Zero(n, 1);
    Matrix c = Matrix::Zero(1, n);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) {
        a(n - 1, j) = -g.den()[static_cast<std::size_t>(j)];
        c(0, j) = g.num()[static_cast<std::size_t>(j)] - feedthrough * g.den()[static_cast<std::size_t>(j)];
    }
    b(n - 1, 0) = 1.0;
    return {a, b, c, d};
}

Complex evaluate(const StateSpaceModel& m, int input, int output, Complex s) {
    check_channel(m, input, output);
    const int n = m.states();
    Complex value = m.D(output, input);
    if (n == 0) return value;
    const Eigen::MatrixXcd lhs = s * Eigen::MatrixXcd::Identity(n, n) - m.A.cast<Complex>();
    const Eigen::VectorXcd x = lhs.partialPivLu().solve(m.B.col(input).cast<Complex>());
    return value + (m.C.row(output).cast<Complex>() * x)(0);
}

}  // namespace adrcpid
