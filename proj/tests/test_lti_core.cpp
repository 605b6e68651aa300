#include "oracles.hpp"

#include "adrcpid/response.hpp"
#include "adrcpid/state_space.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace adrcpid;

namespace {

TransferFunction tf(std::initializer_list<double> num, std::initializer_list<double> den) {
    return {Polynomial(num), Polynomial(den)};
}

void require_coeffs(const Polynomial& p, std::vector<double> expected, double tol = 1e-12) {
    REQUIRE(p.coeffs().size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(p[k] == doctest::Approx(expected[k]).epsilon(tol));
}

}  // namespace

TEST_SUITE("polynomial") {
    TEST_CASE("trim drops negligible leading terms and keeps the zero polynomial") {
        CHECK(Polynomial{1.0, 2.0, 1e-14}.degree() == 1);
        CHECK(Polynomial{0.0, 0.0}.is_zero());
        CHECK(Polynomial{}.is_zero());
        CHECK(Polynomial{3.0}.degree() == 0);
    }

    TEST_CASE("arithmetic in ascending order") {
        const Polynomial a{1.0, 1.0};
        const Polynomial b{2.0, 1.0};
        require_coeffs(a * b, {2.0, 3.0, 1.0});
        require_coeffs(a + b, {3.0, 2.0});
        CHECK((a - a).is_zero());
        CHECK(Polynomial::monomial(3, 2.0).degree() == 3);
        CHECK(a.evaluate(2.0) == 3.0);
    }

    TEST_CASE("roots of (s+a)(s+b) are recovered for random a, b") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> dist(std::log(0.1), std::log(100.0));
        for (int trial = 0; trial < 200; ++trial) {
            const double a = std::exp(dist(rng));
            const double b = std::exp(dist(rng));
            auto r = (Polynomial{a, 1.0} * Polynomial{b, 1.0}).roots();
            REQUIRE(r.size() == 2);
            std::sort(r.begin(), r.end(), [](Complex x, Complex y) { return x.real() < y.real(); });
            const double lo = std::min(a, b);
            const double hi = std::max(a, b);
            CHECK(std::abs(r[0] - Complex(-hi)) < 1e-9 * hi);
            CHECK(std::abs(r[1] - Complex(-lo)) < 1e-9 * hi);
        }
    }

    TEST_CASE("roots reject constants") { CHECK_THROWS_AS(Polynomial{2.0}.roots(), std::domain_error); }

    TEST_CASE("from_roots inverts roots") {
        const std::vector<Complex> r{Complex(-1.0, 2.0), Complex(-1.0, -2.0), Complex(-3.0)};
        require_coeffs(Polynomial::from_roots(r), {15.0, 11.0, 5.0, 1.0});
    }

    TEST_CASE("coefficient_mismatch is relative with a small absolute floor") {
        CHECK(coefficient_mismatch(Polynomial{1.0, 2.0}, Polynomial{1.0, 2.0}) == 0.0);
        CHECK(coefficient_mismatch(Polynomial{1.0, 2.0}, Polynomial{1.0, 2.2}) == doctest::Approx(0.2 / 2.2));
        CHECK(coefficient_mismatch(Polynomial{1e-20, 1.0}, Polynomial{0.0, 1.0}) == 0.0);
    }
}

TEST_SUITE("transfer function algebra") {
    TEST_CASE("multiply does not cancel") {
        const auto r = tf({1.0, 1.0}, {2.0, 1.0}) * tf({2.0, 1.0}, {1.0, 1.0});
        require_coeffs(r.num(), {2.0, 3.0, 1.0});
        require_coeffs(r.den(), {2.0, 3.0, 1.0});
        const auto ii = TransferFunction::integrator() * TransferFunction::integrator();
        require_coeffs(ii.den(), {0.0, 0.0, 1.0});
        const auto half = tf({4.0, 2.0}, {1.0, 1.0}) * 0.5;
        require_coeffs(half.num(), {2.0, 1.0});
    }

    TEST_CASE("add") {
        const auto pi = TransferFunction::gain(1.0) + TransferFunction::gain(2.0) * TransferFunction::integrator();
        require_coeffs(pi.num(), {2.0, 1.0});
        require_coeffs(pi.den(), {0.0, 1.0});
        const auto a = tf({1.0}, {1.0, 1.0});
        CHECK(tf_mismatch(a + TransferFunction::gain(0.0), a) == 0.0);
        const auto twice = a + a;
        require_coeffs(twice.den(), {1.0, 2.0, 1.0});
        const auto reduced = minreal(twice, 1e-9);
        require_coeffs(reduced.num(), {2.0});
        require_coeffs(reduced.den(), {1.0, 1.0});
    }

    TEST_CASE("canonical form makes the denominator monic") {
        const auto g = tf({2.0}, {4.0, 2.0});
        require_coeffs(g.num(), {1.0});
        require_coeffs(g.den(), {2.0, 1.0});
        CHECK_THROWS_AS(tf({1.0}, {0.0}), std::invalid_argument);
    }

    TEST_CASE("comparison is invariant under joint scaling") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (int trial = 0; trial < 50; ++trial) {
            const Polynomial n{u(rng), u(rng), u(rng)};
            const Polynomial d{u(rng), u(rng), 1.0 + std::abs(u(rng))};
            double c = u(rng);
            if (std::abs(c) < 0.1) c = 0.5;
            CHECK(tf_mismatch(TransferFunction(n, d), TransferFunction(n * c, d * c)) < 1e-14);
        }
    }

    TEST_CASE("minreal") {
        const auto g = tf({1.0, 2.0, 1.0}, {2.0, 3.0, 1.0});  // (s+1)^2 / ((s+1)(s+2))
        const auto r = minreal(g, 1e-9);
        require_coeffs(r.num(), {1.0, 1.0}, 1e-9);
        require_coeffs(r.den(), {2.0, 1.0}, 1e-9);

        const auto coprime = tf({1.0, 1.0}, {2.0, 1.0});
        CHECK(tf_mismatch(minreal(coprime, 1e-9), coprime) == 0.0);

        // (s + 1 + 1e-10) s / ((s + 1) s^2)
        const auto near = TransferFunction(Polynomial{1.0 + 1e-10, 1.0} * Polynomial{0.0, 1.0},
                                           Polynomial{1.0, 1.0} * Polynomial{0.0, 0.0, 1.0});
        const auto m = minreal(near, 1e-6);
        CHECK(m.den().degree() == 1);
        CHECK(m.num().degree() == 0);
        CHECK(std::abs(m.at_frequency(3.0) - Complex(0.0, -1.0 / 3.0)) < 1e-9);
    }

    TEST_CASE("poles and stability") {
        const auto stable = tf({1.0}, {1.0, 1.0});
        CHECK(stable.is_stable());
        CHECK(std::abs(stable.poles().at(0) - Complex(-1.0)) < 1e-14);
        const auto unstable = tf({1.0}, {-1.0, 1.0});
        CHECK_FALSE(unstable.is_stable());
        CHECK(std::abs(unstable.poles().at(0) - Complex(1.0)) < 1e-14);
        const auto dbl = tf({1.0}, {1.0, 2.0, 1.0});
        for (Complex p : dbl.poles()) CHECK(std::abs(p + 1.0) < 1e-7);
        CHECK_THROWS_AS(TransferFunction::gain(2.0).poles(), std::domain_error);
    }
}

TEST_SUITE("state space") {
    TEST_CASE("dimension validation") {
        CHECK_THROWS_AS(StateSpaceModel(Matrix::Zero(2, 2), Matrix::Zero(1, 1), Matrix::Zero(1, 2), Matrix::Zero(1, 1)),
                        std::invalid_argument);
    }

    TEST_CASE("ss_to_tf basics") {
        const StateSpaceModel integ(Matrix::Zero(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Zero(1, 1));
        const auto g = ss_to_tf(integ, 0, 0);
        require_coeffs(g.num(), {1.0});
        require_coeffs(g.den(), {0.0, 1.0});
        const StateSpaceModel lag(-Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Zero(1, 1));
        require_coeffs(ss_to_tf(lag, 0, 0).den(), {1.0, 1.0});
    }

    TEST_CASE("ss_to_tf matches a direct linear solve on random models") {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> logw(std::log(1e-2), std::log(1e3));
        for (int n = 1; n <= 6; ++n) {
            for (int trial = 0; trial < 10; ++trial) {
                const auto r = oracle::random_stable_model(rng, n);
                const StateSpaceModel m(r.a, r.b, r.c, r.d);
                const auto g = ss_to_tf(m, 0, 0);
                for (int k = 0; k < 20; ++k) {
                    const Complex s(0.0, std::exp(logw(rng)));
                    // Oracle: (sI - A) x = B solved by full-pivot LU on the complex system.
                    const Eigen::MatrixXcd lhs = s * Eigen::MatrixXcd::Identity(n, n) - r.a.cast<Complex>();
                    const Eigen::VectorXcd x = lhs.fullPivLu().solve(r.b.cast<Complex>());
                    const Complex expected = (r.c.cast<Complex>() * x)(0, 0) + r.d(0, 0);
                    CHECK(std::abs(g.evaluate(s) - expected) < 1e-8 * std::max(1.0, std::abs(expected)));
                }
            }
        }
    }

    TEST_CASE("frequency response of a model equals that of its transfer function") {
        std::mt19937_64 rng(99);
        const auto grid = log_grid(1e-2, 1e4, 600);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 1 + trial % 6;
            const auto r = oracle::random_stable_model(rng, n);
            const StateSpaceModel m(r.a, r.b, r.c, r.d);
            const auto direct = freq_response(m, 0, 0, grid);
            const auto via_tf = freq_response(ss_to_tf(m, 0, 0), grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const Complex a = direct.values[0][i];
                const Complex b = via_tf.values[0][i];
                CHECK(std::abs(a - b) <= 1e-8 * std::max(std::abs(a), 1e-12));
            }
        }
    }

    TEST_CASE("tf_to_ss") {
        const auto lag = tf_to_ss(tf({1.0}, {1.0, 1.0}));
        CHECK(lag.A(0, 0) == -1.0);
        CHECK(lag.B(0, 0) * lag.C(0, 0) == 1.0);
        CHECK(lag.D(0, 0) == 0.0);

        const auto biproper = tf_to_ss(tf({2.0, 1.0}, {1.0, 1.0}));
        CHECK(biproper.D(0, 0) == 1.0);
        CHECK(tf_mismatch(ss_to_tf(biproper, 0, 0), tf({1.0}, {1.0, 1.0}) + TransferFunction::gain(1.0)) < 1e-12);

        CHECK_THROWS_AS(tf_to_ss(tf({0.0, 0.0, 1.0}, {1.0, 1.0})), std::invalid_argument);
    }

    TEST_CASE("tf_to_ss round trip") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 1 + trial % 5;
            std::vector<double> num(static_cast<std::size_t>(n) + 1), den(static_cast<std::size_t>(n) + 1);
            for (auto& v : num) v = u(rng);
            for (auto& v : den) v = u(rng);
            den.back() = 1.0;
            const TransferFunction g{Polynomial(num), Polynomial(den)};
            CHECK(tf_mismatch(ss_to_tf(tf_to_ss(g), 0, 0), g) < 1e-9);
        }
    }
}

TEST_SUITE("responses") {
    TEST_CASE("log grid") {
        const auto g = log_grid(1e-2, 1e4, 600);
        CHECK(g.size() == 600);
        CHECK(g.front() == 1e-2);
        CHECK(g.back() == 1e4);
        CHECK_NOTHROW(check_grid(g));
        CHECK_THROWS_AS(check_grid({1.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(check_grid({0.0, 1.0}), std::invalid_argument);
    }

    TEST_CASE("frequency response examples") {
        const auto integ = freq_response(TransferFunction::integrator(), {1.0});
        CHECK(std::abs(integ.values[0][0] - Complex(0.0, -1.0)) < 1e-15);
        const auto lag = freq_response(tf({1.0}, {1.0, 1.0}), {1.0});
        CHECK(std::abs(lag.values[0][0]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    }

    TEST_CASE("zero-order-hold step response is exact for a first-order lag") {
        const auto m = tf_to_ss(tf({1.0}, {1.0, 1.0}));
        const auto r = step_response(m, 0, 5.0, 500);
        CHECK(r.t.front() == 0.0);
        const auto& y = r.columns.front().second;
        for (std::size_t k = 0; k < r.t.size(); ++k) CHECK(std::abs(y[k] - (1.0 - std::exp(-r.t[k]))) < 1e-10);
        const auto at1 = step_response(m, 0, 1.0, 10);
        CHECK(at1.columns.front().second.back() == doctest::Approx(0.63212055882855767).epsilon(1e-12));
    }

    TEST_CASE("integrator step gives a ramp") {
        const auto m = tf_to_ss(TransferFunction::integrator());
        const auto r = step_response(m, 0, 2.0, 4);
        CHECK(r.columns.front().second.back() == doctest::Approx(2.0).epsilon(1e-14));
    }

    TEST_CASE("uniform spacing") {
        const auto r = step_response(tf_to_ss(tf({1.0}, {1.0, 1.0})), 0, 3.0, 300);
        for (std::size_t k = 1; k < r.t.size(); ++k) CHECK(r.t[k] - r.t[k - 1] == doctest::Approx(0.01).epsilon(1e-9));
    }

    TEST_CASE("step response agrees with RK4 on a random model") {
        std::mt19937_64 rng(31);
        const auto r = oracle::random_stable_model(rng, 4);
        const StateSpaceModel m(r.a, r.b, r.c, r.d);
        const auto exact = step_response(m, 0, 4.0, 400);
        const auto rk = oracle::rk4_step(r.a, r.b.col(0), r.c.row(0), r.d(0, 0), 4.0, 4000);
        for (std::size_t k = 0; k < exact.t.size(); ++k)
            CHECK(std::abs(exact.columns.front().second[k] - rk[10 * k]) < 1e-8);
    }
}
