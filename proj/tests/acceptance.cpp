// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"

#include "adrcpid/analysis.hpp"
#include "adrcpid/experiment.hpp"
#include "adrcpid/pid_equiv.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <tuple>
#include <vector>

using namespace adrcpid;
using oracle::Fraction;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %-44s %s  (%s)\n", id, what.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

const double kTsGrid[] = {0.5, 1.0, 2.0};
const double kGGrid[] = {2.0, 5.0, 10.0, 20.0};
const double kB0Grid[] = {0.5, 1.0, 3.0};

void criterion1() {
    double worst = 0.0;
    for (double ts : kTsGrid)
        for (double g : kGGrid)
            for (double b0 : kB0Grid) {
                const auto d1 = tune_first_order(ts, g, b0);
                worst = std::max(worst, tf_mismatch(extract_cr_cy(build_first_order(d1)).cy, feedback_tf(pif_from_adrc(d1))));
                const auto d2 = tune_second_order(ts, g, b0);
                worst = std::max(worst, tf_mismatch(extract_cr_cy(build_second_order(d2)).cy, feedback_tf(pidf_from_adrc(d2))));
            }
    report(1, "y-channel equivalence, 36 designs x 2 orders", worst < 1e-9, fmt("max rel %.2e, tol 1e-9", worst));
}

void criterion2() {
    const auto cr = extract_cr_cy(build_first_order(tune_first_order(1.0, 10.0, 1.0))).cr;
    const TransferFunction expected{Polynomial{6400.0, 320.0, 4.0}, Polynomial{0.0, 84.0, 1.0}};
    const double m = tf_mismatch(cr, expected);
    report(2, "C_r = (4s^2+320s+6400)/(s^2+84s)", m < 1e-9, fmt("rel %.2e, tol 1e-9", m));
}

void criterion3() {
    // Direct substitution in exact rational arithmetic at T_s=1, g=10, b0=1.
    const Fraction kp1 = 4, l1 = Fraction(2) * 10 * kp1, l2 = Fraction(100) * kp1 * kp1, pole = l1 + kp1;
    const Fraction pif_kp = (kp1 * l1 + l2) / pole;
    const Fraction w = 6, kp2 = w * w, kd2 = Fraction(2) * w;
    const Fraction m1 = Fraction(30) * w, m2 = Fraction(300) * w * w, m3 = Fraction(1000) * w * w * w;
    const Fraction n2 = kp2 * m1 + kd2 * m2 + m3, n1 = kp2 * m2 + kd2 * m3, n0 = kp2 * m3;
    const Fraction q1 = m1 + kd2, q0 = m1 * kd2 + m2 + kp2;
    const Fraction pidf_kp = n1 / q0;

    const auto p1 = pif_from_adrc(tune_first_order(1.0, 10.0, 1.0));
    const auto p2 = pidf_from_adrc(tune_second_order(1.0, 10.0, 1.0));
    const std::vector<std::pair<double, double>> pairs{
        {p1.kp, pif_kp.value()},
        {p1.ki, (kp1 * l2 / pole).value()},
        {p1.tf, (Fraction(1) / pole).value()},
        {p1.b, (kp1 / pif_kp).value()},
        {p2.kp, pidf_kp.value()},
        {p2.ki, (n0 / q0).value()},
        {p2.kd, (n2 / q0).value()},
        {p2.tf * p2.tf, (Fraction(1) / q0).value()},
        {p2.d * p2.d, (q1 * q1 / (Fraction(4) * q0)).value()},
        {p2.b, (kp2 / pidf_kp).value()},
    };
    double worst = 0.0;
    for (auto [got, exact] : pairs) worst = std::max(worst, oracle::rel(got, exact));
    const bool literal = oracle::rel(p1.kp, 480.0 / 21.0) < 1e-12 && oracle::rel(p1.b, 0.175) < 1e-12 &&
                         oracle::rel(p2.kp, 82800.0 / 361.0) < 1e-12 && oracle::rel(p2.d, 16.0 / 19.0) < 1e-12;
    report(3, "PI+F / PID+F parameters vs exact rationals", worst < 1e-12 && literal,
           fmt("max rel %.2e, tol 1e-12", worst));
}

void criterion4() {
    double worst = 0.0;
    bool ok = true;
    for (double g : kGGrid) {
        const auto d1 = tune_first_order(1.0, g, 1.0);
        const auto r1 = verify_asymptotes(d1, pif_from_adrc(d1));
        const auto d2 = tune_second_order(1.0, g, 1.0);
        const auto r2 = verify_asymptotes(d2, pidf_from_adrc(d2));
        for (const auto* r : {&r1, &r2}) {
            worst = std::max({worst, r->low.mismatch, r->high.mismatch});
            ok = ok && r->low.mismatch < 1e-4 && r->high.mismatch < 1e-4;
        }
    }
    report(4, "asymptotes at 1e-6 and 1e6 rad/s", ok, fmt("max rel %.2e, tol 1e-4", worst));
}

void criterion5() {
    const auto grid = log_grid(1e-2, 1e3, 300);
    const ExperimentConfig cfg;
    double worst = 0.0;
    for (int order : {1, 2}) {
        const auto plant = nominal_plant(cfg, order);
        const auto ctrls = experiment_controllers(cfg, order);
        const auto a = gang_of_seven(plant, ctrls[0].controller);
        const auto b = gang_of_seven(plant, ctrls[1].controller);
        for (std::size_t f = 0; f < 4; ++f)
            for (double w : grid) {
                const double ma = std::abs(a[f].at_frequency(w)), mb = std::abs(b[f].at_frequency(w));
                worst = std::max(worst, std::abs(ma - mb) / std::max(ma, mb));
            }
    }
    report(5, "gang of four S, PS, CS, T identical", worst < 1e-8, fmt("max rel %.2e, tol 1e-8", worst));
}

// Sup-norm gap between the ADRC and equivalent-controller step traces,
// computed once with t_end = 30 T_s and 12000 steps, then pinned.
const std::map<std::tuple<int, std::string, double>, double> kGoldenGap{
    {{1, "K", 0.1}, 0.020340190309175887}, {{1, "K", 0.2}, 0.026307502074255196},
    {{1, "K", 0.5}, 0.034305063017409931}, {{1, "K", 1.0}, 0.040280125448991455},
    {{1, "K", 2.0}, 0.046810222571797455}, {{1, "K", 5.0}, 0.05652051821055587},
    {{1, "K", 10.0}, 0.063919692441645581}, {{1, "T", 0.1}, 0.060106859467919993},
    {{1, "T", 0.2}, 0.054119393585402131}, {{1, "T", 0.5}, 0.045880175075486029},
    {{1, "T", 1.0}, 0.040280125448991455}, {{1, "T", 2.0}, 0.035302882108233513},
    {{1, "T", 5.0}, 0.028733185982471821}, {{1, "T", 10.0}, 0.023773304267777462},
    {{2, "K", 0.1}, 0.058138325298266125}, {{2, "K", 0.2}, 0.060262864233801894},
    {{2, "K", 0.5}, 0.057385302190966769}, {{2, "K", 1.0}, 0.052407626289865117},
    {{2, "K", 2.0}, 0.048905574393732665}, {{2, "K", 5.0}, 0.048325983639382952},
    {{2, "T", 0.5}, 0.047540843820514156}, {{2, "T", 1.0}, 0.052407626289865117},
    {{2, "T", 2.0}, 0.063990305117987423},
};

double sup_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double sup = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sup = std::max(sup, std::abs(a[k] - b[k]));
    return sup;
}

void criterion6() {
    const ExperimentConfig cfg;
    double worst_final = 0.0, worst_golden = 0.0, largest_gap = 0.0;
    int stable = 0, unstable = 0, missing = 0;
    for (int order : {1, 2}) {
        const auto ctrls = experiment_controllers(cfg, order);
        for (const char* param : {"K", "T"}) {
            const auto r = step_sweep(nominal_plant(cfg, order), param, cfg.sweep_values(order, param), ctrls,
                                      cfg.t_end(), cfg.n_steps);
            for (std::size_t v = 0; v < r.values.size(); ++v) {
                const auto& a = r.at(v, 0);
                const auto& b = r.at(v, 1);
                if (!a.stable || !b.stable) {
                    ++unstable;
                    continue;
                }
                ++stable;
                for (const auto* c : {&a, &b})
                    worst_final = std::max(worst_final, std::abs(c->response.column("y").back() - 1.0));
                const double gap = sup_gap(a.response.column("y"), b.response.column("y"));
                largest_gap = std::max(largest_gap, gap);
                const auto it = kGoldenGap.find({order, param, r.values[v]});
                if (it == kGoldenGap.end())
                    ++missing;
                else
                    worst_golden = std::max(worst_golden, std::abs(gap - it->second));
            }
        }
    }

    // Independent check of the nominal golden: RK4 at a tenth of the sample step.
    const auto plant = nominal_plant(cfg, 1);
    const auto ctrls = experiment_controllers(cfg, 1);
    std::vector<std::vector<double>> traces;
    for (std::size_t i = 0; i < 2; ++i) {
        const auto loop = closed_loop(plant, ctrls[i].controller);
        const auto fine = oracle::rk4_step(loop.A, loop.B.col(0), loop.C.row(0), loop.D(0, 0), cfg.t_end(), 10 * cfg.n_steps);
        std::vector<double> sampled;
        for (std::size_t k = 0; k < fine.size(); k += 10) sampled.push_back(fine[k]);
        traces.push_back(std::move(sampled));
    }
    const double rk4_gap = sup_gap(traces[0], traces[1]);
    const double rk4_err = std::abs(rk4_gap - kGoldenGap.at({1, "K", 1.0}));

    const bool ok = worst_final < 1e-6 && worst_golden < 1e-9 && missing == 0 && rk4_err < 1e-8 &&
                    stable == static_cast<int>(kGoldenGap.size());
    char detail[256];
    std::snprintf(detail, sizeof detail,
                  "%d stable, %d unstable; final |y-1| %.1e tol 1e-6; golden drift %.1e tol 1e-9; RK4 %.1e", stable,
                  unstable, worst_final, worst_golden, rk4_err);
    report(6, "sweeps: final values and pinned trace gaps", ok, detail);
    std::printf("              largest stable-case gap %.4f, nominal %.4f; the anticipated bound 0.02 is %s\n",
                largest_gap, kGoldenGap.at({1, "K", 1.0}), largest_gap < 0.02 ? "met" : "not met");
}

void criterion7() {
    const ExperimentConfig cfg;
    const auto loop = closed_loop(nominal_plant(cfg, 1), experiment_controllers(cfg, 1)[0].controller);
    const auto r = step_response(loop, 0, cfg.t_end(), cfg.n_steps);
    const double ts = settling_time(r.t, r.column("y"));
    report(7, "nominal first-order 2% settling", ts <= 1.3, fmt("t_s = %.4f s, limit 1.3 s", ts));
}

void criterion8() {
    const ExperimentConfig cfg;
    double identity = 0.0;
    for (int order : {1, 2})
        for (const auto& c : experiment_controllers(cfg, order))
            identity = std::max(identity, sensitivity_identity_residual(gang_of_seven(nominal_plant(cfg, order), c.controller)));

    const double lower = 5.0 / (2.0 * std::sqrt(10.0));
    double dmin = 2.0, dmax = 0.0, gmin = 0.0;
    for (double g : log_grid(0.1, 100.0, 1001)) {
        const double d = pidf_from_adrc(tune_second_order(1.0, g, 1.0)).d;
        if (d < dmin) {
            dmin = d;
            gmin = g;
        }
        dmax = std::max(dmax, d);
    }
    const bool d_ok = dmin >= 0.7906 - 1e-4 && dmin >= lower * (1.0 - 1e-12) && dmax < 1.0 && std::abs(gmin - 1.0) < 0.05;

    double weight = 0.0;
    for (double ts : kTsGrid)
        for (double g : kGGrid)
            for (double b0 : kB0Grid) {
                const auto p1 = pif_from_adrc(tune_first_order(ts, g, b0));
                const auto p2 = pidf_from_adrc(tune_second_order(ts, g, b0));
                weight = std::max({weight, oracle::rel(p1.b * p1.kp * b0, 4.0 / ts),
                                   oracle::rel(p2.b * p2.kp * b0, 36.0 / (ts * ts))});
            }
    char detail[256];
    std::snprintf(detail, sizeof detail, "S+T-1 %.1e; d in [%.6f, %.6f] min at g=%.3f; b kp b0 rel %.1e", identity, dmin,
                  dmax, gmin, weight);
    report(8, "S+T=1, damping range, set-point weight", identity < 1e-9 && d_ok && weight <= 1e-12, detail);
}

void criterion9() {
    double worst = 0.0;
    for (double g : kGGrid) {
        const auto p1 = pif_from_adrc(tune_first_order(1.0, g, 1.0));
        const auto c1 = build_pif_controller(p1);
        worst = std::max({worst, tf_mismatch(ss_to_tf(c1.ss, TwoInputController::kMeasurement, 0), -feedback_tf(p1)),
                          tf_mismatch(minreal(ss_to_tf(c1.ss, TwoInputController::kReference, 0), 1e-8), reference_tf(p1))});

        const auto p2 = pidf_from_adrc(tune_second_order(1.0, g, 1.0));
        const auto c2 = build_pidf_controller(p2);
        worst = std::max({worst, tf_mismatch(ss_to_tf(c2.ss, TwoInputController::kMeasurement, 0), -feedback_tf(p2)),
                          tf_mismatch(minreal(ss_to_tf(c2.ss, TwoInputController::kReference, 0), 1e-8), reference_tf(p2))});

        // Filter states carry the negated measurement: x1 = -y_f, x3 = -dy_f/dt.
        const TransferFunction filter{Polynomial{1.0}, Polynomial{1.0, 2.0 * p2.d * p2.tf, p2.tf * p2.tf}};
        const StateSpaceModel x1(c2.ss.A, c2.ss.B, Matrix::Identity(3, 3).row(0), Matrix::Zero(1, 2));
        const StateSpaceModel x3(c2.ss.A, c2.ss.B, Matrix::Identity(3, 3).row(2), Matrix::Zero(1, 2));
        worst = std::max({worst, tf_mismatch(minreal(ss_to_tf(x1, 1, 0), 1e-8), -filter),
                          tf_mismatch(minreal(ss_to_tf(x3, 1, 0), 1e-8),
                                      -(filter * TransferFunction(Polynomial{0.0, 1.0}, Polynomial{1.0})))});
    }
    report(9, "PI+F and PID+F realizations", worst < 1e-9, fmt("max rel %.2e, tol 1e-9", worst));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion10(const std::filesystem::path& work) {
    std::vector<std::filesystem::path> dirs{work / "run_a", work / "run_b"};
    for (const auto& dir : dirs) {
        std::filesystem::remove_all(dir);
        ExperimentConfig cfg;
        cfg.out_dir = dir.string();
        for (int id = 1; id <= 8; ++id) write_outputs(cfg, "fig" + std::to_string(id), build_figure(id, cfg));
    }
    int compared = 0, differing = 0;
    for (int id = 1; id <= 8; ++id)
        for (const char* ext : {".csv", ".svg"}) {
            const std::string name = "fig" + std::to_string(id) + ext;
            const std::string a = slurp(dirs[0] / name), b = slurp(dirs[1] / name);
            ++compared;
            if (a.empty() || a != b) ++differing;
        }
    report(10, "repeated figure output byte-identical", differing == 0,
           std::to_string(compared) + " files, " + std::to_string(differing) + " differ");
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path work = argc > 1 ? argv[1] : std::filesystem::temp_directory_path() / "adrcpid_acceptance";
    const auto start = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10(work);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("acceptance: %d of 10 criteria passed in %.2f s\n", 10 - failures, secs);
    return failures == 0 ? 0 : 1;
}
