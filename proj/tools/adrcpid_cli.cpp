// Command-line front end over the C API.

#include "adrcpid/adrcpid.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kBadArguments = 2, kIoFailure = 3 };

struct Deleter {
    void operator()(adrc_config* c) const { adrc_config_free(c); }
    void operator()(adrc_report* r) const { adrc_report_free(r); }
};
using ConfigPtr = std::unique_ptr<adrc_config, Deleter>;
using ReportPtr = std::unique_ptr<adrc_report, Deleter>;

struct Error {
    int code;
};

int exit_code_for(adrc_status s) {
    switch (s) {
        case ADRC_OK: return kOk;
        case ADRC_ERR_VERIFY_FAILED: return kVerifyFailed;
        case ADRC_ERR_IO: return kIoFailure;
        case ADRC_ERR_INVALID_ARGUMENT: return kBadArguments;
        default: return kIoFailure;
    }
}

void ensure(adrc_status s) {
    if (s == ADRC_OK) return;
    std::fprintf(stderr, "error: %s\n", adrc_last_error());
    throw Error{exit_code_for(s)};
}

// Flags shared by every subcommand; kept as text and routed through the
// config setters so file values and flags share one parser.
struct CommonFlags {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> values;  // config key, flag text

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "Experiment config file (flags override it)");
        struct Flag {
            const char* name;
            const char* key;
            const char* help;
        };
        static const Flag flags[] = {
            {"--order", "tuning.order", "Plant/controller order (1 or 2)"},
            {"--ts", "tuning.ts", "Desired settling time T_s"},
            {"--g", "tuning.g", "Observer pole multiplier"},
            {"--b0", "tuning.b0", "Characteristic plant gain"},
            {"--plant-k", "plant.k", "Nominal plant gain K"},
            {"--plant-t", "plant.t", "Nominal plant time constant T"},
            {"--plant-d", "plant.d", "Nominal plant damping D (order 2)"},
            {"--out", "output.dir", "Output directory"},
            {"--compare-pid", "compare.pid", "Comparison PID as kp,ki,kd,Tf,b"}};
        values.reserve(std::size(flags));
        for (const auto& f : flags) {
            values.emplace_back(f.key, std::string());
            slots.push_back(app.add_option(f.name, values.back().second, f.help));
        }
    }

    ConfigPtr resolve() const {
        adrc_config* raw = nullptr;
        if (!config_path.empty())
            ensure(adrc_config_load(config_path.c_str(), &raw));
        else
            ensure(adrc_config_new(&raw));
        ConfigPtr cfg(raw);
        for (std::size_t i = 0; i < values.size(); ++i)
            if (slots[i]->count() > 0) ensure(adrc_config_set(cfg.get(), values[i].first.c_str(), values[i].second.c_str()));
        ensure(adrc_config_validate(cfg.get()));
        return cfg;
    }

    std::vector<CLI::Option*> slots;
};

double config_number(const adrc_config* cfg, const char* key) {
    char buf[64];
    std::size_t needed = 0;
    ensure(adrc_config_get(cfg, key, buf, sizeof buf, &needed));
    return std::stod(buf);
}

void print_report(const adrc_report* r, std::FILE* stream) {
    for (std::size_t i = 0; i < adrc_report_count(r); ++i) std::fprintf(stream, "%s\n", adrc_report_line(r, i));
}

int cmd_tune(const CommonFlags& flags) {
    ConfigPtr cfg = flags.resolve();
    adrc_report* raw = nullptr;
    ensure(adrc_tune_report(static_cast<int>(config_number(cfg.get(), "tuning.order")),
                            config_number(cfg.get(), "tuning.ts"), config_number(cfg.get(), "tuning.g"),
                            config_number(cfg.get(), "tuning.b0"), &raw));
    ReportPtr report(raw);
    print_report(report.get(), stdout);
    return kOk;
}

int cmd_figure(const CommonFlags& flags, int id) {
    ConfigPtr cfg = flags.resolve();
    adrc_report* raw = nullptr;
    ensure(adrc_run_figure(cfg.get(), id, &raw));
    ReportPtr notes(raw);
    print_report(notes.get(), stdout);
    std::printf("wrote fig%d.csv and fig%d.svg\n", id, id);
    return kOk;
}

int cmd_sweep(const CommonFlags& flags, const std::string& param, const std::vector<double>& values) {
    ConfigPtr cfg = flags.resolve();
    adrc_report* raw = nullptr;
    ensure(adrc_run_sweep(cfg.get(), param.c_str(), values.data(), values.size(), &raw));
    ReportPtr notes(raw);
    print_report(notes.get(), stdout);
    std::printf("wrote sweep_order%d_%s.csv\n", static_cast<int>(config_number(cfg.get(), "tuning.order")),
                param.c_str());
    return kOk;
}

int cmd_verify(const CommonFlags& flags, double perturb_b0) {
    ConfigPtr cfg = flags.resolve();
    adrc_report* raw = nullptr;
    const adrc_status s = adrc_run_verify(cfg.get(), perturb_b0, &raw);
    if (s != ADRC_OK && s != ADRC_ERR_VERIFY_FAILED) ensure(s);
    ReportPtr report(raw);
    print_report(report.get(), stdout);
    const bool passed = adrc_report_passed(report.get());
    std::printf("verify: %s\n", passed ? "PASS" : "FAIL");
    return passed ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear ADRC and its equivalent PI(D)+F controllers"};
    app.require_subcommand(1);

    CommonFlags tune_flags, figure_flags, verify_flags, sweep_flags;

    auto* tune = app.add_subcommand("tune", "Print ADRC gains and the equivalent PI(D)+F parameters");
    tune_flags.attach(*tune);

    int figure_id = 0;
    auto* figure = app.add_subcommand("figure", "Reproduce one figure (1-8) as CSV and SVG");
    figure->add_option("id", figure_id, "Figure number")->required()->check(CLI::Range(1, 8));
    figure_flags.attach(*figure);

    double perturb_b0 = 1.0;
    auto* verify = app.add_subcommand("verify", "Run the equivalence and property checks");
    verify->add_option("--perturb-b0", perturb_b0, "Scale b0 on the equivalent side of the y-channel checks");
    verify_flags.attach(*verify);

    std::string param = "K";
    std::vector<double> values;
    auto* sweep = app.add_subcommand("sweep", "Step-response sweep of one plant parameter");
    sweep->add_option("--param", param, "Plant parameter: K, T or D")->check(CLI::IsMember({"K", "T", "D"}));
    sweep->add_option("--values", values, "Comma-separated parameter values")->delimiter(',')->required();
    sweep_flags.attach(*sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kBadArguments;
    }

    try {
        if (*tune) return cmd_tune(tune_flags);
        if (*figure) return cmd_figure(figure_flags, figure_id);
        if (*verify) return cmd_verify(verify_flags, perturb_b0);
        return cmd_sweep(sweep_flags, param, values);
    } catch (const Error& e) {
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadArguments;
    }
}
