#include "adrcpid/adrcpid.h"

#include "adrcpid/experiment.hpp"

#include <cstring>
#include <exception>
#include <ios>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

using namespace adrcpid;

struct adrc_report {
    std::vector<std::string> lines;
    bool passed = true;
};

struct adrc_controller {
    TwoInputController controller;
    ControllerChannels channels;
};

struct adrc_config {
    ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error;

adrc_status fail(adrc_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
adrc_status guarded(F&& f) {
    try {
        g_last_error.clear();
        return f();
    } catch (const std::invalid_argument& e) {
        return fail(ADRC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(ADRC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(ADRC_ERR_IO, e.what());
    } catch (const std::domain_error& e) {
        return fail(ADRC_ERR_NUMERIC, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ADRC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ADRC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ADRC_ERR_INTERNAL, "unknown error");
    }
}

#define REQUIRE_ARG(cond, msg) \
    if (!(cond)) return fail(ADRC_ERR_INVALID_ARGUMENT, msg)

adrc_status make_controller(TwoInputController c, adrc_controller** out) {
    auto channels = extract_cr_cy(c);
    *out = new adrc_controller{std::move(c), std::move(channels)};
    return ADRC_OK;
}

adrc_report* notes_report(const FigureOutput& f) {
    auto* r = new adrc_report;
    r->lines = f.notes;
    return r;
}

const TransferFunction& channel_of(const adrc_controller* c, int channel) {
    if (channel == ADRC_CHANNEL_CR) return c->channels.cr;
    if (channel == ADRC_CHANNEL_CY) return c->channels.cy;
    throw std::invalid_argument("channel must be ADRC_CHANNEL_CR or ADRC_CHANNEL_CY");
}

}  // namespace

extern "C" {

const char* adrc_last_error(void) { return g_last_error.c_str(); }
const char* adrc_version(void) { return "1.0.0"; }

adrc_status adrc_tune(int order, double ts, double g, double b0, adrc_tuning* out) {
    REQUIRE_ARG(out, "out must not be NULL");
    return guarded([&] {
        adrc_tuning t{};
        t.order = order;
        t.ts = ts;
        t.g = g;
        t.b0 = b0;
        if (order == 1) {
            const AdrcDesign1 d = tune_first_order(ts, g, b0);
            const PifParams p = pif_from_adrc(d);
            t.K_P = d.kp;
            t.l1 = d.l1;
            t.l2 = d.l2;
            t.kp = p.kp;
            t.ki = p.ki;
            t.tf = p.tf;
            t.b = p.b;
        } else if (order == 2) {
            const AdrcDesign2 d = tune_second_order(ts, g, b0);
            const PidfParams p = pidf_from_adrc(d);
            t.omega_cl = d.omega_cl;
            t.K_P = d.kp;
            t.K_D = d.kd;
            t.l1 = d.l1;
            t.l2 = d.l2;
            t.l3 = d.l3;
            t.kp = p.kp;
            t.ki = p.ki;
            t.kd = p.kd;
            t.tf = p.tf;
            t.d = p.d;
            t.b = p.b;
        } else {
            return fail(ADRC_ERR_INVALID_ARGUMENT, "order must be 1 or 2");
        }
        *out = t;
        return ADRC_OK;
    });
}

size_t adrc_report_count(const adrc_report* r) { return r ? r->lines.size() : 0; }

const char* adrc_report_line(const adrc_report* r, size_t index) {
    if (!r || index >= r->lines.size()) return nullptr;
    return r->lines[index].c_str();
}

int adrc_report_passed(const adrc_report* r) { return r && r->passed ? 1 : 0; }
void adrc_report_free(adrc_report* r) { delete r; }

adrc_status adrc_tune_report(int order, double ts, double g, double b0, adrc_report** out) {
    REQUIRE_ARG(out, "out must not be NULL");
    return guarded([&] {
        auto r = std::make_unique<adrc_report>();
        std::string text = tune_report(order, ts, g, b0);
        std::size_t start = 0;
        while (start < text.size()) {
            const auto nl = text.find('\n', start);
            r->lines.push_back(text.substr(start, nl - start));
            start = nl == std::string::npos ? text.size() : nl + 1;
        }
        *out = r.release();
        return ADRC_OK;
    });
}

adrc_status adrc_controller_adrc(int order, double ts, double g, double b0, adrc_controller** out) {
    REQUIRE_ARG(out, "out must not be NULL");
    return guarded([&] {
        if (order == 1) return make_controller(build_first_order(tune_first_order(ts, g, b0)), out);
        if (order == 2) return make_controller(build_second_order(tune_second_order(ts, g, b0)), out);
        return fail(ADRC_ERR_INVALID_ARGUMENT, "order must be 1 or 2");
    });
}

adrc_status adrc_controller_equivalent(int order, double ts, double g, double b0, adrc_controller** out) {
    REQUIRE_ARG(out, "out must not be NULL");
    return guarded([&] {
        if (order == 1) return make_controller(build_pif_controller(pif_from_adrc(tune_first_order(ts, g, b0))), out);
        if (order == 2)
            return make_controller(build_pidf_controller(pidf_from_adrc(tune_second_order(ts, g, b0))), out);
        return fail(ADRC_ERR_INVALID_ARGUMENT, "order must be 1 or 2");
    });
}

adrc_status adrc_controller_compare(double kp, double ki, double kd, double tf, double b, adrc_controller** out) {
    REQUIRE_ARG(out, "out must not be NULL");
    return guarded([&] { return make_controller(build_compare_pid({kp, ki, kd, tf, b}), out); });
}

void adrc_controller_free(adrc_controller* c) { delete c; }

int adrc_controller_states(const adrc_controller* c) { return c ? c->controller.ss.states() : -1; }

adrc_status adrc_controller_matrices(const adrc_controller* c, double* a, double* b, double* cm, double* d) {
    REQUIRE_ARG(c && a && b && cm && d, "arguments must not be NULL");
    const auto& m = c->controller.ss;
    const int n = m.states();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i * n + j] = m.A(i, j);
        b[i * 2] = m.B(i, 0);
        b[i * 2 + 1] = m.B(i, 1);
        cm[i] = m.C(0, i);
    }
    d[0] = m.D(0, 0);
    d[1] = m.D(0, 1);
    return ADRC_OK;
}

adrc_status adrc_controller_channel(const adrc_controller* c, int channel, double* num, size_t num_cap,
                                    size_t* num_len, double* den, size_t den_cap, size_t* den_len) {
    REQUIRE_ARG(c && num_len && den_len, "arguments must not be NULL");
    return guarded([&] {
        const TransferFunction& tf = channel_of(c, channel);
        const auto& n = tf.num().coeffs();
        const auto& d = tf.den().coeffs();
        *num_len = n.size();
        *den_len = d.size();
        if (!num || !den || num_cap < n.size() || den_cap < d.size())
            return fail(ADRC_ERR_INVALID_ARGUMENT, "coefficient buffer too small");
        std::copy(n.begin(), n.end(), num);
        std::copy(d.begin(), d.end(), den);
        return ADRC_OK;
    });
}

adrc_status adrc_controller_freq(const adrc_controller* c, int channel, const double* omega, size_t n, double* re,
                                 double* im) {
    REQUIRE_ARG(c && (n == 0 || (omega && re && im)), "arguments must not be NULL");
    return guarded([&] {
        const TransferFunction& tf = channel_of(c, channel);
        for (size_t i = 0; i < n; ++i) {
            const Complex v = tf.at_frequency(omega[i]);
            re[i] = v.real();
            im[i] = v.imag();
        }
        return ADRC_OK;
    });
}

adrc_status adrc_config_new(adrc_config** out) {
    REQUIRE_ARG(out, "out must not be NULL");
    return guarded([&] {
        *out = new adrc_config;
        return ADRC_OK;
    });
}

adrc_status adrc_config_load(const char* path, adrc_config** out) {
    REQUIRE_ARG(path && out, "arguments must not be NULL");
    return guarded([&] {
        *out = new adrc_config{ExperimentConfig::load(path)};
        return ADRC_OK;
    });
}

adrc_status adrc_config_save(const adrc_config* cfg, const char* path) {
    REQUIRE_ARG(cfg && path, "arguments must not be NULL");
    return guarded([&] {
        cfg->cfg.save(path);
        return ADRC_OK;
    });
}

adrc_status adrc_config_set(adrc_config* cfg, const char* key, const char* value) {
    REQUIRE_ARG(cfg && key && value, "arguments must not be NULL");
    return guarded([&] {
        cfg->cfg.set(key, value);
        return ADRC_OK;
    });
}

adrc_status adrc_config_get(const adrc_config* cfg, const char* key, char* buf, size_t cap, size_t* needed) {
    REQUIRE_ARG(cfg && key && needed, "arguments must not be NULL");
    return guarded([&] {
        const std::string v = cfg->cfg.get(key);
        *needed = v.size() + 1;
        if (!buf || cap < v.size() + 1) return fail(ADRC_ERR_INVALID_ARGUMENT, "value buffer too small");
        std::memcpy(buf, v.c_str(), v.size() + 1);
        return ADRC_OK;
    });
}

adrc_status adrc_config_validate(const adrc_config* cfg) {
    REQUIRE_ARG(cfg, "cfg must not be NULL");
    return guarded([&] {
        cfg->cfg.validate();
        return ADRC_OK;
    });
}

void adrc_config_free(adrc_config* cfg) { delete cfg; }

adrc_status adrc_run_figure(const adrc_config* cfg, int id, adrc_report** notes) {
    REQUIRE_ARG(cfg, "cfg must not be NULL");
    return guarded([&] {
        const FigureOutput f = build_figure(id, cfg->cfg);
        write_outputs(cfg->cfg, "fig" + std::to_string(id), f);
        if (notes) *notes = notes_report(f);
        return ADRC_OK;
    });
}

adrc_status adrc_run_sweep(const adrc_config* cfg, const char* param, const double* values, size_t n,
                           adrc_report** notes) {
    REQUIRE_ARG(cfg && param && (n == 0 || values), "arguments must not be NULL");
    return guarded([&] {
        const FigureOutput f = build_sweep(cfg->cfg, param, std::vector<double>(values, values + n));
        write_outputs(cfg->cfg, "sweep_order" + std::to_string(cfg->cfg.order) + "_" + param, f);
        if (notes) *notes = notes_report(f);
        return ADRC_OK;
    });
}

adrc_status adrc_run_verify(const adrc_config* cfg, double perturb_b0, adrc_report** out) {
    REQUIRE_ARG(cfg && out, "arguments must not be NULL");
    return guarded([&] {
        auto r = std::make_unique<adrc_report>();
        for (const VerifyCheck& c : run_verify(cfg->cfg, perturb_b0)) {
            r->lines.push_back(c.line());
            r->passed = r->passed && c.passed;
        }
        const bool passed = r->passed;
        *out = r.release();
        if (!passed) return fail(ADRC_ERR_VERIFY_FAILED, "verification failed");
        return ADRC_OK;
    });
}

}  // extern "C"
