#include "adrcpid/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adrcpid {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Shortest %g precision that parses back exactly; keeps config files readable.
std::string format_exact(double v) {
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_exact(v[i]);
    }
    return out;
}

int parse_int(const std::string& text, const std::string& what) {
    const double v = parse_double(text, what);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument(what + " must be an integer");
    return static_cast<int>(v);
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
    const std::string s = strip(text);
    if (s.empty()) throw std::invalid_argument(what + " needs a number");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    const bool overflow = errno == ERANGE && std::abs(v) > 1.0;
    if (end != s.c_str() + s.size() || overflow || !std::isfinite(v))
        throw std::invalid_argument(what + " is not a valid number: " + s);
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item, what));
    return out;
}

ComparePid parse_compare_pid(const std::string& text) {
    const auto v = parse_list(text, "compare-pid");
    if (v.size() != 5) throw std::invalid_argument("compare-pid needs kp,ki,kd,Tf,b");
    ComparePid p{v[0], v[1], v[2], v[3], v[4]};
    if (p.tf < 0.0) throw std::invalid_argument("compare-pid Tf must be >= 0");
    if (p.kd != 0.0 && p.tf == 0.0) throw std::invalid_argument("compare-pid with kd needs Tf > 0");
    return p;
}

const std::vector<std::string>& ExperimentConfig::keys() {
    static const std::vector<std::string> k{
        "tuning.order",    "tuning.ts",       "tuning.g",          "tuning.b0",         "plant.k",
        "plant.t",         "plant.d",         "sweep.k_order1",    "sweep.t_order1",    "sweep.k_order2",
        "sweep.t_order2",  "sweep.t_end_factor", "sweep.n_steps",  "frequency.omega_min", "frequency.omega_max",
        "frequency.points", "output.dir",     "compare.pid"};
    return k;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    if (key == "tuning.order") order = parse_int(value, "order");
    else if (key == "tuning.ts") ts = parse_double(value, "ts");
    else if (key == "tuning.g") g = parse_double(value, "g");
    else if (key == "tuning.b0") b0 = parse_double(value, "b0");
    else if (key == "plant.k") plant_k = parse_double(value, "plant-k");
    else if (key == "plant.t") plant_t = parse_double(value, "plant-t");
    else if (key == "plant.d") plant_d = parse_double(value, "plant-d");
    else if (key == "sweep.k_order1") sweep_k_order1 = parse_list(value, key);
    else if (key == "sweep.t_order1") sweep_t_order1 = parse_list(value, key);
    else if (key == "sweep.k_order2") sweep_k_order2 = parse_list(value, key);
    else if (key == "sweep.t_order2") sweep_t_order2 = parse_list(value, key);
    else if (key == "sweep.t_end_factor") t_end_factor = parse_double(value, key);
    else if (key == "sweep.n_steps") n_steps = parse_int(value, key);
    else if (key == "frequency.omega_min") omega_min = parse_double(value, key);
    else if (key == "frequency.omega_max") omega_max = parse_double(value, key);
    else if (key == "frequency.points") omega_points = parse_int(value, key);
    else if (key == "output.dir") out_dir = strip(value);
    else if (key == "compare.pid") {
        const std::string v = strip(value);
        if (v.empty() || v == "none")
            compare.reset();
        else
            compare = parse_compare_pid(v);
    } else
        throw std::invalid_argument("unknown config key " + key);
}

std::string ExperimentConfig::get(const std::string& key) const {
    if (key == "tuning.order") return std::to_string(order);
    if (key == "tuning.ts") return format_exact(ts);
    if (key == "tuning.g") return format_exact(g);
    if (key == "tuning.b0") return format_exact(b0);
    if (key == "plant.k") return format_exact(plant_k);
    if (key == "plant.t") return format_exact(plant_t);
    if (key == "plant.d") return format_exact(plant_d);
    if (key == "sweep.k_order1") return join(sweep_k_order1);
    if (key == "sweep.t_order1") return join(sweep_t_order1);
    if (key == "sweep.k_order2") return join(sweep_k_order2);
    if (key == "sweep.t_order2") return join(sweep_t_order2);
    if (key == "sweep.t_end_factor") return format_exact(t_end_factor);
    if (key == "sweep.n_steps") return std::to_string(n_steps);
    if (key == "frequency.omega_min") return format_exact(omega_min);
    if (key == "frequency.omega_max") return format_exact(omega_max);
    if (key == "frequency.points") return std::to_string(omega_points);
    if (key == "output.dir") return out_dir;
    if (key == "compare.pid") {
        if (!compare) return "none";
        return join({compare->kp, compare->ki, compare->kd, compare->tf, compare->b});
    }
    throw std::invalid_argument("unknown config key " + key);
}

void ExperimentConfig::validate() const {
    if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
    if (!(ts > 0.0)) throw std::invalid_argument("ts must be > 0");
    if (!(g > 0.0)) throw std::invalid_argument("g must be > 0");
    if (!(b0 > 0.0)) throw std::invalid_argument("b0 must be > 0");
    if (!(plant_t > 0.0)) throw std::invalid_argument("plant-t must be > 0");
    if (!(plant_d > 0.0)) throw std::invalid_argument("plant-d must be > 0");
    for (const auto* list : {&sweep_k_order1, &sweep_t_order1, &sweep_k_order2, &sweep_t_order2})
        if (list->empty()) throw std::invalid_argument("sweep lists must be nonempty");
    for (double t : sweep_t_order1)
        if (!(t > 0.0)) throw std::invalid_argument("sweep.t_order1 values must be > 0");
    for (double t : sweep_t_order2)
        if (!(t > 0.0)) throw std::invalid_argument("sweep.t_order2 values must be > 0");
    if (!(t_end_factor > 0.0)) throw std::invalid_argument("sweep.t_end_factor must be > 0");
    if (n_steps < 2) throw std::invalid_argument("sweep.n_steps must be >= 2");
    if (!(omega_min > 0.0) || !(omega_max > omega_min)) throw std::invalid_argument("frequency range must satisfy 0 < omega_min < omega_max");
    if (omega_points < 2) throw std::invalid_argument("frequency.points must be >= 2");
    if (out_dir.empty()) throw std::invalid_argument("out must not be empty");
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream os;
    os << "# adrcpid experiment configuration\n";
    std::string section;
    for (const auto& key : keys()) {
        const auto dot = key.find('.');
        const std::string sec = key.substr(0, dot);
        if (sec != section) {
            if (!section.empty()) os << '\n';
            os << '[' << sec << "]\n";
            section = sec;
        }
        os << key.substr(dot + 1) << " = " << get(key) << '\n';
    }
    return os.str();
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string s = strip(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw std::invalid_argument("line " + std::to_string(lineno) + ": bad section header");
            section = strip(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = strip(s.substr(0, eq));
        cfg.set(section.empty() ? key : section + "." + key, s.substr(eq + 1));
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

void ExperimentConfig::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    out << to_text();
    if (!out) throw std::ios_base::failure("cannot write " + path);
}

const std::vector<double>& ExperimentConfig::sweep_values(int plant_order, const std::string& parameter) const {
    if (parameter == "K") return plant_order == 1 ? sweep_k_order1 : sweep_k_order2;
    if (parameter == "T") return plant_order == 1 ? sweep_t_order1 : sweep_t_order2;
    throw std::invalid_argument("sweep parameter must be K or T");
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const { return to_text() == o.to_text(); }

}  // namespace adrcpid
