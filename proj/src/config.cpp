#include "wva/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wva/table.hpp"

namespace wva {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw ConfigError("key '" + key + "': cannot parse number '" + text + "'");
    }
    return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw ConfigError("key '" + key + "': cannot parse integer '" + text + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw ConfigError("key '" + key + "': cannot parse seed '" + text + "'");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(trim(text));
    while (std::getline(is, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(parse_number(key, item));
    }
    return out;
}

} // namespace

bool Config::operator==(const Config& other) const {
    return setup.phi0 == other.setup.phi0 && setup.alpha == other.setup.alpha &&
           setup.delta == other.setup.delta &&
           setup.compensate_back_phase == other.setup.compensate_back_phase &&
           setup.theta == other.setup.theta &&
           noise.eta_bar == other.noise.eta_bar &&
           noise.tau_c == other.noise.tau_c &&
           noise.shot_var == other.noise.shot_var &&
           run.gamma == other.run.gamma &&
           run.total_time == other.run.total_time &&
           run.post_prob == other.run.post_prob && run.seed == other.run.seed &&
           run.realizations == other.run.realizations && sweep == other.sweep &&
           output == other.output;
}

double parse_angle(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty angle value");

    double sign = 1.0;
    size_t pos = 0;
    if (t[0] == '+' || t[0] == '-') {
        sign = t[0] == '-' ? -1.0 : 1.0;
        pos = 1;
    }
    double base = 0.0;
    if (t.compare(pos, 3, "2pi") == 0) {
        base = 2.0 * kPi;
        pos += 3;
    } else if (t.compare(pos, 2, "pi") == 0) {
        base = kPi;
        pos += 2;
    } else {
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size() || !std::isfinite(v)) {
            throw ConfigError("cannot parse angle '" + text + "'");
        }
        return v;
    }
    if (pos == t.size()) return sign * base;
    const char op = t[pos];
    if (op != '*' && op != '/') {
        throw ConfigError("cannot parse angle '" + text + "'");
    }
    const double factor = parse_number("angle", t.substr(pos + 1));
    if (op == '/' && factor == 0.0) {
        throw ConfigError("division by zero in angle '" + text + "'");
    }
    return sign * (op == '*' ? base * factor : base / factor);
}

Config parse_config_text(const std::string& text, Config base) {
    Config c = base;
    bool shot_var_set = false;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "line " << lineno << ": expected 'key = value', got '" << line << "'";
            throw ConfigError(os.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "setup.phi0") {
            c.setup.phi0 = parse_angle(value);
        } else if (key == "setup.alpha2") {
            const double a2 = parse_number(key, value);
            if (a2 < 0.0) throw ConfigError("key 'setup.alpha2': must be >= 0");
            c.setup.alpha = std::sqrt(a2);
        } else if (key == "setup.alpha_re") {
            c.setup.alpha = Complex(parse_number(key, value), c.setup.alpha.imag());
        } else if (key == "setup.alpha_im") {
            c.setup.alpha = Complex(c.setup.alpha.real(), parse_number(key, value));
        } else if (key == "setup.delta") {
            c.setup.delta = parse_number(key, value);
        } else if (key == "setup.compensate") {
            c.setup.compensate_back_phase = parse_bool(key, value);
        } else if (key == "setup.theta") {
            c.setup.theta = parse_angle(value);
        } else if (key == "noise.eta_bar") {
            c.noise.eta_bar = parse_number(key, value);
        } else if (key == "noise.tau_c") {
            c.noise.tau_c = parse_number(key, value);
        } else if (key == "noise.shot_var") {
            c.noise.shot_var = parse_number(key, value);
            shot_var_set = true;
        } else if (key == "run.gamma") {
            c.run.gamma = parse_number(key, value);
        } else if (key == "run.total_time") {
            c.run.total_time = parse_number(key, value);
        } else if (key == "run.post_prob") {
            c.run.post_prob = parse_number(key, value);
        } else if (key == "run.seed") {
            c.run.seed = parse_u64(key, value);
        } else if (key == "run.realizations") {
            c.run.realizations = int(parse_integer(key, value));
        } else if (key == "sweep.axis") {
            if (value != "alpha2" && value != "delta" && value != "gamma") {
                throw ConfigError("key 'sweep.axis': expected alpha2|delta|gamma");
            }
            c.sweep.axis = value;
        } else if (key == "sweep.scale") {
            if (value != "linear" && value != "log") {
                throw ConfigError("key 'sweep.scale': expected linear|log");
            }
            c.sweep.scale = value;
        } else if (key == "sweep.start") {
            c.sweep.start = parse_number(key, value);
        } else if (key == "sweep.stop") {
            c.sweep.stop = parse_number(key, value);
        } else if (key == "sweep.points") {
            c.sweep.points = int(parse_integer(key, value));
        } else if (key == "sweep.deltas") {
            c.sweep.deltas = parse_list(key, value);
        } else if (key == "output.path") {
            if (value.empty()) throw ConfigError("key 'output.path': empty path");
            c.output.path = value;
        } else if (key == "output.format") {
            if (value != "csv" && value != "json") {
                throw ConfigError("key 'output.format': expected csv|json");
            }
            c.output.format = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    if (!shot_var_set) {
        const double a2 = std::norm(c.setup.alpha);
        c.noise.shot_var = a2 > 0.0 ? 1.0 / (2.0 * a2) : 0.0;
    }
    return c;
}

Config parse_config_file(const std::string& path, Config base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), base);
}

std::string emit_config(const Config& c) {
    std::ostringstream os;
    os << "setup.phi0 = " << format_double(c.setup.phi0) << '\n'
       << "setup.alpha_re = " << format_double(c.setup.alpha.real()) << '\n'
       << "setup.alpha_im = " << format_double(c.setup.alpha.imag()) << '\n'
       << "setup.delta = " << format_double(c.setup.delta) << '\n'
       << "setup.compensate = " << (c.setup.compensate_back_phase ? "true" : "false") << '\n'
       << "setup.theta = " << format_double(c.setup.theta) << '\n'
       << "noise.eta_bar = " << format_double(c.noise.eta_bar) << '\n'
       << "noise.tau_c = " << format_double(c.noise.tau_c) << '\n'
       << "noise.shot_var = " << format_double(c.noise.shot_var) << '\n'
       << "run.gamma = " << format_double(c.run.gamma) << '\n'
       << "run.total_time = " << format_double(c.run.total_time) << '\n'
       << "run.post_prob = " << format_double(c.run.post_prob) << '\n'
       << "run.seed = " << c.run.seed << '\n'
       << "run.realizations = " << c.run.realizations << '\n'
       << "sweep.axis = " << c.sweep.axis << '\n'
       << "sweep.scale = " << c.sweep.scale << '\n'
       << "sweep.start = " << format_double(c.sweep.start) << '\n'
       << "sweep.stop = " << format_double(c.sweep.stop) << '\n'
       << "sweep.points = " << c.sweep.points << '\n';
    os << "sweep.deltas = ";
    for (size_t i = 0; i < c.sweep.deltas.size(); ++i) {
        if (i) os << ',';
        os << format_double(c.sweep.deltas[i]);
    }
    os << '\n';
    os << "output.path = " << c.output.path << '\n'
       << "output.format = " << c.output.format << '\n';
    return os.str();
}

std::vector<std::string> preset_names() {
    return {"fig2", "fig2-inset", "fig3", "nat-photon-2009"};
}

Config preset(const std::string& name) {
    Config c;
    c.setup.phi0 = 2.0 * kPi * 1e-5;
    c.setup.alpha = std::sqrt(1e5);
    c.setup.delta = 0.01;
    c.setup.compensate_back_phase = false;
    c.setup.theta = kPi / 2.0;
    c.noise.tau_c = 1.0;
    c.noise.shot_var = 1.0 / (2.0 * 1e5);
    c.noise.eta_bar = 10.0 * std::sqrt(c.noise.shot_var);
    c.run.gamma = 1e3;
    c.run.total_time = 1e3;
    c.run.post_prob = 1.0;
    c.run.seed = 20260811;
    c.run.realizations = 10000;

    if (name == "fig2") {
        // Probe-intensity sweep: |alpha|^2 phi0 covers (0, 6 pi].
        c.sweep = {"alpha2", "linear", 500.0, 3e5, 601, {}};
        c.output = {"fig2.csv", "csv"};
    } else if (name == "fig2-inset") {
        c.sweep = {"delta", "log", 1e-4, 0.5, 500, {}};
        c.output = {"fig2_inset.csv", "csv"};
    } else if (name == "fig3") {
        c.setup.delta = 0.1;
        c.sweep = {"gamma", "log", 1e-3, 1e6, 181, {0.1, 0.01}};
        c.output = {"fig3.csv", "csv"};
    } else if (name == "nat-photon-2009") {
        // Reported fiber cross-phase of 1e-7 rad per photon; kept as a
        // documented parameter set, not a reproduced result.
        c.setup.phi0 = 1e-7;
        c.setup.alpha = std::sqrt(1e6);
        c.setup.delta = 0.01;
        c.setup.compensate_back_phase = true;
        c.noise.shot_var = 1.0 / (2.0 * 1e6);
        c.noise.eta_bar = 10.0 * std::sqrt(c.noise.shot_var);
        c.sweep = {"delta", "log", 1e-5, 0.5, 400, {}};
        c.output = {"nat_photon_2009.csv", "csv"};
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return c;
}

std::vector<double> make_grid(const SweepSpec& spec) {
    if (spec.points < 2) throw ConfigError("sweep needs at least 2 grid points");
    if (!(spec.start < spec.stop)) {
        throw ConfigError("sweep needs start < stop");
    }
    std::vector<double> grid(size_t(spec.points));
    if (spec.scale == "log") {
        if (!(spec.start > 0.0)) {
            throw ConfigError("log sweep needs start > 0");
        }
        const double step = std::log(spec.stop / spec.start) / (spec.points - 1);
        for (int i = 0; i < spec.points; ++i) {
            grid[size_t(i)] = spec.start * std::exp(step * i);
        }
    } else {
        const double step = (spec.stop - spec.start) / (spec.points - 1);
        for (int i = 0; i < spec.points; ++i) {
            grid[size_t(i)] = spec.start + step * i;
        }
    }
    grid.front() = spec.start;
    grid.back() = spec.stop;
    return grid;
}

} // namespace wva
