#include "sqom/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "sqom/errors.hpp"

namespace sqom {

const char* axis_name_str(AxisName a) {
    switch (a) {
        case AxisName::delta_c: return "delta_c";
        case AxisName::r_d: return "r_d";
        case AxisName::theta_d: return "theta_d";
        case AxisName::r_e: return "r_e";
        case AxisName::theta_e: return "theta_e";
        case AxisName::delta_theta: return "delta_theta";
        case AxisName::delta_r: return "delta_r";
        case AxisName::phi: return "phi";
        case AxisName::chi: return "chi";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, const std::string& key) {
    // permit simple multiples of pi, used constantly for phases
    static const std::map<std::string, double> named = {
        {"pi", M_PI}, {"2pi", 2.0 * M_PI}, {"pi/2", M_PI / 2.0},
        {"-pi", -M_PI}, {"3pi", 3.0 * M_PI}, {"4pi", 4.0 * M_PI},
    };
    const auto it = named.find(s);
    if (it != named.end()) return it->second;
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value '" + s + "' for key '" + key + "'");
    }
}

std::vector<double> parse_value_list(std::string s, const std::string& key) {
    s = trim(s);
    if (s.rfind("linspace(", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(9, s.size() - 10);
        std::vector<std::string> parts;
        std::stringstream ss(inner);
        std::string tok;
        while (std::getline(ss, tok, ',')) parts.push_back(trim(tok));
        if (parts.size() != 3) throw ConfigError("linspace needs (start, stop, count) for '" + key + "'");
        const double a = parse_number(parts[0], key);
        const double b = parse_number(parts[1], key);
        const long n = static_cast<long>(parse_number(parts[2], key));
        if (n < 2) throw ConfigError("linspace count must be >= 2 for '" + key + "'");
        std::vector<double> out(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        return out;
    }
    if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(parse_number(tok, key));
    }
    if (out.empty()) throw ConfigError("empty value list for '" + key + "'");
    return out;
}

std::optional<AxisName> axis_from_string(const std::string& s) {
    for (AxisName a : {AxisName::delta_c, AxisName::r_d, AxisName::theta_d,
                       AxisName::r_e, AxisName::theta_e, AxisName::delta_theta,
                       AxisName::delta_r, AxisName::phi, AxisName::chi}) {
        if (s == axis_name_str(a)) return a;
    }
    return std::nullopt;
}

}  // namespace

SweepConfig parse_config(std::istream& in) {
    SweepConfig cfg;
    bool saw_r_e = false, saw_theta_e = false, saw_opa = false, saw_drive = false;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        }

        if (key.rfind("axis.", 0) == 0) {
            const std::string name = key.substr(5);
            const auto axis = axis_from_string(name);
            if (!axis) throw ConfigError("unknown axis '" + name + "'");
            for (const Axis& a : cfg.axes) {
                if (a.name == *axis) throw ConfigError("duplicate axis '" + name + "'");
            }
            cfg.axes.push_back({*axis, parse_value_list(val, key)});
            continue;
        }

        if (key == "mode") {
            if (val == "reproduction") cfg.mode = CouplingMode::reproduction;
            else if (val == "first_principles") cfg.mode = CouplingMode::first_principles;
            else throw ConfigError("mode must be reproduction or first_principles");
        } else if (key == "format") {
            if (val == "csv") cfg.format = OutputFormat::csv;
            else if (val == "json") cfg.format = OutputFormat::json;
            else throw ConfigError("format must be csv or json");
        } else if (key == "output") {
            cfg.output_path = val;
        } else if (key == "threads") {
            cfg.threads = static_cast<int>(parse_number(val, key));
        } else if (key == "sweep_cap") {
            cfg.sweep_cap = static_cast<long long>(parse_number(val, key));
        } else if (key == "omega_m1") {
            cfg.base.omega_m1 = parse_number(val, key);
        } else if (key == "omega_m2") {
            cfg.base.omega_m2 = parse_number(val, key);
        } else if (key == "kappa") {
            cfg.base.kappa = parse_number(val, key);
        } else if (key == "gamma_m1") {
            cfg.base.gamma_m1 = parse_number(val, key);
        } else if (key == "gamma_m2") {
            cfg.base.gamma_m2 = parse_number(val, key);
        } else if (key == "g1") {
            cfg.base.g1 = parse_number(val, key);
        } else if (key == "g2") {
            cfg.base.g2 = parse_number(val, key);
        } else if (key == "chi") {
            cfg.base.chi = parse_number(val, key);
        } else if (key == "phi") {
            cfg.base.phi = parse_number(val, key);
        } else if (key == "delta_c") {
            cfg.base.delta_c = parse_number(val, key);
        } else if (key == "opa_pump") {
            cfg.base.opa_pump = parse_number(val, key);
            saw_opa = true;
        } else if (key == "r_d") {
            cfg.r_d = parse_number(val, key);
        } else if (key == "theta_d") {
            cfg.base.theta_d = parse_number(val, key);
        } else if (key == "drive_amp") {
            cfg.base.drive_amp = parse_number(val, key);
            saw_drive = true;
        } else if (key == "power") {
            cfg.power = parse_number(val, key);
        } else if (key == "omega_drive") {
            cfg.omega_drive = parse_number(val, key);
        } else if (key == "r_e") {
            cfg.base.r_e = parse_number(val, key);
            saw_r_e = true;
        } else if (key == "theta_e") {
            cfg.base.theta_e = parse_number(val, key);
            saw_theta_e = true;
        } else if (key == "delta_r") {
            cfg.delta_r = parse_number(val, key);
        } else if (key == "delta_theta") {
            cfg.delta_theta = parse_number(val, key);
        } else if (key == "nbar_m1") {
            cfg.base.nbar_m1 = parse_number(val, key);
        } else if (key == "nbar_m2") {
            cfg.base.nbar_m2 = parse_number(val, key);
        } else if (key == "coupling_scale") {
            cfg.coupling_scale = parse_number(val, key);
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }

    if (cfg.r_d && saw_opa) throw ConfigError("give either r_d or opa_pump, not both");
    if (cfg.power && saw_drive) throw ConfigError("give either power or drive_amp, not both");
    if (cfg.power && !cfg.omega_drive) throw ConfigError("power requires omega_drive");
    if (cfg.delta_r && saw_r_e) throw ConfigError("give either delta_r or r_e, not both");
    if (cfg.delta_theta && saw_theta_e) throw ConfigError("give either delta_theta or theta_e, not both");
    bool axis_r_e = false, axis_delta_r = false, axis_theta_e = false, axis_delta_theta = false;
    for (const Axis& a : cfg.axes) {
        axis_r_e |= a.name == AxisName::r_e;
        axis_delta_r |= a.name == AxisName::delta_r;
        axis_theta_e |= a.name == AxisName::theta_e;
        axis_delta_theta |= a.name == AxisName::delta_theta;
    }
    if (axis_r_e && axis_delta_r) throw ConfigError("axes r_e and delta_r are exclusive");
    if (axis_theta_e && axis_delta_theta) throw ConfigError("axes theta_e and delta_theta are exclusive");
    // default reservoir spelling: phase-matched relative offsets
    if (!saw_r_e && !cfg.delta_r && !axis_r_e) cfg.delta_r = 0.0;
    if (!saw_theta_e && !cfg.delta_theta && !axis_theta_e) cfg.delta_theta = M_PI;

    long long count = 1;
    for (const Axis& a : cfg.axes) {
        count *= static_cast<long long>(a.values.size());
        if (count > cfg.sweep_cap) {
            throw ConfigError("sweep product exceeds cap of " + std::to_string(cfg.sweep_cap));
        }
    }
    return cfg;
}

SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

PhysicalParams SweepConfig::at(const std::vector<double>& overrides) const {
    if (overrides.size() != axes.size()) {
        throw Error("axis override count mismatch");
    }
    PhysicalParams p = base;
    bool use_rd = r_d.has_value();
    double rd_v = use_rd ? *r_d : 0.0;
    bool use_dr = delta_r.has_value();
    double dr_v = use_dr ? *delta_r : 0.0;
    bool use_dth = delta_theta.has_value();
    double dth_v = use_dth ? *delta_theta : 0.0;

    for (size_t i = 0; i < axes.size(); ++i) {
        const double v = overrides[i];
        switch (axes[i].name) {
            case AxisName::delta_c: p.delta_c = v; break;
            case AxisName::r_d: use_rd = true; rd_v = v; break;
            case AxisName::theta_d: p.theta_d = v; break;
            case AxisName::r_e: p.r_e = v; use_dr = false; break;
            case AxisName::theta_e: p.theta_e = v; use_dth = false; break;
            case AxisName::delta_r: use_dr = true; dr_v = v; break;
            case AxisName::delta_theta: use_dth = true; dth_v = v; break;
            case AxisName::phi: p.phi = v; break;
            case AxisName::chi: p.chi = v; break;
        }
    }

    if (power) p.drive_amp = drive_amplitude(*power, p.kappa, *omega_drive);
    if (use_rd) {
        if (rd_v != 0.0 && !(p.delta_c > 0.0)) {
            throw ThresholdExceeded("r_d > 0 is unreachable at delta_c <= 0");
        }
        p.opa_pump = opa_from_squeezing(p.delta_c, rd_v);
    }
    const double r_d_actual = squeezing_from_opa(p.delta_c, p.opa_pump);
    if (use_dr) p.r_e = r_d_actual + dr_v;
    if (use_dth) p.theta_e = p.theta_d + dth_v;
    p.validate();
    return p;
}

}  // namespace sqom
