#include "geonium/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace geonium {

HilbertSpec FileConfig::spec() const {
    HilbertSpec s;
    s.axial_dim = sim.axial_dim;
    s.cyclotron_dim = sim.cyclotron_dim;
    s.magnetron_dim = sim.magnetron_dim;
    s.validate();
    return s;
}

SimContext FileConfig::context() const {
    return SimContext::make(spec(), trap, drive, spin_drive, sim.step);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw InvalidConfigError("config line " + std::to_string(line_no) + ": " +
                             what);
}

double to_double(const std::string& s, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
        fail(line_no, "bad number '" + s + "'");
    }
    return v;
}

int to_int(const std::string& s, int line_no) {
    const double v = to_double(s, line_no);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        fail(line_no, "expected an integer, got '" + s + "'");
    }
    return i;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

FileConfig parse_config(const std::string& text) {
    FileConfig cfg;
    cfg.hash = fnv1a(text);

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    bool have_trap = false, have_B = false, have_V0 = false, have_d = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) {
            line = trim(line.substr(0, cut));
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(line_no, "unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section == "trap") {
                have_trap = true;
            } else if (section != "drive" && section != "spin_drive" &&
                       section != "sim" && section != "constants" &&
                       section != "thresholds" && section != "bottle") {
                fail(line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(line_no, "expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) {
            fail(line_no, "expected key = value");
        }
        if (section.empty()) {
            fail(line_no, "key '" + key + "' outside any section");
        }

        if (section == "trap") {
            if (key == "B") {
                cfg.trap.B = to_double(val, line_no);
                have_B = true;
            } else if (key == "V0") {
                cfg.trap.V0 = to_double(val, line_no);
                have_V0 = true;
            } else if (key == "d") {
                cfg.trap.d = to_double(val, line_no);
                have_d = true;
            } else if (key == "g_factor") {
                cfg.trap.g_factor = to_double(val, line_no);
            } else {
                fail(line_no, "unknown key '" + key + "' in [trap]");
            }
        } else if (section == "drive") {
            if (key == "alpha") {
                cfg.drive.alpha_mag = to_double(val, line_no);
            } else if (key == "k") {
                cfg.drive.k = to_double(val, line_no);
            } else if (key == "Omega") {
                cfg.drive.Omega = to_double(val, line_no);
            } else if (key == "phi") {
                cfg.drive.phi = to_double(val, line_no);
            } else if (key == "varphi") {
                cfg.drive.varphi = to_double(val, line_no);
            } else {
                fail(line_no, "unknown key '" + key + "' in [drive]");
            }
        } else if (section == "spin_drive") {
            if (key == "b") {
                cfg.spin_drive.b = to_double(val, line_no);
            } else if (key == "theta") {
                cfg.spin_drive.theta = to_double(val, line_no);
            } else {
                fail(line_no, "unknown key '" + key + "' in [spin_drive]");
            }
        } else if (section == "sim") {
            if (key == "axial_dim") {
                cfg.sim.axial_dim = to_int(val, line_no);
            } else if (key == "cyclotron_dim") {
                cfg.sim.cyclotron_dim = to_int(val, line_no);
            } else if (key == "magnetron_dim") {
                cfg.sim.magnetron_dim = to_int(val, line_no);
            } else if (key == "step") {
                cfg.sim.step = to_double(val, line_no);
            } else if (key == "compensation_n") {
                cfg.sim.compensation_n = to_int(val, line_no);
            } else {
                fail(line_no, "unknown key '" + key + "' in [sim]");
            }
        } else if (section == "constants") {
            if (key == "hbar") {
                cfg.trap.hbar = to_double(val, line_no);
            } else if (key == "e") {
                cfg.trap.electron_charge_mag = to_double(val, line_no);
            } else if (key == "m") {
                cfg.trap.electron_mass = to_double(val, line_no);
            } else {
                fail(line_no, "unknown key '" + key + "' in [constants]");
            }
        } else if (section == "thresholds") {
            if (key == "fidelity") {
                cfg.thresholds.fidelity = to_double(val, line_no);
            } else if (key == "leakage") {
                cfg.thresholds.leakage = to_double(val, line_no);
            } else {
                fail(line_no, "unknown key '" + key + "' in [thresholds]");
            }
        } else if (section == "bottle") {
            if (key == "omega_tilde") {
                cfg.bottle_omega_tilde = to_double(val, line_no);
            } else {
                fail(line_no, "unknown key '" + key + "' in [bottle]");
            }
        }
    }

    if (!have_trap) {
        throw InvalidConfigError("config: missing required [trap] section");
    }
    if (!have_B || !have_V0 || !have_d) {
        throw InvalidConfigError("config: [trap] must set B, V0 and d");
    }
    if (!(cfg.trap.B > 0.0) || !(cfg.trap.V0 > 0.0) || !(cfg.trap.d > 0.0)) {
        throw InvalidConfigError("config: B, V0 and d must be positive");
    }
    if (cfg.drive.alpha_mag < 0.0 || cfg.drive.k < 0.0 || cfg.spin_drive.b < 0.0) {
        throw InvalidConfigError(
            "config: drive amplitudes and wavevector must be non-negative");
    }
    if (cfg.sim.axial_dim < 2 || cfg.sim.cyclotron_dim < 1 ||
        cfg.sim.magnetron_dim < 1) {
        throw InvalidConfigError(
            "config: [sim] dimensions must be at least axial 2, others 1");
    }
    if (cfg.sim.step < 0.0) {
        throw InvalidConfigError("config: [sim] step must be non-negative");
    }
    if (cfg.sim.compensation_n < 0) {
        throw InvalidConfigError("config: [sim] compensation_n must be >= 0");
    }
    if (!(cfg.bottle_omega_tilde > 0.0)) {
        throw InvalidConfigError("config: [bottle] omega_tilde must be positive");
    }
    return cfg;
}

FileConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace geonium
