#include "noma_mec/manifest.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace noma_mec {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::runtime_error("manifest line " + std::to_string(line) +
                                 ": expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& value, int line) {
    const double v = parse_double(value, line);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw std::runtime_error("manifest line " + std::to_string(line) +
                                 ": expected an integer, got '" + value + "'");
    }
    return i;
}

std::uint64_t parse_u64(const std::string& value, int line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::runtime_error("manifest line " + std::to_string(line) +
                                 ": expected an unsigned integer, got '" + value + "'");
    }
    return v;
}

bool parse_bool(const std::string& value, int line) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::runtime_error("manifest line " + std::to_string(line) +
                             ": expected true/false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& value, int line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw std::runtime_error("manifest line " + std::to_string(line) +
                                     ": empty list element");
        }
        out.push_back(parse_double(item, line));
    }
    if (out.empty()) {
        throw std::runtime_error("manifest line " + std::to_string(line) + ": empty list");
    }
    return out;
}

}  // namespace

ExperimentManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open manifest: " + path);
    }
    ExperimentManifest m;
    using Setter = std::function<void(ExperimentManifest&, const std::string&, int)>;
    const std::map<std::string, Setter> keys = {
        {"bandwidth_mhz", [](auto& m, auto& v, int l) { m.bandwidth_mhz = parse_double(v, l); }},
        {"slot_seconds", [](auto& m, auto& v, int l) { m.slot_seconds = parse_double(v, l); }},
        {"pathloss_exponent",
         [](auto& m, auto& v, int l) { m.pathloss_exponent = parse_double(v, l); }},
        {"pathloss_const_db",
         [](auto& m, auto& v, int l) { m.pathloss_const_db = parse_double(v, l); }},
        {"ref_distance_m", [](auto& m, auto& v, int l) { m.ref_distance_m = parse_double(v, l); }},
        {"noise_dbm", [](auto& m, auto& v, int l) { m.noise_dbm = parse_double(v, l); }},
        {"energy_coeff", [](auto& m, auto& v, int l) { m.energy_coeff = parse_double(v, l); }},
        {"cycles_per_bit", [](auto& m, auto& v, int l) { m.cycles_per_bit = parse_double(v, l); }},
        {"amp_coeff", [](auto& m, auto& v, int l) { m.amp_coeff = parse_double(v, l); }},
        {"circuit_power_w",
         [](auto& m, auto& v, int l) { m.circuit_power_w = parse_double(v, l); }},
        {"p_max_w", [](auto& m, auto& v, int l) { m.p_max_w = parse_double(v, l); }},
        {"f_max_ghz", [](auto& m, auto& v, int l) { m.f_max_ghz = parse_double(v, l); }},
        {"lyapunov_v", [](auto& m, auto& v, int l) { m.lyapunov_v = parse_double(v, l); }},
        {"arrival_low_bits",
         [](auto& m, auto& v, int l) { m.arrival_low_bits = parse_double(v, l); }},
        {"arrival_high_bits",
         [](auto& m, auto& v, int l) { m.arrival_high_bits = parse_double(v, l); }},
        {"num_users", [](auto& m, auto& v, int l) { m.num_users = parse_int(v, l); }},
        {"dist_to_mec_m", [](auto& m, auto& v, int l) { m.dist_to_mec_m = parse_list(v, l); }},
        {"dist_to_eve_m", [](auto& m, auto& v, int l) { m.dist_to_eve_m = parse_list(v, l); }},
        {"slots", [](auto& m, auto& v, int l) { m.slots = parse_int(v, l); }},
        {"realizations", [](auto& m, auto& v, int l) { m.realizations = parse_int(v, l); }},
        {"seed", [](auto& m, auto& v, int l) { m.seed = parse_u64(v, l); }},
        {"scheme", [](auto& m, auto& v, int) { m.scheme = v; }},
        {"sweep", [](auto& m, auto& v, int) { m.sweep = v; }},
        {"sweep_values", [](auto& m, auto& v, int l) { m.sweep_values = parse_list(v, l); }},
        {"output_dir", [](auto& m, auto& v, int) { m.output_dir = v; }},
        {"emit_trace", [](auto& m, auto& v, int l) { m.emit_trace = parse_bool(v, l); }},
        {"emit_summary", [](auto& m, auto& v, int l) { m.emit_summary = parse_bool(v, l); }},
        {"emit_figures", [](auto& m, auto& v, int l) { m.emit_figures = parse_bool(v, l); }},
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = keys.find(key);
        if (it == keys.end()) {
            throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
        it->second(m, value, line_no);
    }
    return m;
}

SimConfig to_sim_config(const ExperimentManifest& m) {
    const auto fail = [](const std::string& key, const std::string& why) {
        throw std::runtime_error("manifest key '" + key + "': " + why);
    };

    if (!(m.bandwidth_mhz > 0.0)) fail("bandwidth_mhz", "must be positive");
    if (!(m.slot_seconds > 0.0)) fail("slot_seconds", "must be positive");
    if (!(m.f_max_ghz > 0.0)) fail("f_max_ghz", "must be positive");
    if (m.num_users < 1) fail("num_users", "must be at least 1");
    if (m.slots < 1) fail("slots", "must be at least 1");
    if (m.realizations < 1) fail("realizations", "must be at least 1");
    if (static_cast<int>(m.dist_to_mec_m.size()) != m.num_users) {
        fail("dist_to_mec_m", "must list one distance per user");
    }
    if (static_cast<int>(m.dist_to_eve_m.size()) != m.num_users) {
        fail("dist_to_eve_m", "must list one distance per user");
    }

    SimConfig cfg;
    cfg.params.bandwidth_hz = m.bandwidth_mhz * 1e6;
    cfg.params.slot_seconds = m.slot_seconds;
    cfg.params.pathloss_exponent = m.pathloss_exponent;
    cfg.params.pathloss_ref_gain = db_to_linear(m.pathloss_const_db);
    cfg.params.ref_distance_m = m.ref_distance_m;
    cfg.params.noise_power_w = dbm_to_watts(m.noise_dbm);
    cfg.params.energy_coeff = m.energy_coeff;
    cfg.params.cycles_per_bit = m.cycles_per_bit;
    cfg.params.amp_coeff = m.amp_coeff;
    cfg.params.circuit_power_w = m.circuit_power_w;
    cfg.params.p_max_w = m.p_max_w;
    cfg.params.f_max_hz = m.f_max_ghz * 1e9;
    cfg.params.lyapunov_v = m.lyapunov_v;
    cfg.arrival.low_bits = m.arrival_low_bits;
    cfg.arrival.high_bits = m.arrival_high_bits;
    cfg.num_users = m.num_users;
    cfg.geometry.resize(m.num_users);
    for (int u = 0; u < m.num_users; ++u) {
        cfg.geometry[u].dist_to_mec_m = m.dist_to_mec_m[u];
        cfg.geometry[u].dist_to_eve_m = m.dist_to_eve_m[u];
    }
    cfg.num_slots = m.slots;
    cfg.num_realizations = m.realizations;
    cfg.seed = m.seed;

    if (m.scheme == "all") {
        cfg.schemes.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
    } else if (const auto s = parse_scheme(m.scheme)) {
        cfg.schemes = {*s};
    } else {
        fail("scheme", "unknown scheme '" + m.scheme + "'");
    }
    if (const auto k = parse_sweep(m.sweep)) {
        cfg.sweep.kind = *k;
    } else {
        fail("sweep", "unknown sweep '" + m.sweep + "'");
    }
    cfg.sweep.values = m.sweep_values;

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        // Re-map SI field names to manifest keys where they differ.
        std::string what = e.what();
        if (what.find("bandwidth_hz") != std::string::npos) fail("bandwidth_mhz", what);
        if (what.find("noise_power_w") != std::string::npos) fail("noise_dbm", what);
        if (what.find("pathloss_ref_gain") != std::string::npos) fail("pathloss_const_db", what);
        if (what.find("f_max_hz") != std::string::npos) fail("f_max_ghz", what);
        if (what.find("arrival") != std::string::npos) fail("arrival_low_bits", what);
        if (what.find("dist_to_mec_m") != std::string::npos) fail("dist_to_mec_m", what);
        if (what.find("dist_to_eve_m") != std::string::npos) fail("dist_to_eve_m", what);
        throw std::runtime_error(std::string("manifest: ") + what);
    }
    return cfg;
}

}  // namespace noma_mec
