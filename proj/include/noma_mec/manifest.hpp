#pragma once

#include <string>

#include "noma_mec/sim_engine.hpp"

namespace noma_mec {

/// Experiment configuration in natural units (dBm noise, dB path-loss
/// constant, GHz/MHz frequencies). Conversion to SI happens once, in
/// to_sim_config(). Defaults reproduce the reference two-user setup.
struct ExperimentManifest {
    double bandwidth_mhz = 1.0;
    double slot_seconds = 1.0;
    double pathloss_exponent = 4.0;
    double pathloss_const_db = -40.0;
    double ref_distance_m = 1.0;
    double noise_dbm = -60.0;
    double energy_coeff = 1e-28;
    double cycles_per_bit = 737.5;
    double amp_coeff = 1.0;
    double circuit_power_w = 0.1;
    double p_max_w = 2.0;
    double f_max_ghz = 2.15;
    double lyapunov_v = 1e7;
    double arrival_low_bits = 1e6;
    double arrival_high_bits = 2e6;
    int num_users = 2;
    std::vector<double> dist_to_mec_m = {80.0, 40.0};
    std::vector<double> dist_to_eve_m = {120.0, 80.0};
    int slots = 1000;
    int realizations = 1000;
    std::uint64_t seed = 1;
    std::string scheme = "proposed";  // or full_offloading, eve_fully_decode, all
    std::string sweep = "none";       // or task_length, eve_distance, p_max
    std::vector<double> sweep_values;  // empty: per-sweep defaults
    std::string output_dir = "out";
    bool emit_trace = false;
    bool emit_summary = true;
    bool emit_figures = true;
};

// Parses a flat key=value file ('#' comments, blank lines allowed). Unknown
// keys and malformed values are errors carrying the line number; validation
// errors name the offending key.
ExperimentManifest load_manifest(const std::string& path);

// Applies the unit conversions and invariant checks, producing the SI
// configuration the engine runs on.
SimConfig to_sim_config(const ExperimentManifest& manifest);

}  // namespace noma_mec
