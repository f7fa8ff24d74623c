#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace noma_mec {

// dB/dBm conversions happen once, at configuration load; everything past
// that boundary is strict SI (Hz, s, W, bits).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

/// Physical and algorithmic constants shared by every model component.
struct SystemParams {
    double bandwidth_hz = 1e6;          // uplink bandwidth per user
    double slot_seconds = 1.0;          // slot duration
    double pathloss_exponent = 4.0;
    double pathloss_ref_gain = 1e-4;    // linear gain at the reference distance
    double ref_distance_m = 1.0;
    double noise_power_w = 1e-9;        // per receiver stage, all users
    double energy_coeff = 1e-28;        // CPU power = energy_coeff * f^3
    double cycles_per_bit = 737.5;
    double amp_coeff = 1.0;             // transmit amplifier coefficient
    double circuit_power_w = 0.1;       // constant radio circuit drain
    double p_max_w = 2.0;               // per-user total power budget
    double f_max_hz = 2.15e9;           // CPU frequency cap
    double lyapunov_v = 1e7;            // queue/efficiency tradeoff weight

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Per-user placement relative to the MEC receiver and the eavesdropper.
struct UserGeometry {
    double dist_to_mec_m = 0.0;
    double dist_to_eve_m = 0.0;
};

void validate_geometry(const std::vector<UserGeometry>& geometry,
                       const SystemParams& params);

}  // namespace noma_mec
