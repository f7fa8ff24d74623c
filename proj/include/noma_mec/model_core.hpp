#pragma once

#include <span>
#include <vector>

#include "noma_mec/params.hpp"
#include "noma_mec/rng.hpp"

namespace noma_mec {

class Rng;

// How the eavesdropper's SINR is modeled. SicInterference follows the
// uplink-SIC summation (undecoded users act as interference); FullDecode is
// the pessimistic benchmark where the eavesdropper has already removed every
// other user's signal.
enum class EveSinrModel { SicInterference, FullDecode };

/// One slot's channel realization. Gains are linear power gains indexed by
/// user; decode_order lists user indices sorted by ascending gain_to_mec,
/// which is the order the SIC receiver resolves them in. The same order is
/// applied at the eavesdropper.
struct ChannelState {
    std::vector<double> gain_to_mec;
    std::vector<double> gain_to_eve;
    std::vector<int> decode_order;
};

// Draws small-scale fading: Exponential(mean 1), i.i.d. across calls.
double sample_fading(Rng& rng);

// h = H * g0 * (d0/d)^theta. Rejects d < d0 (model undefined inside the
// reference distance).
double path_loss_gain(double fading, double distance_m, const SystemParams& params);

// Builds the per-slot channel from fading draws and geometry; validates
// positivity and fills decode_order.
ChannelState make_channel_state(std::span<const double> fading_to_mec,
                                std::span<const double> fading_to_eve,
                                std::span<const UserGeometry> geometry,
                                const SystemParams& params);

// SIC-stage SINR. `powers` and `gains` must already be in decode order;
// `stage` is the position in that order. Interference comes from stages
// decoded after this one (positions 0..stage-1).
double sinr_at_receiver(std::span<const double> powers, std::span<const double> gains,
                        double noise_w, int stage);

// Secrecy rate of Eq-style [R_mec - R_eve]^+ in bits/s. `powers` is indexed
// by user (natural order); `user` is a natural index.
double secure_offload_rate(std::span<const double> powers, const ChannelState& channel,
                           const SystemParams& params, int user,
                           EveSinrModel eve_model = EveSinrModel::SicInterference);

// Same quantity without the [.]^+ clip; the per-slot optimizer works on this
// smooth version.
double secure_offload_rate_unclipped(std::span<const double> powers,
                                     const ChannelState& channel,
                                     const SystemParams& params, int user,
                                     EveSinrModel eve_model = EveSinrModel::SicInterference);

inline double local_rate(double cpu_freq_hz, double cycles_per_bit) {
    return cpu_freq_hz / cycles_per_bit;
}

inline double local_power(double cpu_freq_hz, double energy_coeff) {
    return energy_coeff * cpu_freq_hz * cpu_freq_hz * cpu_freq_hz;
}

inline double offload_power(double tx_power_w, const SystemParams& params) {
    return params.amp_coeff * tx_power_w + params.circuit_power_w;
}

// Total power drawn by one user for a (frequency, transmit power) choice.
inline double user_total_power(double cpu_freq_hz, double tx_power_w,
                               const SystemParams& params) {
    return offload_power(tx_power_w, params) + local_power(cpu_freq_hz, params.energy_coeff);
}

}  // namespace noma_mec
