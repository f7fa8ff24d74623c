#include "noma_mec/model_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace noma_mec {

namespace {

void check_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be strictly positive");
    }
}

}  // namespace

void SystemParams::validate() const {
    check_positive(bandwidth_hz, "bandwidth_hz");
    check_positive(slot_seconds, "slot_seconds");
    check_positive(pathloss_exponent, "pathloss_exponent");
    check_positive(pathloss_ref_gain, "pathloss_ref_gain");
    check_positive(ref_distance_m, "ref_distance_m");
    check_positive(noise_power_w, "noise_power_w");
    check_positive(energy_coeff, "energy_coeff");
    check_positive(cycles_per_bit, "cycles_per_bit");
    check_positive(amp_coeff, "amp_coeff");
    check_positive(circuit_power_w, "circuit_power_w");
    check_positive(p_max_w, "p_max_w");
    check_positive(f_max_hz, "f_max_hz");
    if (lyapunov_v < 0.0) {
        throw std::invalid_argument("lyapunov_v must be non-negative");
    }
    if (!(p_max_w > circuit_power_w)) {
        throw std::invalid_argument("p_max_w must exceed circuit_power_w, offloading is otherwise infeasible");
    }
}

void validate_geometry(const std::vector<UserGeometry>& geometry, const SystemParams& params) {
    for (const auto& g : geometry) {
        if (g.dist_to_mec_m < params.ref_distance_m) {
            throw std::invalid_argument("dist_to_mec_m below the reference distance");
        }
        if (g.dist_to_eve_m < params.ref_distance_m) {
            throw std::invalid_argument("dist_to_eve_m below the reference distance");
        }
    }
}

double sample_fading(Rng& rng) { return rng.exponential(); }

double path_loss_gain(double fading, double distance_m, const SystemParams& params) {
    if (distance_m < params.ref_distance_m) {
        throw std::invalid_argument("path_loss_gain: distance below reference distance");
    }
    return fading * params.pathloss_ref_gain *
           std::pow(params.ref_distance_m / distance_m, params.pathloss_exponent);
}

ChannelState make_channel_state(std::span<const double> fading_to_mec,
                                std::span<const double> fading_to_eve,
                                std::span<const UserGeometry> geometry,
                                const SystemParams& params) {
    const std::size_t n = geometry.size();
    if (fading_to_mec.size() != n || fading_to_eve.size() != n) {
        throw std::invalid_argument("make_channel_state: mismatched input sizes");
    }
    ChannelState ch;
    ch.gain_to_mec.resize(n);
    ch.gain_to_eve.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ch.gain_to_mec[i] = path_loss_gain(fading_to_mec[i], geometry[i].dist_to_mec_m, params);
        ch.gain_to_eve[i] = path_loss_gain(fading_to_eve[i], geometry[i].dist_to_eve_m, params);
        if (!(ch.gain_to_mec[i] > 0.0) || !(ch.gain_to_eve[i] > 0.0)) {
            throw std::invalid_argument("make_channel_state: channel gains must be positive");
        }
    }
    ch.decode_order.resize(n);
    std::iota(ch.decode_order.begin(), ch.decode_order.end(), 0);
    std::stable_sort(ch.decode_order.begin(), ch.decode_order.end(),
                     [&](int a, int b) { return ch.gain_to_mec[a] < ch.gain_to_mec[b]; });
    return ch;
}

double sinr_at_receiver(std::span<const double> powers, std::span<const double> gains,
                        double noise_w, int stage) {
    double interference = 0.0;
    for (int i = 0; i < stage; ++i) {
        interference += powers[i] * gains[i];
    }
    return powers[stage] * gains[stage] / (interference + noise_w);
}

namespace {

// ln(1+gamma_mec) - ln(1+gamma_eve) for one user, evaluated through log1p so
// the near-zero SINR regime keeps full precision.
double secrecy_log_ratio(std::span<const double> powers, const ChannelState& channel,
                         const SystemParams& params, int user, EveSinrModel eve_model) {
    const auto& order = channel.decode_order;
    int stage = 0;
    while (order[stage] != user) ++stage;

    double interf_mec = 0.0;
    double interf_eve = 0.0;
    for (int k = 0; k < stage; ++k) {
        const int u = order[k];
        interf_mec += powers[u] * channel.gain_to_mec[u];
        if (eve_model == EveSinrModel::SicInterference) {
            interf_eve += powers[u] * channel.gain_to_eve[u];
        }
    }
    const double noise = params.noise_power_w;
    const double gamma_mec = powers[user] * channel.gain_to_mec[user] / (interf_mec + noise);
    const double gamma_eve = powers[user] * channel.gain_to_eve[user] / (interf_eve + noise);
    return std::log1p(gamma_mec) - std::log1p(gamma_eve);
}

}  // namespace

double secure_offload_rate_unclipped(std::span<const double> powers, const ChannelState& channel,
                                     const SystemParams& params, int user,
                                     EveSinrModel eve_model) {
    const double prefactor = params.bandwidth_hz / std::numbers::ln2_v<double>;
    return prefactor * secrecy_log_ratio(powers, channel, params, user, eve_model);
}

double secure_offload_rate(std::span<const double> powers, const ChannelState& channel,
                           const SystemParams& params, int user, EveSinrModel eve_model) {
    return std::max(0.0, secure_offload_rate_unclipped(powers, channel, params, user, eve_model));
}

}  // namespace noma_mec
