#pragma once

// Shared instance generators for the unit and acceptance suites. All
// generators are deterministic given the Rng.

#include <cmath>
#include <limits>
#include <vector>

#include "noma_mec/rng.hpp"
#include "noma_mec/slot_optimizer.hpp"

namespace noma_mec::testing {

inline std::vector<UserGeometry> reference_geometry() {
    return {{80.0, 120.0}, {40.0, 80.0}};
}

struct RandomStateOptions {
    double queue_max_bits = 2e7;
    double eta_min = 1e4;
    double eta_max = 1e7;
    double zero_eta_probability = 0.0;
    EveSinrModel eve_model = EveSinrModel::SicInterference;
};

// A two-user slot instance at the reference constants: exponential fading at
// the reference distances, uniform queues, arrival-sized arrivals and a
// log-uniform running efficiency ratio.
inline SlotState random_two_user_state(Rng& rng, const RandomStateOptions& opt = {}) {
    SlotState st;
    st.params = SystemParams{};
    const auto geometry = reference_geometry();
    std::vector<double> fade_mec(2), fade_eve(2);
    for (int u = 0; u < 2; ++u) fade_mec[u] = sample_fading(rng);
    for (int u = 0; u < 2; ++u) fade_eve[u] = sample_fading(rng);
    st.channel = make_channel_state(fade_mec, fade_eve, geometry, st.params);
    st.queues_bits = {opt.queue_max_bits * rng.next_u01(), opt.queue_max_bits * rng.next_u01()};
    st.arrivals_bits = {rng.uniform(1e6, 2e6), rng.uniform(1e6, 2e6)};
    if (opt.zero_eta_probability > 0.0 && rng.next_u01() < opt.zero_eta_probability) {
        st.ee_ratio = 0.0;
    } else {
        st.ee_ratio = std::exp(rng.uniform(std::log(opt.eta_min), std::log(opt.eta_max)));
    }
    st.eve_model = opt.eve_model;
    return st;
}

// Dense grid over the transmit powers at fixed frequencies, maximizing the
// realized (clipped) slot objective. Independent check for the SCA path.
inline double power_grid_objective(const SlotState& st, const std::vector<double>& freq,
                                   int grid_points) {
    const auto& pr = st.params;
    const int n = st.num_users();
    std::vector<double> pbar(n);
    for (int u = 0; u < n; ++u) {
        pbar[u] = std::max(0.0, (pr.p_max_w - pr.circuit_power_w -
                                 local_power(freq[u], pr.energy_coeff)) /
                                    pr.amp_coeff);
    }
    std::vector<int> idx(n, 0);
    std::vector<double> power(n, 0.0);
    double best = -std::numeric_limits<double>::infinity();
    bool done = false;
    while (!done) {
        for (int u = 0; u < n; ++u) {
            power[u] = pbar[u] * idx[u] / (grid_points - 1);
        }
        best = std::max(best, drift_penalty_objective(st, {freq, power}));
        int axis = n - 1;
        while (axis >= 0) {
            if (++idx[axis] < grid_points) break;
            idx[axis] = 0;
            --axis;
        }
        done = axis < 0;
    }
    return best;
}

}  // namespace noma_mec::testing
