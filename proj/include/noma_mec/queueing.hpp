#pragma once

#include <span>
#include <vector>

#include "noma_mec/rng.hpp"

namespace noma_mec {

/// Per-user task buffer snapshot at the start of a slot.
struct UserState {
    double queue_bits = 0.0;
    double arrival_bits = 0.0;
};

/// Uniform arrival size support, in bits.
struct ArrivalModel {
    double low_bits = 1e6;
    double high_bits = 2e6;

    void validate() const;
};

// Q(t+1) = max(Q - R*tau, 0) + A. Service is applied before the slot's
// arrival is admitted.
inline double queue_update(double queue_bits, double total_rate_bps, double tau_s,
                           double arrival_bits) {
    const double served = queue_bits - total_rate_bps * tau_s;
    return (served > 0.0 ? served : 0.0) + arrival_bits;
}

double sample_arrival(const ArrivalModel& model, Rng& rng);

struct QueueMetric {
    double mean_total_queue_bits = 0.0;  // (1/T) sum_t sum_n Q_n(t)
    double normalized = 0.0;             // mean_total_queue_bits / T; -> 0 under mean-rate stability
};

// `trace` holds one per-user queue vector per slot; throws on an empty trace.
QueueMetric mean_queue_metric(std::span<const std::vector<double>> trace);

}  // namespace noma_mec
