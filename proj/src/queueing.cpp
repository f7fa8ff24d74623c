#include "noma_mec/queueing.hpp"

#include <stdexcept>

namespace noma_mec {

void ArrivalModel::validate() const {
    if (low_bits < 0.0 || high_bits < low_bits) {
        throw std::invalid_argument("arrival support requires 0 <= low_bits <= high_bits");
    }
}

double sample_arrival(const ArrivalModel& model, Rng& rng) {
    return rng.uniform(model.low_bits, model.high_bits);
}

QueueMetric mean_queue_metric(std::span<const std::vector<double>> trace) {
    if (trace.empty()) {
        throw std::invalid_argument("mean_queue_metric: empty trace");
    }
    double total = 0.0;
    for (const auto& slot : trace) {
        for (double q : slot) total += q;
    }
    QueueMetric m;
    const double slots = static_cast<double>(trace.size());
    m.mean_total_queue_bits = total / slots;
    m.normalized = m.mean_total_queue_bits / slots;
    return m;
}

}  // namespace noma_mec
