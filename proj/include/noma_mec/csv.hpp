#pragma once

#include <string>
#include <vector>

#include "noma_mec/sim_engine.hpp"

namespace noma_mec {

// Fixed 12-significant-digit scientific form so re-runs are byte-identical.
std::string format_number(double value);

// summary.csv: scheme, sweep_param, sweep_value, mean_ee_bits_per_joule,
// stderr_ee, mean_queue_bits, convergence_slot (-1 when the series never
// settles). One row per (sweep value, scheme) cell.
std::string summary_csv(const ExperimentResult& result);

// Long-format per-slot series of the realization-averaged running energy
// efficiency: scheme, slot, running_ee_bits_per_joule.
std::string ee_vs_slot_csv(const ExperimentResult& result);

// Per-sweep figure data: scheme, sweep_value, mean_ee_bits_per_joule,
// stderr_ee, mean_queue_bits.
std::string sweep_figure_csv(const ExperimentResult& result);

// Flattened trace rows: realization, slot, user, cpu_freq_hz, tx_power_w,
// rate_local_bps, rate_offload_bps, queue_bits, total_rate_bps,
// total_power_w, ee_ratio_bits_per_joule, effective_throughput_bps,
// solver_flags.
std::string trace_csv(const std::vector<std::vector<TraceRecord>>& realizations);

}  // namespace noma_mec
