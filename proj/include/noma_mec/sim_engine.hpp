#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noma_mec/params.hpp"
#include "noma_mec/queueing.hpp"
#include "noma_mec/schemes.hpp"

namespace noma_mec {

enum class SweepKind { None, TaskLength, EveDistance, PMax };

std::string sweep_name(SweepKind kind);
std::optional<SweepKind> parse_sweep(const std::string& name);
std::vector<double> default_sweep_values(SweepKind kind);

struct SweepSpec {
    SweepKind kind = SweepKind::None;
    std::vector<double> values;  // ignored when kind == None
};

struct SimConfig {
    SystemParams params;
    std::vector<UserGeometry> geometry;
    ArrivalModel arrival;
    int num_users = 2;
    int num_slots = 1000;
    int num_realizations = 1000;
    std::uint64_t seed = 1;
    std::vector<SchemeId> schemes = {SchemeId::Proposed};
    SweepSpec sweep;

    void validate() const;
};

/// One slot outcome. Queues are the start-of-slot backlogs Algorithm-style;
/// ee_ratio is the bits-per-joule ratio including this slot.
struct TraceRecord {
    int slot = 0;
    int realization = 0;
    std::vector<double> cpu_freq_hz;
    std::vector<double> tx_power_w;
    std::vector<double> rate_local_bps;
    std::vector<double> rate_offload_bps;
    std::vector<double> queue_bits;
    double total_rate_bps = 0.0;
    double total_power_w = 0.0;
    double ee_ratio = 0.0;
    double effective_throughput_bps = 0.0;  // sum_n min(Q_n, R_n tau)/tau
    unsigned solver_flags = 0;
};

// Episode seeds are a pure function of (master seed, realization index) so
// every scheme and sweep value faces identical channel and arrival draws;
// that pairing is what makes the scheme comparisons tight.
std::uint64_t derive_realization_seed(std::uint64_t master_seed, int realization);

// Runs one episode: per slot draw fading and arrivals, decide via the
// scheme (warm-started from the previous slot's powers), record, then update
// queues and the energy-efficiency accumulator. Deterministic in `seed`.
std::vector<TraceRecord> run_episode(const SimConfig& config, SchemeId scheme,
                                     int realization, std::uint64_t seed);

// First 1-based slot index from which the series stays within +/-2% of its
// final value through the end. The stable window must hold at least two
// points, so a series that keeps oscillating beyond the band reports
// nullopt. Throws if the series has fewer than two points.
std::optional<int> convergence_slot(std::span<const double> running_ee);

struct CellResult {
    SchemeId scheme = SchemeId::Proposed;
    SweepKind sweep_kind = SweepKind::None;
    double sweep_value = 0.0;
    std::vector<double> ee_per_realization;          // final bits-per-joule ratio
    std::vector<double> mean_queue_per_realization;  // time-averaged total queue
    std::vector<double> mean_running_ee;             // per slot, realization-averaged
    std::vector<double> mean_total_queue;            // per slot, realization-averaged
    double mean_ee = 0.0;
    double stderr_ee = 0.0;
    double mean_queue_bits = 0.0;
    std::optional<int> convergence;
};

struct ExperimentResult {
    std::vector<CellResult> cells;  // sweep value outer, scheme inner
    // Full traces in (cell, realization) order; filled only when requested.
    std::vector<std::vector<std::vector<TraceRecord>>> traces;
};

// Applies one sweep value to the base configuration: TaskLength scales the
// arrival support multiplicatively (value = resulting mean arrival in bits),
// EveDistance scales every user's eavesdropper distance (value = scale
// factor), PMax replaces the power budget (value = watts).
SimConfig apply_sweep(const SimConfig& base, SweepKind kind, double value);

struct ExperimentOptions {
    bool keep_traces = false;
    int max_threads = 0;  // 0: NOMA_MEC_THREADS env var, else hardware
};

// Runs num_realizations paired episodes per (sweep value, scheme) cell.
// Realizations execute concurrently; results are merged in realization-index
// order, so the outcome is independent of the worker count.
ExperimentResult run_experiment(const SimConfig& config, const ExperimentOptions& options = {});

}  // namespace noma_mec
