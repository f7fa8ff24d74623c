#include "noma_mec/sim_engine.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "noma_mec/rng.hpp"

namespace noma_mec {

std::string sweep_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::None: return "none";
        case SweepKind::TaskLength: return "task_length";
        case SweepKind::EveDistance: return "eve_distance";
        case SweepKind::PMax: return "p_max";
    }
    return "unknown";
}

std::optional<SweepKind> parse_sweep(const std::string& name) {
    for (SweepKind k : {SweepKind::None, SweepKind::TaskLength, SweepKind::EveDistance,
                        SweepKind::PMax}) {
        if (sweep_name(k) == name) return k;
    }
    return std::nullopt;
}

std::vector<double> default_sweep_values(SweepKind kind) {
    switch (kind) {
        case SweepKind::None: return {};
        case SweepKind::TaskLength: return {1.5e6, 1.875e6, 2.25e6, 2.625e6, 3.0e6};
        case SweepKind::EveDistance: return {0.5, 0.75, 1.0, 1.5, 2.0};
        case SweepKind::PMax: return {0.25, 0.5, 1.0, 1.5, 2.0};
    }
    return {};
}

void SimConfig::validate() const {
    params.validate();
    arrival.validate();
    if (num_users < 1) throw std::invalid_argument("num_users must be at least 1");
    if (num_slots < 1) throw std::invalid_argument("num_slots must be at least 1");
    if (num_realizations < 1) throw std::invalid_argument("num_realizations must be at least 1");
    if (static_cast<int>(geometry.size()) != num_users) {
        throw std::invalid_argument("geometry must list one entry per user");
    }
    validate_geometry(geometry, params);
    if (schemes.empty()) throw std::invalid_argument("at least one scheme is required");
    for (double v : sweep.values) {
        if (!(v > 0.0)) throw std::invalid_argument("sweep values must be positive");
    }
}

std::uint64_t derive_realization_seed(std::uint64_t master_seed, int realization) {
    return splitmix64(splitmix64(master_seed) ^
                      (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(realization) + 1)));
}

std::vector<TraceRecord> run_episode(const SimConfig& config, SchemeId scheme, int realization,
                                     std::uint64_t seed) {
    config.validate();
    const int n = config.num_users;
    const int slots = config.num_slots;
    const auto& pr = config.params;
    const EveSinrModel eve_model = scheme_eve_model(scheme);

    Rng rng(seed);
    std::vector<double> queues(n, 0.0);
    std::vector<double> prev_power(n, 0.0);
    std::vector<double> fading_mec(n), fading_eve(n), arrivals(n);
    EeAccumulator acc;

    std::vector<TraceRecord> trace;
    trace.reserve(slots);
    for (int t = 0; t < slots; ++t) {
        // Fixed draw order per slot: MEC fading, eavesdropper fading, arrivals.
        for (int u = 0; u < n; ++u) fading_mec[u] = sample_fading(rng);
        for (int u = 0; u < n; ++u) fading_eve[u] = sample_fading(rng);
        for (int u = 0; u < n; ++u) arrivals[u] = sample_arrival(config.arrival, rng);

        SlotState state;
        state.queues_bits = queues;
        state.arrivals_bits = arrivals;
        state.channel = make_channel_state(fading_mec, fading_eve, config.geometry, pr);
        state.ee_ratio = acc.ratio();
        state.params = pr;
        state.eve_model = eve_model;

        const SolveResult solved = decide(scheme, state, prev_power);

        TraceRecord rec;
        rec.slot = t;
        rec.realization = realization;
        rec.cpu_freq_hz = solved.decision.cpu_freq_hz;
        rec.tx_power_w = solved.decision.tx_power_w;
        rec.queue_bits = queues;
        rec.solver_flags = solved.flags.mask();
        rec.rate_local_bps.resize(n);
        rec.rate_offload_bps.resize(n);
        for (int u = 0; u < n; ++u) {
            rec.rate_local_bps[u] = local_rate(rec.cpu_freq_hz[u], pr.cycles_per_bit);
            rec.rate_offload_bps[u] = secure_offload_rate(rec.tx_power_w, state.channel, pr, u,
                                                          eve_model);
            const double user_rate = rec.rate_local_bps[u] + rec.rate_offload_bps[u];
            rec.total_rate_bps += user_rate;
            rec.total_power_w += user_total_power(rec.cpu_freq_hz[u], rec.tx_power_w[u], pr);
            rec.effective_throughput_bps +=
                std::min(queues[u], user_rate * pr.slot_seconds) / pr.slot_seconds;
        }
        rec.ee_ratio = acc.update(rec.total_rate_bps, rec.total_power_w, pr.slot_seconds);
        for (int u = 0; u < n; ++u) {
            const double user_rate = rec.rate_local_bps[u] + rec.rate_offload_bps[u];
            queues[u] = queue_update(queues[u], user_rate, pr.slot_seconds, arrivals[u]);
        }
        prev_power = rec.tx_power_w;
        trace.push_back(std::move(rec));
    }
    return trace;
}

std::optional<int> convergence_slot(std::span<const double> running_ee) {
    const int size = static_cast<int>(running_ee.size());
    if (size < 2) {
        throw std::invalid_argument("convergence_slot: series too short");
    }
    const double final_value = running_ee[size - 1];
    const double band = 0.02 * std::abs(final_value);
    int first = size - 1;
    while (first > 0 && std::abs(running_ee[first - 1] - final_value) <= band) --first;
    if (first > size - 2) return std::nullopt;  // only the last point is inside the band
    return first + 1;  // 1-based
}

SimConfig apply_sweep(const SimConfig& base, SweepKind kind, double value) {
    SimConfig cfg = base;
    switch (kind) {
        case SweepKind::None:
            break;
        case SweepKind::TaskLength: {
            const double mean = 0.5 * (base.arrival.low_bits + base.arrival.high_bits);
            if (!(mean > 0.0)) {
                throw std::invalid_argument("task_length sweep needs a positive baseline mean");
            }
            const double factor = value / mean;
            cfg.arrival.low_bits = base.arrival.low_bits * factor;
            cfg.arrival.high_bits = base.arrival.high_bits * factor;
            break;
        }
        case SweepKind::EveDistance:
            for (auto& g : cfg.geometry) g.dist_to_eve_m = g.dist_to_eve_m * value;
            break;
        case SweepKind::PMax:
            cfg.params.p_max_w = value;
            break;
    }
    return cfg;
}

namespace {

struct EpisodeData {
    std::vector<TraceRecord> trace;
    std::vector<double> running_ee;
    std::vector<double> total_queue;
    double final_ee = 0.0;
    double mean_queue = 0.0;
};

int resolve_thread_count(const ExperimentOptions& options, int realizations) {
    int workers = options.max_threads;
    if (workers <= 0) {
        if (const char* env = std::getenv("NOMA_MEC_THREADS")) {
            workers = std::atoi(env);
        }
    }
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
    }
    if (workers < 1) workers = 1;
    return std::min(workers, realizations);
}

EpisodeData run_one(const SimConfig& cfg, SchemeId scheme, int realization, bool keep_trace) {
    EpisodeData out;
    std::vector<TraceRecord> trace =
        run_episode(cfg, scheme, realization, derive_realization_seed(cfg.seed, realization));
    const int slots = static_cast<int>(trace.size());
    out.running_ee.resize(slots);
    out.total_queue.resize(slots);
    double queue_sum = 0.0;
    for (int t = 0; t < slots; ++t) {
        out.running_ee[t] = trace[t].ee_ratio;
        double q = 0.0;
        for (double v : trace[t].queue_bits) q += v;
        out.total_queue[t] = q;
        queue_sum += q;
    }
    out.final_ee = trace.back().ee_ratio;
    out.mean_queue = queue_sum / slots;
    if (keep_trace) out.trace = std::move(trace);
    return out;
}

}  // namespace

ExperimentResult run_experiment(const SimConfig& config, const ExperimentOptions& options) {
    config.validate();
    std::vector<double> values;
    if (config.sweep.kind == SweepKind::None) {
        values = {0.0};
    } else if (!config.sweep.values.empty()) {
        values = config.sweep.values;
    } else {
        values = default_sweep_values(config.sweep.kind);
    }

    const int realizations = config.num_realizations;
    const int workers = resolve_thread_count(options, realizations);

    ExperimentResult result;
    for (double value : values) {
        const SimConfig cell_cfg = config.sweep.kind == SweepKind::None
                                       ? config
                                       : apply_sweep(config, config.sweep.kind, value);
        cell_cfg.validate();
        for (SchemeId scheme : config.schemes) {
            std::vector<EpisodeData> episodes(realizations);
            std::atomic<int> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            auto worker = [&]() {
                for (;;) {
                    const int r = next.fetch_add(1);
                    if (r >= realizations) return;
                    try {
                        episodes[r] = run_one(cell_cfg, scheme, r, options.keep_traces);
                    } catch (...) {
                        std::scoped_lock lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            };
            if (workers <= 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
                for (auto& th : pool) th.join();
            }
            if (failure) std::rethrow_exception(failure);

            CellResult cell;
            cell.scheme = scheme;
            cell.sweep_kind = config.sweep.kind;
            cell.sweep_value = value;
            cell.ee_per_realization.resize(realizations);
            cell.mean_queue_per_realization.resize(realizations);
            const int slots = config.num_slots;
            cell.mean_running_ee.assign(slots, 0.0);
            cell.mean_total_queue.assign(slots, 0.0);
            for (int r = 0; r < realizations; ++r) {
                cell.ee_per_realization[r] = episodes[r].final_ee;
                cell.mean_queue_per_realization[r] = episodes[r].mean_queue;
                for (int t = 0; t < slots; ++t) {
                    cell.mean_running_ee[t] += episodes[r].running_ee[t];
                    cell.mean_total_queue[t] += episodes[r].total_queue[t];
                }
            }
            for (int t = 0; t < slots; ++t) {
                cell.mean_running_ee[t] /= realizations;
                cell.mean_total_queue[t] /= realizations;
            }
            double sum = 0.0;
            for (double e : cell.ee_per_realization) sum += e;
            cell.mean_ee = sum / realizations;
            if (realizations > 1) {
                double ss = 0.0;
                for (double e : cell.ee_per_realization) {
                    ss += (e - cell.mean_ee) * (e - cell.mean_ee);
                }
                cell.stderr_ee = std::sqrt(ss / (realizations - 1)) / std::sqrt(realizations);
            }
            double qsum = 0.0;
            for (double q : cell.mean_queue_per_realization) qsum += q;
            cell.mean_queue_bits = qsum / realizations;
            cell.convergence =
                slots >= 2 ? convergence_slot(cell.mean_running_ee) : std::nullopt;

            if (options.keep_traces) {
                std::vector<std::vector<TraceRecord>> cell_traces(realizations);
                for (int r = 0; r < realizations; ++r) {
                    cell_traces[r] = std::move(episodes[r].trace);
                }
                result.traces.push_back(std::move(cell_traces));
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

}  // namespace noma_mec
