#include "noma_mec/csv.hpp"

#include <cstdio>
#include <sstream>

namespace noma_mec {

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", value);
    return buf;
}

std::string summary_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "scheme,sweep_param,sweep_value,mean_ee_bits_per_joule,stderr_ee,"
           "mean_queue_bits,convergence_slot\n";
    for (const auto& cell : result.cells) {
        out << scheme_name(cell.scheme) << ',' << sweep_name(cell.sweep_kind) << ','
            << format_number(cell.sweep_value) << ',' << format_number(cell.mean_ee) << ','
            << format_number(cell.stderr_ee) << ',' << format_number(cell.mean_queue_bits) << ','
            << (cell.convergence ? *cell.convergence : -1) << '\n';
    }
    return out.str();
}

std::string ee_vs_slot_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "scheme,slot,running_ee_bits_per_joule\n";
    for (const auto& cell : result.cells) {
        for (std::size_t t = 0; t < cell.mean_running_ee.size(); ++t) {
            out << scheme_name(cell.scheme) << ',' << t << ','
                << format_number(cell.mean_running_ee[t]) << '\n';
        }
    }
    return out.str();
}

std::string sweep_figure_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "scheme,sweep_value,mean_ee_bits_per_joule,stderr_ee,mean_queue_bits\n";
    for (const auto& cell : result.cells) {
        out << scheme_name(cell.scheme) << ',' << format_number(cell.sweep_value) << ','
            << format_number(cell.mean_ee) << ',' << format_number(cell.stderr_ee) << ','
            << format_number(cell.mean_queue_bits) << '\n';
    }
    return out.str();
}

std::string trace_csv(const std::vector<std::vector<TraceRecord>>& realizations) {
    std::ostringstream out;
    out << "realization,slot,user,cpu_freq_hz,tx_power_w,rate_local_bps,rate_offload_bps,"
           "queue_bits,total_rate_bps,total_power_w,ee_ratio_bits_per_joule,"
           "effective_throughput_bps,solver_flags\n";
    for (const auto& episode : realizations) {
        for (const auto& rec : episode) {
            for (std::size_t u = 0; u < rec.cpu_freq_hz.size(); ++u) {
                out << rec.realization << ',' << rec.slot << ',' << u << ','
                    << format_number(rec.cpu_freq_hz[u]) << ','
                    << format_number(rec.tx_power_w[u]) << ','
                    << format_number(rec.rate_local_bps[u]) << ','
                    << format_number(rec.rate_offload_bps[u]) << ','
                    << format_number(rec.queue_bits[u]) << ','
                    << format_number(rec.total_rate_bps) << ','
                    << format_number(rec.total_power_w) << ','
                    << format_number(rec.ee_ratio) << ','
                    << format_number(rec.effective_throughput_bps) << ','
                    << rec.solver_flags << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace noma_mec
