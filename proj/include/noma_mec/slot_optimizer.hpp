#pragma once

#include <functional>
#include <span>
#include <vector>

#include "noma_mec/model_core.hpp"
#include "noma_mec/params.hpp"

namespace noma_mec {

/// Everything the per-slot solver needs: start-of-slot queues and arrivals
/// (natural user order), the slot's channel, the running bits-per-joule
/// ratio, and the constants. `eve_model` selects how the eavesdropper SINR
/// is computed in both the objective and the realized rates.
struct SlotState {
    std::vector<double> queues_bits;
    std::vector<double> arrivals_bits;
    ChannelState channel;
    double ee_ratio = 0.0;  // bits per joule accumulated before this slot
    SystemParams params;
    EveSinrModel eve_model = EveSinrModel::SicInterference;

    int num_users() const { return static_cast<int>(queues_bits.size()); }
};

/// Per-user CPU frequency and transmit power chosen for one slot.
struct SlotDecision {
    std::vector<double> cpu_freq_hz;
    std::vector<double> tx_power_w;
};

/// Running totals behind the bits-per-joule ratio. The ratio is 0 by
/// convention until the first slot with positive energy has been recorded.
struct EeAccumulator {
    double sum_bits = 0.0;
    double sum_energy_j = 0.0;

    double ratio() const { return sum_energy_j > 0.0 ? sum_bits / sum_energy_j : 0.0; }

    // Folds in one slot and returns the updated ratio.
    double update(double total_rate_bps, double total_power_w, double tau_s) {
        sum_bits += total_rate_bps * tau_s;
        sum_energy_j += total_power_w * tau_s;
        return ratio();
    }
};

inline double ee_ratio_update(EeAccumulator& acc, double total_rate_bps,
                              double total_power_w, double tau_s) {
    return acc.update(total_rate_bps, total_power_w, tau_s);
}

/// Concave-bound multipliers, one pair per SIC decode position. y_mec bounds
/// the interference log at the MEC, y_eve the eavesdropper log.
struct ScaAuxiliaries {
    std::vector<double> y_mec;
    std::vector<double> y_eve;
};

// phi(y) = -y*x + ln(y) + 1. Satisfies phi(y) <= -ln(x) with equality at
// y = 1/x; requires x, y > 0.
double lemma1_bound(double x, double y);

struct CpuFreqResult {
    double freq_hz = 0.0;
    bool budget_exhausted = false;  // amp*p + circuit alone already exceeds p_max
};

// Closed-form maximizer of the per-user frequency subproblem, clamped to
// [0, min(f_max, cbrt((p_max - amp*p - circuit)/kappa))]. A zero ee_ratio
// removes the energy term, so the cap itself is optimal.
CpuFreqResult optimal_cpu_frequency(const SlotState& state, double tx_power_w, int user);

// The per-slot objective: sum_n Q_n (R_n tau - A_n) + V sum_n (R_n tau -
// eta P_n tau), with realized (clipped) secrecy rates. Throws on an
// infeasible decision.
double drift_penalty_objective(const SlotState& state, const SlotDecision& decision);

// Same objective with the unclipped secrecy-rate difference; this is the
// function the power allocation ascends.
double smooth_drift_objective(const SlotState& state, std::span<const double> cpu_freq_hz,
                              std::span<const double> tx_power_w);

// Smooth objective with each non-concave log replaced by its lemma1_bound
// linearization at the given multipliers.
double surrogate_objective(const SlotState& state, std::span<const double> cpu_freq_hz,
                           std::span<const double> tx_power_w, const ScaAuxiliaries& aux);

// Multipliers that make the surrogate touch the smooth objective at the
// given power vector.
ScaAuxiliaries tight_auxiliaries(const SlotState& state, std::span<const double> tx_power_w);

struct BoxSolverOptions {
    int max_iterations = 10000;
    double armijo = 1e-4;
    double grad_tol = 1e-8;         // scaled by the starting projected-gradient norm
    double rel_improve_tol = 1e-10;
};

struct BoxSolverResult {
    std::vector<double> point;
    double value = 0.0;
    double improvement = 0.0;  // value - value(start); never negative
    int iterations = 0;
    bool converged = false;
};

using BoxObjective = std::function<double(std::span<const double>)>;
using BoxGradient = std::function<void(std::span<const double>, std::span<double>)>;

// Projected gradient ascent with backtracking (halving) line search for a
// smooth concave objective over a coordinate box.
BoxSolverResult maximize_concave_box(const BoxObjective& value, const BoxGradient& gradient,
                                     std::span<const double> lower, std::span<const double> upper,
                                     std::span<const double> start,
                                     const BoxSolverOptions& options = {});

struct ScaOptions {
    int max_rounds = 100;
    double rel_tol = 1e-9;
    BoxSolverOptions solver{};
    // Users (natural order) whose transmit power is pinned to zero. Empty
    // means none.
    std::vector<char> muted;
};

struct ScaResult {
    std::vector<double> tx_power_w;  // natural user order
    int rounds = 0;
    bool converged = false;
    // Surrogate objective tracked across the run: one entry at the start,
    // then one after every subproblem solve and every multiplier update.
    // Increments are computed as provably non-negative quantities (accepted
    // ascent steps and u - 1 - log(u) gaps), so the trace is monotone.
    std::vector<double> surrogate_trace;
    // Largest |surrogate - smooth| / max(1,|smooth|) observed right after a
    // multiplier update, where the two must coincide.
    double max_tightness_gap = 0.0;
};

// Alternates multiplier updates with the concave power subproblem until the
// objective stalls. Frequencies are fixed; the feasible box per user is
// [0, (p_max - circuit - kappa f^3)/amp].
ScaResult sca_power_allocation(const SlotState& state, std::span<const double> cpu_freq_hz,
                               std::span<const double> init_power_w, const ScaOptions& options = {});

struct TwoUserResult {
    std::vector<double> tx_power_w;  // natural user order
    bool used_fallback = false;      // quadratic degenerate; numeric solver used
};

// Closed-form stationary pair for the two-user surrogate subproblem at fixed
// multipliers. Both quadratic roots are clamped to the box and the one with
// the larger surrogate objective is returned. Degenerate coefficients fall
// back to the numeric subproblem solver.
TwoUserResult two_user_closed_form(const SlotState& state, std::span<const double> cpu_freq_hz,
                                   const ScaAuxiliaries& aux);

struct SolveFlags {
    bool budget_degenerate = false;
    bool sca_round_cap = false;
    bool outer_iteration_cap = false;
    bool muted_negative_secrecy = false;

    unsigned mask() const {
        return (budget_degenerate ? 1u : 0u) | (sca_round_cap ? 2u : 0u) |
               (outer_iteration_cap ? 4u : 0u) | (muted_negative_secrecy ? 8u : 0u);
    }
};

struct SolveOptions {
    bool force_zero_freq = false;  // full-offloading benchmark: no local computing
    int max_outer_iterations = 50;
    double rel_tol = 1e-6;
    ScaOptions sca{};
};

struct SolveResult {
    SlotDecision decision;
    double objective = 0.0;  // drift_penalty_objective of `decision`
    int outer_iterations = 0;
    SolveFlags flags;
};

// Per-slot solve: alternate the closed-form frequency step with the SCA
// power step from a warm start, then zero out any user whose optimized
// unclipped secrecy rate is negative and re-solve with that user muted.
// Returns the best feasible iterate seen. Deterministic.
SolveResult solve_slot(const SlotState& state, std::span<const double> warm_power_w = {},
                       const SolveOptions& options = {});

struct OracleResult {
    SlotDecision decision;
    double objective = 0.0;
};

// Exhaustive grid search over the product grid of per-user frequencies and
// powers (grid_points per axis, endpoints included), joint feasibility
// filtered, maximizing drift_penalty_objective. The frequency terms are
// separable per user, which lets the product-grid argmax be computed without
// enumerating the full cross product; ties resolve to the first point in
// scan order (power vectors lexicographic with the weakest user's axis
// slowest, lowest feasible frequency index per user). Guarded to
// num_users <= 3.
OracleResult brute_force_slot_oracle(const SlotState& state, int grid_points);

// (1/2) sum_n (r_max^2 tau^2 + a_max^2): reporting-only drift-bound constant.
double drift_bound_constant(std::span<const double> max_rate_bps,
                            std::span<const double> max_arrival_bits, double tau_s);

}  // namespace noma_mec
