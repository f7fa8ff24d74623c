#include "noma_mec/slot_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace noma_mec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// The power subproblem rewritten in SIC decode order. All vectors below are
// indexed by decode position, not by user. `const_term` collects every
// decision-independent part of the slot objective (local-rate reward,
// circuit and CPU power penalties, -sum Q*A), so the value functions here
// are directly comparable with drift_penalty_objective.
struct PowerProblem {
    int n = 0;
    double noise = 0.0;
    double zeta = 0.0;
    double energy_price = 0.0;  // lyapunov_v * ee_ratio * tau
    double const_term = 0.0;
    bool eve_full_decode = false;
    std::vector<int> order;  // position -> user
    std::vector<double> hb, he;
    std::vector<double> weight;  // (B/ln2) * (Q_u + V) * tau
    std::vector<double> pbar;    // per-position transmit power cap given f
};

PowerProblem make_power_problem(const SlotState& state, std::span<const double> cpu_freq_hz) {
    const auto& pr = state.params;
    const int n = state.num_users();
    PowerProblem p;
    p.n = n;
    p.noise = pr.noise_power_w;
    p.zeta = pr.amp_coeff;
    p.energy_price = pr.lyapunov_v * state.ee_ratio * pr.slot_seconds;
    p.eve_full_decode = state.eve_model == EveSinrModel::FullDecode;
    p.order = state.channel.decode_order;
    p.hb.resize(n);
    p.he.resize(n);
    p.weight.resize(n);
    p.pbar.resize(n);
    const double prefactor = pr.bandwidth_hz / std::numbers::ln2_v<double>;
    for (int k = 0; k < n; ++k) {
        const int u = p.order[k];
        p.hb[k] = state.channel.gain_to_mec[u];
        p.he[k] = state.channel.gain_to_eve[u];
        p.weight[k] = prefactor * (state.queues_bits[u] + pr.lyapunov_v) * pr.slot_seconds;
        const double cpu_power = local_power(cpu_freq_hz[u], pr.energy_coeff);
        p.pbar[k] = std::max(0.0, (pr.p_max_w - pr.circuit_power_w - cpu_power) / pr.amp_coeff);
        if (p.pbar[k] < 1e-12) p.pbar[k] = 0.0;  // sub-picowatt budgets are empty
        p.const_term += (state.queues_bits[u] + pr.lyapunov_v) * pr.slot_seconds *
                            local_rate(cpu_freq_hz[u], pr.cycles_per_bit) -
                        state.queues_bits[u] * state.arrivals_bits[u] -
                        p.energy_price * (cpu_power + pr.circuit_power_w);
    }
    return p;
}

// ln(1+sinr_mec) - ln(1+sinr_eve) per position, combined with the objective
// weights; `clip` selects the realized ([.]^+) or smooth variant.
template <bool Clip>
double rate_value(const PowerProblem& p, std::span<const double> power) {
    double v = p.const_term;
    double interf_mec = 0.0;
    double interf_eve = 0.0;
    for (int k = 0; k < p.n; ++k) {
        const double base_mec = p.noise + interf_mec;
        const double base_eve = p.noise + interf_eve;
        double lr = std::log1p(power[k] * p.hb[k] / base_mec) -
                    std::log1p(power[k] * p.he[k] / base_eve);
        if constexpr (Clip) {
            lr = std::max(0.0, lr);
        }
        v += p.weight[k] * lr - p.energy_price * p.zeta * power[k];
        interf_mec += power[k] * p.hb[k];
        if (!p.eve_full_decode) interf_eve += power[k] * p.he[k];
    }
    return v;
}

double smooth_value(const PowerProblem& p, std::span<const double> power) {
    return rate_value<false>(p, power);
}

double clipped_value(const PowerProblem& p, std::span<const double> power) {
    return rate_value<true>(p, power);
}

// Unclipped secrecy log-ratio at one decode position (used for the
// negative-rate muting step).
double position_log_ratio(const PowerProblem& p, std::span<const double> power, int pos) {
    double interf_mec = 0.0;
    double interf_eve = 0.0;
    for (int k = 0; k < pos; ++k) {
        interf_mec += power[k] * p.hb[k];
        if (!p.eve_full_decode) interf_eve += power[k] * p.he[k];
    }
    return std::log1p(power[pos] * p.hb[pos] / (p.noise + interf_mec)) -
           std::log1p(power[pos] * p.he[pos] / (p.noise + interf_eve));
}

double surrogate_value(const PowerProblem& p, std::span<const double> power,
                       const ScaAuxiliaries& aux) {
    double v = p.const_term;
    double interf_mec = 0.0;
    double interf_eve = 0.0;
    for (int k = 0; k < p.n; ++k) {
        const double sb_prev = p.noise + interf_mec;
        const double sb = sb_prev + power[k] * p.hb[k];
        const double se_prev = p.noise + interf_eve;
        const double se = se_prev + power[k] * p.he[k];
        const double bracket = std::log(aux.y_mec[k] * sb) + (1.0 - aux.y_mec[k] * sb_prev) +
                               std::log(aux.y_eve[k] * se_prev) + (1.0 - aux.y_eve[k] * se);
        v += p.weight[k] * bracket - p.energy_price * p.zeta * power[k];
        interf_mec += power[k] * p.hb[k];
        if (!p.eve_full_decode) interf_eve += power[k] * p.he[k];
    }
    return v;
}

void surrogate_gradient(const PowerProblem& p, std::span<const double> power,
                        const ScaAuxiliaries& aux, std::span<double> grad) {
    const int n = p.n;
    for (int j = 0; j < n; ++j) grad[j] = -p.energy_price * p.zeta;

    // prefix sums: sb[k] = noise + sum_{j<=k} p_j hb_j, se_prev[k] likewise
    // up to j<k on the eavesdropper side.
    double interf_mec = 0.0;
    double interf_eve = 0.0;
    for (int k = 0; k < n; ++k) {
        const double sb = p.noise + interf_mec + power[k] * p.hb[k];
        const double se_prev = p.noise + interf_eve;
        const double wk = p.weight[k];
        for (int j = 0; j <= k; ++j) {
            grad[j] += wk * p.hb[j] / sb;
        }
        for (int j = 0; j < k; ++j) {
            grad[j] -= wk * aux.y_mec[k] * p.hb[j];
        }
        if (p.eve_full_decode) {
            grad[k] -= wk * aux.y_eve[k] * p.he[k];
        } else {
            for (int j = 0; j <= k; ++j) {
                grad[j] -= wk * aux.y_eve[k] * p.he[j];
            }
            for (int j = 0; j < k; ++j) {
                grad[j] += wk * p.he[j] / se_prev;
            }
        }
        interf_mec += power[k] * p.hb[k];
        if (!p.eve_full_decode) interf_eve += power[k] * p.he[k];
    }
}

ScaAuxiliaries tight_aux(const PowerProblem& p, std::span<const double> power) {
    ScaAuxiliaries aux;
    aux.y_mec.resize(p.n);
    aux.y_eve.resize(p.n);
    double interf_mec = 0.0;
    double interf_eve = 0.0;
    for (int k = 0; k < p.n; ++k) {
        const double sb_prev = p.noise + interf_mec;
        const double se = p.noise + interf_eve + power[k] * p.he[k];
        aux.y_mec[k] = 1.0 / sb_prev;
        aux.y_eve[k] = 1.0 / se;
        interf_mec += power[k] * p.hb[k];
        if (!p.eve_full_decode) interf_eve += power[k] * p.he[k];
    }
    return aux;
}

// Surrogate increase from re-tightening the multipliers at `power`:
// sum_k w_k [g(y_mec*sb_prev) + g(y_eve*se)] with g(u) = (u-1) - log1p(u-1).
// Each g term is non-negative in floating point, which keeps the recorded
// surrogate trace monotone.
double aux_update_gain(const PowerProblem& p, std::span<const double> power,
                       const ScaAuxiliaries& old_aux) {
    double gain = 0.0;
    double interf_mec = 0.0;
    double interf_eve = 0.0;
    for (int k = 0; k < p.n; ++k) {
        const double sb_prev = p.noise + interf_mec;
        const double se = p.noise + interf_eve + power[k] * p.he[k];
        const double ub = old_aux.y_mec[k] * sb_prev - 1.0;
        const double ue = old_aux.y_eve[k] * se - 1.0;
        gain += p.weight[k] * ((ub - std::log1p(ub)) + (ue - std::log1p(ue)));
        interf_mec += power[k] * p.hb[k];
        if (!p.eve_full_decode) interf_eve += power[k] * p.he[k];
    }
    return gain;
}

std::vector<double> to_positions(const PowerProblem& p, std::span<const double> natural) {
    std::vector<double> out(p.n);
    for (int k = 0; k < p.n; ++k) out[k] = natural[p.order[k]];
    return out;
}

std::vector<double> to_natural(const PowerProblem& p, std::span<const double> positions) {
    std::vector<double> out(p.n);
    for (int k = 0; k < p.n; ++k) out[p.order[k]] = positions[k];
    return out;
}

void check_sizes(const SlotState& state) {
    const std::size_t n = state.queues_bits.size();
    if (state.arrivals_bits.size() != n || state.channel.gain_to_mec.size() != n ||
        state.channel.gain_to_eve.size() != n || state.channel.decode_order.size() != n ||
        n == 0) {
        throw std::invalid_argument("SlotState: inconsistent per-user vector sizes");
    }
}

}  // namespace

double lemma1_bound(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw std::invalid_argument("lemma1_bound requires x > 0 and y > 0");
    }
    return -y * x + std::log(y) + 1.0;
}

CpuFreqResult optimal_cpu_frequency(const SlotState& state, double tx_power_w, int user) {
    const auto& pr = state.params;
    const double budget = pr.p_max_w - pr.amp_coeff * tx_power_w - pr.circuit_power_w;
    if (budget < 0.0) {
        return {0.0, true};
    }
    const double freq_cap = std::min(pr.f_max_hz, std::cbrt(budget / pr.energy_coeff));
    const double v = pr.lyapunov_v;
    const double queue = state.queues_bits[user];
    if (v * state.ee_ratio <= 0.0) {
        // No energy term: the rate reward is linear in f, so the cap wins
        // whenever the weight is positive.
        return {(queue + v) > 0.0 ? freq_cap : 0.0, false};
    }
    const double stationary =
        std::sqrt((v + queue) / (3.0 * v * state.ee_ratio * pr.energy_coeff * pr.cycles_per_bit));
    return {std::clamp(stationary, 0.0, freq_cap), false};
}

double drift_penalty_objective(const SlotState& state, const SlotDecision& decision) {
    check_sizes(state);
    const int n = state.num_users();
    if (static_cast<int>(decision.cpu_freq_hz.size()) != n ||
        static_cast<int>(decision.tx_power_w.size()) != n) {
        throw std::invalid_argument("drift_penalty_objective: decision size mismatch");
    }
    const auto& pr = state.params;
    for (int u = 0; u < n; ++u) {
        const double f = decision.cpu_freq_hz[u];
        const double p = decision.tx_power_w[u];
        if (!(f >= 0.0) || f > pr.f_max_hz * (1.0 + 1e-12) || !(p >= 0.0) ||
            user_total_power(f, p, pr) > pr.p_max_w + 1e-9) {
            throw std::invalid_argument("drift_penalty_objective: infeasible decision");
        }
    }
    const PowerProblem prob = make_power_problem(state, decision.cpu_freq_hz);
    return clipped_value(prob, to_positions(prob, decision.tx_power_w));
}

double smooth_drift_objective(const SlotState& state, std::span<const double> cpu_freq_hz,
                              std::span<const double> tx_power_w) {
    check_sizes(state);
    const PowerProblem prob = make_power_problem(state, cpu_freq_hz);
    return smooth_value(prob, to_positions(prob, tx_power_w));
}

double surrogate_objective(const SlotState& state, std::span<const double> cpu_freq_hz,
                           std::span<const double> tx_power_w, const ScaAuxiliaries& aux) {
    check_sizes(state);
    const PowerProblem prob = make_power_problem(state, cpu_freq_hz);
    return surrogate_value(prob, to_positions(prob, tx_power_w), aux);
}

ScaAuxiliaries tight_auxiliaries(const SlotState& state, std::span<const double> tx_power_w) {
    check_sizes(state);
    std::vector<double> zero_freq(state.num_users(), 0.0);
    const PowerProblem prob = make_power_problem(state, zero_freq);
    return tight_aux(prob, to_positions(prob, tx_power_w));
}

BoxSolverResult maximize_concave_box(const BoxObjective& value, const BoxGradient& gradient,
                                     std::span<const double> lower, std::span<const double> upper,
                                     std::span<const double> start,
                                     const BoxSolverOptions& options) {
    const int n = static_cast<int>(lower.size());
    BoxSolverResult res;
    res.point.assign(start.begin(), start.end());
    double span_max = 0.0;
    for (int i = 0; i < n; ++i) {
        res.point[i] = std::clamp(res.point[i], lower[i], upper[i]);
        span_max = std::max(span_max, upper[i] - lower[i]);
    }
    res.value = value(res.point);
    const double f_start = res.value;
    if (span_max <= 0.0) {
        res.converged = true;
        return res;
    }

    std::vector<double> grad(n), candidate(n);
    double step = 0.0;
    double grad_tol = 0.0;
    for (; res.iterations < options.max_iterations; ++res.iterations) {
        gradient(res.point, grad);
        double pg_norm = 0.0;
        double g_norm = 0.0;
        for (int i = 0; i < n; ++i) {
            double gi = grad[i];
            g_norm = std::max(g_norm, std::abs(gi));
            if (res.point[i] <= lower[i] && gi < 0.0) gi = 0.0;
            if (res.point[i] >= upper[i] && gi > 0.0) gi = 0.0;
            pg_norm = std::max(pg_norm, std::abs(gi));
        }
        if (res.iterations == 0) {
            grad_tol = options.grad_tol * std::max(1.0, pg_norm);
            step = g_norm > 0.0 ? span_max / g_norm : 0.0;
        }
        if (pg_norm <= grad_tol) {
            res.converged = true;
            break;
        }

        bool accepted = false;
        int backtracks = 0;
        double f_candidate = 0.0;
        for (; backtracks < 60; ++backtracks) {
            double dir_dot = 0.0;
            for (int i = 0; i < n; ++i) {
                candidate[i] = std::clamp(res.point[i] + step * grad[i], lower[i], upper[i]);
                dir_dot += grad[i] * (candidate[i] - res.point[i]);
            }
            if (dir_dot <= 0.0) break;  // fully blocked by the box
            f_candidate = value(candidate);
            if (f_candidate >= res.value + options.armijo * dir_dot) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.converged = true;
            break;
        }
        const double improve = f_candidate - res.value;
        res.point.swap(candidate);
        res.value = f_candidate;
        if (backtracks == 0) step *= 2.0;
        if (improve <= options.rel_improve_tol * std::abs(res.value)) {
            res.converged = true;
            ++res.iterations;
            break;
        }
    }
    res.improvement = res.value - f_start;
    return res;
}

ScaResult sca_power_allocation(const SlotState& state, std::span<const double> cpu_freq_hz,
                               std::span<const double> init_power_w, const ScaOptions& options) {
    check_sizes(state);
    const PowerProblem prob = make_power_problem(state, cpu_freq_hz);
    const int n = prob.n;

    std::vector<double> pbar = prob.pbar;
    if (!options.muted.empty()) {
        for (int k = 0; k < n; ++k) {
            if (options.muted[prob.order[k]]) pbar[k] = 0.0;
        }
    }
    std::vector<double> power = to_positions(prob, init_power_w);
    const std::vector<double> lower(n, 0.0);
    for (int k = 0; k < n; ++k) power[k] = std::clamp(power[k], 0.0, pbar[k]);

    ScaResult res;
    ScaAuxiliaries aux = tight_aux(prob, power);
    double tracked = surrogate_value(prob, power, aux);
    res.surrogate_trace.push_back(tracked);
    {
        const double smooth = smooth_value(prob, power);
        res.max_tightness_gap =
            std::abs(tracked - smooth) / std::max(1.0, std::abs(smooth));
    }

    const BoxObjective value_fn = [&](std::span<const double> x) {
        return surrogate_value(prob, x, aux);
    };
    const BoxGradient grad_fn = [&](std::span<const double> x, std::span<double> g) {
        surrogate_gradient(prob, x, aux, g);
    };

    for (res.rounds = 1; res.rounds <= options.max_rounds; ++res.rounds) {
        const BoxSolverResult inner =
            maximize_concave_box(value_fn, grad_fn, lower, pbar, power, options.solver);
        power = inner.point;
        tracked += inner.improvement;
        res.surrogate_trace.push_back(tracked);

        const double gain = aux_update_gain(prob, power, aux);
        aux = tight_aux(prob, power);
        tracked += gain;
        res.surrogate_trace.push_back(tracked);

        const double smooth = smooth_value(prob, power);
        const double direct = surrogate_value(prob, power, aux);
        res.max_tightness_gap =
            std::max(res.max_tightness_gap,
                     std::abs(direct - smooth) / std::max(1.0, std::abs(smooth)));

        if (inner.improvement + gain <= options.rel_tol * std::max(1.0, std::abs(tracked))) {
            res.converged = true;
            break;
        }
    }
    res.rounds = std::min(res.rounds, options.max_rounds);
    res.tx_power_w = to_natural(prob, power);
    return res;
}

TwoUserResult two_user_closed_form(const SlotState& state, std::span<const double> cpu_freq_hz,
                                   const ScaAuxiliaries& aux) {
    check_sizes(state);
    if (state.num_users() != 2) {
        throw std::invalid_argument("two_user_closed_form requires exactly two users");
    }
    const PowerProblem prob = make_power_problem(state, cpu_freq_hz);
    const auto& pr = state.params;

    const auto numeric_fallback = [&]() {
        TwoUserResult out;
        out.used_fallback = true;
        const std::vector<double> lower(2, 0.0);
        const std::vector<double> start(2, 0.0);
        const BoxObjective value_fn = [&](std::span<const double> x) {
            return surrogate_value(prob, x, aux);
        };
        const BoxGradient grad_fn = [&](std::span<const double> x, std::span<double> g) {
            surrogate_gradient(prob, x, aux, g);
        };
        const BoxSolverResult r =
            maximize_concave_box(value_fn, grad_fn, lower, prob.pbar, start, {});
        out.tx_power_w = to_natural(prob, r.point);
        return out;
    };

    const double w_weak = state.queues_bits[prob.order[0]] + pr.lyapunov_v;
    const double w_strong = state.queues_bits[prob.order[1]] + pr.lyapunov_v;
    const double prefactor = pr.bandwidth_hz / std::numbers::ln2_v<double>;
    const double pen = pr.lyapunov_v * state.ee_ratio * pr.amp_coeff / prefactor;
    const double noise = prob.noise;

    const double d = pen / w_strong + aux.y_eve[1] * prob.he[1];
    const double a1 = pen + w_strong * (aux.y_mec[1] * prob.hb[0] + aux.y_eve[1] * prob.he[0]) +
                      w_weak * aux.y_eve[0] * prob.he[0] -
                      w_strong * prob.hb[0] * d / prob.hb[1];
    if (!std::isfinite(a1) || a1 <= 0.0 || !std::isfinite(d) || d <= 0.0) {
        return numeric_fallback();
    }
    const double b1 = noise / prob.hb[0] + noise / prob.he[0] - (w_weak + w_strong) / a1;
    const double b2 = noise * noise / (prob.he[0] * prob.hb[0]) -
                      (w_strong / a1) * noise / prob.hb[0] - (w_weak / a1) * noise / prob.he[0];
    const double disc = b1 * b1 - 4.0 * b2;
    if (!std::isfinite(disc) || disc < 0.0) {
        return numeric_fallback();
    }

    const double sq = std::sqrt(disc);
    double best_value = kNegInf;
    std::vector<double> best(2, 0.0);
    for (const double root : {(-b1 + sq) / 2.0, (-b1 - sq) / 2.0}) {
        std::vector<double> candidate(2);
        candidate[0] = std::clamp(root, 0.0, prob.pbar[0]);
        const double p_strong = 1.0 / d - (candidate[0] * prob.hb[0] + noise) / prob.hb[1];
        candidate[1] = std::clamp(p_strong, 0.0, prob.pbar[1]);
        const double v = surrogate_value(prob, candidate, aux);
        if (v > best_value) {
            best_value = v;
            best = candidate;
        }
    }
    TwoUserResult out;
    out.tx_power_w = to_natural(prob, best);
    return out;
}

SolveResult solve_slot(const SlotState& state, std::span<const double> warm_power_w,
                       const SolveOptions& options) {
    check_sizes(state);
    const int n = state.num_users();
    const auto& pr = state.params;
    const double top_power = (pr.p_max_w - pr.circuit_power_w) / pr.amp_coeff;

    std::vector<double> init(n, 0.0);
    if (!warm_power_w.empty()) {
        if (static_cast<int>(warm_power_w.size()) != n) {
            throw std::invalid_argument("solve_slot: warm start size mismatch");
        }
        for (int u = 0; u < n; ++u) init[u] = std::clamp(warm_power_w[u], 0.0, top_power);
    }

    SolveResult best;
    best.objective = kNegInf;
    std::vector<char> muted(n, 0);
    ScaOptions sca_options = options.sca;

    for (int pass = 0; pass <= n; ++pass) {
        sca_options.muted = muted;
        std::vector<double> power = init;
        for (int u = 0; u < n; ++u) {
            if (muted[u]) power[u] = 0.0;
        }
        std::vector<double> freq(n, 0.0);

        double incumbent_obj = kNegInf;
        SlotDecision incumbent;
        double prev_obj = kNegInf;
        int outer = 1;
        for (; outer <= options.max_outer_iterations; ++outer) {
            for (int u = 0; u < n; ++u) {
                if (options.force_zero_freq) {
                    freq[u] = 0.0;
                } else {
                    const CpuFreqResult r = optimal_cpu_frequency(state, power[u], u);
                    freq[u] = r.freq_hz;
                    best.flags.budget_degenerate |= r.budget_exhausted;
                }
            }
            const ScaResult sca = sca_power_allocation(state, freq, power, sca_options);
            power = sca.tx_power_w;
            best.flags.sca_round_cap |= !sca.converged;

            const double obj = drift_penalty_objective(state, {freq, power});
            if (obj > incumbent_obj) {
                incumbent_obj = obj;
                incumbent = {freq, power};
            }
            if (std::isfinite(prev_obj) &&
                obj - prev_obj <= options.rel_tol * std::max(1.0, std::abs(obj))) {
                break;
            }
            prev_obj = obj;
        }
        if (outer > options.max_outer_iterations) {
            best.flags.outer_iteration_cap = true;
            outer = options.max_outer_iterations;
        }
        if (incumbent_obj > best.objective) {
            best.objective = incumbent_obj;
            best.decision = incumbent;
            best.outer_iterations = outer;
        }

        // Mute users whose optimized unclipped secrecy rate came out
        // negative; their realized rate is clipped to zero while their
        // transmit power still costs energy.
        const PowerProblem prob = make_power_problem(state, incumbent.cpu_freq_hz);
        const std::vector<double> pos_power = to_positions(prob, incumbent.tx_power_w);
        bool any_new = false;
        for (int k = 0; k < n; ++k) {
            const int u = prob.order[k];
            if (muted[u] || pos_power[k] <= 1e-12) continue;
            if (position_log_ratio(prob, pos_power, k) < -1e-14) {
                muted[u] = 1;
                any_new = true;
            }
        }
        if (!any_new) break;
        best.flags.muted_negative_secrecy = true;
    }
    return best;
}

OracleResult brute_force_slot_oracle(const SlotState& state, int grid_points) {
    check_sizes(state);
    const int n = state.num_users();
    if (n > 3) {
        throw std::invalid_argument("brute_force_slot_oracle: limited to three users");
    }
    if (grid_points < 2) {
        throw std::invalid_argument("brute_force_slot_oracle: need at least two grid points");
    }
    const auto& pr = state.params;
    const int g = grid_points;
    const double top_power = std::max(0.0, (pr.p_max_w - pr.circuit_power_w) / pr.amp_coeff);

    std::vector<double> freq_grid(g), power_grid(g), freq_power(g);
    for (int i = 0; i < g; ++i) {
        freq_grid[i] = pr.f_max_hz * static_cast<double>(i) / (g - 1);
        power_grid[i] = top_power * static_cast<double>(i) / (g - 1);
        freq_power[i] = local_power(freq_grid[i], pr.energy_coeff);
    }

    const std::vector<double> zero_freq(n, 0.0);
    const PowerProblem prob = make_power_problem(state, zero_freq);
    const double energy_price = prob.energy_price;

    // Per-user frequency scores and their running argmax (lowest index on
    // ties) so the best feasible frequency for any power budget is a lookup.
    std::vector<std::vector<double>> best_score(n, std::vector<double>(g));
    std::vector<std::vector<int>> best_index(n, std::vector<int>(g));
    for (int k = 0; k < n; ++k) {
        const int u = prob.order[k];
        const double rate_weight =
            (state.queues_bits[u] + pr.lyapunov_v) * pr.slot_seconds / pr.cycles_per_bit;
        double run_best = kNegInf;
        int run_idx = 0;
        for (int i = 0; i < g; ++i) {
            const double score = rate_weight * freq_grid[i] - energy_price * freq_power[i];
            if (score > run_best) {
                run_best = score;
                run_idx = i;
            }
            best_score[k][i] = run_best;
            best_index[k][i] = run_idx;
        }
    }

    std::vector<int> power_idx(n, 0);
    std::vector<double> power(n, 0.0);
    std::vector<int> best_power_idx(n, 0), best_freq_idx(n, 0);
    double best_obj = kNegInf;

    const auto max_feasible_freq_index = [&](double tx_power) {
        const double budget =
            (pr.p_max_w - pr.circuit_power_w - pr.amp_coeff * tx_power) * (1.0 + 1e-12);
        // freq_power is increasing; find the last index within budget.
        const auto it = std::upper_bound(freq_power.begin(), freq_power.end(), budget);
        return static_cast<int>(it - freq_power.begin()) - 1;
    };

    bool done = false;
    while (!done) {
        for (int k = 0; k < n; ++k) power[k] = power_grid[power_idx[k]];

        double obj = prob.const_term;
        double interf_mec = 0.0;
        double interf_eve = 0.0;
        bool feasible = true;
        for (int k = 0; k < n && feasible; ++k) {
            const double lr = std::max(
                0.0, std::log1p(power[k] * prob.hb[k] / (prob.noise + interf_mec)) -
                         std::log1p(power[k] * prob.he[k] / (prob.noise + interf_eve)));
            obj += prob.weight[k] * lr - energy_price * prob.zeta * power[k];
            interf_mec += power[k] * prob.hb[k];
            if (!prob.eve_full_decode) interf_eve += power[k] * prob.he[k];

            const int fi = max_feasible_freq_index(power[k]);
            if (fi < 0) {
                feasible = false;
                break;
            }
            obj += best_score[k][fi];
        }
        if (feasible && obj > best_obj) {
            best_obj = obj;
            best_power_idx = power_idx;
            for (int k = 0; k < n; ++k) {
                best_freq_idx[k] = best_index[k][max_feasible_freq_index(power[k])];
            }
        }

        // lexicographic advance, position 0 slowest
        int axis = n - 1;
        while (axis >= 0) {
            if (++power_idx[axis] < g) break;
            power_idx[axis] = 0;
            --axis;
        }
        done = axis < 0;
    }

    OracleResult res;
    res.decision.cpu_freq_hz.assign(n, 0.0);
    res.decision.tx_power_w.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        const int u = prob.order[k];
        res.decision.tx_power_w[u] = power_grid[best_power_idx[k]];
        res.decision.cpu_freq_hz[u] = freq_grid[best_freq_idx[k]];
    }
    res.objective = drift_penalty_objective(state, res.decision);
    return res;
}

double drift_bound_constant(std::span<const double> max_rate_bps,
                            std::span<const double> max_arrival_bits, double tau_s) {
    if (max_rate_bps.size() != max_arrival_bits.size()) {
        throw std::invalid_argument("drift_bound_constant: size mismatch");
    }
    double c = 0.0;
    for (std::size_t i = 0; i < max_rate_bps.size(); ++i) {
        c += max_rate_bps[i] * max_rate_bps[i] * tau_s * tau_s +
             max_arrival_bits[i] * max_arrival_bits[i];
    }
    return 0.5 * c;
}

}  // namespace noma_mec
