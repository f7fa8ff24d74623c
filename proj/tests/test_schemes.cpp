#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "noma_mec/schemes.hpp"

using namespace noma_mec;
using noma_mec::testing::random_two_user_state;

TEST_CASE("scheme names round-trip") {
    for (SchemeId s : kAllSchemes) {
        CHECK(parse_scheme(scheme_name(s)) == s);
    }
    CHECK_FALSE(parse_scheme("bogus").has_value());
}

TEST_CASE("full offloading never computes locally") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        SlotState st = random_two_user_state(rng, {.zero_eta_probability = 0.15});
        const SolveResult r = decide(SchemeId::FullOffloading, st);
        CHECK(r.decision.cpu_freq_hz[0] == 0.0);
        CHECK(r.decision.cpu_freq_hz[1] == 0.0);
    }
}

TEST_CASE("a vanishing eavesdropper channel makes the schemes agree") {
    Rng rng(22);
    SlotState st = random_two_user_state(rng);
    for (double& g : st.channel.gain_to_eve) g = 1e-290;
    const SolveResult a = decide(SchemeId::Proposed, st);
    const SolveResult b = decide(SchemeId::EveFullyDecode, st);
    for (int u = 0; u < 2; ++u) {
        const double ra = secure_offload_rate(a.decision.tx_power_w, st.channel, st.params, u,
                                              EveSinrModel::SicInterference);
        const double rb = secure_offload_rate(b.decision.tx_power_w, st.channel, st.params, u,
                                              EveSinrModel::FullDecode);
        CHECK(ra == doctest::Approx(rb).epsilon(1e-6));
    }
}

TEST_CASE("proposed dominates full offloading slot by slot") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        SlotState st = random_two_user_state(rng, {.zero_eta_probability = 0.1});
        const SolveResult proposed = decide(SchemeId::Proposed, st);
        const SolveResult full = decide(SchemeId::FullOffloading, st);
        CHECK(proposed.objective >=
              full.objective - 1e-9 * std::max(1.0, std::abs(full.objective)));
    }
}

TEST_CASE("pessimistic eavesdropper model never raises a realized rate") {
    Rng rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        SlotState st = random_two_user_state(rng);
        const std::vector<double> p{1.9 * rng.next_u01(), 1.9 * rng.next_u01()};
        for (int u = 0; u < 2; ++u) {
            const double sic =
                secure_offload_rate(p, st.channel, st.params, u, EveSinrModel::SicInterference);
            const double fd =
                secure_offload_rate(p, st.channel, st.params, u, EveSinrModel::FullDecode);
            CHECK(fd <= sic + 1e-12);
        }
    }
}

TEST_CASE("decide is deterministic per scheme") {
    Rng rng(25);
    SlotState st = random_two_user_state(rng);
    const std::vector<double> warm{0.3, 0.1};
    for (SchemeId s : kAllSchemes) {
        const SolveResult a = decide(s, st, warm);
        const SolveResult b = decide(s, st, warm);
        CHECK(a.decision.cpu_freq_hz == b.decision.cpu_freq_hz);
        CHECK(a.decision.tx_power_w == b.decision.tx_power_w);
    }
}
