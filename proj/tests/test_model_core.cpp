#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "noma_mec/model_core.hpp"
#include "noma_mec/rng.hpp"

using namespace noma_mec;

namespace {

SystemParams reference_params() {
    SystemParams p;  // defaults are the reference setup
    return p;
}

ChannelState raw_channel(std::vector<double> to_mec, std::vector<double> to_eve) {
    ChannelState ch;
    ch.gain_to_mec = std::move(to_mec);
    ch.gain_to_eve = std::move(to_eve);
    ch.decode_order.resize(ch.gain_to_mec.size());
    for (std::size_t i = 0; i < ch.decode_order.size(); ++i) {
        ch.decode_order[i] = static_cast<int>(i);
    }
    std::stable_sort(ch.decode_order.begin(), ch.decode_order.end(), [&](int a, int b) {
        return ch.gain_to_mec[a] < ch.gain_to_mec[b];
    });
    return ch;
}

}  // namespace

TEST_CASE("unit conversions fixed at the load boundary") {
    CHECK(db_to_linear(-40.0) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(dbm_to_watts(-60.0) == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("fading draws are unit-mean exponential") {
    Rng rng(12345);
    const int draws = 1'000'000;
    double sum = 0.0;
    int above_one = 0;
    for (int i = 0; i < draws; ++i) {
        const double x = sample_fading(rng);
        REQUIRE(x >= 0.0);
        sum += x;
        if (x > 1.0) ++above_one;
    }
    CHECK(sum / draws == doctest::Approx(1.0).epsilon(0.01));
    CHECK(static_cast<double>(above_one) / draws ==
          doctest::Approx(std::exp(-1.0)).epsilon(0.03));
}

TEST_CASE("path loss gain") {
    SystemParams p = reference_params();

    SUBCASE("reference distance identity") {
        CHECK(path_loss_gain(1.0, p.ref_distance_m, p) == doctest::Approx(1e-4).epsilon(1e-12));
    }
    SUBCASE("direct evaluation at 40 m") {
        CHECK(path_loss_gain(1.0, 40.0, p) == doctest::Approx(3.90625e-11).epsilon(1e-12));
    }
    SUBCASE("direct evaluation, doubled fading at 80 m") {
        CHECK(path_loss_gain(2.0, 80.0, p) == doctest::Approx(4.8828125e-12).epsilon(1e-12));
    }
    SUBCASE("rejects distances inside the reference distance") {
        CHECK_THROWS_AS(path_loss_gain(1.0, 0.5, p), std::invalid_argument);
    }
    SUBCASE("homogeneous of degree 1 in fading and -theta in distance") {
        Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            const double h = 0.01 + 5.0 * rng.next_u01();
            const double d = 1.0 + 200.0 * rng.next_u01();
            const double a = 0.5 + 3.0 * rng.next_u01();
            const double base = path_loss_gain(h, d, p);
            CHECK(path_loss_gain(a * h, d, p) == doctest::Approx(a * base).epsilon(1e-12));
            CHECK(path_loss_gain(h, a * d, p) ==
                  doctest::Approx(base * std::pow(a, -p.pathloss_exponent)).epsilon(1e-10));
        }
    }
}

TEST_CASE("SIC stage SINR") {
    SUBCASE("weakest stage sees no interference") {
        const std::vector<double> p{0.1};
        const std::vector<double> h{1e-11};
        CHECK(sinr_at_receiver(p, h, 1e-9, 0) == doctest::Approx(1e-3).epsilon(1e-12));
    }
    SUBCASE("second stage accumulates the first") {
        const std::vector<double> p{0.1, 0.2};
        const std::vector<double> h{1e-11, 4e-11};
        const double expected = (0.2 * 4e-11) / (0.1 * 1e-11 + 1e-9);
        CHECK(sinr_at_receiver(p, h, 1e-9, 1) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(expected == doctest::Approx(7.992e-3).epsilon(1e-3));
    }
    SUBCASE("zero power, zero SINR") {
        const std::vector<double> p{0.3, 0.0};
        const std::vector<double> h{1e-11, 4e-11};
        CHECK(sinr_at_receiver(p, h, 1e-9, 1) == 0.0);
    }
}

TEST_CASE("secure offload rate") {
    SystemParams params = reference_params();

    SUBCASE("vanishes when both receivers see the same channel") {
        ChannelState ch = raw_channel({1e-11, 4e-11}, {1e-11, 4e-11});
        const std::vector<double> p{0.4, 0.7};
        CHECK(secure_offload_rate(p, ch, params, 0) == 0.0);
        CHECK(secure_offload_rate(p, ch, params, 1) == 0.0);
    }
    SUBCASE("no-eavesdropper limit recovers the MEC rate") {
        ChannelState ch = raw_channel({3.9e-11}, {1e-300});
        const std::vector<double> p{0.1};
        const double gamma = 0.1 * 3.9e-11 / params.noise_power_w;
        const double expected = params.bandwidth_hz * std::log2(1.0 + gamma);
        CHECK(secure_offload_rate(p, ch, params, 0) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
    SUBCASE("single-user direct evaluation") {
        ChannelState ch = raw_channel({3.9e-11}, {4.9e-12});
        const std::vector<double> p{0.1};
        const double gb = 0.1 * 3.9e-11 / 1e-9;
        const double ge = 0.1 * 4.9e-12 / 1e-9;
        const double expected = 1e6 * (std::log2(1.0 + gb) - std::log2(1.0 + ge));
        CHECK(secure_offload_rate(p, ch, params, 0) ==
              doctest::Approx(expected).epsilon(1e-10));
        CHECK(expected == doctest::Approx(4.91e3).epsilon(0.01));
    }
    SUBCASE("never negative") {
        Rng rng(99);
        for (int i = 0; i < 2000; ++i) {
            ChannelState ch = raw_channel({1e-12 * (1 + 50 * rng.next_u01()),
                                           1e-12 * (1 + 50 * rng.next_u01())},
                                          {1e-12 * (1 + 50 * rng.next_u01()),
                                           1e-12 * (1 + 50 * rng.next_u01())});
            const std::vector<double> p{2.0 * rng.next_u01(), 2.0 * rng.next_u01()};
            for (int u = 0; u < 2; ++u) {
                CHECK(secure_offload_rate(p, ch, params, u) >= 0.0);
            }
        }
    }
    SUBCASE("monotone in own gains with the decode order held fixed") {
        Rng rng(4242);
        for (int i = 0; i < 500; ++i) {
            const double hb0 = 1e-12 * (1 + 10 * rng.next_u01());
            const double hb1 = hb0 * (1.5 + rng.next_u01());  // order preserved under bump
            const double he0 = 1e-13 * (1 + 10 * rng.next_u01());
            const double he1 = 1e-13 * (1 + 10 * rng.next_u01());
            const std::vector<double> p{1.5 * rng.next_u01(), 1.5 * rng.next_u01()};

            ChannelState base = raw_channel({hb0, hb1}, {he0, he1});
            ChannelState up_mec = raw_channel({hb0 * 1.2, hb1}, {he0, he1});
            ChannelState up_eve = raw_channel({hb0, hb1}, {he0 * 1.2, he1});
            REQUIRE(base.decode_order == up_mec.decode_order);

            const double r = secure_offload_rate(p, base, params, 0);
            CHECK(secure_offload_rate(p, up_mec, params, 0) >= r - 1e-9);
            CHECK(secure_offload_rate(p, up_eve, params, 0) <= r + 1e-9);
        }
    }
    SUBCASE("SIC rates telescope to the aggregate rate without an eavesdropper") {
        Rng rng(31);
        for (int i = 0; i < 2000; ++i) {
            const int n = 1 + static_cast<int>(rng.next_u01() * 4);
            std::vector<double> hb(n), he(n, 1e-300), p(n);
            for (int u = 0; u < n; ++u) {
                hb[u] = 1e-12 * (0.1 + 20 * rng.next_u01());
                p[u] = 2.0 * rng.next_u01();
            }
            ChannelState ch = raw_channel(hb, he);
            double per_stage = 0.0;
            double aggregate_power = 0.0;
            for (int u = 0; u < n; ++u) {
                per_stage += secure_offload_rate(p, ch, params, u);
                aggregate_power += p[u] * hb[u];
            }
            const double aggregate = params.bandwidth_hz *
                                     std::log2(1.0 + aggregate_power / params.noise_power_w);
            CHECK(per_stage == doctest::Approx(aggregate).epsilon(1e-10));
        }
    }
}

TEST_CASE("eavesdropper full-decode model drops the interference") {
    SystemParams params = reference_params();
    ChannelState ch = raw_channel({2e-12, 4e-11}, {5e-13, 2.4e-12});
    const std::vector<double> p{1.2, 0.9};
    // Position 1 in decode order carries eavesdropper interference under SIC.
    const int strong = ch.decode_order[1];
    const double sic = secure_offload_rate(p, ch, params, strong, EveSinrModel::SicInterference);
    const double fd = secure_offload_rate(p, ch, params, strong, EveSinrModel::FullDecode);
    CHECK(fd <= sic);
    // The weakest user's stage has no interference either way.
    const int weak = ch.decode_order[0];
    CHECK(secure_offload_rate(p, ch, params, weak, EveSinrModel::SicInterference) ==
          doctest::Approx(secure_offload_rate(p, ch, params, weak, EveSinrModel::FullDecode))
              .epsilon(1e-12));
}

TEST_CASE("local computing and offload power models") {
    CHECK(local_rate(0.0, 737.5) == 0.0);
    CHECK(local_rate(737.5e6, 737.5) == doctest::Approx(1e6).epsilon(1e-12));
    CHECK(local_rate(2.15e9, 737.5) == doctest::Approx(2.9152542373e6).epsilon(1e-9));

    CHECK(local_power(0.0, 1e-28) == 0.0);
    CHECK(local_power(2.15e9, 1e-28) == doctest::Approx(0.9938375).epsilon(1e-9));
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const double f = 1e9 * rng.next_u01();
        CHECK(local_power(2.0 * f, 1e-28) ==
              doctest::Approx(8.0 * local_power(f, 1e-28)).epsilon(1e-12));
    }

    SystemParams p = reference_params();
    CHECK(offload_power(0.0, p) == doctest::Approx(p.circuit_power_w));
    p.amp_coeff = 1.0;
    p.circuit_power_w = 0.1;
    CHECK(offload_power(0.5, p) == doctest::Approx(0.6).epsilon(1e-12));
    p.amp_coeff = 2.0;
    p.circuit_power_w = 1e-12;
    CHECK(offload_power(0.5, p) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("channel construction sorts the decode order by MEC gain") {
    SystemParams params = reference_params();
    std::vector<UserGeometry> geometry{{80.0, 120.0}, {40.0, 80.0}};
    const std::vector<double> fade_mec{1.0, 1.0};
    const std::vector<double> fade_eve{1.0, 1.0};
    const ChannelState ch = make_channel_state(fade_mec, fade_eve, geometry, params);
    REQUIRE(ch.decode_order.size() == 2);
    CHECK(ch.gain_to_mec[ch.decode_order[0]] <= ch.gain_to_mec[ch.decode_order[1]]);
    CHECK(ch.gain_to_mec[0] == doctest::Approx(path_loss_gain(1.0, 80.0, params)));
    CHECK(ch.gain_to_eve[1] == doctest::Approx(path_loss_gain(1.0, 80.0, params)));
}

TEST_CASE("parameter invariants") {
    SystemParams p = reference_params();
    CHECK_NOTHROW(p.validate());
    p.bandwidth_hz = -1.0;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("bandwidth"), std::invalid_argument);
    p = reference_params();
    p.circuit_power_w = 3.0;  // exceeds p_max
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.lyapunov_v = 0.0;
    CHECK_NOTHROW(p.validate());
}
