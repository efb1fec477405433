#include <array>
#include <cmath>
#include <map>

#include "doctest.h"
#include "qss/adversary.hpp"
#include "qss/oracle.hpp"
#include "qss/protocol/engine.hpp"
#include "support.hpp"

using namespace qss;

namespace {

ScenarioConfig attacked_original(std::size_t n, std::uint64_t seed) {
    ScenarioConfig c;
    c.protocol = ProtocolKind::Original;
    c.n_pairs = n;
    c.master_seed = seed;
    c.adversary.kind = AdversaryKind::BobSwapAttack;
    return c;
}

BobSwapAttack make_bob(std::uint64_t seed, bool falsify = false) {
    return BobSwapAttack(Hop::parse("S_A:dealer->agent1"), falsify, Stream(seed, streams::kAdversary));
}

/// Plug-in I(true bit; Eve's basis and bit | preparation basis).
double empirical_information(const std::vector<SingleState>& prepared,
                             const std::vector<EveInterceptResend::Observation>& log) {
    double info = 0;
    for (Basis prep : {Basis::Z, Basis::X}) {
        std::array<std::array<double, 4>, 2> joint{};
        double total = 0;
        for (const auto& o : log) {
            const SingleState s = prepared[o.slot];
            if (basis_of(s) != prep) continue;
            joint[bit_of(s)][static_cast<int>(o.basis) * 2 + o.bit] += 1;
            total += 1;
        }
        double h = 0;
        for (int y = 0; y < 4; ++y) {
            const double py = (joint[0][y] + joint[1][y]) / total;
            for (int x = 0; x < 2; ++x) {
                const double px = (joint[x][0] + joint[x][1] + joint[x][2] + joint[x][3]) / total;
                const double pxy = joint[x][y] / total;
                if (pxy > 0) h += pxy * std::log2(pxy / (px * py));
            }
        }
        info += h * total / static_cast<double>(log.size());
    }
    return info;
}

}  // namespace

TEST_CASE("uniform-random interception of S_A shows up as 1/4 error in the first check") {
    ScenarioConfig c;
    c.protocol = ProtocolKind::Original;
    c.n_pairs = 4096;
    c.sample_fraction = 0.5;
    c.error_threshold = 1.0;
    c.master_seed = 3;
    c.adversary.kind = AdversaryKind::EveInterceptResend;
    c.adversary.hop = Hop::parse("S_A:agent0->dealer");
    c.adversary.eve_policy = EvePolicy::UniformRandom;
    const auto r = run_original(c);
    const auto* first = r.check("zx_first");
    REQUIRE(first != nullptr);
    CHECK(first->samples == 2048);
    CHECK(std::abs(first->error_rate - oracle::intercept_resend_check_error(0.5)) <= 0.03);
}

TEST_CASE("fixed-Z interception of four-state checking photons gives 1/4 error") {
    ScenarioConfig c;
    c.protocol = ProtocolKind::Improved;
    c.agent_count = 3;
    c.n_pairs = 64;
    c.decoy_photon_count = 2000;
    c.error_threshold = 1.0;
    c.master_seed = 8;
    c.adversary.kind = AdversaryKind::EveInterceptResend;
    c.adversary.hop = Hop::parse("S_A:dealer->agent2");
    c.adversary.eve_policy = EvePolicy::FixedZ;
    const auto r = run_improved(c);
    const auto* d = r.check("decoy_S_A");
    REQUIRE(d != nullptr);
    CHECK(d->samples == 2000);
    CHECK(std::abs(d->error_rate - oracle::decoy_error(1.0)) <= 0.03);
    CHECK(r.check("decoy_S_T")->mismatches == 0);
}

TEST_CASE("basis-matched interception is invisible") {
    QuantumRegister reg(6);
    Lab dealer("dealer", reg);
    Lab eve_lab("adversary", reg);
    EveInterceptResend eve(Hop::parse("S_A:dealer->agent1"), EvePolicy::FixedZ, Stream(6, streams::kAdversary));
    Stream pick(6, 50);
    std::vector<SingleState> states;
    std::vector<PhotonId> photons;
    for (int i = 0; i < 500; ++i) {
        states.push_back(pick.bit() ? SingleState::One : SingleState::Zero);
        photons.push_back(dealer.prepare_single(states.back()));
        dealer.give(photons.back(), eve_lab);
    }
    eve.intercept_resend(photons, eve_lab);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < photons.size(); ++i) errors += eve_lab.measure(photons[i], Basis::Z) != bit_of(states[i]);
    CHECK(errors == 0);
}

TEST_CASE("Eve learns half a bit per four-state photon") {
    QuantumRegister reg(12);
    Lab dealer("dealer", reg);
    Lab eve_lab("adversary", reg);
    EveInterceptResend eve(Hop::parse("S_A:dealer->agent1"), EvePolicy::UniformRandom,
                           Stream(12, streams::kAdversary));
    Stream pick(12, 50);
    std::vector<SingleState> states;
    std::vector<PhotonId> photons;
    for (int i = 0; i < 5000; ++i) {
        states.push_back(kAllSingleStates[pick.below(4)]);
        photons.push_back(dealer.prepare_single(states.back()));
        dealer.give(photons.back(), eve_lab);
    }
    eve.intercept_resend(photons, eve_lab);
    REQUIRE(eve.observations().size() == 5000);
    CHECK(std::abs(empirical_information(states, eve.observations()) - oracle::intercept_resend_information(0.5)) <=
          0.05);
}

TEST_CASE("the swap attack fakes every surviving position") {
    auto c = attacked_original(64, 5);
    BobSwapAttack bob = make_bob(5);
    const auto r = run_original(c, bob);
    CHECK(bob.fake_pairs().size() == 48);
    CHECK_FALSE(r.detected);
}

TEST_CASE("forwarded fake halves look maximally mixed") {
    int z_zero = 0;
    int x_zero = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        QuantumRegister reg(seed);
        Lab lab("agent0", reg);
        BobSwapAttack bob = make_bob(seed);
        auto [a, c] = lab.prepare_bell(BellLabel::PsiMinus);
        auto out = bob.on_send_to_third_party({Hop::parse("S_C:agent0->agent1"), {0, 1}, {a, c}, {}}, lab);
        (void)out;
        z_zero += lab.measure(out[0], Basis::Z) == 0;
        x_zero += lab.measure(out[1], Basis::X) == 0;
    }
    CHECK(std::abs(z_zero / 1000.0 - 0.5) <= 0.05);
    CHECK(std::abs(x_zero / 1000.0 - 0.5) <= 0.05);
}

TEST_CASE("the retained genuine half is left untouched") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        QuantumRegister reg(seed);
        Lab alice("dealer", reg);
        Lab lab("agent0", reg);
        auto [a, c] = alice.prepare_bell(BellLabel::PsiMinus);
        alice.give(c, lab);
        BobSwapAttack bob = make_bob(seed);
        const auto out = bob.on_send_to_third_party({Hop::parse("S_C:agent0->agent1"), {0}, {c}, {}}, lab);
        CHECK(out[0] != c);
        CHECK(bob.fake_pairs().at(0).genuine == c);
        lab.give(c, alice);
        CHECK(alice.measure_bell(a, c) == BellLabel::PsiMinus);
    }
}

TEST_CASE("swap announcement is the swap outcome composed with the cover Pauli") {
    bool seen_identity_case = false;
    bool seen_cancel_case = false;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        QuantumRegister reg(seed);
        Lab alice("dealer", reg);
        Lab lab("agent0", reg);
        Lab charlie("agent1", reg);
        auto [a, c] = alice.prepare_bell(BellLabel::PsiMinus);
        alice.give(c, lab);
        BobSwapAttack bob = make_bob(seed);
        const auto out = bob.on_send_to_third_party({Hop::parse("S_C:agent0->agent1"), {0}, {c}, {}}, lab);
        lab.give(out[0], charlie);
        const std::vector<std::size_t> positions{0};
        const auto announced = bob.on_check_positions_announced(positions, lab);
        const Pauli cover = bob.fake_pairs().at(0).cover;
        const BellLabel outcome = bell_of(compose(announced[0], cover));
        if (cover == Pauli::X() && outcome == BellLabel::PsiMinus) {
            CHECK(announced[0] == Pauli::X());
            seen_identity_case = true;
        }
        if (cover == Pauli::X() && outcome == BellLabel::PhiMinus) {
            CHECK(announced[0] == Pauli::I());
            seen_cancel_case = true;
        }
        // Dealer's half and the forwarded fake now form exactly the announced pair.
        charlie.give(out[0], alice);
        REQUIRE(alice.measure_bell(a, out[0]) == bell_of(announced[0]));
    }
    CHECK(seen_identity_case);
    CHECK(seen_cancel_case);
}

TEST_CASE("the attack on the original protocol is never detected and reads the whole message") {
    for (std::size_t n : {16, 64, 256}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto r = run_original(attacked_original(n, seed));
            REQUIRE_FALSE(r.detected);
            REQUIRE(r.check("zx_second")->error_rate == 0.0);
            REQUIRE(r.eavesdropper_message.has_value());
            REQUIRE(*r.eavesdropper_message == r.dealer_message);
            REQUIRE(r.recovered.at("agent1") == r.dealer_message);
        }
    }
}

TEST_CASE("third party's readout carries the cover Pauli, so only true covers decode") {
    BobSwapAttack honest_cover = make_bob(21);
    const auto r = run_original(attacked_original(256, 21), honest_cover);
    const auto ops = encode_message(r.dealer_message);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Pauli cover = honest_cover.fake_pairs().at(r.message_positions[i]).cover;
        CHECK(r.readout[i] == compose(ops[i], cover));
        if (r.dealer_message[i] == 0) CHECK(r.eavesdropper_message->at(i) == 0);
    }
    CHECK(r.recovered.at("agent1") == r.dealer_message);

    auto c = attacked_original(2048, 21);
    c.sample_fraction = 0.1;
    c.adversary.falsify_collaboration = true;
    const auto lied = run_original(c);
    REQUIRE(lied.message_positions.size() >= 1000);
    const auto& got = lied.recovered.at("agent1");
    std::size_t differ = 0;
    for (std::size_t i = 0; i < got.size(); ++i) differ += got[i] != lied.dealer_message[i];
    CHECK(differ > 0);
    CHECK(std::abs(static_cast<double>(differ) / static_cast<double>(got.size()) -
                   oracle::xor_replacement_mismatch_rate()) <= 0.05);
    CHECK(*lied.eavesdropper_message == lied.dealer_message);
}

TEST_CASE("against the improved protocol each substituted H-decoy passes with the oracle rate") {
    ScenarioConfig c;
    c.protocol = ProtocolKind::Improved;
    c.agent_count = 3;
    c.n_pairs = 2048;
    c.error_threshold = 1.0;
    c.master_seed = 4;
    c.adversary.kind = AdversaryKind::BobSwapAttack;
    const auto r = run_improved(c);
    CHECK(r.check("zx_first")->mismatches == 0);
    CHECK(r.check("hop_decoy_0")->mismatches == 0);
    const auto* step6 = r.check("step6");
    REQUIRE(step6->samples >= 200);
    const double pass = 1.0 - step6->error_rate;
    CHECK(std::abs(pass - oracle::substituted_decoy_pass_rate()) <= 0.06);

    c.error_threshold = 0.0;
    CHECK(run_improved(c).detected);
}

TEST_CASE("undetected probability falls as p^d with d H-decoys") {
    const double p = oracle::substituted_decoy_pass_rate();
    const std::size_t trials = 2000;
    for (std::size_t d : {1, 2, 4, 8}) {
        ScenarioConfig c;
        c.protocol = ProtocolKind::Improved;
        c.agent_count = 3;
        c.n_pairs = 64;
        c.h_decoy_count = d;
        c.decoy_photon_count = 0;
        c.adversary.kind = AdversaryKind::BobSwapAttack;
        std::size_t undetected = 0;
        for (std::uint64_t seed = 0; seed < trials; ++seed) {
            c.master_seed = 1000 * d + seed;
            undetected += !run_improved(c).detected;
        }
        const double expected = std::pow(p, static_cast<double>(d));
        const double tol = std::max(test::three_sigma(expected, trials), 1.0 / trials);
        CHECK_MESSAGE(std::abs(static_cast<double>(undetected) / trials - expected) <= tol, "d=" << d);
    }
}

namespace {

/// Intercepts one hop and probes what it can reach.
class Snoop final : public Adversary {
  public:
    explicit Snoop(Hop hop) : hop_(std::move(hop)) {}
    std::string_view name() const override { return "snoop"; }
    bool intercepts(const Hop& hop) const override { return hop == hop_; }
    void on_transit(const Hop&, std::vector<PhotonId>& photons, Lab& lab, const Transcript& transcript) override {
        for (const auto& p : photons) all_held = all_held && lab.holds(p);
        held_in_transit = lab.held_count();
        events_seen_at_transit = transcript.events().size();
        // The partner halves stay with agent0 and must be out of reach.
        try {
            lab.measure(PhotonId{photons.front().index + 1}, Basis::Z);
        } catch (const AccessViolation&) {
            blocked = true;
        }
    }
    void on_event(const Event& e) override { events.push_back(e); }

    Hop hop_;
    bool all_held = true;
    bool blocked = false;
    std::size_t held_in_transit = 0;
    std::size_t events_seen_at_transit = 0;
    std::vector<Event> events;
};

}  // namespace

TEST_CASE("an adversary only sees in-transit photons and public announcements") {
    ScenarioConfig c;
    c.protocol = ProtocolKind::Original;
    c.n_pairs = 32;
    c.master_seed = 2;
    Snoop snoop(Hop::parse("S_A:agent0->dealer"));
    const auto r = run_original(c, snoop);
    CHECK(snoop.all_held);
    CHECK(snoop.blocked);
    CHECK(snoop.held_in_transit == 32);
    CHECK(snoop.events == r.transcript.events());
    CHECK_FALSE(r.detected);
}
