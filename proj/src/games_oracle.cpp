#include "games_internal.hpp"

namespace games {

namespace {

struct CosetSetup {
    gf2::Subspace a;
    gf2::Subspace a_dual;
    cosets::CosetStateParams params;
    gf2::Vector pair; // s || s'

    static CosetSetup sample(int lambda, lab::Rng& r) {
        gf2::Subspace a = gf2::sample_subspace(lambda, lambda / 2, r);
        gf2::Subspace ad = gf2::dual(a);
        cosets::CosetStateParams params(a, gf2::sample_coset_rep(a, r),
                                        gf2::sample_coset_rep(ad, r));
        gf2::Vector pair = concat_bits(params.s, params.s_perp);
        return {std::move(a), std::move(ad), std::move(params), std::move(pair)};
    }
};

} // namespace

GameOutcome run_reprogram_game(ChallengeMode mode, const ReprogramAdversary& adv, int lambda,
                               uint64_t trials, const lab::Rng& rng, const RunOptions& options) {
    if (lambda < 2 || lambda % 2 != 0 || lambda > 7)
        throw std::invalid_argument(
            "games: reprogram game supports even lambda in [2, 7] (coherent 2^{2 lambda} domain)");
    return run_trials(trials, rng, options, {}, [&](uint64_t, lab::Rng& r) {
        CosetSetup ch = CosetSetup::sample(lambda, r);
        rom::OracleTable h(2 * lambda, 1, r);
        gf2::Vector h_value = h.value(ch.pair);

        // A sees H with (s, s') replaced by a fresh uniform value
        gf2::Vector fresh(1);
        fresh.set(0, r.bit());
        rom::OracleTable h_punctured = h.reprogram(ch.pair, fresh);

        cosets::MembershipOracle oa_s(ch.a, ch.params.s), oa_sp(ch.a_dual, ch.params.s_perp);
        cosets::MembershipOracle ob_s(ch.a, ch.params.s), ob_sp(ch.a_dual, ch.params.s_perp);
        cosets::MembershipOracle oc_s(ch.a, ch.params.s), oc_sp(ch.a_dual, ch.params.s_perp);

        SplitResult split = adv.stage_a(cosets::prepare(ch.params), lambda, h_value, h_punctured,
                                        oa_s, oa_sp, r);

        // H_0 = H; H_1 flips the output at (s, s')
        gf2::Vector flipped(1);
        flipped.set(0, !h_value.get(0));
        rom::OracleTable h1 = h.reprogram(ch.pair, flipped);

        int b_b, b_c;
        if (mode == ChallengeMode::Identical) {
            b_b = b_c = r.bit();
        } else {
            b_b = r.bit();
            b_c = r.bit();
        }

        GameRegisters regs(std::move(split.state));
        auto [bview, cview] = make_views(regs, split, options);
        int gb = adv.stage_b(bview, ch.a, b_b ? h1 : h, ob_s, ob_sp, split.side_info, r);
        int gc = adv.stage_c(cview, ch.a, b_c ? h1 : h, oc_s, oc_sp, split.side_info, r);

        for (const auto* o : {&oa_s, &oa_sp, &ob_s, &ob_sp, &oc_s, &oc_sp})
            if (o->query_count() > options.oracle_budget_per_stage)
                throw ProtocolError("membership oracle budget exceeded");

        TrialOut out;
        out.win = (gb == b_b && gc == b_c);
        return out;
    });
}

ReprogramAdversary reprogram_decode_compare() {
    ReprogramAdversary adv;
    adv.stage_a = [](const qsim::StateVector& ct, int, const gf2::Vector& h_value,
                     const rom::OracleTable&, const cosets::MembershipOracle&,
                     const cosets::MembershipOracle&, lab::Rng&) {
        return forward_all_to_b(ct, h_value);
    };
    adv.stage_b = [](PartyView& view, const gf2::Subspace& a, const rom::OracleTable& challenge,
                     const cosets::MembershipOracle&, const cosets::MembershipOracle&,
                     const gf2::Vector& side, lab::Rng& r) {
        auto [s, sp] = decode_coset_register(view, a, r);
        gf2::Vector val = view.oracle_value(challenge, concat_bits(s, sp));
        return val.get(0) != side.get(0) ? 1 : 0;
    };
    adv.stage_c = [](PartyView&, const gf2::Subspace&, const rom::OracleTable&,
                     const cosets::MembershipOracle&, const cosets::MembershipOracle&,
                     const gf2::Vector&, lab::Rng& r) { return r.bit(); };
    return adv;
}

ReprogramAdversary reprogram_shared_random() {
    ReprogramAdversary adv;
    adv.stage_a = [](const qsim::StateVector& ct, int, const gf2::Vector&,
                     const rom::OracleTable&, const cosets::MembershipOracle&,
                     const cosets::MembershipOracle&, lab::Rng& r) {
        SplitResult split;
        split.state = ct;
        gf2::Vector coin(1);
        coin.set(0, r.bit());
        split.side_info = coin;
        return split;
    };
    auto echo = [](PartyView&, const gf2::Subspace&, const rom::OracleTable&,
                   const cosets::MembershipOracle&, const cosets::MembershipOracle&,
                   const gf2::Vector& side, lab::Rng&) { return static_cast<int>(side.get(0)); };
    adv.stage_b = echo;
    adv.stage_c = echo;
    return adv;
}

GameOutcome run_strengthened_moe(const StrengthenedMoeAdversary& adv, int lambda, int n_bits,
                                 uint64_t trials, const lab::Rng& rng,
                                 const RunOptions& options) {
    if (lambda < 2 || lambda % 2 != 0 || lambda > 7)
        throw std::invalid_argument("games: strengthened MOE supports even lambda in [2, 7]");
    if (n_bits < 1) throw std::invalid_argument("games: n_bits must be positive");
    return run_trials(trials, rng, options, {}, [&](uint64_t, lab::Rng& r) {
        gf2::Vector delta = adv.choose_delta(n_bits, r);
        if (delta.size() != n_bits) throw ProtocolError("delta has the wrong length");

        CosetSetup ch = CosetSetup::sample(lambda, r);
        rom::OracleTable h(2 * lambda, n_bits, r);

        int b = r.bit();
        gf2::Vector w = h.value(ch.pair);
        if (b) w ^= delta; // w = H(s, s') xor (b * delta)

        cosets::MembershipOracle oa_s(ch.a, ch.params.s), oa_sp(ch.a_dual, ch.params.s_perp);
        cosets::MembershipOracle ob_s(ch.a, ch.params.s), ob_sp(ch.a_dual, ch.params.s_perp);
        cosets::MembershipOracle oc_s(ch.a, ch.params.s), oc_sp(ch.a_dual, ch.params.s_perp);

        SplitResult split = adv.stage_a(cosets::prepare(ch.params), lambda, w, h, oa_s, oa_sp, r);
        GameRegisters regs(std::move(split.state));
        auto [bview, cview] = make_views(regs, split, options);
        int gb = adv.stage_b(bview, ch.a, h, ob_s, ob_sp, delta, split.side_info, r);
        int gc = adv.stage_c(cview, ch.a, h, oc_s, oc_sp, delta, split.side_info, r);

        for (const auto* o : {&oa_s, &oa_sp, &ob_s, &ob_sp, &oc_s, &oc_sp})
            if (o->query_count() > options.oracle_budget_per_stage)
                throw ProtocolError("membership oracle budget exceeded");

        TrialOut out;
        out.win = (gb == b && gc == b);
        return out;
    });
}

StrengthenedMoeAdversary smoe_forward_decode() {
    StrengthenedMoeAdversary adv;
    adv.choose_delta = [](int n_bits, lab::Rng&) {
        gf2::Vector d(n_bits);
        for (int i = 0; i < n_bits; ++i) d.set(i, true);
        return d;
    };
    adv.stage_a = [](const qsim::StateVector& ct, int, const gf2::Vector& w,
                     const rom::OracleTable&, const cosets::MembershipOracle&,
                     const cosets::MembershipOracle&, lab::Rng&) {
        return forward_all_to_b(ct, w);
    };
    adv.stage_b = [](PartyView& view, const gf2::Subspace& a, const rom::OracleTable& h,
                     const cosets::MembershipOracle&, const cosets::MembershipOracle&,
                     const gf2::Vector& delta, const gf2::Vector& side, lab::Rng& r) {
        auto [s, sp] = decode_coset_register(view, a, r);
        gf2::Vector t = view.oracle_value(h, concat_bits(s, sp)) ^ side; // b * delta
        if (delta.is_zero()) return r.bit(); // w carries no information
        if (t.is_zero()) return 0;
        if (t == delta) return 1;
        return r.bit();
    };
    adv.stage_c = [](PartyView&, const gf2::Subspace&, const rom::OracleTable&,
                     const cosets::MembershipOracle&, const cosets::MembershipOracle&,
                     const gf2::Vector&, const gf2::Vector&, lab::Rng& r) { return r.bit(); };
    return adv;
}

StrengthenedMoeAdversary smoe_both_random() {
    StrengthenedMoeAdversary adv = smoe_forward_decode();
    adv.stage_a = [](const qsim::StateVector& ct, int, const gf2::Vector&,
                     const rom::OracleTable&, const cosets::MembershipOracle&,
                     const cosets::MembershipOracle&, lab::Rng&) {
        SplitResult split;
        split.state = ct;
        return split;
    };
    auto blind = [](PartyView&, const gf2::Subspace&, const rom::OracleTable&,
                    const cosets::MembershipOracle&, const cosets::MembershipOracle&,
                    const gf2::Vector&, const gf2::Vector&, lab::Rng& r) { return r.bit(); };
    adv.stage_b = blind;
    adv.stage_c = blind;
    return adv;
}

} // namespace games
