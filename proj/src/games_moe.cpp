#include <cmath>

#include "games_internal.hpp"

namespace games {

GameOutcome run_moe_wiesner(const WiesnerMoeAdversary& adv, int lambda, uint64_t trials,
                            const lab::Rng& rng, const RunOptions& options) {
    if (lambda < 1 || lambda > 12)
        throw std::invalid_argument("games: moe-wiesner supports lambda in [1, 12]");
    return run_trials(trials, rng, options, {}, [&](uint64_t, lab::Rng& r) {
        gf2::Vector x = gf2::Vector::random(lambda, r);
        gf2::Vector theta = gf2::Vector::random(lambda, r);
        SplitResult split = adv.stage_a(schemes::wiesner_state(x, theta), lambda, r);

        GameRegisters regs(std::move(split.state));
        auto [bview, cview] = make_views(regs, split, options);
        gf2::Vector xb = adv.stage_b(bview, theta, split.side_info, r);
        gf2::Vector xc = adv.stage_c(cview, theta, split.side_info, r);

        TrialOut out;
        out.win = (xb == x && xc == x);
        out.detail = "x=" + x.to_string() + " theta=" + theta.to_string() +
                     " b=" + xb.to_string() + " c=" + xc.to_string();
        return out;
    });
}

WiesnerMoeAdversary wiesner_forward_to_b() {
    WiesnerMoeAdversary adv;
    adv.stage_a = [](const qsim::StateVector& ct, int, lab::Rng&) {
        return forward_all_to_b(ct);
    };
    adv.stage_b = [](PartyView& view, const gf2::Vector& theta, const gf2::Vector&, lab::Rng& r) {
        // undo the Hadamards on the full register, then read x
        std::vector<int> had;
        for (int i = 0; i < theta.size(); ++i)
            if (theta.get(i)) had.push_back(i);
        for (int i : had) view.apply(qsim::gates::hadamard(), {i});
        return view.measure_all(r);
    };
    adv.stage_c = [](PartyView&, const gf2::Vector& theta, const gf2::Vector&, lab::Rng& r) {
        return gf2::Vector::random(theta.size(), r);
    };
    return adv;
}

WiesnerMoeAdversary wiesner_breidbart() {
    WiesnerMoeAdversary adv;
    adv.stage_a = [](const qsim::StateVector& ct, int lambda, lab::Rng& r) {
        qsim::StateVector work = ct;
        Eigen::Matrix2cd rot = qsim::gates::rotation(-3.14159265358979323846 / 8);
        for (int q = 0; q < lambda; ++q) qsim::apply_inplace(rot, work, {q});
        std::vector<int> all(lambda);
        for (int q = 0; q < lambda; ++q) all[q] = q;
        auto m = qsim::measure_computational(work, all, r);
        SplitResult split;
        split.state = std::move(m.post); // kept by A; nothing is forwarded
        split.side_info = m.outcome;
        return split;
    };
    auto echo = [](PartyView&, const gf2::Vector&, const gf2::Vector& side, lab::Rng&) {
        return side;
    };
    adv.stage_b = echo;
    adv.stage_c = echo;
    return adv;
}

namespace {

struct CosetChallenge {
    gf2::Subspace a;
    gf2::Subspace a_dual;
    cosets::CosetStateParams params;

    static CosetChallenge sample(int lambda, lab::Rng& r) {
        gf2::Subspace a = gf2::sample_subspace(lambda, lambda / 2, r);
        gf2::Subspace ad = gf2::dual(a);
        cosets::CosetStateParams params(a, gf2::sample_coset_rep(a, r),
                                        gf2::sample_coset_rep(ad, r));
        return {std::move(a), std::move(ad), std::move(params)};
    }
};

} // namespace

GameOutcome run_moe_coset(const CosetMoeAdversary& adv, int lambda, uint64_t trials,
                          bool with_membership_oracles, const lab::Rng& rng,
                          const RunOptions& options) {
    if (lambda < 2 || lambda % 2 != 0 || lambda > 10)
        throw std::invalid_argument("games: moe-coset supports even lambda in [2, 10]");
    return run_trials(trials, rng, options, {}, [&](uint64_t, lab::Rng& r) {
        CosetChallenge ch = CosetChallenge::sample(lambda, r);

        // per-stage oracle instances so query counters stay per stage
        std::optional<cosets::MembershipOracle> oa_s, oa_sp, ob_s, ob_sp, oc_s, oc_sp;
        if (with_membership_oracles) {
            oa_s.emplace(ch.a, ch.params.s);
            oa_sp.emplace(ch.a_dual, ch.params.s_perp);
            ob_s.emplace(ch.a, ch.params.s);
            ob_sp.emplace(ch.a_dual, ch.params.s_perp);
            oc_s.emplace(ch.a, ch.params.s);
            oc_sp.emplace(ch.a_dual, ch.params.s_perp);
        }
        auto ptr = [](std::optional<cosets::MembershipOracle>& o) {
            return o.has_value() ? &*o : nullptr;
        };

        SplitResult split =
            adv.stage_a(cosets::prepare(ch.params), lambda, ptr(oa_s), ptr(oa_sp), r);
        GameRegisters regs(std::move(split.state));
        auto [bview, cview] = make_views(regs, split, options);
        auto [sb, spb] = adv.stage_b(bview, ch.a, ptr(ob_s), ptr(ob_sp), split.side_info, r);
        auto [sc, spc] = adv.stage_c(cview, ch.a, ptr(oc_s), ptr(oc_sp), split.side_info, r);

        for (auto* o : {ptr(oa_s), ptr(oa_sp), ptr(ob_s), ptr(ob_sp), ptr(oc_s), ptr(oc_sp)})
            if (o != nullptr && o->query_count() > options.oracle_budget_per_stage)
                throw ProtocolError("membership oracle budget exceeded");

        TrialOut out;
        out.win = (sb == ch.params.s && spb == ch.params.s_perp && sc == ch.params.s &&
                   spc == ch.params.s_perp);
        return out;
    });
}

CosetMoeAdversary coset_forward_to_b() {
    CosetMoeAdversary adv;
    adv.stage_a = [](const qsim::StateVector& ct, int, const cosets::MembershipOracle*,
                     const cosets::MembershipOracle*, lab::Rng&) { return forward_all_to_b(ct); };
    adv.stage_b = [](PartyView& view, const gf2::Subspace& a, const cosets::MembershipOracle*,
                     const cosets::MembershipOracle*, const gf2::Vector&, lab::Rng& r) {
        return decode_coset_register(view, a, r);
    };
    adv.stage_c = [](PartyView&, const gf2::Subspace& a, const cosets::MembershipOracle*,
                     const cosets::MembershipOracle*, const gf2::Vector&, lab::Rng& r) {
        return std::make_pair(gf2::sample_coset_rep(a, r),
                              gf2::sample_coset_rep(gf2::dual(a), r));
    };
    return adv;
}

CosetMoeAdversary coset_both_uniform() {
    CosetMoeAdversary adv = coset_forward_to_b();
    adv.stage_a = [](const qsim::StateVector& ct, int, const cosets::MembershipOracle*,
                     const cosets::MembershipOracle*, lab::Rng&) {
        SplitResult split;
        split.state = ct; // A keeps the state
        return split;
    };
    adv.stage_b = adv.stage_c;
    return adv;
}

CosetMoeAdversary coset_measure_broadcast() {
    CosetMoeAdversary adv;
    adv.stage_a = [](const qsim::StateVector& ct, int lambda, const cosets::MembershipOracle*,
                     const cosets::MembershipOracle*, lab::Rng& r) {
        std::vector<int> all(lambda);
        for (int q = 0; q < lambda; ++q) all[q] = q;
        auto m = qsim::measure_computational(ct, all, r);
        SplitResult split;
        split.state = std::move(m.post);
        split.side_info = concat_bits(m.outcome, gf2::Vector::random(lambda, r));
        return split;
    };
    auto answer = [](PartyView&, const gf2::Subspace& a, const cosets::MembershipOracle*,
                     const cosets::MembershipOracle*, const gf2::Vector& side, lab::Rng&) {
        int n = a.ambient();
        gf2::Vector v(n), u(n);
        for (int i = 0; i < n; ++i) v.set(i, side.get(i));
        for (int i = 0; i < n; ++i) u.set(i, side.get(n + i));
        return std::make_pair(gf2::canonical_rep(a, v), gf2::canonical_rep(gf2::dual(a), u));
    };
    adv.stage_b = answer;
    adv.stage_c = answer;
    return adv;
}

GameOutcome run_direct_product(const DirectProductAdversary& adv, int lambda, uint64_t trials,
                               const lab::Rng& rng, const RunOptions& options) {
    if (lambda < 2 || lambda % 2 != 0 || lambda > 10)
        throw std::invalid_argument("games: direct-product supports even lambda in [2, 10]");
    if (adv.copies < 1 || adv.copies > 4)
        throw std::invalid_argument("games: direct-product supports 1 to 4 copies");
    return run_trials(trials, rng, options, {}, [&](uint64_t, lab::Rng& r) {
        CosetChallenge ch = CosetChallenge::sample(lambda, r);
        cosets::MembershipOracle p_s(ch.a, ch.params.s);
        cosets::MembershipOracle p_sp(ch.a_dual, ch.params.s_perp);

        std::vector<qsim::StateVector> copies;
        for (int i = 0; i < adv.copies; ++i) copies.push_back(cosets::prepare(ch.params));
        auto [v, w] = adv.attack(std::move(copies), p_s, p_sp,
                                 adv.reveal_subspace ? &ch.a : nullptr, lambda, r);
        if (p_s.query_count() > options.oracle_budget_per_stage ||
            p_sp.query_count() > options.oracle_budget_per_stage)
            throw ProtocolError("membership oracle budget exceeded");

        TrialOut out;
        out.win = ch.a.contains(v ^ ch.params.s) && ch.a_dual.contains(w ^ ch.params.s_perp);
        return out;
    });
}

DirectProductAdversary dp_random_pair() {
    DirectProductAdversary adv;
    adv.attack = [](std::vector<qsim::StateVector>, const cosets::MembershipOracle&,
                    const cosets::MembershipOracle&, const gf2::Subspace*, int lambda,
                    lab::Rng& r) {
        return std::make_pair(gf2::Vector::random(lambda, r), gf2::Vector::random(lambda, r));
    };
    return adv;
}

DirectProductAdversary dp_two_copy_measure() {
    DirectProductAdversary adv;
    adv.copies = 2;
    adv.attack = [](std::vector<qsim::StateVector> copies, const cosets::MembershipOracle&,
                    const cosets::MembershipOracle&, const gf2::Subspace*, int lambda,
                    lab::Rng& r) {
        std::vector<int> all(lambda);
        for (int q = 0; q < lambda; ++q) all[q] = q;
        gf2::Vector v = qsim::measure_computational(copies[0], all, r).outcome;
        qsim::hadamard_all_inplace(copies[1]);
        gf2::Vector w = qsim::measure_computational(copies[1], all, r).outcome;
        return std::make_pair(v, w);
    };
    return adv;
}

DirectProductAdversary dp_honest_decoder() {
    DirectProductAdversary adv;
    adv.reveal_subspace = true;
    adv.attack = [](std::vector<qsim::StateVector> copies, const cosets::MembershipOracle&,
                    const cosets::MembershipOracle&, const gf2::Subspace* a, int,
                    lab::Rng& r) {
        if (a == nullptr) throw ProtocolError("honest decoder needs the revealed subspace");
        cosets::DecodeResult d = cosets::decode(copies[0], *a, r);
        return std::make_pair(d.s, d.s_perp);
    };
    return adv;
}

} // namespace games
