#include "games_internal.hpp"

namespace games {

GameOutcome run_ind_cpa(schemes::UEVariant variant, const IndCpaAdversary& adv, int lambda,
                        int message_bits, uint64_t trials, const lab::Rng& rng,
                        const RunOptions& options) {
    if (lambda < 1 || lambda > 10)
        throw std::invalid_argument("games: ind-cpa supports lambda in [1, 10]");
    bool uses_oracle = variant == schemes::UEVariant::Coset ||
                       variant == schemes::UEVariant::BroadbentLord;
    if (!uses_oracle && message_bits != lambda)
        throw std::invalid_argument("games: this variant fixes the message length to lambda");
    if (message_bits < 1) throw std::invalid_argument("games: message length must be positive");

    return run_trials(trials, rng, options, {}, [&](uint64_t, lab::Rng& r) {
        std::optional<rom::OracleTable> h;
        if (uses_oracle) h.emplace(2 * lambda, message_bits, r);
        const rom::OracleTable* hp = h.has_value() ? &*h : nullptr;

        schemes::UEKey key = schemes::ue_gen(variant, lambda, r);
        auto [m0, m1] = adv.choose_messages(message_bits, r);
        if (m0.size() != message_bits || m1.size() != message_bits)
            throw ProtocolError("chosen messages have the wrong length");
        if (m0 == m1) throw ProtocolError("chosen messages must differ");

        int b = r.bit();
        schemes::Ciphertext ct = schemes::ue_enc(key, b ? m1 : m0, hp, r);
        SplitResult split = adv.stage_a(ct, lambda, hp, r);

        GameRegisters regs(std::move(split.state));
        auto [bview, cview] = make_views(regs, split, options);
        int gb = adv.stage_b(bview, key, m0, m1, hp, split.side_info, r);
        int gc = adv.stage_c(cview, key, m0, m1, hp, split.side_info, r);

        TrialOut out;
        out.win = (gb == b && gc == b);
        out.detail = std::string("b=") + std::to_string(b) + " gb=" + std::to_string(gb) +
                     " gc=" + std::to_string(gc);
        return out;
    });
}

namespace {

// honest decryption of the full forwarded ciphertext through a party view
int decrypt_and_compare(PartyView& view, const schemes::UEKey& sk, const gf2::Vector& m0,
                        const gf2::Vector& m1, const rom::OracleTable* h,
                        const gf2::Vector& classical, lab::Rng& r) {
    gf2::Vector m(0);
    switch (schemes::key_variant(sk)) {
        case schemes::UEVariant::Coset: {
            const auto& a = std::get<schemes::CosetKey>(sk).a;
            auto [s, sp] = decode_coset_register(view, a, r);
            m = view.oracle_value(*h, concat_bits(s, sp)) ^ classical;
            break;
        }
        case schemes::UEVariant::BroadbentLord: {
            const auto& k = std::get<schemes::BLKey>(sk);
            for (int i = 0; i < k.theta.size(); ++i)
                if (k.theta.get(i)) view.apply(qsim::gates::hadamard(), {i});
            gf2::Vector x = view.measure_all(r);
            m = view.oracle_value(*h, concat_bits(k.alpha, x)) ^ classical;
            break;
        }
        case schemes::UEVariant::WiesnerOtp: {
            const auto& k = std::get<schemes::WiesnerKey>(sk);
            for (int i = 0; i < k.theta.size(); ++i)
                if (k.theta.get(i)) view.apply(qsim::gates::hadamard(), {i});
            m = view.measure_all(r) ^ classical;
            break;
        }
        case schemes::UEVariant::Conjugate: {
            const auto& k = std::get<schemes::ConjugateKey>(sk);
            for (int i = 0; i < k.theta.size(); ++i)
                if (k.theta.get(i)) view.apply(qsim::gates::hadamard(), {i});
            m = view.measure_all(r) ^ k.r;
            break;
        }
    }
    if (m == m1) return 1;
    if (m == m0) return 0;
    return r.bit(); // unreachable on honest ciphertexts
}

} // namespace

IndCpaAdversary indcpa_forward_to_b() {
    IndCpaAdversary adv;
    adv.choose_messages = [](int message_bits, lab::Rng& r) {
        gf2::Vector m0 = gf2::Vector::random(message_bits, r);
        gf2::Vector m1 = gf2::Vector::random(message_bits, r);
        while (m1 == m0) m1 = gf2::Vector::random(message_bits, r);
        return std::make_pair(m0, m1);
    };
    adv.stage_a = [](const schemes::Ciphertext& ct, int, const rom::OracleTable*, lab::Rng&) {
        return forward_all_to_b(ct.quantum, ct.classical);
    };
    adv.stage_b = [](PartyView& view, const schemes::UEKey& sk, const gf2::Vector& m0,
                     const gf2::Vector& m1, const rom::OracleTable* h, const gf2::Vector& side,
                     lab::Rng& r) { return decrypt_and_compare(view, sk, m0, m1, h, side, r); };
    adv.stage_c = [](PartyView&, const schemes::UEKey&, const gf2::Vector&, const gf2::Vector&,
                     const rom::OracleTable*, const gf2::Vector&, lab::Rng& r) { return r.bit(); };
    return adv;
}

IndCpaAdversary indcpa_half_split() {
    IndCpaAdversary adv;
    adv.choose_messages = [](int message_bits, lab::Rng&) {
        gf2::Vector m0(message_bits); // all zeros
        gf2::Vector m1(message_bits);
        for (int i = 0; i < message_bits; ++i) m1.set(i, true); // all ones: differs in both halves
        return std::make_pair(m0, m1);
    };
    adv.stage_a = [](const schemes::Ciphertext& ct, int lambda, const rom::OracleTable*,
                     lab::Rng&) {
        SplitResult split;
        split.state = ct.quantum;
        for (int q = 0; q < lambda / 2; ++q) split.b_qubits.push_back(q);
        for (int q = lambda / 2; q < lambda; ++q) split.c_qubits.push_back(q);
        split.side_info = ct.classical;
        return split;
    };
    auto half_guess = [](bool first_half) {
        return [first_half](PartyView& view, const schemes::UEKey& sk, const gf2::Vector& m0,
                            const gf2::Vector& m1, const rom::OracleTable*,
                            const gf2::Vector& side, lab::Rng& r) {
            const auto& theta = std::get<schemes::WiesnerKey>(sk).theta;
            int lambda = theta.size();
            int begin = first_half ? 0 : lambda / 2;
            int count = first_half ? lambda / 2 : lambda - lambda / 2;
            for (int i = 0; i < count; ++i)
                if (theta.get(begin + i)) view.apply(qsim::gates::hadamard(), {i});
            gf2::Vector x_half = view.measure_all(r);
            // m_b restricted to this half = c_half xor x_half
            gf2::Vector m_half(count), h0(count), h1(count);
            for (int i = 0; i < count; ++i) {
                m_half.set(i, side.get(begin + i) ^ x_half.get(i));
                h0.set(i, m0.get(begin + i));
                h1.set(i, m1.get(begin + i));
            }
            if (m_half == h1) return 1;
            if (m_half == h0) return 0;
            return r.bit();
        };
    };
    adv.stage_b = half_guess(true);
    adv.stage_c = half_guess(false);
    return adv;
}

} // namespace games
