#include <cmath>

#include "games_internal.hpp"

namespace games {

void PiracyInputDist::validate() const {
    auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (kind == Kind::Product) {
        if (!ok(p_b) || !ok(p_c))
            throw std::invalid_argument("games: product distribution needs p_b, p_c in [0, 1]");
    } else if (!ok(w)) {
        throw std::invalid_argument("games: correlated distribution needs w in [0, 1]");
    }
}

double PiracyInputDist::p_triv() const {
    if (kind == Kind::Product)
        return std::max(std::max(p_b, 1.0 - p_b), std::max(p_c, 1.0 - p_c));
    return std::max(w, 1.0 - w);
}

namespace {

gf2::Vector random_not_equal(const gf2::Vector& y, lab::Rng& r) {
    for (;;) {
        gf2::Vector x = gf2::Vector::random(y.size(), r);
        if (!(x == y)) return x;
    }
}

std::pair<gf2::Vector, gf2::Vector> sample_inputs(const PiracyInputDist& dist,
                                                  const gf2::Vector& y, lab::Rng& r) {
    if (dist.kind == PiracyInputDist::Kind::Correlated) {
        if (r.uniform() < dist.w) return {y, y};
        return {random_not_equal(y, r), random_not_equal(y, r)};
    }
    gf2::Vector xb = r.uniform() < dist.p_b ? y : random_not_equal(y, r);
    gf2::Vector xc = r.uniform() < dist.p_c ? y : random_not_equal(y, r);
    return {xb, xc};
}

} // namespace

GameOutcome run_piracy_point(const PiracyAdversary& adv, int lambda, const PiracyInputDist& dist,
                             uint64_t trials, const lab::Rng& rng, const RunOptions& options) {
    if (lambda < 2 || lambda > 7)
        throw std::invalid_argument("games: piracy experiment supports lambda in [2, 7]");
    dist.validate();
    schemes::PointParams p = schemes::PointParams::from_lambda(lambda);

    GameOutcome out =
        run_trials(trials, rng, options, {"aborts"}, [&](uint64_t, lab::Rng& r) {
            rom::OracleTable g(p.lambda, p.g_out_bits(), r);
            rom::OracleTable h(p.h_in_bits(), p.h_out_bits(), r);

            // default unlearnable distribution: uniform over {0,1}^lambda;
            // resample on the (rare) linear-dependence abort and report counts
            double aborts = 0;
            gf2::Vector y(lambda);
            std::optional<schemes::CPProgram> sigma;
            while (!sigma.has_value()) {
                y = gf2::Vector::random(lambda, r);
                try {
                    sigma = schemes::cp_protect(y, g, h, r);
                } catch (const schemes::CPAbortError&) {
                    aborts += 1;
                }
            }

            SplitResult split = adv.stage_a(*sigma, lambda, g, h, r);
            auto [xb, xc] = sample_inputs(dist, y, r);

            GameRegisters regs(std::move(split.state));
            auto [bview, cview] = make_views(regs, split, options);
            int yb = adv.stage_b(bview, xb, g, h, dist, split.side_info, r);
            int yc = adv.stage_c(cview, xc, g, h, dist, split.side_info, r);

            TrialOut t;
            t.win = (yb == (xb == y ? 1 : 0)) && (yc == (xc == y ? 1 : 0));
            t.stats = {aborts};
            return t;
        });
    out.stats["p_triv"] = dist.p_triv();
    return out;
}

PiracyAdversary piracy_b_honest_c_blind(int c_guess) {
    PiracyAdversary adv;
    adv.stage_a = [](const schemes::CPProgram& program, int, const rom::OracleTable&,
                     const rom::OracleTable&, lab::Rng&) {
        // forward the X register and broadcast the classical tag
        return forward_all_to_b(program.state, program.tag);
    };
    adv.stage_b = [](PartyView& view, const gf2::Vector& x, const rom::OracleTable& g,
                     const rom::OracleTable& h, const PiracyInputDist&, const gf2::Vector& side,
                     lab::Rng& r) {
        schemes::PointParams p = schemes::PointParams::from_lambda(x.size());
        gf2::Subspace a2;
        try {
            a2 = schemes::parse_span(view.oracle_value(g, x), p.n, p.d);
        } catch (const schemes::CPAbortError&) {
            return 0; // honest evaluation aborts; it cannot claim a hit
        }
        auto [s, sp] = decode_coset_register(view, a2, r);
        gf2::Vector theta_prime = view.oracle_value(h, concat_bits(s, sp));
        return theta_prime == side ? 1 : 0;
    };
    adv.stage_c = [c_guess](PartyView&, const gf2::Vector&, const rom::OracleTable&,
                            const rom::OracleTable&, const PiracyInputDist& dist,
                            const gf2::Vector&, lab::Rng&) {
        if (c_guess >= 0) return c_guess;
        // most likely function value given the marginal Pr[x_C = y]
        double hit = dist.kind == PiracyInputDist::Kind::Product ? dist.p_c : dist.w;
        return hit > 0.5 ? 1 : 0;
    };
    return adv;
}

PiracyAdversary piracy_both_zero() {
    PiracyAdversary adv;
    adv.stage_a = [](const schemes::CPProgram& program, int, const rom::OracleTable&,
                     const rom::OracleTable&, lab::Rng&) {
        SplitResult split;
        split.state = program.state;
        return split;
    };
    auto zero = [](PartyView&, const gf2::Vector&, const rom::OracleTable&,
                   const rom::OracleTable&, const PiracyInputDist&, const gf2::Vector&,
                   lab::Rng&) { return 0; };
    adv.stage_b = zero;
    adv.stage_c = zero;
    return adv;
}

} // namespace games
