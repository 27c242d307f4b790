#include "cosetlab/schemes.hpp"

#include <cmath>

namespace schemes {

const char* variant_name(UEVariant v) {
    switch (v) {
        case UEVariant::Coset: return "coset";
        case UEVariant::BroadbentLord: return "broadbent-lord";
        case UEVariant::WiesnerOtp: return "wiesner-otp";
        case UEVariant::Conjugate: return "conjugate";
    }
    return "?";
}

UEVariant variant_from_name(const std::string& name) {
    if (name == "coset") return UEVariant::Coset;
    if (name == "broadbent-lord" || name == "bl") return UEVariant::BroadbentLord;
    if (name == "wiesner-otp" || name == "wiesner") return UEVariant::WiesnerOtp;
    if (name == "conjugate") return UEVariant::Conjugate;
    throw std::invalid_argument("schemes: unknown variant '" + name + "'");
}

int key_lambda(const UEKey& key) {
    return std::visit(
        [](const auto& k) -> int {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, CosetKey>)
                return k.a.ambient();
            else if constexpr (std::is_same_v<T, BLKey>)
                return k.theta.size();
            else if constexpr (std::is_same_v<T, WiesnerKey>)
                return k.theta.size();
            else
                return k.theta.size();
        },
        key);
}

UEVariant key_variant(const UEKey& key) {
    switch (key.index()) {
        case 0: return UEVariant::Coset;
        case 1: return UEVariant::BroadbentLord;
        case 2: return UEVariant::WiesnerOtp;
        default: return UEVariant::Conjugate;
    }
}

qsim::StateVector wiesner_state(const gf2::Vector& x, const gf2::Vector& theta) {
    if (x.size() != theta.size()) throw std::invalid_argument("schemes: x/theta length mismatch");
    qsim::StateVector psi = qsim::StateVector::basis_state(x.size(), x.index());
    std::vector<int> had;
    for (int i = 0; i < theta.size(); ++i)
        if (theta.get(i)) had.push_back(i);
    if (!had.empty()) qsim::hadamard_on_inplace(psi, had);
    return psi;
}

gf2::Vector wiesner_decode(const qsim::StateVector& psi, const gf2::Vector& theta, lab::Rng& rng) {
    qsim::StateVector work = psi;
    std::vector<int> had;
    for (int i = 0; i < theta.size(); ++i)
        if (theta.get(i)) had.push_back(i);
    if (!had.empty()) qsim::hadamard_on_inplace(work, had);
    std::vector<int> all(theta.size());
    for (int i = 0; i < theta.size(); ++i) all[i] = i;
    return qsim::measure_computational(work, all, rng).outcome;
}

UEKey ue_gen(UEVariant variant, int lambda, lab::Rng& rng) {
    if (lambda < 1) throw std::invalid_argument("schemes: lambda must be positive");
    switch (variant) {
        case UEVariant::Coset: {
            if (lambda % 2 != 0)
                throw std::invalid_argument("schemes: coset variant needs even lambda");
            return CosetKey{gf2::sample_subspace(lambda, lambda / 2, rng)};
        }
        case UEVariant::BroadbentLord:
            return BLKey{gf2::Vector::random(lambda, rng), gf2::Vector::random(lambda, rng)};
        case UEVariant::WiesnerOtp:
            return WiesnerKey{gf2::Vector::random(lambda, rng)};
        case UEVariant::Conjugate:
            return ConjugateKey{gf2::Vector::random(lambda, rng), gf2::Vector::random(lambda, rng)};
    }
    throw std::logic_error("schemes: unreachable");
}

int ue_message_bits(const UEKey& key, const rom::OracleTable* h) {
    switch (key_variant(key)) {
        case UEVariant::Coset:
        case UEVariant::BroadbentLord:
            if (h == nullptr) throw std::invalid_argument("schemes: variant requires an oracle");
            return h->out_bits();
        default:
            return key_lambda(key);
    }
}

namespace {

gf2::Vector concat(const gf2::Vector& a, const gf2::Vector& b) {
    gf2::Vector out(a.size() + b.size());
    for (int i = 0; i < a.size(); ++i) out.set(i, a.get(i));
    for (int i = 0; i < b.size(); ++i) out.set(a.size() + i, b.get(i));
    return out;
}

void check_oracle_domain(const rom::OracleTable& h, int in_bits) {
    if (h.in_bits() != in_bits)
        throw std::invalid_argument("schemes: oracle input width does not match the key");
}

} // namespace

Ciphertext ue_enc(const UEKey& key, const gf2::Vector& m, const rom::OracleTable* h,
                  lab::Rng& rng) {
    if (m.size() != ue_message_bits(key, h))
        throw std::invalid_argument("schemes: message length mismatch");
    int lambda = key_lambda(key);

    if (const CosetKey* k = std::get_if<CosetKey>(&key)) {
        check_oracle_domain(*h, 2 * lambda);
        cosets::CosetStateParams params = cosets::CosetStateParams::sample(k->a, rng);
        gf2::Vector pad = h->value(concat(params.s, params.s_perp));
        return {cosets::prepare(params), pad ^ m};
    }
    if (const BLKey* k = std::get_if<BLKey>(&key)) {
        check_oracle_domain(*h, 2 * lambda);
        gf2::Vector x = gf2::Vector::random(lambda, rng);
        gf2::Vector pad = h->value(concat(k->alpha, x));
        return {wiesner_state(x, k->theta), pad ^ m};
    }
    if (const WiesnerKey* k = std::get_if<WiesnerKey>(&key)) {
        gf2::Vector x = gf2::Vector::random(lambda, rng);
        return {wiesner_state(x, k->theta), x ^ m};
    }
    const ConjugateKey& k = std::get<ConjugateKey>(key);
    return {wiesner_state(m ^ k.r, k.theta), gf2::Vector(0)};
}

gf2::Vector ue_dec(const UEKey& key, const Ciphertext& ct, const rom::OracleTable* h,
                   lab::Rng& rng) {
    int lambda = key_lambda(key);
    if (ct.quantum.num_qubits() != lambda)
        throw std::invalid_argument("schemes: ciphertext register size mismatch");

    if (const CosetKey* k = std::get_if<CosetKey>(&key)) {
        cosets::DecodeResult d = cosets::decode(ct.quantum, k->a, rng);
        return h->value(concat(d.s, d.s_perp)) ^ ct.classical;
    }
    if (const BLKey* k = std::get_if<BLKey>(&key)) {
        gf2::Vector x = wiesner_decode(ct.quantum, k->theta, rng);
        return h->value(concat(k->alpha, x)) ^ ct.classical;
    }
    if (const WiesnerKey* k = std::get_if<WiesnerKey>(&key)) {
        gf2::Vector x = wiesner_decode(ct.quantum, k->theta, rng);
        return x ^ ct.classical;
    }
    const ConjugateKey& k = std::get<ConjugateKey>(key);
    gf2::Vector c = wiesner_decode(ct.quantum, k.theta, rng);
    return c ^ k.r;
}

gf2::Subspace parse_span(const gf2::Vector& blob, int n, int d) {
    if (blob.size() != n * d) throw std::invalid_argument("schemes: blob length mismatch");
    std::vector<gf2::Vector> vs;
    vs.reserve(d);
    for (int i = 0; i < d; ++i) {
        gf2::Vector v(n);
        for (int j = 0; j < n; ++j) v.set(j, blob.get(i * n + j));
        vs.push_back(std::move(v));
    }
    gf2::Subspace a = gf2::rref(vs, n);
    if (a.dim() != d) throw CPAbortError();
    return a;
}

double cp_abort_probability(int lambda) {
    PointParams p = PointParams::from_lambda(lambda);
    double keep = 1.0;
    for (int i = 1; i <= p.d; ++i) keep *= 1.0 - std::pow(2.0, i - 1 - p.n);
    return 1.0 - keep;
}

CPProgram cp_protect(const gf2::Vector& y, const rom::OracleTable& g, const rom::OracleTable& h,
                     lab::Rng& rng) {
    PointParams p = PointParams::from_lambda(y.size());
    if (g.in_bits() != p.lambda || g.out_bits() != p.g_out_bits())
        throw std::invalid_argument("schemes: G oracle shape mismatch");
    if (h.in_bits() != p.h_in_bits() || h.out_bits() != p.h_out_bits())
        throw std::invalid_argument("schemes: H oracle shape mismatch");

    gf2::Subspace a = parse_span(g.value(y), p.n, p.d);
    cosets::CosetStateParams params = cosets::CosetStateParams::sample(a, rng);
    gf2::Vector tag = h.value(concat(params.s, params.s_perp));
    return {cosets::prepare(params), std::move(tag)};
}

CPEvalResult cp_eval(const CPProgram& sigma, const gf2::Vector& x, const rom::OracleTable& g,
                     const rom::OracleTable& h, lab::Rng& rng) {
    PointParams p = PointParams::from_lambda(x.size());
    if (sigma.state.num_qubits() != p.n || sigma.tag.size() != p.h_out_bits())
        throw std::invalid_argument("schemes: program shape mismatch");

    gf2::Subspace a2 = parse_span(g.value(x), p.n, p.d);
    // canonical-pair extraction against A'; measuring the extracted pair and
    // hashing classically matches the coherent H-query followed by measuring
    // the output register whenever H is injective on the support
    cosets::DecodeResult d = cosets::decode(sigma.state, a2, rng);
    gf2::Vector theta_prime = h.value(concat(d.s, d.s_perp));
    int out = theta_prime == sigma.tag ? 1 : 0;
    return {out, {std::move(d.post), sigma.tag}};
}

} // namespace schemes
