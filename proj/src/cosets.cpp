#include "cosetlab/cosets.hpp"

#include <cmath>
#include <stdexcept>

namespace cosets {

CosetStateParams::CosetStateParams(gf2::Subspace subspace, gf2::Vector s_in, gf2::Vector s_perp_in)
    : a(std::move(subspace)), s(std::move(s_in)), s_perp(std::move(s_perp_in)) {
    if (s.size() != a.ambient() || s_perp.size() != a.ambient())
        throw std::invalid_argument("cosets: vector length does not match ambient dimension");
    if (gf2::canonical_rep(a, s) != s)
        throw std::invalid_argument("cosets: s is not the canonical representative");
    if (gf2::canonical_rep(gf2::dual(a), s_perp) != s_perp)
        throw std::invalid_argument("cosets: s' is not the canonical representative");
}

CosetStateParams CosetStateParams::sample(const gf2::Subspace& a, lab::Rng& rng) {
    gf2::Subspace ad = gf2::dual(a);
    return CosetStateParams(a, gf2::sample_coset_rep(a, rng), gf2::sample_coset_rep(ad, rng));
}

qsim::StateVector prepare(const CosetStateParams& params) {
    int n = params.a.ambient();
    if (n > 24) throw std::invalid_argument("cosets: ambient dimension too large to materialize");
    std::vector<qsim::cpx> amps(1ULL << n, qsim::cpx(0, 0));
    double scale = 1.0 / std::sqrt(static_cast<double>(1ULL << params.a.dim()));
    for (uint64_t mask = 0; mask < (1ULL << params.a.dim()); ++mask) {
        gf2::Vector a = params.a.element(mask);
        double sign = gf2::Vector::inner(params.s_perp, a) ? -scale : scale;
        amps[(a ^ params.s).index()] = qsim::cpx(sign, 0);
    }
    return qsim::StateVector(n, std::move(amps));
}

namespace {

std::vector<int> all_qubits(int n) {
    std::vector<int> q(n);
    for (int i = 0; i < n; ++i) q[i] = i;
    return q;
}

std::function<uint64_t(uint64_t)> canonical_fn(const gf2::Subspace& a) {
    return [&a](uint64_t idx) {
        return gf2::canonical_rep(a, gf2::Vector::from_index(a.ambient(), idx)).index();
    };
}

} // namespace

DecodeResult decode(const qsim::StateVector& psi, const gf2::Subspace& a, lab::Rng& rng) {
    int n = a.ambient();
    if (psi.num_qubits() != n) throw std::invalid_argument("cosets: register size mismatch");
    std::vector<int> reg = all_qubits(n);
    gf2::Subspace ad = gf2::dual(a);

    auto first = qsim::measure_classical_function(psi, reg, canonical_fn(a), rng);
    qsim::StateVector cur = qsim::hadamard_all(first.post);
    auto second = qsim::measure_classical_function(cur, reg, canonical_fn(ad), rng);
    qsim::StateVector post = qsim::hadamard_all(second.post);

    return {gf2::Vector::from_index(n, first.value), gf2::Vector::from_index(n, second.value),
            std::move(post)};
}

DecodeResult decode_with_ancilla(const qsim::StateVector& psi, const gf2::Subspace& a,
                                 lab::Rng& rng) {
    int n = a.ambient();
    if (psi.num_qubits() != n) throw std::invalid_argument("cosets: register size mismatch");
    gf2::Subspace ad = gf2::dual(a);
    std::vector<int> reg = all_qubits(n);
    std::vector<int> anc(n);
    for (int i = 0; i < n; ++i) anc[i] = n + i;

    qsim::StateVector cur = psi.tensor(qsim::StateVector::zero_state(n));
    qsim::apply_function_xor_inplace(cur, reg, anc, canonical_fn(a));
    auto m1 = qsim::measure_computational(cur, anc, rng);
    cur = m1.post;
    // outcome branch is constant on the ancilla, so XOR-ing again clears it
    qsim::apply_function_xor_inplace(cur, reg, anc, canonical_fn(a));

    qsim::hadamard_on_inplace(cur, reg);
    qsim::apply_function_xor_inplace(cur, reg, anc, canonical_fn(ad));
    auto m2 = qsim::measure_computational(cur, anc, rng);
    cur = m2.post;
    qsim::apply_function_xor_inplace(cur, reg, anc, canonical_fn(ad));
    qsim::hadamard_on_inplace(cur, reg);

    // ancilla is back to |0>; drop it
    std::vector<qsim::cpx> amps(1ULL << n);
    for (uint64_t i = 0; i < (1ULL << n); ++i) amps[i] = cur.amp(i << n);
    qsim::StateVector post(n, std::move(amps));
    if (!post.is_normalized(1e-9))
        throw std::runtime_error("cosets: ancilla failed to uncompute");
    return {m1.outcome, m2.outcome, std::move(post)};
}

MembershipOracle::MembershipOracle(gf2::Subspace a, const gf2::Vector& rep)
    : coset_(std::move(a), rep), queries_(std::make_shared<uint64_t>(0)) {}

bool MembershipOracle::query(const gf2::Vector& v) const {
    ++*queries_;
    return coset_.contains(v);
}

void MembershipOracle::apply_coherent(qsim::StateVector& psi, const std::vector<int>& in_qubits,
                                      int out_qubit) const {
    ++*queries_;
    int n = coset_.subspace.ambient();
    if (static_cast<int>(in_qubits.size()) != n)
        throw std::invalid_argument("cosets: oracle input register size mismatch");
    qsim::apply_function_xor_inplace(psi, in_qubits, {out_qubit}, [this, n](uint64_t idx) {
        return coset_.contains(gf2::Vector::from_index(n, idx)) ? 1ULL : 0ULL;
    });
}

MembershipOracle membership_oracle(const gf2::Subspace& a, const gf2::Vector& rep) {
    if (a.reduce(rep) != rep)
        throw std::invalid_argument("cosets: membership oracle requires a canonical representative");
    return MembershipOracle(a, rep);
}

std::function<bool(const gf2::Vector&)> point_oracle_from_membership(const gf2::Subspace& a,
                                                                     const MembershipOracle& p) {
    return [a, p](const gf2::Vector& z) { return p.query(z) && gf2::canonical_rep(a, z) == z; };
}

} // namespace cosets
